use super::correlation::{finite_omega_tilde_ratio, finite_size_correlation, TildeKind};
use super::{balance_pow2, Status, TheoremCheck, TheoremId};
use crate::complement::{complement_graph, evolve_torus, windowed_shading, Axis};
use crate::formulas::{
    aztec_diamond_count, count_r_formula, flank_exponent, horizontal_multiplet, r_input, vertical_multiplet,
    window_exponent, FormulaInput,
};
use crate::lattice::{
    build_aztec_diamond, build_cruciform_windowed, build_r_graph, build_windowed_region, dual_graph, figure1_left,
    figure1_right, Color, Family, MatchGraph, OddRect, RVariant, Topology, TorusGraph, WindowedSpec,
};
use crate::matchcount::{
    count_bruteforce_with_limit, count_kasteleyn, count_planar_kasteleyn, count_torus_kasteleyn, factorize,
    Factorization, Surface, MAX_BRUTE_LIMIT,
};
use crate::{Error, Result};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Deserialize;
use serde_json::json;

fn count_auto(g: &MatchGraph) -> Result<BigUint> {
    match g.topology {
        Topology::Plane => count_planar_kasteleyn(g),
        Topology::Torus { .. } => count_kasteleyn(g, Surface::Torus),
    }
}

/// `M(AD_n)` by determinant against `2^{n(n+1)/2}`.
pub fn check_eq1(n: i64) -> Result<TheoremCheck> {
    let g = dual_graph(&build_aztec_diamond(n)?);
    let lhs = count_planar_kasteleyn(&g)?;
    let rhs = aztec_diamond_count(n as u64);
    Ok(TheoremCheck::compare(TheoremId::Eq1, json!({ "n": n }), lhs, rhs, "kasteleyn | closed form"))
}

/// The two regions of the opening figure against their printed factorizations.
pub fn check_figure1() -> Result<Vec<TheoremCheck>> {
    let cases = [
        ("AD_18 minus a centred AD_3", figure1_left(), vec![(2, 87), (3, 2), (11, 2), (101, 2), (131, 2), (6961, 2)]),
        ("AR_{23,18} minus a centred O_{2,2}", figure1_right(), vec![(2, 118), (3, 4), (11, 6), (13, 8), (17, 4), (19, 2)]),
    ];
    let mut out = Vec::new();
    for (name, g, want) in cases {
        let c = count_planar_kasteleyn(&g)?;
        let f = factorize(&c)?;
        let want = Factorization::from_pairs(&want);
        out.push(
            TheoremCheck::compare(
                TheoremId::Fig1,
                json!({ "region": name, "vertices": g.vertex_count() }),
                f.to_string(),
                want.to_string(),
                "kasteleyn + factorization | printed value",
            )
            .with_note(format!("count {c}")),
        );
    }
    Ok(out)
}

/// Branching count of `R(m,n;T)` against the product formula.
pub fn check_r_formula(input: &FormulaInput) -> Result<TheoremCheck> {
    let id = match input.variant {
        RVariant::R | RVariant::RPrime => TheoremId::T21a,
        _ => TheoremId::T21b,
    };
    let g = build_r_graph(input.variant, input.m, input.n, &input.t)?;
    let (lhs, engine) = if g.vertex_count() <= MAX_BRUTE_LIMIT {
        (count_bruteforce_with_limit(&g, MAX_BRUTE_LIMIT)?, "branching")
    } else {
        (count_planar_kasteleyn(&g)?, "kasteleyn")
    };
    let rhs = count_r_formula(input)?;
    Ok(TheoremCheck::compare(id, serde_json::to_value(input).unwrap(), lhs, rhs, &format!("{engine} | product formula")))
}

fn windowed_id(family: Family) -> TheoremId {
    match family {
        Family::Ar => TheoremId::T31,
        Family::ArPrime => TheoremId::T32,
        Family::ArDouble => TheoremId::T33,
        Family::ArTriple => TheoremId::T34,
    }
}

/// Determinant count of the windowed region against `2^e` times the
/// branching count of its R-graph. Falls back to the cruciform region when
/// the extremal windows have turned into protrusions.
pub fn check_windowed(spec: &WindowedSpec) -> Result<TheoremCheck> {
    match build_windowed_region(spec) {
        Ok(w) => windowed_against_r(spec, &w.graph, None),
        Err(Error::InvalidParameter(_)) if !spec.family.grows() => check_cruciform(spec),
        Err(e) => Err(e),
    }
}

/// The cruciform regime of the shrinking families.
pub fn check_cruciform(spec: &WindowedSpec) -> Result<TheoremCheck> {
    let w = build_cruciform_windowed(spec)?;
    windowed_against_r(spec, &w.graph, Some("cruciform"))
}

fn windowed_against_r(spec: &WindowedSpec, g: &MatchGraph, note: Option<&str>) -> Result<TheoremCheck> {
    let lhs = count_planar_kasteleyn(g)?;
    let input = r_input(spec)?;
    let r = build_r_graph(input.variant, input.m, input.n, &input.t)?;
    let (base, engine) = if r.vertex_count() <= 64 {
        (count_bruteforce_with_limit(&r, MAX_BRUTE_LIMIT)?, "branching")
    } else {
        (count_r_formula(&input)?, "product formula")
    };
    let e = window_exponent(spec.family, spec.m, spec.k, spec.s());
    let (l, r) = balance_pow2(&lhs, &base, e);
    let mut c = TheoremCheck::compare(
        windowed_id(spec.family),
        serde_json::to_value(spec).unwrap(),
        l,
        r,
        &format!("kasteleyn | 2^{e} x {engine}"),
    );
    if let Some(n) = note {
        c = c.with_note(n);
    }
    Ok(c)
}

/// `M(H) = 2^t M(H')` for one complementation.
pub fn check_complement(h: &MatchGraph, shading: i64, axis: Axis, instance: serde_json::Value) -> Result<TheoremCheck> {
    let c = complement_graph(h, shading, axis)?;
    let a = count_auto(h)?;
    let b = count_auto(&c.graph)?;
    let (l, r) = balance_pow2(&a, &b, c.t);
    let mut inst = instance;
    inst["shading"] = json!(shading);
    inst["axis"] = json!(axis);
    Ok(TheoremCheck::compare(TheoremId::Eq8, inst, l, r, "determinant | path types + determinant")
        .with_note(format!("t = {}, {} paths", c.t, c.decomposition.paths.len())))
}

/// One complementation per evolution step of a windowed region, from
/// `k = 0` to `spec.k`.
pub fn check_windowed_evolution(spec: &WindowedSpec) -> Result<Vec<TheoremCheck>> {
    let mut out = Vec::new();
    for j in 0..spec.k {
        let cur = spec.with_k(j);
        let h = build_windowed_region(&cur)?;
        let inst = json!({ "windowed": cur });
        out.push(check_complement(&h.graph, windowed_shading(spec.family.grows(), j), Axis::Horizontal, inst)?);
    }
    Ok(out)
}

fn torus_instance(t: &TorusGraph) -> serde_json::Value {
    json!({ "m": t.m, "n": t.n, "holes": t.holes })
}

/// Evolved forms of the holes of a torus with a perfect matching are
/// disjoint.
pub fn check_lemma41(t: &TorusGraph) -> Result<TheoremCheck> {
    let count = count_torus_kasteleyn(t)?;
    let got = match evolve_torus(t) {
        Ok(_) => "disjoint".to_string(),
        Err(Error::Internal(msg)) => msg,
        Err(e) => return Err(e),
    };
    let c = TheoremCheck::compare(TheoremId::L41, torus_instance(t), "disjoint".to_string(), got, "torus determinant | geometry")
        .with_note(format!("M = {count}"))
        .contact(t);
    Ok(if count.is_zero() { c.vacuous() } else { c })
}

/// `M(T - O) = 2^{sum f(O)} M(T - e(O))`. The vertical complementation is
/// computed alongside and reported in the note.
pub fn check_t42(t: &TorusGraph) -> Result<TheoremCheck> {
    let inst = torus_instance(t);
    let lhs = count_torus_kasteleyn(t)?;
    let f = flank_exponent(&t.holes);
    if lhs.is_zero() {
        return Ok(TheoremCheck::compare(TheoremId::T42, inst, "0", "0", "torus determinant").vacuous().contact(t));
    }
    let c = complement_graph(&t.graph, 0, Axis::Vertical)?;
    let check = match evolve_torus(t) {
        Ok(e) => {
            let rhs = count_auto(&e.evolved.graph)?;
            let (l, r) = balance_pow2(&lhs, &rhs, f);
            let same = c.graph.same_modulo_halves(&e.evolved.graph);
            let route = if same { "complement is the evolved torus" } else { "complement differs from the evolved torus" };
            TheoremCheck::compare(TheoremId::T42, inst, l, r, "torus determinant | 2^f x torus determinant")
                .with_note(format!("{route}, path types give t = {}", c.t))
        }
        Err(Error::Internal(msg)) => {
            TheoremCheck::compare(TheoremId::T42, inst, lhs.to_string(), "undefined".into(), "torus determinant").failed(msg)
        }
        Err(e) => return Err(e),
    };
    Ok(check.contact(t))
}

fn placed(holes: &[OddRect], color: Color, k: i64, l: i64) -> Result<()> {
    for h in holes {
        if h.majority() != color || h.k != k || h.l != l {
            return Err(Error::InvalidParameter(format!("expected {color:?}-placed O_{{{k},{l}}}, got {h:?}")));
        }
    }
    Ok(())
}

fn shapes_of(whites: &[OddRect], blacks: &[OddRect]) -> Result<(i64, i64)> {
    let w = whites.first().ok_or_else(|| Error::InvalidParameter("no holes".into()))?;
    if whites.len() != blacks.len() {
        return Err(Error::InvalidParameter("needs as many black holes as white ones".into()));
    }
    placed(whites, Color::White, w.k, w.l)?;
    placed(blacks, Color::Black, w.l, w.k)?;
    Ok((w.k, w.l))
}

fn torus_pair_check(
    id: TheoremId,
    m: usize,
    n: usize,
    left: Vec<OddRect>,
    right: Vec<OddRect>,
    e: i64,
) -> Result<TheoremCheck> {
    let inst = json!({ "m": m, "n": n, "holes": left, "other": right });
    let lt = TorusGraph::with_holes(m, n, left)?;
    let lhs = count_torus_kasteleyn(&lt)?;
    if lhs.is_zero() {
        return Ok(TheoremCheck::compare(id, inst, "0", "0", "torus determinant").vacuous().contact(&lt));
    }
    let rhs = match TorusGraph::with_holes(m, n, right) {
        Ok(rt) => count_torus_kasteleyn(&rt)?,
        Err(Error::InvalidPlacement(msg)) => {
            return Ok(TheoremCheck::compare(id, inst, lhs.to_string(), "undefined".into(), "torus determinant")
                .failed(format!("right side holes are not disjoint: {msg}"))
                .contact(&lt))
        }
        Err(e) => return Err(e),
    };
    let (l, r) = balance_pow2(&lhs, &rhs, e);
    Ok(TheoremCheck::compare(id, inst, l, r, &format!("torus determinant | 2^{e} x torus determinant")).contact(&lt))
}

/// White `O_{k,l}` and black `O_{l,k}` against `O^{+,-}`, `O^{-,+}`.
pub fn check_c43(m: usize, n: usize, whites: &[OddRect], blacks: &[OddRect]) -> Result<TheoremCheck> {
    let (k, l) = shapes_of(whites, blacks)?;
    if l < 1 {
        return Err(Error::InvalidParameter("needs l >= 1".into()));
    }
    let s = whites.len() as i64;
    let left: Vec<OddRect> = whites.iter().chain(blacks).copied().collect();
    let right: Vec<OddRect> = whites
        .iter()
        .map(|o| OddRect { k: o.k + 1, l: o.l - 1, ..*o })
        .chain(blacks.iter().map(|o| OddRect { k: o.k - 1, l: o.l + 1, ..*o }))
        .collect();
    torus_pair_check(TheoremId::C43, m, n, left, right, s * (l - k - 1))
}

/// White `O_{k,l}` and black `O_{l,k}` against horizontal and vertical
/// multiplets of length `k + l + 1`.
pub fn check_t44(m: usize, n: usize, whites: &[OddRect], blacks: &[OddRect]) -> Result<TheoremCheck> {
    let (k, l) = shapes_of(whites, blacks)?;
    let s = whites.len() as i64;
    let (left, right) = multiplet_sides(whites, blacks);
    torus_pair_check(TheoremId::T44, m, n, left, right, -s * k * l)
}

/// Vertical white and horizontal black multiplets against their rotations.
pub fn check_c45(m: usize, n: usize, whites: &[OddRect], blacks: &[OddRect]) -> Result<TheoremCheck> {
    let (_, l) = shapes_of(whites, blacks)?;
    if l != 0 {
        return Err(Error::InvalidParameter("white holes must be vertical multiplets".into()));
    }
    let (left, right) = multiplet_sides(whites, blacks);
    torus_pair_check(TheoremId::C45, m, n, left, right, 0)
}

fn multiplet_sides(whites: &[OddRect], blacks: &[OddRect]) -> (Vec<OddRect>, Vec<OddRect>) {
    let left = whites.iter().chain(blacks).copied().collect();
    let right = whites.iter().map(horizontal_multiplet).chain(blacks.iter().map(vertical_multiplet)).collect();
    (left, right)
}

/// `omega(O_{k,l}, O_{l,k}) = 2^{-kl} omega(O_{0,k+l}, O_{k+l,0})`.
pub fn check_eceee(m: usize, n: usize, white: OddRect, black: OddRect) -> Result<TheoremCheck> {
    let (k, l) = shapes_of(&[white], &[black])?;
    let inst = json!({ "m": m, "n": n, "holes": [white, black] });
    let lhs = finite_size_correlation(m, n, &[white, black])?;
    if lhs.value.is_zero() {
        return Ok(TheoremCheck::compare(TheoremId::Eceee, inst, "0", "0", "torus determinant ratio").vacuous());
    }
    let rhs = match finite_size_correlation(m, n, &[horizontal_multiplet(&white), vertical_multiplet(&black)]) {
        Ok(c) => c.value / BigRational::from_integer((BigUint::one() << (k * l) as u64).into()),
        Err(Error::InvalidPlacement(msg)) => {
            return Ok(TheoremCheck::compare(TheoremId::Eceee, inst, lhs.value.to_string(), "undefined".into(), "")
                .failed(format!("multiplets overlap: {msg}")))
        }
        Err(e) => return Err(e),
    };
    Ok(TheoremCheck::compare(
        TheoremId::Eceee,
        inst,
        lhs.value.to_string(),
        rhs.to_string(),
        "torus determinant ratio | 2^-kl x torus determinant ratio",
    ))
}

/// Finite-`m` ratio of windowed counts at height `k` against the same
/// ratio of R-graph counts, with reference centres `centres0`.
pub fn check_r3(family: Family, m: i64, k: i64, holes: &[(i64, i64)], centres0: &[i64]) -> Result<TheoremCheck> {
    let a: Vec<i64> = holes.iter().map(|h| h.0).collect();
    let c: Vec<i64> = holes.iter().map(|h| h.1).collect();
    let lhs = finite_omega_tilde_ratio(TildeKind::Prime { k }, family, m, &a, &c, centres0)?;
    let rhs = finite_omega_tilde_ratio(TildeKind::Plain, family, m, &a, &c, centres0)?;
    let inst = json!({ "family": family, "m": m, "k": k, "a": a, "center2": c, "reference_center2": centres0 });
    Ok(TheoremCheck::compare(TheoremId::R3Ebxc, inst, lhs, rhs, "kasteleyn ratio | product formula ratio"))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TorusParams {
    m: usize,
    n: usize,
    holes: Vec<OddRect>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PairParams {
    m: usize,
    n: usize,
    white: Vec<OddRect>,
    black: Vec<OddRect>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct R3Params {
    family: Family,
    m: i64,
    k: i64,
    holes: Vec<(i64, i64)>,
    reference_center2: Vec<i64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplementParams {
    graph: MatchGraph,
    shading: i64,
    axis: Axis,
}

fn parse<T: for<'de> Deserialize<'de>>(v: &serde_json::Value) -> Result<T> {
    serde_json::from_value(v.clone()).map_err(|e| Error::InvalidInput(e.to_string()))
}

/// Runs one theorem on parameters given as JSON.
pub fn check(id: TheoremId, params: &serde_json::Value) -> Result<Vec<TheoremCheck>> {
    Ok(match id {
        TheoremId::Eq1 => {
            #[derive(Deserialize)]
            #[serde(deny_unknown_fields)]
            struct P {
                n: i64,
            }
            vec![check_eq1(parse::<P>(params)?.n)?]
        }
        TheoremId::Fig1 => check_figure1()?,
        TheoremId::T21a | TheoremId::T21b => vec![check_r_formula(&parse(params)?)?],
        TheoremId::T31 | TheoremId::T32 | TheoremId::T33 | TheoremId::T34 => {
            let spec: WindowedSpec = parse(params)?;
            if windowed_id(spec.family) != id {
                return Err(Error::InvalidParameter(format!("family {} belongs to {}", spec.family.name(), windowed_id(spec.family))));
            }
            let shrink_cruciform =
                !spec.family.grows() && spec.holes.iter().any(|h| spec.k > h.a) && spec.holes.len() >= 2;
            if shrink_cruciform {
                vec![check_cruciform(&spec)?]
            } else {
                vec![check_windowed(&spec)?]
            }
        }
        TheoremId::Eq8 => {
            let p: ComplementParams = parse(params)?;
            vec![check_complement(&p.graph, p.shading, p.axis, json!({}))?]
        }
        TheoremId::L41 | TheoremId::T42 => {
            let p: TorusParams = parse(params)?;
            let t = TorusGraph::with_holes(p.m, p.n, p.holes)?;
            if id == TheoremId::L41 {
                vec![check_lemma41(&t)?]
            } else {
                vec![check_t42(&t)?]
            }
        }
        TheoremId::C43 | TheoremId::T44 | TheoremId::C45 | TheoremId::Eceee => {
            let p: PairParams = parse(params)?;
            match id {
                TheoremId::C43 => vec![check_c43(p.m, p.n, &p.white, &p.black)?],
                TheoremId::T44 => vec![check_t44(p.m, p.n, &p.white, &p.black)?],
                TheoremId::C45 => vec![check_c45(p.m, p.n, &p.white, &p.black)?],
                _ => {
                    if p.white.len() != 1 || p.black.len() != 1 {
                        return Err(Error::InvalidParameter("needs exactly one hole of each colour".into()));
                    }
                    vec![check_eceee(p.m, p.n, p.white[0], p.black[0])?]
                }
            }
        }
        TheoremId::R3Ebxc => {
            let p: R3Params = parse(params)?;
            vec![check_r3(p.family, p.m, p.k, &p.holes, &p.reference_center2)?]
        }
    })
}

/// Counts of failures per status.
pub fn tally(checks: &[TheoremCheck]) -> (usize, usize, usize) {
    let pass = checks.iter().filter(|c| c.status == Status::Pass).count();
    let fail = checks.iter().filter(|c| c.status == Status::Fail).count();
    (pass, fail, checks.len() - pass - fail)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aztec_diamond_small() {
        for n in 1..=5 {
            assert_eq!(check_eq1(n).unwrap().status, Status::Pass);
        }
    }

    #[test]
    fn dispatch_rejects_unknown_fields() {
        assert!(check(TheoremId::Eq1, &json!({ "n": 2, "x": 1 })).is_err());
        assert_eq!(check(TheoremId::Eq1, &json!({ "n": 3 })).unwrap()[0].lhs, "64");
    }

    #[test]
    fn wrong_exponent_fails() {
        let spec = WindowedSpec::new(Family::Ar, 2, 1, &[(1, 3)]);
        let good = check_windowed(&spec).unwrap();
        assert_eq!(good.status, Status::Pass);
        let g = build_windowed_region(&spec).unwrap().graph;
        let lhs = count_planar_kasteleyn(&g).unwrap();
        let base = count_r_formula(&r_input(&spec).unwrap()).unwrap();
        let e = window_exponent(spec.family, spec.m, spec.k, spec.s()) + 1;
        let (l, r) = balance_pow2(&lhs, &base, e);
        assert_eq!(TheoremCheck::compare(TheoremId::T31, json!({}), l, r, "").status, Status::Fail);
    }

    #[test]
    fn small_torus_identities() {
        let w = OddRect::new(0, 2, 3, 2).unwrap();
        let b = OddRect::new(2, 0, 8, 5).unwrap();
        assert_eq!(b.majority(), Color::Black);
        assert!(check_t44(5, 5, &[w], &[b]).unwrap().passed());
        let w = OddRect::new(1, 1, 4, 3).unwrap();
        let b = OddRect::new(1, 1, 9, 6).unwrap();
        assert_eq!(w.majority(), Color::White);
        let c = check_c43(5, 5, &[w], &[b]).unwrap();
        assert!(c.passed(), "{c:?}");
        let c = check_eceee(5, 5, w, b).unwrap();
        assert!(c.passed(), "{c:?}");
    }
}
