use super::{aztec_rectangle_sites, MatchGraph, OddRect, Region, Site};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// The four ways of balancing `AR_{m,n}` by deleting sites along the
/// middle row `l` (row `m`) or the row `l'` just below it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RVariant {
    /// m < n, m even, deletions on l.
    R,
    /// m < n, m odd, deletions on l'.
    RPrime,
    /// m > n, m odd, deletions on l.
    RDouble,
    /// m > n, m even, deletions on l'.
    RTriple,
}

impl RVariant {
    pub const ALL: [RVariant; 4] = [RVariant::R, RVariant::RPrime, RVariant::RDouble, RVariant::RTriple];

    pub fn name(self) -> &'static str {
        match self {
            RVariant::R => "R",
            RVariant::RPrime => "R'",
            RVariant::RDouble => "R''",
            RVariant::RTriple => "R'''",
        }
    }

    pub fn on_prime_row(self) -> bool {
        matches!(self, RVariant::RPrime | RVariant::RTriple)
    }

    /// Number of labelled sites on the deletion row.
    pub fn label_count(self, n: i64) -> i64 {
        match self {
            RVariant::R | RVariant::RPrime => n,
            RVariant::RDouble | RVariant::RTriple => n + 1,
        }
    }

    /// Number of labels kept.
    pub fn kept(self, m: i64, n: i64) -> i64 {
        match self {
            RVariant::R | RVariant::RPrime => m,
            RVariant::RDouble | RVariant::RTriple => 2 * n + 1 - m,
        }
    }

    pub fn check(self, m: i64, n: i64) -> Result<()> {
        let ok = m >= 1
            && n >= 1
            && match self {
                RVariant::R => m < n && m % 2 == 0,
                RVariant::RPrime => m < n && m % 2 == 1,
                RVariant::RDouble => m > n && m <= 2 * n + 1 && m % 2 == 1,
                RVariant::RTriple => m > n && m <= 2 * n + 1 && m % 2 == 0,
            };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("{}({m},{n};T) is not defined", self.name())))
        }
    }
}

/// Row carrying the labels: `m` for l, `m + 1` for l'.
pub fn label_row(variant: RVariant, m: i64) -> i64 {
    if variant.on_prime_row() {
        m + 1
    } else {
        m
    }
}

/// Site with label `i` (from 1) on row `y` of a box whose left edge is `x = 0`.
pub fn label_site(y: i64, i: i64) -> Site {
    let first = if y.rem_euclid(2) == 1 { 0 } else { 1 };
    (first + 2 * (i - 1), y)
}

/// Validates `T` and returns it sorted.
pub fn r_labels(variant: RVariant, m: i64, n: i64, t: &[i64]) -> Result<Vec<i64>> {
    variant.check(m, n)?;
    let set: BTreeSet<i64> = t.iter().copied().collect();
    if set.len() != t.len() {
        return Err(Error::InvalidParameter("T has repeated labels".into()));
    }
    let count = variant.label_count(n);
    if set.iter().any(|&i| i < 1 || i > count) {
        return Err(Error::InvalidParameter(format!("labels of T must lie in [1, {count}]")));
    }
    if set.len() as i64 != variant.kept(m, n) {
        return Err(Error::InvalidParameter(format!(
            "{}({m},{n};T) needs |T| = {}",
            variant.name(),
            variant.kept(m, n)
        )));
    }
    Ok(set.into_iter().collect())
}

/// `AR_{m,n}` minus the labelled sites whose labels are not in `T`.
pub fn build_r_graph(variant: RVariant, m: i64, n: i64, t: &[i64]) -> Result<MatchGraph> {
    let t = r_labels(variant, m, n, t)?;
    let y = label_row(variant, m);
    let removed: BTreeSet<Site> = (1..=variant.label_count(n))
        .filter(|i| t.binary_search(i).is_err())
        .map(|i| label_site(y, i))
        .collect();
    let sites = aztec_rectangle_sites(m, n, 0, 0).into_iter().filter(|s| !removed.contains(s));
    Ok(MatchGraph::from_sites(sites))
}

/// The dual graph of the Aztec diamond of order `n`, i.e. `AR_{n,n}`.
pub fn aztec_diamond_graph(n: i64) -> MatchGraph {
    MatchGraph::from_sites(aztec_rectangle_sites(n, n, 0, 0))
}

/// Families of Aztec rectangles with odd windows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "AR")]
    Ar,
    #[serde(rename = "AR'")]
    ArPrime,
    #[serde(rename = "AR''")]
    ArDouble,
    #[serde(rename = "AR'''")]
    ArTriple,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Ar, Family::ArPrime, Family::ArDouble, Family::ArTriple];

    pub fn r_variant(self) -> RVariant {
        match self {
            Family::Ar => RVariant::R,
            Family::ArPrime => RVariant::RPrime,
            Family::ArDouble => RVariant::RDouble,
            Family::ArTriple => RVariant::RTriple,
        }
    }

    /// Whether the outer boundary grows (height < width) or shrinks.
    pub fn grows(self) -> bool {
        matches!(self, Family::Ar | Family::ArPrime)
    }

    pub fn m_parity(self) -> i64 {
        match self {
            Family::Ar | Family::ArTriple => 0,
            Family::ArPrime | Family::ArDouble => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Ar => "AR",
            Family::ArPrime => "AR'",
            Family::ArDouble => "AR''",
            Family::ArTriple => "AR'''",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowSpec {
    pub a: i64,
    /// Twice the label coordinate of the centre.
    pub center2: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowedSpec {
    pub family: Family,
    pub m: i64,
    pub k: i64,
    pub holes: Vec<WindowSpec>,
}

impl WindowedSpec {
    pub fn new(family: Family, m: i64, k: i64, holes: &[(i64, i64)]) -> WindowedSpec {
        WindowedSpec {
            family,
            m,
            k,
            holes: holes.iter().map(|&(a, center2)| WindowSpec { a, center2 }).collect(),
        }
    }

    pub fn s(&self) -> i64 {
        self.holes.len() as i64
    }

    /// `a = sum (a_i + 1)`
    pub fn a(&self) -> i64 {
        self.holes.iter().map(|h| h.a + 1).sum()
    }

    /// Width of the reference frame `AR_{m, m +- a}`.
    pub fn frame_n(&self) -> i64 {
        if self.family.grows() {
            self.m + self.a()
        } else {
            self.m - self.a()
        }
    }

    pub fn with_k(&self, k: i64) -> WindowedSpec {
        WindowedSpec { k, ..self.clone() }
    }

    /// The runs `A_i`: `a_i + 1` consecutive labels centred at `c_i`.
    pub fn runs(&self) -> Result<Vec<Vec<i64>>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        let count = self.family.r_variant().label_count(self.frame_n());
        for h in &self.holes {
            if h.a < 0 {
                return Err(Error::InvalidParameter("a_i must be nonnegative".into()));
            }
            if (h.center2 - h.a).rem_euclid(2) != 0 {
                return Err(Error::InvalidPlacement(format!(
                    "a run of {} labels cannot be centred at {}/2",
                    h.a + 1,
                    h.center2
                )));
            }
            let lo = (h.center2 - h.a) / 2;
            let hi = (h.center2 + h.a) / 2;
            if lo < 1 || hi > count {
                return Err(Error::InvalidPlacement(format!("run [{lo},{hi}] leaves the labels 1..{count}")));
            }
            let run: Vec<i64> = (lo..=hi).collect();
            for &i in &run {
                if !seen.insert(i) {
                    return Err(Error::InvalidPlacement(format!("runs overlap at label {i}")));
                }
            }
            out.push(run);
        }
        Ok(out)
    }

    /// Kept labels of the R-graph: the complement of the runs.
    pub fn kept_labels(&self) -> Result<Vec<i64>> {
        let runs = self.runs()?;
        let gone: BTreeSet<i64> = runs.into_iter().flatten().collect();
        let count = self.family.r_variant().label_count(self.frame_n());
        Ok((1..=count).filter(|i| !gone.contains(i)).collect())
    }

    fn check_frame(&self) -> Result<()> {
        if self.m < 1 || self.m.rem_euclid(2) != self.family.m_parity() {
            return Err(Error::InvalidParameter(format!(
                "family {} needs m of parity {}, got {}",
                self.family.name(),
                self.family.m_parity(),
                self.m
            )));
        }
        if self.holes.is_empty() {
            return Err(Error::InvalidParameter("at least one window is required".into()));
        }
        if self.frame_n() < 1 {
            return Err(Error::InvalidParameter("frame width must be positive".into()));
        }
        if self.k < 0 {
            return Err(Error::InvalidParameter("k must be nonnegative".into()));
        }
        self.family.r_variant().check(self.m, self.frame_n())
    }
}

/// An Aztec rectangle with odd windows, with its bookkeeping.
#[derive(Clone, Debug)]
pub struct WindowedRegion {
    pub spec: WindowedSpec,
    pub region: Region,
    pub graph: MatchGraph,
    pub windows: Vec<OddRect>,
    /// `(m', n', x0, y0)` of the outer Aztec rectangle.
    pub outer: (i64, i64, i64, i64),
}

/// Window centres in lattice coordinates, on the label row of the frame.
pub fn window_centres(spec: &WindowedSpec) -> Vec<Site> {
    let y = label_row(spec.family.r_variant(), spec.m);
    let (x1, _) = label_site(y, 1);
    spec.holes.iter().map(|h| (x1 + h.center2 - 2, y)).collect()
}

/// Sites of the reference frame `AR_{m, m +- a}`.
pub fn windowed_frame(spec: &WindowedSpec) -> Vec<Site> {
    aztec_rectangle_sites(spec.m, spec.frame_n(), 0, 0)
}

fn assemble(spec: &WindowedSpec, allow_cruciform: bool) -> Result<WindowedRegion> {
    spec.check_frame()?;
    spec.runs()?;
    let min_a = spec.holes.iter().map(|h| h.a).min().unwrap_or(0);
    if spec.k > min_a {
        if spec.family.grows() {
            return Err(Error::Inadmissible(format!(
                "k = {} exceeds min a_i = {min_a}; the windows would leave the grid",
                spec.k
            )));
        }
        if !allow_cruciform {
            return Err(Error::InvalidParameter(format!(
                "k = {} exceeds min a_i = {min_a}: use the cruciform builder",
                spec.k
            )));
        }
    }
    let n = spec.frame_n();
    let (k, m) = (spec.k, spec.m);
    let outer = if spec.family.grows() {
        (m + k, n + k, -k, -k)
    } else {
        if m - k < 0 || n - k < 0 {
            return Err(Error::InvalidParameter(format!("AR_{{{},{}}} is empty", m - k, n - k)));
        }
        (m - k, n - k, k, k)
    };
    let mut windows = Vec::new();
    for (h, c) in spec.holes.iter().zip(window_centres(spec)) {
        windows.push(OddRect::new(k, h.a - k, c.0, c.1)?);
    }
    let cut: BTreeSet<Site> = windows.iter().flat_map(|w| w.sites()).collect();
    let sites: Vec<Site> = aztec_rectangle_sites(outer.0, outer.1, outer.2, outer.3)
        .into_iter()
        .filter(|s| !cut.contains(s))
        .collect();
    let graph = MatchGraph::from_sites(sites.iter().copied());
    let region = Region::from_sites(sites);
    if region.balance() != 0 {
        return Err(Error::Internal(format!("windowed region {spec:?} is unbalanced")));
    }
    Ok(WindowedRegion { spec: spec.clone(), region, graph, windows, outer })
}

/// `AR_{m+k,m+k+a}` (or `AR_{m-k,m-k-a}`) minus the windows
/// `O_{k, a_i - k}` centred at the labels `c_i`.
pub fn build_windowed_region(spec: &WindowedSpec) -> Result<WindowedRegion> {
    if spec.k > 0 && spec.holes.iter().any(|h| h.a < spec.k) && !spec.family.grows() {
        return Err(Error::InvalidParameter(
            "extremal windows turned inside out: use the cruciform builder".into(),
        ));
    }
    assemble(spec, false)
}

/// The cruciform regime: `AR''`/`AR'''` with `k` past the first and last
/// window. Built by `k` complementation steps from the `k = 0` region.
pub fn build_cruciform_windowed(spec: &WindowedSpec) -> Result<WindowedRegion> {
    if spec.family.grows() {
        return Err(Error::InvalidParameter("cruciform regions arise only for AR'' and AR'''".into()));
    }
    spec.check_frame()?;
    spec.runs()?;
    let s = spec.holes.len();
    let (a1, as_) = (spec.holes[0].a, spec.holes[s - 1].a);
    if spec.k < a1 + 1 || spec.k < as_ + 1 {
        return Err(Error::InvalidParameter(format!(
            "k = {} is not past both extremal windows (a_1 = {a1}, a_s = {as_})",
            spec.k
        )));
    }
    if spec.holes[1..s - 1].iter().any(|h| h.a < spec.k) {
        return Err(Error::InvalidParameter("interior windows need a_i >= k".into()));
    }
    let base = assemble(&spec.with_k(0), false)?;
    let evolved = crate::complement::evolve_windowed(&base, spec.k)?;
    let centres = window_centres(spec);
    let windows = (1..s.saturating_sub(1))
        .map(|i| OddRect::new(spec.k, spec.holes[i].a - spec.k, centres[i].0, centres[i].1))
        .collect::<Result<Vec<_>>>()?;
    for w in &windows {
        if w.sites().iter().any(|s| evolved.graph.sites().contains(s)) {
            return Err(Error::Internal(format!("interior window {w:?} is not a hole of the evolved region")));
        }
    }
    let region = Region::from_sites(evolved.graph.sites());
    let outer = (spec.m - spec.k, spec.frame_n() - spec.k, spec.k, spec.k);
    Ok(WindowedRegion { spec: spec.clone(), region, graph: evolved.graph, windows, outer })
}

/// `AD_18` with an `AD_3`-shaped window at its centre.
pub fn figure1_left() -> MatchGraph {
    let hole: BTreeSet<Site> = aztec_rectangle_sites(3, 3, 15, 15).into_iter().collect();
    MatchGraph::from_sites(aztec_rectangle_sites(18, 18, 0, 0).into_iter().filter(|s| !hole.contains(s)))
}

/// `AD_{23,18}` with an `O_{2,2}` window centred on its symmetry axis.
pub fn figure1_right() -> MatchGraph {
    let hole = OddRect::new(2, 2, 18, 23).expect("aligned");
    let cut: BTreeSet<Site> = hole.sites().into_iter().collect();
    MatchGraph::from_sites(aztec_rectangle_sites(23, 18, 0, 0).into_iter().filter(|s| !cut.contains(s)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn r_graph_sizes() {
        let g = build_r_graph(RVariant::R, 4, 7, &[1, 4, 5, 7]).unwrap();
        assert_eq!(g.vertex_count() as i64, 2 * 4 * 7 + 4 + 7 - 3);
        assert!(g.is_balanced());
        let g = build_r_graph(RVariant::R, 2, 3, &[1, 2]).unwrap();
        assert_eq!(g.vertex_count(), 16);
        assert!(g.is_balanced());
        for (v, m, n, t) in [
            (RVariant::RPrime, 5, 7, vec![1, 2, 4, 5, 7]),
            (RVariant::RDouble, 5, 3, vec![2, 4]),
            (RVariant::RTriple, 6, 3, vec![2]),
        ] {
            assert!(build_r_graph(v, m, n, &t).unwrap().is_balanced());
        }
        assert!(build_r_graph(RVariant::R, 3, 7, &[1, 2, 3]).is_err());
        assert!(build_r_graph(RVariant::R, 2, 3, &[1]).is_err());
    }

    #[test]
    fn windowed_regions_are_balanced() {
        let spec = WindowedSpec::new(Family::Ar, 14, 2, &[(4, 14), (2, 26), (3, 41)]);
        let w = build_windowed_region(&spec).unwrap();
        assert_eq!(w.region.balance(), 0);
        assert_eq!(w.outer.0, 16);
        assert_eq!(w.outer.1, 28);
        let spec = WindowedSpec::new(Family::ArDouble, 19, 2, &[(3, 11), (2, 20)]);
        assert_eq!(build_windowed_region(&spec).unwrap().region.balance(), 0);
        let spec = WindowedSpec::new(Family::Ar, 2, 1, &[(1, 5)]);
        let w = build_windowed_region(&spec).unwrap();
        assert_eq!((w.outer.0, w.outer.1), (3, 5));
    }

    #[test]
    fn wrong_centre_parity_is_rejected() {
        let spec = WindowedSpec::new(Family::Ar, 2, 1, &[(1, 4)]);
        assert!(matches!(build_windowed_region(&spec), Err(Error::InvalidPlacement(_))));
        let spec = WindowedSpec::new(Family::Ar, 2, 1, &[(1, 3), (1, 5)]);
        assert!(matches!(build_windowed_region(&spec), Err(Error::InvalidPlacement(_))));
    }

    #[test]
    fn figure_one_sizes() {
        assert_eq!(figure1_left().vertex_count(), 684 - 24);
        assert_eq!(figure1_right().vertex_count(), 2 * 23 * 18 + 23 + 18 - 13);
        assert!(figure1_left().is_balanced());
        assert!(figure1_right().is_balanced());
    }
}
