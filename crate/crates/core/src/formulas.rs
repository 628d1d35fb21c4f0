//! Closed-form counts and the powers of two relating evolved graphs.

use crate::lattice::{r_labels, Color, Family, OddRect, RVariant, SepAxis, Separation, WindowedSpec};
use crate::{Error, Result};
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// `M(AD_n) = 2^{n(n+1)/2}`.
pub fn aztec_diamond_count(n: u64) -> BigUint {
    BigUint::one() << (n * (n + 1) / 2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormulaInput {
    pub variant: RVariant,
    pub m: i64,
    pub n: i64,
    pub t: Vec<i64>,
}

fn factorial(n: i64) -> BigUint {
    (2..=n.max(1)).fold(BigUint::one(), |acc, i| acc * BigUint::from(i as u64))
}

/// `prod_{i=lo}^{hi} (i-1)!`, empty when `hi < lo`.
fn factorial_product(lo: i64, hi: i64) -> BigUint {
    (lo..=hi).fold(BigUint::one(), |acc, i| acc * factorial(i - 1))
}

/// `prod_{1 <= i < j <= r} (t_{2j - off} - t_{2i - off})` with 1-based `t`.
fn strided_vandermonde(t: &[i64], r: i64, off: i64) -> BigUint {
    let mut p = BigUint::one();
    for j in 1..=r {
        for i in 1..j {
            let a = t[(2 * j - off - 1) as usize];
            let b = t[(2 * i - off - 1) as usize];
            debug_assert!(a > b);
            p *= BigUint::from((a - b) as u64);
        }
    }
    p
}

fn exact_div(num: BigUint, den: BigUint) -> Result<BigUint> {
    let (q, r) = num.div_rem(&den);
    if !r.is_zero() {
        return Err(Error::Internal("product formula division left a remainder".into()));
    }
    Ok(q)
}

/// Closed-form perfect matching count of `R`, `R'`, `R''` or `R'''`.
pub fn count_r_formula(input: &FormulaInput) -> Result<BigUint> {
    let FormulaInput { variant, m, n, .. } = *input;
    let t = r_labels(variant, m, n, &input.t)?;
    let pow = |e: i64| -> BigUint {
        assert!(e >= 0);
        BigUint::one() << e as u64
    };
    let boundary = || -> BigUint {
        t.iter().fold(BigUint::one(), |acc, &ti| acc * factorial(ti - 1) * factorial(n + 1 - ti))
    };
    match variant {
        RVariant::R => {
            let h = m / 2;
            let num = pow(m * (m + 4) / 4) * strided_vandermonde(&t, h, 1) * strided_vandermonde(&t, h, 0);
            let d = factorial_product(1, h);
            exact_div(num, &d * &d)
        }
        RVariant::RPrime => {
            let num = pow((m * m + 4 * m - 1) / 4)
                * strided_vandermonde(&t, (m - 1) / 2, 0)
                * strided_vandermonde(&t, (m + 1) / 2, 1);
            exact_div(num, factorial_product(1, (m - 1) / 2) * factorial_product(1, (m + 1) / 2))
        }
        RVariant::RDouble => {
            let r = n - (m - 1) / 2;
            let f = factorial_product((m + 3) / 2, n + 1);
            let num = pow((m * m - 2 * m + 1) / 4 + n)
                * &f
                * &f
                * strided_vandermonde(&t, r, 0)
                * strided_vandermonde(&t, r, 1);
            exact_div(num, boundary())
        }
        RVariant::RTriple => {
            let num = pow((m * m - 2 * m) / 4 + n)
                * factorial_product((m + 2) / 2, n + 1)
                * factorial_product((m + 4) / 2, n + 1)
                * strided_vandermonde(&t, n - m / 2, 0)
                * strided_vandermonde(&t, n - m / 2 + 1, 1);
            exact_div(num, boundary())
        }
    }
}

fn binom2(k: i64) -> i64 {
    k * (k + 1) / 2
}

/// Exponent of 2 relating a windowed region with window height `2k + 1`
/// to its `k = 0` counterpart.
pub fn window_exponent(family: Family, m: i64, k: i64, s: i64) -> i64 {
    if family.grows() {
        binom2(k) * (s + 1) + k * m
    } else {
        binom2(k) * (s + 1) - k * (m + 1)
    }
}

/// `2^e * M(R-graph)` for the region of `spec`, computed from the product
/// formula. Fails if a negative exponent does not divide evenly.
pub fn predicted_windowed_count(spec: &WindowedSpec) -> Result<BigUint> {
    let base = count_r_formula(&r_input(spec)?)?;
    let e = window_exponent(spec.family, spec.m, spec.k, spec.s());
    scale_pow2(base, e)
}

/// The R-graph input behind a windowed region: frame `AR_{m, m +- a}` with
/// the runs removed.
pub fn r_input(spec: &WindowedSpec) -> Result<FormulaInput> {
    Ok(FormulaInput { variant: spec.family.r_variant(), m: spec.m, n: spec.frame_n(), t: spec.kept_labels()? })
}

/// `c * 2^e`, exact.
pub fn scale_pow2(c: BigUint, e: i64) -> Result<BigUint> {
    if e >= 0 {
        Ok(c << e as u64)
    } else {
        let d = BigUint::one() << (-e) as u64;
        let (q, r) = c.div_rem(&d);
        if !r.is_zero() {
            return Err(Error::Internal(format!("count is not divisible by 2^{}", -e)));
        }
        Ok(q)
    }
}

/// Whether the hole's majority colour is the one treated as white when
/// the shading has the given parity (0: absolute colours).
pub fn is_white_relative(h: &OddRect, parity: i64) -> bool {
    (h.cy - h.k).rem_euclid(2) == parity.rem_euclid(2)
}

/// `l` for white-placed holes, `-(l + 1)` for black-placed ones.
pub fn flank_charge(h: &OddRect) -> i64 {
    flank_charge_rel(h, 0)
}

pub fn flank_charge_rel(h: &OddRect, parity: i64) -> i64 {
    if is_white_relative(h, parity) {
        h.l
    } else {
        -(h.l + 1)
    }
}

/// Height-based flank charge: `-(k + 1)` white, `k` black.
pub fn height_flank_charge(h: &OddRect) -> i64 {
    if h.majority() == Color::White {
        -(h.k + 1)
    } else {
        h.k
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Evolved {
    Hole(OddRect),
    Separations(Vec<Separation>),
}

/// Same centre; white `O_{k,l}` becomes `O_{k+1,l-1}`, black `O_{k,l}`
/// becomes `O_{k-1,l+1}`. Thin holes become runs of separations.
pub fn evolved_form(h: &OddRect) -> Evolved {
    evolved_form_rel(h, 0)
}

pub fn evolved_form_rel(h: &OddRect, parity: i64) -> Evolved {
    if is_white_relative(h, parity) {
        if h.l >= 1 {
            Evolved::Hole(OddRect { k: h.k + 1, l: h.l - 1, ..*h })
        } else {
            Evolved::Separations(
                (0..=h.k)
                    .map(|r| Separation { site: (h.cx, h.cy - h.k + 2 * r), axis: SepAxis::Vertical })
                    .collect(),
            )
        }
    } else if h.k >= 1 {
        Evolved::Hole(OddRect { k: h.k - 1, l: h.l + 1, ..*h })
    } else {
        Evolved::Separations(
            (0..=h.l)
                .map(|r| Separation { site: (h.cx - h.l + 2 * r, h.cy), axis: SepAxis::Horizontal })
                .collect(),
        )
    }
}

/// Sum of width-based flank charges.
pub fn flank_exponent(holes: &[OddRect]) -> i64 {
    holes.iter().map(flank_charge).sum()
}

/// Sum of height-based flank charges. Requires total charge 0.
pub fn alternative_flank_exponent(holes: &[OddRect]) -> Result<i64> {
    let q: i64 = holes.iter().map(|h| h.charge()).sum();
    if q != 0 {
        return Err(Error::InvalidInput(format!("total charge {q} is not zero")));
    }
    Ok(holes.iter().map(height_flank_charge).sum())
}

/// Horizontal multiplet `O_{0,k+l}` with the same centre.
pub fn horizontal_multiplet(h: &OddRect) -> OddRect {
    OddRect { k: 0, l: h.k + h.l, ..*h }
}

/// Vertical multiplet `O_{k+l,0}` with the same centre.
pub fn vertical_multiplet(h: &OddRect) -> OddRect {
    OddRect { k: h.k + h.l, l: 0, ..*h }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(variant: RVariant, m: i64, n: i64, t: &[i64]) -> BigUint {
        count_r_formula(&FormulaInput { variant, m, n, t: t.to_vec() }).unwrap()
    }

    #[test]
    fn small_formula_values() {
        assert_eq!(f(RVariant::R, 2, 3, &[1, 2]), BigUint::from(8u8));
        assert_eq!(f(RVariant::R, 4, 5, &[1, 2, 3, 4]), BigUint::from(1024u32));
        assert_eq!(f(RVariant::RPrime, 1, 2, &[1]), BigUint::from(2u8));
        assert_eq!(aztec_diamond_count(0), BigUint::one());
        assert_eq!(aztec_diamond_count(8), BigUint::one() << 36);
    }

    #[test]
    fn exponents() {
        assert_eq!(window_exponent(Family::Ar, 2, 1, 1), 4);
        assert_eq!(window_exponent(Family::ArDouble, 5, 1, 1), -4);
        for fam in Family::ALL {
            assert_eq!(window_exponent(fam, 7, 0, 3), 0);
        }
    }

    #[test]
    fn flank_charges_and_evolution() {
        let w = OddRect::new(2, 3, 4, 2).unwrap();
        assert_eq!(w.majority(), Color::White);
        assert_eq!(flank_charge(&w), 3);
        let b = OddRect::new(2, 3, 3, 3).unwrap();
        assert_eq!(flank_charge(&b), -4);
        let w0 = OddRect::new(0, 3, 4, 4).unwrap();
        assert_eq!(evolved_form(&w0), Evolved::Hole(OddRect::new(1, 2, 4, 4).unwrap()));
        let b42 = OddRect::new(4, 2, 12, 17).unwrap();
        assert_eq!(evolved_form(&b42), Evolved::Hole(OddRect::new(3, 3, 12, 17).unwrap()));
        let w20 = OddRect::new(2, 0, 1, 2).unwrap();
        assert_eq!(w20.majority(), Color::White);
        match evolved_form(&w20) {
            Evolved::Separations(s) => {
                assert_eq!(s.len(), 3);
                assert!(s.iter().all(|x| x.axis == SepAxis::Vertical && x.site.0 == 1));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn remark_five_example() {
        let w = OddRect::new(1, 2, 5, 1).unwrap();
        let b = OddRect::new(2, 1, 11, 3).unwrap();
        assert_eq!(w.majority(), Color::White);
        assert_eq!(b.majority(), Color::Black);
        assert_eq!(flank_exponent(&[w, b]), 0);
        assert_eq!(alternative_flank_exponent(&[w, b]).unwrap(), 0);
        assert!(alternative_flank_exponent(&[w]).is_err());
        assert_eq!(alternative_flank_exponent(&[]).unwrap(), 0);
    }

    #[test]
    fn telescoping_sum() {
        for s in 1..4 {
            for k in 0..5 {
                for l in 0..5 {
                    let sum: i64 = (0..k).map(|j| s * ((k + l - j) - j - 1)).sum();
                    assert_eq!(sum, s * k * l);
                }
            }
        }
    }

    fn hole(k: i64, l: i64, cx: i64, cy: i64, white: bool) -> OddRect {
        // shift cy to give the corner row the wanted colour, then fix cx parity
        let cy = if ((cy - k).rem_euclid(2) == 0) == white { cy } else { cy + 1 };
        let cx = if (cx + cy - 1 - k - l).rem_euclid(2) == 0 { cx } else { cx + 1 };
        OddRect::new(k, l, cx, cy).unwrap()
    }

    proptest! {
        #[test]
        fn width_and_height_flank_exponents_agree(
            whites in proptest::collection::vec((0i64..4, 0i64..4), 0..4),
            blacks in proptest::collection::vec((0i64..4, 0i64..4), 0..4),
        ) {
            let mut holes: Vec<OddRect> = whites.iter().map(|&(k, l)| hole(k, l, 0, 0, true)).collect();
            holes.extend(blacks.iter().map(|&(k, l)| hole(k, l, 0, 0, false)));
            let q: i64 = holes.iter().map(|h| h.charge()).sum();
            // balance with monomer holes of the opposite colour
            for _ in 0..q.abs() {
                holes.push(hole(0, 0, 0, 0, q < 0));
            }
            prop_assert_eq!(holes.iter().map(|h| h.charge()).sum::<i64>(), 0);
            prop_assert_eq!(flank_exponent(&holes), alternative_flank_exponent(&holes).unwrap());
        }

        #[test]
        fn evolution_keeps_centre(k in 0i64..5, l in 0i64..5, cx in -6i64..6, cy in -6i64..6, white: bool) {
            let h = hole(k, l, cx, cy, white);
            if let Evolved::Hole(e) = evolved_form(&h) {
                prop_assert_eq!((e.cx, e.cy), (h.cx, h.cy));
                prop_assert_eq!((e.k - h.k).abs(), 1);
                prop_assert_eq!(e.k + e.l, h.k + h.l);
                prop_assert_eq!(e.charge(), -h.charge());
            }
        }

        #[test]
        fn reflection_invariance(m in 1i64..6, extra in 1i64..4, seed in 0u64..1000) {
            let n = m + extra;
            let variant = if m % 2 == 0 { RVariant::R } else { RVariant::RPrime };
            let mut labels: Vec<i64> = (1..=n).collect();
            let mut s = seed;
            for i in (1..labels.len()).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                labels.swap(i, (s >> 33) as usize % (i + 1));
            }
            let mut t: Vec<i64> = labels[..m as usize].to_vec();
            t.sort();
            let mut r: Vec<i64> = t.iter().map(|x| n + 1 - x).collect();
            r.sort();
            prop_assert_eq!(f(variant, m, n, &t), f(variant, m, n, &r));
        }
    }
}
