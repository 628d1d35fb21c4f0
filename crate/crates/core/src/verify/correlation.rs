use crate::formulas::{count_r_formula, r_input};
use crate::lattice::{build_windowed_region, Family, OddRect, TorusGraph, WindowedSpec};
use crate::matchcount::{count_planar_kasteleyn, count_torus_kasteleyn};
use crate::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

/// `omega_{m,n}(holes) = M(T_{m,n} - holes) / M(T_{m,n})`.
#[derive(Clone, Debug, Serialize)]
pub struct CorrelationValue {
    pub m: usize,
    pub n: usize,
    pub holes: Vec<OddRect>,
    #[serde(serialize_with = "ser_ratio")]
    pub value: BigRational,
}

fn ser_ratio<S: serde::Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn ratio(a: BigUint, b: BigUint) -> Result<BigRational> {
    if b.is_zero() {
        return Err(Error::UndefinedCorrelation("denominator has no perfect matching".into()));
    }
    Ok(BigRational::new(BigInt::from(a), BigInt::from(b)))
}

pub fn finite_size_correlation(m: usize, n: usize, holes: &[OddRect]) -> Result<CorrelationValue> {
    let t = TorusGraph::with_holes(m, n, holes.to_vec())?;
    let num = count_torus_kasteleyn(&t)?;
    let den = count_torus_kasteleyn(&TorusGraph::plain(m, n)?)?;
    Ok(CorrelationValue { m, n, holes: holes.to_vec(), value: ratio(num, den)? })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TildeKind {
    /// Runs of monomers on the axis, counted by the product formula.
    Plain,
    /// Windows of height `2k + 1`, counted directly.
    Prime { k: i64 },
}

/// Doubled centres of runs of lengths `a_i + 1` placed end to end, the
/// first one centred at `first`.
pub fn reference_centres(a: &[i64], first: i64) -> Vec<i64> {
    let mut out = Vec::new();
    let mut lo = match a.first() {
        Some(a0) => (first - a0).div_euclid(2),
        None => return out,
    };
    for &ai in a {
        out.push(2 * lo + ai);
        lo += ai + 1;
    }
    out
}

/// Finite-`m` version of the windowed correlation ratio: the count with
/// windows centred at `centres` over the count with windows at the
/// contiguous reference centres `centres0`.
pub fn finite_omega_tilde_ratio(
    kind: TildeKind,
    family: Family,
    m: i64,
    a: &[i64],
    centres: &[i64],
    centres0: &[i64],
) -> Result<BigRational> {
    if a.len() != centres.len() || a.len() != centres0.len() || a.is_empty() {
        return Err(Error::InvalidParameter("a, centres and reference centres must have equal nonzero length".into()));
    }
    if centres0 != reference_centres(a, centres[0]).as_slice() {
        return Err(Error::InvalidParameter(format!(
            "reference centres {centres0:?} are not contiguous runs starting at {}",
            centres[0]
        )));
    }
    let spec = |c: &[i64], k: i64| {
        let holes: Vec<(i64, i64)> = a.iter().copied().zip(c.iter().copied()).collect();
        WindowedSpec::new(family, m, k, &holes)
    };
    let count = |s: WindowedSpec| -> Result<BigUint> {
        match kind {
            TildeKind::Plain => count_r_formula(&r_input(&s)?),
            TildeKind::Prime { .. } => count_planar_kasteleyn(&build_windowed_region(&s)?.graph),
        }
    };
    let k = match kind {
        TildeKind::Plain => 0,
        TildeKind::Prime { k } => k,
    };
    ratio(count(spec(centres, k))?, count(spec(centres0, k))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn empty_torus_correlation_is_one() {
        assert!(finite_size_correlation(3, 4, &[]).unwrap().value.is_one());
        let one = OddRect::new(0, 0, 1, 0).unwrap();
        assert!(finite_size_correlation(3, 4, &[one]).unwrap().value.is_zero());
    }

    #[test]
    fn contiguous_references() {
        assert_eq!(reference_centres(&[1, 1], 3), vec![3, 7]);
        assert_eq!(reference_centres(&[2, 0, 3], 4), vec![4, 8, 13]);
    }

    #[test]
    fn reference_position_gives_one() {
        let r = finite_omega_tilde_ratio(TildeKind::Prime { k: 1 }, Family::Ar, 4, &[1, 1], &[3, 7], &[3, 7]).unwrap();
        assert!(r.is_one());
        assert!(finite_omega_tilde_ratio(TildeKind::Plain, Family::Ar, 4, &[1, 1], &[3, 9], &[3, 9]).is_err());
    }

    #[test]
    fn finite_ratios_agree() {
        let a = [1, 1];
        let c0 = reference_centres(&a, 3);
        let p = finite_omega_tilde_ratio(TildeKind::Prime { k: 1 }, Family::Ar, 4, &a, &[3, 11], &c0).unwrap();
        let q = finite_omega_tilde_ratio(TildeKind::Plain, Family::Ar, 4, &a, &[3, 11], &c0).unwrap();
        assert_eq!(p, q);
        assert!(!p.is_one());
    }
}
