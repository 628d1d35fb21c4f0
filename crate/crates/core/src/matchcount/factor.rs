use crate::{Error, Result};
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;

/// Prime powers times an unfactored cofactor (1 when complete).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub factors: Vec<(BigUint, u32)>,
    pub cofactor: BigUint,
}

impl Factorization {
    pub fn value(&self) -> BigUint {
        let mut v = self.cofactor.clone();
        for (p, e) in &self.factors {
            v *= p.pow(*e);
        }
        v
    }

    pub fn is_complete(&self) -> bool {
        self.cofactor.is_one()
    }

    /// The exponent of `p`, or 0.
    pub fn exponent(&self, p: u64) -> u32 {
        let p = BigUint::from(p);
        self.factors.iter().find(|(q, _)| *q == p).map_or(0, |(_, e)| *e)
    }

    /// Builds from small prime powers, for comparing with expected values.
    pub fn from_pairs(pairs: &[(u64, u32)]) -> Factorization {
        Factorization {
            factors: pairs.iter().map(|&(p, e)| (BigUint::from(p), e)).collect(),
            cofactor: BigUint::one(),
        }
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .factors
            .iter()
            .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        if !self.cofactor.is_one() {
            parts.push(format!("[{}]", self.cofactor));
        }
        if parts.is_empty() {
            parts.push("1".into());
        }
        write!(f, "{}", parts.join(" * "))
    }
}

impl Serialize for Factorization {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Factorization", 2)?;
        let fs: Vec<(String, u32)> = self.factors.iter().map(|(p, e)| (p.to_string(), *e)).collect();
        st.serialize_field("factors", &fs)?;
        st.serialize_field("cofactor", &self.cofactor.to_string())?;
        st.end()
    }
}

const TRIAL_LIMIT: u64 = 100_000;
const RHO_BUDGET: u64 = 2_000_000;
/// Below this bound the first thirteen primes are a deterministic witness set.
const MR_DETERMINISTIC: u128 = 3_317_044_064_679_887_385_961_981;

fn mod_pow(b: &BigUint, e: &BigUint, m: &BigUint) -> BigUint {
    b.modpow(e, m)
}

/// Miller-Rabin with the first thirteen prime bases. Returns `Some(true)`
/// only when that is a proof, `Some(false)` for composites, `None` when
/// `n` is a probable prime beyond the certified range.
pub fn certify_prime(n: &BigUint) -> Option<bool> {
    let two = BigUint::from(2u8);
    if *n < two {
        return Some(false);
    }
    const BASES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
    for p in BASES {
        let p = BigUint::from(p);
        if *n == p {
            return Some(true);
        }
        if (n % &p).is_zero() {
            return Some(false);
        }
    }
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'outer: for a in BASES {
        let mut x = mod_pow(&BigUint::from(a), &d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'outer;
            }
        }
        return Some(false);
    }
    match n.to_u128() {
        Some(v) if v < MR_DETERMINISTIC => Some(true),
        _ => None,
    }
}

/// Brent's variant of Pollard's rho. Returns a nontrivial factor or `None`
/// once the budget is spent.
fn rho(n: &BigUint, budget: &mut u64) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u8));
    }
    let one = BigUint::one();
    for c in 1u32.. {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u8);
        let mut r = 1u64;
        let mut q = BigUint::one();
        let mut g;
        let mut x;
        let mut ys;
        let m = 64u64;
        loop {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            loop {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += m;
                if *budget < m {
                    return None;
                }
                *budget -= m;
                if k >= r || g != one {
                    break;
                }
            }
            r *= 2;
            if g != one {
                break;
            }
        }
        if g == *n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g != one {
                    break;
                }
            }
        }
        if g != *n {
            return Some(g);
        }
    }
    None
}

/// Trial division, then Pollard rho with certified primality.
pub fn factorize(c: &BigUint) -> Result<Factorization> {
    if c.is_zero() {
        return Err(Error::InvalidInput("0 has no factorization".into()));
    }
    let mut found: BTreeMap<BigUint, u32> = BTreeMap::new();
    let mut n = c.clone();
    let tz = n.trailing_zeros().unwrap_or(0);
    if tz > 0 {
        found.insert(BigUint::from(2u8), tz as u32);
        n >>= tz;
    }
    let mut p = 3u64;
    while p < TRIAL_LIMIT && !n.is_one() {
        let bp = BigUint::from(p);
        if &bp * &bp > n {
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = n.div_rem(&bp);
            if !r.is_zero() {
                break;
            }
            n = q;
            e += 1;
        }
        if e > 0 {
            found.insert(bp, e);
        }
        p += 2;
    }
    let mut cofactor = BigUint::one();
    let mut stack = vec![n];
    let mut budget = RHO_BUDGET;
    while let Some(x) = stack.pop() {
        if x.is_one() {
            continue;
        }
        if x < BigUint::from(TRIAL_LIMIT) * BigUint::from(TRIAL_LIMIT) {
            // no factor below the trial limit remains, so x is prime
            *found.entry(x).or_insert(0) += 1;
            continue;
        }
        match certify_prime(&x) {
            Some(true) => *found.entry(x).or_insert(0) += 1,
            None => cofactor *= x,
            Some(false) => match rho(&x, &mut budget) {
                Some(d) => {
                    let q = &x / &d;
                    stack.push(d);
                    stack.push(q);
                }
                None => cofactor *= x,
            },
        }
    }
    Ok(Factorization { factors: found.into_iter().collect(), cofactor })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Pow;

    #[test]
    fn small_values() {
        assert_eq!(factorize(&BigUint::from(64u8)).unwrap(), Factorization::from_pairs(&[(2, 6)]));
        assert_eq!(factorize(&BigUint::from(1u8)).unwrap().to_string(), "1");
        assert_eq!(factorize(&BigUint::from(6961u32)).unwrap(), Factorization::from_pairs(&[(6961, 1)]));
        assert!(factorize(&BigUint::zero()).is_err());
    }

    #[test]
    fn display_style() {
        let f = Factorization::from_pairs(&[(2, 87), (3, 2), (11, 2), (101, 2), (131, 2), (6961, 2)]);
        let g = factorize(&f.value()).unwrap();
        assert_eq!(g, f);
        assert_eq!(g.to_string(), "2^87 * 3^2 * 11^2 * 101^2 * 131^2 * 6961^2");
    }

    #[test]
    fn rho_splits_semiprimes() {
        let p = BigUint::from(1_000_000_007u64);
        let q = BigUint::from(998_244_353u64);
        let n = &p * &q * &p;
        let f = factorize(&n).unwrap();
        assert!(f.is_complete());
        assert_eq!(f.exponent(1_000_000_007), 2);
        assert_eq!(f.exponent(998_244_353), 1);
        let big = BigUint::from(2u8).pow(61u32) - BigUint::one();
        assert_eq!(certify_prime(&big), Some(true));
    }
}
