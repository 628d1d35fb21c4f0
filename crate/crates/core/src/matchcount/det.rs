//! Exact integer determinants.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

/// Dense square integer matrix, row-major.
pub type IntMatrix = Vec<Vec<i64>>;

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for a in BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// The `count` largest primes below `2^62`.
fn primes(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut c = (1u64 << 62) - 1;
    while out.len() < count {
        if is_prime_u64(c) {
            out.push(c);
        }
        c -= 2;
    }
    out
}

/// Determinant modulo a prime by Gaussian elimination.
pub fn det_mod(m: &IntMatrix, p: u64) -> u64 {
    let n = m.len();
    let mut a: Vec<Vec<u64>> =
        m.iter().map(|r| r.iter().map(|&v| v.rem_euclid(p as i64) as u64).collect()).collect();
    let mut det = 1u64;
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| a[r][c] != 0) else {
            return 0;
        };
        if piv != c {
            a.swap(piv, c);
            det = (p - det) % p;
        }
        det = mul_mod(det, a[c][c], p);
        let inv = pow_mod(a[c][c], p - 2, p);
        let (top, rest) = a.split_at_mut(c + 1);
        let pivot_row = &top[c];
        for row in rest.iter_mut() {
            if row[c] == 0 {
                continue;
            }
            let f = mul_mod(row[c], inv, p);
            for j in c..n {
                if pivot_row[j] != 0 {
                    row[j] = (row[j] + p - mul_mod(f, pivot_row[j], p)) % p;
                }
            }
        }
    }
    det
}

/// Upper bound on `|det|`: the product of the rows' Euclidean norms,
/// rounded up to a power of two. Returns the exponent.
fn hadamard_bits(m: &IntMatrix) -> u64 {
    let mut bits = 0f64;
    for r in m {
        let s: f64 = r.iter().map(|&v| (v as f64) * (v as f64)).sum();
        if s == 0.0 {
            return 0;
        }
        bits += 0.5 * s.log2();
    }
    bits.ceil() as u64 + 1
}

/// Exact determinant by residues modulo primes near `2^62` and Chinese
/// remaindering. Matrices of dimension at most 12 are also run through
/// fraction-free elimination and the two results compared.
pub fn exact_determinant(m: &IntMatrix) -> BigInt {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "matrix must be square");
    if n == 0 {
        return BigInt::one();
    }
    if m.iter().any(|r| r.iter().all(|&v| v == 0)) {
        return BigInt::zero();
    }
    let need = hadamard_bits(m) + 2;
    let ps = primes((need / 61 + 1) as usize);
    let residues: Vec<u64> = ps.par_iter().map(|&p| det_mod(m, p)).collect();
    let d = crt_symmetric(&residues, &ps);
    if n <= 12 {
        let b = bareiss(m);
        assert_eq!(d, b, "modular and fraction-free determinants disagree");
    }
    d
}

/// Combines residues into the representative of least absolute value.
fn crt_symmetric(res: &[u64], ps: &[u64]) -> BigInt {
    let mut x = BigUint::zero();
    let mut modulus = BigUint::one();
    for (&r, &p) in res.iter().zip(ps) {
        let pb = BigUint::from(p);
        let cur = (&x % &pb).to_u64_digits().first().copied().unwrap_or(0);
        let mm = (&modulus % &pb).to_u64_digits().first().copied().unwrap_or(0);
        let diff = (r + p - cur) % p;
        let t = mul_mod(diff, pow_mod(mm, p - 2, p), p);
        x += &modulus * BigUint::from(t);
        modulus *= pb;
    }
    let half = &modulus >> 1;
    if x > half {
        BigInt::from_biguint(Sign::Minus, modulus - x)
    } else {
        BigInt::from_biguint(Sign::Plus, x)
    }
}

/// Fraction-free (Bareiss) elimination over the integers.
pub fn bareiss(m: &IntMatrix) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
    let mut sign = 1;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(s) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, s);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

pub(crate) fn abs_to_uint(d: &BigInt) -> BigUint {
    d.abs().to_biguint().expect("nonnegative")
}
