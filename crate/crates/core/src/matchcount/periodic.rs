//! One translation-invariant Kasteleyn weighting of the torus: an edge
//! weighs -1 when it leaves its white end towards the north-east, +1
//! otherwise. Every square face has one edge of each direction, so each
//! face carries exactly one -1.

use super::det::{exact_determinant, IntMatrix};
use super::kasteleyn::THETAS;
use super::SignPattern;
use crate::lattice::{Color, Dir, MatchGraph, Part, Topology, TorusGraph};
use crate::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use std::collections::HashMap;

/// `K_theta` with rows indexed by white and columns by black vertices, in
/// vertex order. Seam crossings in x pick up `theta.0`, in y `theta.1`.
pub fn periodic_matrix(g: &MatchGraph, theta: (i64, i64)) -> Result<IntMatrix> {
    if !matches!(g.topology, Topology::Torus { .. }) {
        return Err(Error::InvalidInput("periodic weights live on a torus".into()));
    }
    if g.vertices.iter().any(|v| v.part != Part::Whole) {
        return Err(Error::Unsupported("split vertices break the periodic weighting".into()));
    }
    let mut row = HashMap::new();
    let mut col = HashMap::new();
    for (i, v) in g.vertices.iter().enumerate() {
        match v.color() {
            Color::White => row.insert(i, row.len()),
            Color::Black => col.insert(i, col.len()),
        };
    }
    if row.len() != col.len() {
        return Err(Error::InvalidInput("unbalanced graph has no square matrix".into()));
    }
    let mut k = vec![vec![0i64; col.len()]; row.len()];
    for &(a, b) in &g.edges {
        let (w, bl) = if g.vertices[a].color() == Color::White { (a, b) } else { (b, a) };
        let d = g
            .topology
            .dir_between(g.vertices[w].site(), g.vertices[bl].site())
            .ok_or_else(|| Error::Internal("edge joins non-adjacent sites".into()))?;
        let mut x = if d == Dir::NE { -1 } else { 1 };
        let (wx, wy) = g.winding(w, bl);
        if wx != 0 {
            x *= theta.0;
        }
        if wy != 0 {
            x *= theta.1;
        }
        k[row[&w]][col[&bl]] += x;
    }
    Ok(k)
}

/// `det K_theta` in the order of `THETAS`.
pub fn periodic_determinants(g: &MatchGraph) -> Result<Vec<BigInt>> {
    let ks = THETAS.iter().map(|&t| periodic_matrix(g, t)).collect::<Result<Vec<_>>>()?;
    Ok(ks.par_iter().map(exact_determinant).collect())
}

/// The frozen combination: every determinant counts positively except the
/// one at index `(n mod 2) + 2 (m mod 2)`.
pub fn periodic_signs(m: usize, n: usize) -> SignPattern {
    let mut p = [1; 4];
    p[n % 2 + 2 * (m % 2)] = -1;
    p
}

/// `(1/2) |sum s_theta det K_theta|` with the frozen signs.
pub fn combine(dets: &[BigInt], signs: SignPattern) -> Result<BigUint> {
    let s: BigInt = dets.iter().zip(signs).map(|(d, si)| d * BigInt::from(si)).sum();
    let (q, r) = s.abs().div_rem(&BigInt::from(2));
    if !r.is_zero() {
        return Err(Error::Internal("signed determinant sum is odd".into()));
    }
    Ok(q.magnitude().clone())
}

/// Perfect matchings of a torus without holes or separations. Holes break
/// the translation invariance the frozen signs rely on.
pub fn count_torus_periodic(t: &TorusGraph) -> Result<BigUint> {
    if !t.holes.is_empty() || !t.separations.is_empty() {
        return Err(Error::Unsupported("the periodic combination needs a torus without defects".into()));
    }
    if t.graph.vertices.is_empty() {
        return Ok(BigUint::from(1u8));
    }
    combine(&periodic_determinants(&t.graph)?, periodic_signs(t.m, t.n))
}
