use super::{aztec_rectangle_sites, Color, MatchGraph, Site};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// A unit square `[x, x+1] x [y, y+1]` of the square lattice.
pub type Square = (i64, i64);

/// A finite set of unit squares. Square `(x, y)` is white when `x + y` is
/// odd. The dual vertex of square `(x, y)` is the site `(x + y, x - y - 1)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Region {
    pub squares: BTreeSet<Square>,
}

impl Region {
    pub fn color(sq: Square) -> Color {
        if (sq.0 + sq.1).rem_euclid(2) == 1 {
            Color::White
        } else {
            Color::Black
        }
    }

    pub fn to_site(sq: Square) -> Site {
        (sq.0 + sq.1, sq.0 - sq.1 - 1)
    }

    pub fn from_site(s: Site) -> Square {
        debug_assert!((s.0 + s.1).rem_euclid(2) == 1);
        ((s.0 + s.1 + 1).div_euclid(2), (s.0 - s.1 - 1).div_euclid(2))
    }

    pub fn from_sites<I: IntoIterator<Item = Site>>(sites: I) -> Region {
        Region { squares: sites.into_iter().map(Region::from_site).collect() }
    }

    pub fn len(&self) -> usize {
        self.squares.len()
    }

    pub fn is_empty(&self) -> bool {
        self.squares.is_empty()
    }

    /// #white - #black.
    pub fn balance(&self) -> i64 {
        self.squares
            .iter()
            .map(|&s| if Region::color(s) == Color::White { 1 } else { -1 })
            .sum()
    }

    pub fn sites(&self) -> BTreeSet<Site> {
        self.squares.iter().map(|&s| Region::to_site(s)).collect()
    }
}

/// The Aztec diamond of order `n`: strips of lengths 2, 4, ..., 2n, 2n, ..., 2.
pub fn build_aztec_diamond(n: i64) -> Result<Region> {
    if n < 1 {
        return Err(Error::InvalidParameter(format!("Aztec diamond order {n} must be positive")));
    }
    Ok(Region::from_sites(aztec_rectangle_sites(n, n, 0, 0)))
}

/// One vertex per square, edges between squares sharing a side.
pub fn dual_graph(r: &Region) -> MatchGraph {
    MatchGraph::from_sites(r.sites())
}
