use super::{Color, Site};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Sites of `AR_{m,n}` whose bounding box has its top-left corner at
/// `(x0, y0)`; `x0 + y0` must be even so that the corners are not sites.
pub fn aztec_rectangle_sites(m: i64, n: i64, x0: i64, y0: i64) -> Vec<Site> {
    assert!((x0 + y0).rem_euclid(2) == 0, "corner of an Aztec rectangle box must not be a site");
    let mut out = Vec::new();
    for y in y0..=y0 + 2 * m {
        for x in x0..=x0 + 2 * n {
            if (x + y).rem_euclid(2) == 1 {
                out.push((x, y));
            }
        }
    }
    out
}

/// An odd Aztec rectangle `O_{k,l}`: the box `[cx-l, cx+l] x [cy-k, cy+k]`
/// with sites at its four corners.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OddRect {
    pub k: i64,
    pub l: i64,
    pub cx: i64,
    pub cy: i64,
}

impl OddRect {
    pub fn new(k: i64, l: i64, cx: i64, cy: i64) -> Result<OddRect> {
        if k < 0 || l < 0 {
            return Err(Error::InvalidParameter(format!("O_{{{k},{l}}} needs k, l >= 0")));
        }
        if (cx + cy - 1 - k - l).rem_euclid(2) != 0 {
            return Err(Error::InvalidPlacement(format!(
                "centre ({cx},{cy}) does not align O_{{{k},{l}}} with the lattice"
            )));
        }
        Ok(OddRect { k, l, cx, cy })
    }

    pub fn sites(&self) -> Vec<Site> {
        let (x0, y0) = (self.cx - self.l, self.cy - self.k);
        let mut out = Vec::new();
        for y in y0..=self.cy + self.k {
            for x in x0..=self.cx + self.l {
                if (x - x0).rem_euclid(2) == (y - y0).rem_euclid(2) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub fn size(&self) -> i64 {
        2 * self.k * self.l + self.k + self.l + 1
    }

    /// Colour of the corner sites, which is the majority colour.
    pub fn majority(&self) -> Color {
        Color::of_row(self.cy - self.k)
    }

    /// #white - #black.
    pub fn charge(&self) -> i64 {
        let q = self.k + self.l + 1;
        match self.majority() {
            Color::White => q,
            Color::Black => -q,
        }
    }

    pub fn contains(&self, s: Site) -> bool {
        let (x0, y0) = (self.cx - self.l, self.cy - self.k);
        s.0 >= x0
            && s.0 <= self.cx + self.l
            && s.1 >= y0
            && s.1 <= self.cy + self.k
            && (s.0 - x0).rem_euclid(2) == (s.1 - y0).rem_euclid(2)
    }

    pub fn translated(&self, dx: i64, dy: i64) -> OddRect {
        OddRect { cx: self.cx + dx, cy: self.cy + dy, ..*self }
    }
}

/// A hole as given by a user: shape, centre and the majority colour it is
/// expected to have. The colour is checked against the geometry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HoleSpec {
    pub k: i64,
    pub l: i64,
    pub center: (i64, i64),
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub placement: Option<Color>,
}

impl HoleSpec {
    pub fn shape(&self) -> Result<OddRect> {
        let o = OddRect::new(self.k, self.l, self.center.0, self.center.1)?;
        if let Some(c) = self.placement {
            if c != o.majority() {
                return Err(Error::InvalidPlacement(format!(
                    "O_{{{},{}}} centred at {:?} is {:?}-placed, not {:?}-placed",
                    self.k,
                    self.l,
                    self.center,
                    o.majority(),
                    c
                )));
            }
        }
        Ok(o)
    }

    pub fn from_shape(o: &OddRect) -> HoleSpec {
        HoleSpec { k: o.k, l: o.l, center: (o.cx, o.cy), placement: Some(o.majority()) }
    }

    /// Places `O_{k,l}` with the requested majority colour. The centre must
    /// satisfy the lattice parity; the colour must match the corner row.
    pub fn build(k: i64, l: i64, center: (i64, i64), majority: Color) -> Result<OddRect> {
        HoleSpec { k, l, center, placement: Some(majority) }.shape()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertex_counts() {
        assert_eq!(aztec_rectangle_sites(2, 3, 0, 0).len(), 2 * 2 * 3 + 2 + 3);
        for (k, l) in [(0, 0), (2, 2), (2, 0), (1, 3)] {
            let o = OddRect::new(k, l, l + 1, k).unwrap();
            assert_eq!(o.sites().len() as i64, o.size());
            let w = o.sites().iter().filter(|s| Color::of_row(s.1) == Color::White).count() as i64;
            assert_eq!(2 * w - o.size(), o.charge());
        }
    }

    #[test]
    fn odd_aztec_diamond_has_thirteen_sites() {
        let o = OddRect::new(2, 2, 3, 2).unwrap();
        assert_eq!(o.sites().len(), 13);
        assert_eq!(o.charge().abs(), 5);
    }

    #[test]
    fn misaligned_centre_is_rejected() {
        assert!(matches!(OddRect::new(0, 0, 2, 2), Err(Error::InvalidPlacement(_))));
        assert!(HoleSpec::build(0, 0, (1, 0), Color::Black).is_err());
        assert!(HoleSpec::build(0, 0, (1, 0), Color::White).is_ok());
    }
}
