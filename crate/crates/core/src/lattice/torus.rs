use super::{Color, MatchGraph, OddRect, Part, Site, Topology, Vertex};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SepAxis {
    /// Splits a site into a left half (NW, SW edges) and a right half.
    Vertical,
    /// Splits a site into a top half (NW, NE edges) and a bottom half.
    Horizontal,
}

impl SepAxis {
    pub fn parts(self) -> [Part; 2] {
        match self {
            SepAxis::Vertical => [Part::Left, Part::Right],
            SepAxis::Horizontal => [Part::Top, Part::Bottom],
        }
    }
}

/// A separation defect: the site is cut into two halves that no longer
/// share a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Separation {
    pub site: Site,
    pub axis: SepAxis,
}

/// `T_{m,n}` with holes and separations removed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusGraph {
    pub m: usize,
    pub n: usize,
    pub holes: Vec<OddRect>,
    pub separations: Vec<Separation>,
    pub graph: MatchGraph,
}

impl TorusGraph {
    pub fn new(m: usize, n: usize, holes: Vec<OddRect>, separations: Vec<Separation>) -> Result<TorusGraph> {
        if m < 2 || n < 2 {
            return Err(Error::InvalidParameter(format!("T_{{{m},{n}}} needs m, n >= 2")));
        }
        let topo = Topology::Torus { m, n };
        let mut removed: BTreeSet<Site> = BTreeSet::new();
        for h in &holes {
            if 2 * h.k + 1 > 2 * m as i64 || 2 * h.l + 1 > 2 * n as i64 {
                return Err(Error::InvalidPlacement(format!("{h:?} wraps around T_{{{m},{n}}}")));
            }
            for s in h.sites() {
                if !removed.insert(topo.normalize(s)) {
                    return Err(Error::InvalidPlacement(format!("holes overlap at {:?}", topo.normalize(s))));
                }
            }
        }
        let mut split: BTreeMap<Site, SepAxis> = BTreeMap::new();
        for sep in &separations {
            let s = topo.normalize(sep.site);
            if (s.0 + s.1).rem_euclid(2) != 1 {
                return Err(Error::InvalidPlacement(format!("separation at non-site {s:?}")));
            }
            if removed.contains(&s) || split.insert(s, sep.axis).is_some() {
                return Err(Error::InvalidPlacement(format!("separation at {s:?} overlaps another defect")));
            }
        }
        let mut verts = Vec::new();
        for y in 0..2 * m as i64 {
            for x in 0..2 * n as i64 {
                if (x + y).rem_euclid(2) != 1 || removed.contains(&(x, y)) {
                    continue;
                }
                match split.get(&(x, y)) {
                    None => verts.push(Vertex::whole(x, y)),
                    Some(axis) => verts.extend(axis.parts().map(|part| Vertex { x, y, part })),
                }
            }
        }
        let graph = MatchGraph::lattice(topo, verts);
        Ok(TorusGraph { m, n, holes, separations, graph })
    }

    pub fn plain(m: usize, n: usize) -> Result<TorusGraph> {
        TorusGraph::new(m, n, Vec::new(), Vec::new())
    }

    pub fn with_holes(m: usize, n: usize, holes: Vec<OddRect>) -> Result<TorusGraph> {
        TorusGraph::new(m, n, holes, Vec::new())
    }

    pub fn total_charge(&self) -> i64 {
        self.holes.iter().map(|h| h.charge()).sum()
    }

    /// Translates every defect, keeping coordinates reduced.
    pub fn translated(&self, dx: i64, dy: i64) -> Result<TorusGraph> {
        let topo = self.graph.topology;
        let holes = self
            .holes
            .iter()
            .map(|h| {
                let (cx, cy) = topo.normalize((h.cx + dx, h.cy + dy));
                OddRect { cx, cy, ..*h }
            })
            .collect();
        let seps = self
            .separations
            .iter()
            .map(|s| Separation { site: topo.normalize((s.site.0 + dx, s.site.1 + dy)), axis: s.axis })
            .collect();
        TorusGraph::new(self.m, self.n, holes, seps)
    }

    /// Two sites of different holes joined by an edge of `T_{m,n}`, if any.
    /// Such holes share a side and form a single window.
    pub fn touching_windows(&self) -> Option<(Site, Site)> {
        let topo = self.graph.topology;
        let mut owner: BTreeMap<Site, usize> = BTreeMap::new();
        for (i, h) in self.holes.iter().enumerate() {
            for s in h.sites() {
                owner.insert(topo.normalize(s), i);
            }
        }
        for (&(x, y), &i) in &owner {
            for (dx, dy) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let t = topo.normalize((x + dx, y + dy));
                if owner.get(&t).is_some_and(|&j| j != i) {
                    return Some(((x, y), t));
                }
            }
        }
        None
    }

    /// Holes of the given majority colour.
    pub fn holes_of(&self, c: Color) -> impl Iterator<Item = &OddRect> {
        self.holes.iter().filter(move |h| h.majority() == c)
    }
}
