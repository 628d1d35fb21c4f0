use super::{MatchGraph, OddRect, Region, Site, TorusGraph};
use serde::Serialize;
use std::collections::BTreeSet;

/// Diagnostics for a region or graph. Never fails.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub vertices: usize,
    pub white: usize,
    pub black: usize,
    /// #white - #black
    pub balance: i64,
    pub holes_disjoint: bool,
    pub total_charge: i64,
    /// Sites that cannot be covered: isolated vertices.
    pub islands: Vec<Site>,
    pub warnings: Vec<String>,
}

impl ValidationReport {
    pub fn balanced(&self) -> bool {
        self.balance == 0
    }
}

fn holes_disjoint(holes: &[OddRect], norm: impl Fn(Site) -> Site) -> bool {
    let mut seen = BTreeSet::new();
    holes.iter().flat_map(|h| h.sites()).all(|s| seen.insert(norm(s)))
}

pub fn validate_graph(g: &MatchGraph) -> ValidationReport {
    let (white, black) = g.color_counts();
    let adj = g.adjacency();
    let islands: Vec<Site> = (0..g.vertex_count()).filter(|&i| adj[i].is_empty()).map(|i| g.vertices[i].site()).collect();
    let mut warnings = Vec::new();
    if white != black {
        warnings.push(format!("unbalanced: excess of {} white vertices", white as i64 - black as i64));
    }
    for s in &islands {
        warnings.push(format!("unit square island at {s:?} cannot be covered by a domino"));
    }
    ValidationReport {
        vertices: g.vertex_count(),
        white,
        black,
        balance: white as i64 - black as i64,
        holes_disjoint: true,
        total_charge: 0,
        islands,
        warnings,
    }
}

/// Validates a region together with the windows that were cut from it.
pub fn validate_region(r: &Region, windows: &[OddRect]) -> ValidationReport {
    let g = super::dual_graph(r);
    let mut rep = validate_graph(&g);
    rep.holes_disjoint = holes_disjoint(windows, |s| s);
    rep.total_charge = windows.iter().map(|h| h.charge()).sum();
    if !rep.holes_disjoint {
        rep.warnings.push("windows overlap".into());
    }
    rep
}

pub fn validate_torus(t: &TorusGraph) -> ValidationReport {
    let mut rep = validate_graph(&t.graph);
    let topo = t.graph.topology;
    rep.holes_disjoint = holes_disjoint(&t.holes, |s| topo.normalize(s));
    rep.total_charge = t.total_charge();
    if rep.total_charge != 0 {
        rep.warnings.push(format!("total hole charge {} is not zero", rep.total_charge));
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{aztec_rectangle_sites, build_windowed_region, Family, WindowedSpec};

    #[test]
    fn aztec_rectangle_excess() {
        let g = MatchGraph::from_sites(aztec_rectangle_sites(3, 5, 0, 0));
        let rep = validate_graph(&g);
        assert_eq!(rep.balance, 2);
        assert!(!rep.balanced());
    }

    #[test]
    fn windowed_region_is_balanced() {
        let spec = WindowedSpec::new(Family::Ar, 14, 2, &[(4, 14), (2, 26), (3, 41)]);
        let w = build_windowed_region(&spec).unwrap();
        let rep = validate_region(&w.region, &w.windows);
        assert!(rep.balanced());
        assert!(rep.holes_disjoint);
        assert!(rep.islands.is_empty());
    }

    #[test]
    fn touching_holes_leave_an_island() {
        let a = OddRect::new(1, 1, 2, 3).unwrap();
        let b = OddRect::new(1, 1, 6, 3).unwrap();
        let cut: BTreeSet<Site> = a.sites().into_iter().chain(b.sites()).collect();
        let sites = aztec_rectangle_sites(5, 6, -2, -2).into_iter().filter(|s| !cut.contains(s));
        let g = MatchGraph::from_sites(sites);
        let rep = validate_graph(&g);
        assert_eq!(rep.islands, vec![(4, 3)]);
    }
}
