use super::{complement_graph, Axis};
use crate::formulas::{evolved_form, flank_exponent, Evolved};
use crate::lattice::{build_windowed_region, MatchGraph, OddRect, TorusGraph, WindowedRegion, WindowedSpec};
use crate::{Error, Result};
use serde::Serialize;

/// A windowed region carried through repeated complementation.
#[derive(Clone, Debug, Serialize)]
pub struct Evolution {
    pub spec: WindowedSpec,
    #[serde(skip)]
    pub graph: MatchGraph,
    /// Exponent `t` of each step: `M(before) = 2^t M(after)`.
    pub steps: Vec<i64>,
    /// Sum of the step exponents.
    pub exponent: i64,
    /// Paths of cells per step.
    pub path_counts: Vec<usize>,
}

/// Face parity shaded when stepping a windowed region from `k = j` to
/// `k = j + 1`. The outer rectangle has top row `-j` (growing) or `j`.
pub fn windowed_shading(grows: bool, j: i64) -> i64 {
    if grows {
        (-j).rem_euclid(2)
    } else {
        (j + 1).rem_euclid(2)
    }
}

/// Applies `steps` complementations to a windowed region, switching the
/// shaded faces each time. Growing families gain a layer on the outside,
/// shrinking families lose one, and every window `O_{j, a_i - j}` becomes
/// `O_{j+1, a_i - j - 1}`.
pub fn evolve_windowed(w: &WindowedRegion, steps: i64) -> Result<Evolution> {
    if steps < 0 {
        return Err(Error::InvalidParameter("steps must be nonnegative".into()));
    }
    let grows = w.spec.family.grows();
    let min_a = w.spec.holes.iter().map(|h| h.a).min().unwrap_or(0);
    let mut graph = w.graph.clone();
    let mut out = Vec::new();
    let mut path_counts = Vec::new();
    for j in w.spec.k..w.spec.k + steps {
        if grows && j + 1 > min_a {
            return Err(Error::Inadmissible(format!(
                "step {} would push a window past the grid (min a_i = {min_a})",
                j + 1
            )));
        }
        let c = complement_graph(&graph, windowed_shading(grows, j), Axis::Horizontal)?;
        out.push(c.t);
        path_counts.push(c.decomposition.paths.len());
        graph = c.graph;
        let next = w.spec.with_k(j + 1);
        let regular = grows || next.holes.iter().all(|h| h.a > j);
        if regular {
            let want = build_windowed_region(&next)?;
            if !want.graph.same_as(&graph) {
                return Err(Error::Internal(format!("complement of step {} is not the windowed region {:?}", j + 1, next)));
            }
        }
    }
    let exponent = out.iter().sum();
    Ok(Evolution { spec: w.spec.with_k(w.spec.k + steps), graph, steps: out, exponent, path_counts })
}

/// A torus with every hole replaced by its evolved form.
#[derive(Clone, Debug)]
pub struct TorusEvolution {
    pub evolved: TorusGraph,
    /// Sum of flank charges.
    pub exponent: i64,
}

/// Replaces every hole by its evolved form. Overlapping evolved forms are
/// reported as an internal error: for a graph with a perfect matching
/// they are supposed to be disjoint.
pub fn evolve_torus(t: &TorusGraph) -> Result<TorusEvolution> {
    if !t.separations.is_empty() {
        return Err(Error::InvalidInput("separations have no evolved form".into()));
    }
    if t.total_charge() != 0 {
        return Err(Error::InvalidInput(format!("total charge {} is not zero", t.total_charge())));
    }
    let mut holes: Vec<OddRect> = Vec::new();
    let mut seps = Vec::new();
    for h in &t.holes {
        match evolved_form(h) {
            Evolved::Hole(o) => holes.push(o),
            Evolved::Separations(s) => seps.extend(s),
        }
    }
    let evolved = TorusGraph::new(t.m, t.n, holes, seps).map_err(|e| match e {
        Error::InvalidPlacement(msg) => Error::Internal(format!("evolved forms are not disjoint: {msg}")),
        other => other,
    })?;
    Ok(TorusEvolution { evolved, exponent: flank_exponent(&t.holes) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::window_exponent;
    use crate::lattice::Family;

    #[test]
    fn growth_step_exponent() {
        let spec = WindowedSpec::new(Family::Ar, 6, 0, &[(3, 9)]);
        let w = build_windowed_region(&spec).unwrap();
        let e = evolve_windowed(&w, 1).unwrap();
        assert_eq!(e.steps, vec![-8]);
        let e3 = evolve_windowed(&w, 3).unwrap();
        assert_eq!(-e3.exponent, window_exponent(Family::Ar, 6, 3, 1));
        assert!(matches!(evolve_windowed(&w, 4), Err(Error::Inadmissible(_))));
        assert_eq!(evolve_windowed(&w, 0).unwrap().exponent, 0);
    }

    #[test]
    fn shrink_step_exponent() {
        let spec = WindowedSpec::new(Family::ArDouble, 13, 0, &[(3, 9)]);
        let w = build_windowed_region(&spec).unwrap();
        let e = evolve_windowed(&w, 1).unwrap();
        assert_eq!(e.steps, vec![12]);
        let built = build_windowed_region(&spec.with_k(1)).unwrap();
        assert_eq!((built.outer.0, built.outer.1), (12, 8));
    }

    #[test]
    fn torus_evolution_exponent() {
        let w = OddRect::new(0, 3, 4, 4).unwrap();
        let b = OddRect::new(3, 0, 12, 10).unwrap();
        assert_eq!(b.majority(), crate::lattice::Color::Black);
        let t = TorusGraph::with_holes(6, 8, vec![w, b]).unwrap();
        let e = evolve_torus(&t).unwrap();
        assert_eq!(e.exponent, 2);
        assert_eq!(e.evolved.holes, vec![OddRect::new(1, 2, 4, 4).unwrap(), OddRect::new(2, 1, 12, 10).unwrap()]);
    }
}
