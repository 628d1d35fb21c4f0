//! Exact perfect matching counters: memoised branching, planar Kasteleyn
//! determinants and the torus engine, plus determinants and factoring.

mod brute;
mod det;
mod factor;
mod kasteleyn;
mod periodic;

pub use brute::{count_bruteforce, count_bruteforce_with_limit, DEFAULT_BRUTE_LIMIT, MAX_BRUTE_LIMIT};
pub use det::{bareiss, det_mod, exact_determinant, IntMatrix};
pub use factor::{certify_prime, factorize, Factorization};
pub use kasteleyn::{
    count_kasteleyn, count_planar_kasteleyn, orient_connected, pfaffian_orientation, torus_classes,
    twisted_determinants, OrientedGraph, Surface, THETAS,
};
pub use periodic::{combine, count_torus_periodic, periodic_determinants, periodic_matrix, periodic_signs};

use crate::lattice::{MatchGraph, OddRect, Topology, TorusGraph};
use crate::Result;
use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

/// Arbitrary precision matching count.
pub type BigCount = BigUint;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Auto,
    Brute,
    Kasteleyn,
    Torus,
}

/// Counts with the requested engine. `Auto` uses determinants.
pub fn count_with(g: &MatchGraph, engine: Engine) -> Result<BigCount> {
    match engine {
        Engine::Brute => count_bruteforce(g),
        Engine::Kasteleyn => count_planar_kasteleyn(g),
        Engine::Torus => count_kasteleyn(g, Surface::Torus),
        Engine::Auto => match g.topology {
            Topology::Plane => count_planar_kasteleyn(g),
            Topology::Torus { .. } => count_kasteleyn(g, Surface::Torus),
        },
    }
}

/// Perfect matchings of a torus graph; 0 unless the hole charges cancel.
pub fn count_torus_kasteleyn(t: &TorusGraph) -> Result<BigCount> {
    if t.total_charge() != 0 {
        return Ok(BigUint::zero());
    }
    count_kasteleyn(&t.graph, Surface::Torus)
}

/// One candidate sign combination of the four twisted determinants.
pub type SignPattern = [i8; 4];

#[derive(Clone, Debug, Serialize)]
pub struct CalibrationInstance {
    pub name: String,
    pub m: usize,
    pub n: usize,
    pub count: String,
    pub determinants: Vec<String>,
    pub matching_patterns: Vec<SignPattern>,
}

/// Calibration of the tori with `(m mod 2, n mod 2) = parity`.
#[derive(Clone, Debug, Serialize)]
pub struct ParityCalibration {
    pub parity: (usize, usize),
    pub instances: usize,
    /// Patterns matching every instance of this parity.
    pub surviving: Vec<SignPattern>,
    pub frozen: SignPattern,
}

#[derive(Clone, Debug, Serialize)]
pub struct CalibrationReport {
    pub instances: Vec<CalibrationInstance>,
    pub classes: Vec<ParityCalibration>,
    /// Patterns matching every instance of every parity.
    pub common: Vec<SignPattern>,
}

impl CalibrationReport {
    /// Each parity class keeps exactly the frozen pattern and its negative.
    pub fn unique_up_to_sign(&self) -> bool {
        self.classes.len() == 4
            && self.classes.iter().all(|c| {
                let neg = c.frozen.map(|s| -s);
                c.instances > 0 && c.surviving.len() == 2 && c.surviving.contains(&c.frozen) && c.surviving.contains(&neg)
            })
    }
}

fn all_patterns() -> Vec<SignPattern> {
    (0..16u8)
        .map(|bits| {
            let mut p = [1i8; 4];
            for (i, s) in p.iter_mut().enumerate() {
                if bits >> i & 1 == 1 {
                    *s = -1;
                }
            }
            p
        })
        .collect()
}

/// Tests the sixteen sign patterns `(1/2)|sum s_theta det K_theta|` of the
/// periodic weighting against the branching counter on small tori, with
/// and without an adjacent monomer pair, for each parity of `(m, n)`.
pub fn calibrate_torus_signs() -> Result<CalibrationReport> {
    let sizes = [(2, 2), (2, 3), (3, 2), (3, 3), (2, 4), (4, 2), (2, 5), (3, 4), (4, 3), (3, 5)];
    let mut cases: Vec<(String, TorusGraph)> = Vec::new();
    for (m, n) in sizes {
        cases.push((format!("T_{{{m},{n}}}"), TorusGraph::plain(m, n)?));
        let pair = vec![OddRect::new(0, 0, 1, 0)?, OddRect::new(0, 0, 2, 1)?];
        cases.push((format!("T_{{{m},{n}}} with a monomer pair"), TorusGraph::with_holes(m, n, pair)?));
    }
    let patterns = all_patterns();
    let mut common = patterns.clone();
    let mut by_parity: Vec<((usize, usize), usize, Vec<SignPattern>)> = Vec::new();
    let mut instances = Vec::new();
    for (name, t) in cases {
        let count = count_bruteforce_with_limit(&t.graph, MAX_BRUTE_LIMIT)?;
        let dets = periodic_determinants(&t.graph)?;
        let matching: Vec<SignPattern> = patterns
            .iter()
            .copied()
            .filter(|p| combine(&dets, *p).is_ok_and(|c| c == count))
            .collect();
        common.retain(|p| matching.contains(p));
        let parity = (t.m % 2, t.n % 2);
        match by_parity.iter_mut().find(|(q, _, _)| *q == parity) {
            Some((_, k, surv)) => {
                *k += 1;
                surv.retain(|p| matching.contains(p));
            }
            None => by_parity.push((parity, 1, matching.clone())),
        }
        instances.push(CalibrationInstance {
            name,
            m: t.m,
            n: t.n,
            count: count.to_string(),
            determinants: dets.iter().map(|d| d.to_string()).collect(),
            matching_patterns: matching,
        });
    }
    by_parity.sort();
    let classes = by_parity
        .into_iter()
        .map(|(parity, instances, surviving)| ParityCalibration {
            parity,
            instances,
            surviving,
            frozen: periodic_signs(parity.0, parity.1),
        })
        .collect();
    Ok(CalibrationReport { instances, classes, common })
}
