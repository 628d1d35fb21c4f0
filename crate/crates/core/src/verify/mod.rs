//! Both sides of every finite identity, evaluated by independent engines.

mod checks;
mod correlation;
mod gen;
mod suite;

pub use checks::*;
pub use correlation::{finite_omega_tilde_ratio, finite_size_correlation, reference_centres, CorrelationValue, TildeKind};
pub use gen::{
    admissible_windowed_specs, fig10_configuration, flipped, multiplet_configuration, r_inputs, random_balanced_holes,
    random_balanced_holes_with, random_multiplet_configuration, random_rotated_pairs, random_rotated_pairs_with,
    torus_complement_corpus, Contact, Rng,
};
pub use gen::rng;
pub use suite::{
    complement_checks, eceee_checks, figure4_torus, figure7_spec, flip_checks, r3_checks, require_all, run_suite,
    torus_theorem_checks, windowed_grid, Suite, SuiteReport, Summary,
};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TheoremId {
    #[serde(rename = "Eq1")]
    Eq1,
    #[serde(rename = "Fig1")]
    Fig1,
    #[serde(rename = "T2.1a")]
    T21a,
    #[serde(rename = "T2.1b")]
    T21b,
    #[serde(rename = "T3.1")]
    T31,
    #[serde(rename = "T3.2")]
    T32,
    #[serde(rename = "T3.3")]
    T33,
    #[serde(rename = "T3.4")]
    T34,
    #[serde(rename = "Eq8")]
    Eq8,
    #[serde(rename = "L4.1")]
    L41,
    #[serde(rename = "T4.2")]
    T42,
    #[serde(rename = "C4.3")]
    C43,
    #[serde(rename = "T4.4")]
    T44,
    #[serde(rename = "C4.5")]
    C45,
    #[serde(rename = "Eq-eceee")]
    Eceee,
    #[serde(rename = "R3-ebxc")]
    R3Ebxc,
}

impl TheoremId {
    pub const ALL: [TheoremId; 16] = [
        TheoremId::Eq1,
        TheoremId::Fig1,
        TheoremId::T21a,
        TheoremId::T21b,
        TheoremId::T31,
        TheoremId::T32,
        TheoremId::T33,
        TheoremId::T34,
        TheoremId::Eq8,
        TheoremId::L41,
        TheoremId::T42,
        TheoremId::C43,
        TheoremId::T44,
        TheoremId::C45,
        TheoremId::Eceee,
        TheoremId::R3Ebxc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::Eq1 => "Eq1",
            TheoremId::Fig1 => "Fig1",
            TheoremId::T21a => "T2.1a",
            TheoremId::T21b => "T2.1b",
            TheoremId::T31 => "T3.1",
            TheoremId::T32 => "T3.2",
            TheoremId::T33 => "T3.3",
            TheoremId::T34 => "T3.4",
            TheoremId::Eq8 => "Eq8",
            TheoremId::L41 => "L4.1",
            TheoremId::T42 => "T4.2",
            TheoremId::C43 => "C4.3",
            TheoremId::T44 => "T4.4",
            TheoremId::C45 => "C4.5",
            TheoremId::Eceee => "Eq-eceee",
            TheoremId::R3Ebxc => "R3-ebxc",
        }
    }

    pub fn parse(s: &str) -> Option<TheoremId> {
        TheoremId::ALL.iter().copied().find(|t| t.name().eq_ignore_ascii_case(s))
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// The hypothesis `M >= 1` does not hold.
    Vacuous,
}

/// One evaluated identity. `lhs` and `rhs` are decimal integers or
/// reduced fractions; `pass` means they are equal as strings.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TheoremCheck {
    pub theorem: TheoremId,
    pub instance: serde_json::Value,
    pub lhs: String,
    pub rhs: String,
    pub status: Status,
    /// Engines used for the two sides.
    pub engines: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
}

impl TheoremCheck {
    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    fn compare<T: ToString>(theorem: TheoremId, instance: serde_json::Value, lhs: T, rhs: T, engines: &str) -> TheoremCheck {
        let (lhs, rhs) = (lhs.to_string(), rhs.to_string());
        let status = if lhs == rhs { Status::Pass } else { Status::Fail };
        TheoremCheck { theorem, instance, lhs, rhs, status, engines: engines.into(), note: None, millis: None }
    }

    fn with_note(mut self, note: impl Into<String>) -> TheoremCheck {
        let note = note.into();
        self.note = Some(match self.note.take() {
            Some(old) => format!("{old}; {note}"),
            None => note,
        });
        self
    }

    fn vacuous(mut self) -> TheoremCheck {
        self.status = Status::Vacuous;
        self
    }

    fn failed(mut self, why: impl Into<String>) -> TheoremCheck {
        self.status = Status::Fail;
        self.with_note(why)
    }

    /// Flags windows joined by an edge.
    fn contact(self, t: &crate::lattice::TorusGraph) -> TheoremCheck {
        match t.touching_windows() {
            Some((a, b)) => self.with_note(format!("windows touch along the edge {a:?}-{b:?}")),
            None => self,
        }
    }
}

/// Both sides of `lhs = 2^e * rhs` with the power moved to whichever side
/// keeps it integral.
fn balance_pow2(lhs: &BigUint, rhs: &BigUint, e: i64) -> (BigUint, BigUint) {
    if e >= 0 {
        (lhs.clone(), rhs << e as u64)
    } else {
        (lhs << (-e) as u64, rhs.clone())
    }
}
