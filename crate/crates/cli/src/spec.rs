//! Region spec files: `{"schema_version": 1, "region": {"kind": ..., ...}}`.

use serde::{Deserialize, Serialize};
use tilings::formulas::{aztec_diamond_count, count_r_formula, predicted_windowed_count, FormulaInput};
use tilings::lattice::{
    aztec_diamond_graph, aztec_rectangle_sites, build_cruciform_windowed, build_r_graph, build_windowed_region,
    figure1_left, figure1_right, label_row, Family, HoleSpec, MatchGraph, OddRect, RVariant, Site, TorusGraph, WindowSpec,
    WindowedSpec,
};

use tilings::{Error, Result};
use num_bigint::BigUint;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub schema_version: u32,
    pub region: RegionSpec,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RegionSpec {
    AztecDiamond {
        n: i64,
    },
    /// `AR_{m,n}`: `m` rows of white sites, `n` per row.
    AztecRectangle {
        m: i64,
        n: i64,
    },
    RGraph {
        variant: RVariant,
        m: i64,
        n: i64,
        t: Vec<i64>,
    },
    Windowed {
        family: Family,
        m: i64,
        k: i64,
        holes: Vec<WindowSpec>,
    },
    Torus {
        m: usize,
        n: usize,
        #[serde(default)]
        holes: Vec<HoleSpec>,
    },
    /// Plane sites `(x, y)` with `x + y` odd.
    Sites {
        #[serde(default)]
        sites: Vec<Site>,
    },
    Figure1 {
        side: Side,
    },
}

/// A region ready to count or draw.
pub struct Built {
    pub graph: MatchGraph,
    /// Removed windows, drawn filled.
    pub windows: Vec<OddRect>,
    pub torus: Option<TorusGraph>,
    /// Row of the deleted labels, if any.
    pub label_row: Option<i64>,
}

impl SpecFile {
    pub fn new(region: RegionSpec) -> SpecFile {
        SpecFile { schema_version: SCHEMA_VERSION, region }
    }

    pub fn parse(text: &str) -> Result<SpecFile> {
        let s: SpecFile = serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("spec: {e}")))?;
        if s.schema_version != SCHEMA_VERSION {
            return Err(Error::InvalidInput(format!(
                "schema_version {} is not supported (expected {SCHEMA_VERSION})",
                s.schema_version
            )));
        }
        Ok(s)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serialises") + "\n"
    }
}

fn nonneg(name: &str, v: i64) -> Result<()> {
    if v < 0 {
        return Err(Error::InvalidParameter(format!("{name} must be nonnegative, got {v}")));
    }
    Ok(())
}

impl RegionSpec {
    fn windowed(&self) -> Option<WindowedSpec> {
        match self {
            RegionSpec::Windowed { family, m, k, holes } => {
                Some(WindowedSpec { family: *family, m: *m, k: *k, holes: holes.clone() })
            }
            _ => None,
        }
    }

    pub fn build(&self) -> Result<Built> {
        let plain = |graph| Built { graph, windows: Vec::new(), torus: None, label_row: None };
        Ok(match self {
            RegionSpec::AztecDiamond { n } => {
                nonneg("n", *n)?;
                plain(aztec_diamond_graph(*n))
            }
            RegionSpec::AztecRectangle { m, n } => {
                nonneg("m", *m)?;
                nonneg("n", *n)?;
                plain(MatchGraph::from_sites(aztec_rectangle_sites(*m, *n, 0, 0)))
            }
            RegionSpec::RGraph { variant, m, n, t } => Built {
                graph: build_r_graph(*variant, *m, *n, t)?,
                windows: Vec::new(),
                torus: None,
                label_row: Some(label_row(*variant, *m)),
            },
            RegionSpec::Windowed { .. } => {
                let spec = self.windowed().expect("windowed");
                let w = build_windowed_region(&spec).or_else(|e| match e {
                    Error::InvalidParameter(_) => build_cruciform_windowed(&spec),
                    other => Err(other),
                })?;
                Built {
                    graph: w.graph,
                    windows: w.windows,
                    torus: None,
                    label_row: Some(label_row(spec.family.r_variant(), spec.m)),
                }
            }
            RegionSpec::Torus { m, n, holes } => {
                let holes = holes.iter().map(HoleSpec::shape).collect::<Result<Vec<_>>>()?;
                let t = TorusGraph::with_holes(*m, *n, holes)?;
                Built { graph: t.graph.clone(), windows: t.holes.clone(), torus: Some(t), label_row: None }
            }
            RegionSpec::Sites { sites } => {
                if let Some(s) = sites.iter().find(|s| (s.0 + s.1).rem_euclid(2) != 1) {
                    return Err(Error::InvalidInput(format!("site {s:?} has x + y even")));
                }
                plain(MatchGraph::from_sites(sites.iter().copied()))
            }
            RegionSpec::Figure1 { side: Side::Left } => plain(figure1_left()),
            RegionSpec::Figure1 { side: Side::Right } => plain(figure1_right()),
        })
    }

    /// The closed-form count, where one exists.
    pub fn formula(&self) -> Result<BigUint> {
        match self {
            RegionSpec::AztecDiamond { n } => {
                nonneg("n", *n)?;
                Ok(aztec_diamond_count(*n as u64))
            }
            RegionSpec::RGraph { variant, m, n, t } => {
                count_r_formula(&FormulaInput { variant: *variant, m: *m, n: *n, t: t.clone() })
            }
            RegionSpec::Windowed { .. } => predicted_windowed_count(&self.windowed().expect("windowed")),
            other => Err(Error::Unsupported(format!("no closed form for {}", other.kind()))),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            RegionSpec::AztecDiamond { .. } => "aztec_diamond",
            RegionSpec::AztecRectangle { .. } => "aztec_rectangle",
            RegionSpec::RGraph { .. } => "r_graph",
            RegionSpec::Windowed { .. } => "windowed",
            RegionSpec::Torus { .. } => "torus",
            RegionSpec::Sites { .. } => "sites",
            RegionSpec::Figure1 { .. } => "figure1",
        }
    }
}
