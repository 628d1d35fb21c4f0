mod render;
mod spec;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::json;
use spec::{Built, RegionSpec, SpecFile};
use std::fmt;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use tilings::complement::{complement_graph, Axis};
use tilings::lattice::{validate_graph, validate_torus, HoleSpec, MatchGraph};
use tilings::matchcount::{count_bruteforce, count_planar_kasteleyn, count_torus_kasteleyn, factorize, Surface};
use tilings::verify::{self, Status, Suite, SuiteReport, TheoremCheck, TheoremId};

const EXIT_VERIFY: u8 = 1;
const EXIT_SPEC: u8 = 2;
const EXIT_GUARD: u8 = 3;
const EXIT_IO: u8 = 4;

/// Exact domino tiling counts of Aztec regions with odd windows, on the
/// plane and on the torus. Set RAYON_NUM_THREADS to cap parallelism.
#[derive(Parser)]
#[command(name = "tilings", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct RegionArgs {
    /// JSON spec file.
    #[arg(long, conflicts_with_all = ["aztec_diamond", "torus"])]
    spec: Option<PathBuf>,
    /// The Aztec diamond of order N.
    #[arg(long, value_name = "N", conflicts_with = "torus")]
    aztec_diamond: Option<i64>,
    /// The torus T_{M,N}, written M,N.
    #[arg(long, value_name = "M,N", value_parser = parse_pair)]
    torus: Option<(usize, usize)>,
    /// A hole O_{K,L} centred at (X,Y) on the torus, written K,L,X,Y.
    #[arg(long = "hole", value_name = "K,L,X,Y", value_parser = parse_hole, requires = "torus")]
    holes: Vec<HoleSpec>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EngineArg {
    Auto,
    Brute,
    Kasteleyn,
    Torus,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AxisArg {
    Horizontal,
    Vertical,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a region and report its size and balance.
    Build {
        #[command(flatten)]
        region: RegionArgs,
        /// Print the canonical spec file instead.
        #[arg(long)]
        emit_spec: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Count perfect matchings exactly.
    Count {
        #[command(flatten)]
        region: RegionArgs,
        #[arg(long, value_enum, default_value = "auto")]
        engine: EngineArg,
        /// Append the prime factorization.
        #[arg(long)]
        factor: bool,
        /// Refuse determinant engines above this many vertices.
        #[arg(long, default_value_t = 6000)]
        max_vertices: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Evaluate the closed-form count.
    Formula {
        #[command(flatten)]
        region: RegionArgs,
        #[arg(long)]
        factor: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run a verification suite, a single theorem, or a fixture of expected counts.
    Verify {
        /// smoke, exhaustive-small, figures, torus or full.
        suite: Option<String>,
        /// Theorem id, e.g. T4.2.
        #[arg(long, conflicts_with_all = ["suite", "fixture"], requires = "params")]
        theorem: Option<String>,
        /// Theorem parameters: inline JSON, or @FILE.
        #[arg(long)]
        params: Option<String>,
        /// Expected counts: {"schema_version": 1, "cases": [...]}.
        #[arg(long, conflicts_with = "suite")]
        fixture: Option<PathBuf>,
        /// Write one JSON line per check to this file.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Record wall time per check.
        #[arg(long)]
        timing: bool,
    },
    /// Complement a graph along paths of cells.
    Complement {
        #[command(flatten)]
        region: RegionArgs,
        /// Parity of the shaded face rows.
        #[arg(long, default_value_t = 0)]
        shading: i64,
        #[arg(long, value_enum, default_value = "horizontal")]
        axis: AxisArg,
        /// Also count both graphs and test M(H) = 2^t M(complement).
        #[arg(long)]
        count: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Finite-size correlation of the holes of a torus.
    Correlate {
        #[command(flatten)]
        region: RegionArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Draw a region as SVG.
    Render {
        #[command(flatten)]
        region: RegionArgs,
        /// Output file; stdout if absent.
        #[arg(long, short)]
        out: Option<PathBuf>,
        /// Draw the row of deleted labels.
        #[arg(long)]
        label_row: bool,
        /// Pixels per unit.
        #[arg(long, default_value_t = 12)]
        scale: i64,
    },
}

struct Fail {
    code: u8,
    msg: String,
}

impl Fail {
    fn new(code: u8, msg: impl Into<String>) -> Fail {
        Fail { code, msg: msg.into() }
    }
}

impl From<tilings::Error> for Fail {
    fn from(e: tilings::Error) -> Fail {
        use tilings::Error as E;
        let code = match e {
            E::SizeGuard { .. } => EXIT_GUARD,
            E::Internal(_) => EXIT_VERIFY,
            _ => EXIT_SPEC,
        };
        Fail::new(code, e.to_string())
    }
}

impl fmt::Display for Fail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.msg)
    }
}

type Out = Result<(String, u8), Fail>;

fn parse_ints(s: &str, n: usize) -> Result<Vec<i64>, String> {
    let v: Vec<i64> = s.split(',').map(|p| p.trim().parse::<i64>().map_err(|e| format!("{p:?}: {e}"))).collect::<Result<_, _>>()?;
    if v.len() != n {
        return Err(format!("expected {n} comma-separated integers"));
    }
    Ok(v)
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let v = parse_ints(s, 2)?;
    if v.iter().any(|&x| x < 0) {
        return Err("sizes must be nonnegative".into());
    }
    Ok((v[0] as usize, v[1] as usize))
}

fn parse_hole(s: &str) -> Result<HoleSpec, String> {
    let v = parse_ints(s, 4)?;
    Ok(HoleSpec { k: v[0], l: v[1], center: (v[2], v[3]), placement: None })
}

fn read(path: &Path) -> Result<String, Fail> {
    fs::read_to_string(path).map_err(|e| Fail::new(EXIT_IO, format!("{}: {e}", path.display())))
}

/// Writes through a sibling temporary file and a rename.
fn write_atomic(path: &Path, data: &str) -> Result<(), Fail> {
    let io = |e: std::io::Error| Fail::new(EXIT_IO, format!("{}: {e}", path.display()));
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, data).map_err(io)?;
    fs::rename(&tmp, path).map_err(io)
}

impl RegionArgs {
    fn spec(&self) -> Result<SpecFile, Fail> {
        if let Some(path) = &self.spec {
            return SpecFile::parse(&read(path)?).map_err(|e| Fail::new(EXIT_SPEC, format!("{}: {e}", path.display())));
        }
        if let Some(n) = self.aztec_diamond {
            return Ok(SpecFile::new(RegionSpec::AztecDiamond { n }));
        }
        if let Some((m, n)) = self.torus {
            return Ok(SpecFile::new(RegionSpec::Torus { m, n, holes: self.holes.clone() }));
        }
        Err(Fail::new(EXIT_SPEC, "no region given: use --spec, --aztec-diamond or --torus"))
    }
}

fn factor_text(c: &BigUint) -> Result<String, Fail> {
    if c == &BigUint::from(0u8) {
        return Ok("0".into());
    }
    Ok(factorize(c)?.to_string())
}

fn count_graph(b: &Built, engine: EngineArg, max_vertices: usize) -> Result<(BigUint, &'static str), Fail> {
    let v = b.graph.vertex_count();
    if engine != EngineArg::Brute && v > max_vertices {
        return Err(tilings::Error::SizeGuard { vertices: v, limit: max_vertices }.into());
    }
    let torus = b.torus.is_some();
    Ok(match engine {
        EngineArg::Brute => (count_bruteforce(&b.graph)?, "brute"),
        EngineArg::Kasteleyn if torus => {
            return Err(Fail::new(EXIT_SPEC, "the kasteleyn engine is planar; use --engine torus"));
        }
        EngineArg::Torus if !torus => return Err(Fail::new(EXIT_SPEC, "the torus engine needs a torus region")),
        EngineArg::Kasteleyn => (count_planar_kasteleyn(&b.graph)?, "kasteleyn"),
        EngineArg::Torus | EngineArg::Auto if torus => (count_torus_kasteleyn(b.torus.as_ref().unwrap())?, "torus"),
        EngineArg::Torus | EngineArg::Auto => (count_planar_kasteleyn(&b.graph)?, "kasteleyn"),
    })
}

fn cmd_build(region: &RegionArgs, emit_spec: bool, format: Format) -> Out {
    let spec = region.spec()?;
    let b = spec.region.build()?;
    if emit_spec {
        return Ok((spec.to_json(), 0));
    }
    let report = match &b.torus {
        Some(t) => validate_torus(t),
        None => validate_graph(&b.graph),
    };
    Ok(match format {
        Format::Json => {
            let v = json!({
                "kind": spec.region.kind(),
                "edges": b.graph.edges.len(),
                "windows": b.windows.len(),
                "validation": report,
            });
            (serde_json::to_string_pretty(&v).unwrap() + "\n", 0)
        }
        Format::Text => {
            let mut s = format!(
                "{}: {} vertices ({} white, {} black), {} edges, {} windows\n",
                spec.region.kind(),
                report.vertices,
                report.white,
                report.black,
                b.graph.edges.len(),
                b.windows.len()
            );
            if !report.islands.is_empty() {
                s.push_str(&format!("isolated sites: {:?}\n", report.islands));
            }
            for w in &report.warnings {
                s.push_str(&format!("warning: {w}\n"));
            }
            (s, 0)
        }
    })
}

fn count_output(count: &BigUint, factor: bool, format: Format, extra: serde_json::Value) -> Result<String, Fail> {
    let f = if factor { Some(factor_text(count)?) } else { None };
    Ok(match format {
        Format::Text => match f {
            Some(f) => format!("{count} = {f}\n"),
            None => format!("{count}\n"),
        },
        Format::Json => {
            let mut v = json!({ "count": count.to_string() });
            if let Some(f) = f {
                v["factorization"] = json!(f);
            }
            if let serde_json::Value::Object(extra) = extra {
                v.as_object_mut().unwrap().extend(extra);
            }
            serde_json::to_string(&v).unwrap() + "\n"
        }
    })
}

fn cmd_count(region: &RegionArgs, engine: EngineArg, factor: bool, max_vertices: usize, format: Format) -> Out {
    let spec = region.spec()?;
    let b = spec.region.build()?;
    let (count, used) = count_graph(&b, engine, max_vertices)?;
    let extra = json!({ "engine": used, "vertices": b.graph.vertex_count() });
    Ok((count_output(&count, factor, format, extra)?, 0))
}

fn cmd_formula(region: &RegionArgs, factor: bool, format: Format) -> Out {
    let spec = region.spec()?;
    let count = spec.region.formula()?;
    Ok((count_output(&count, factor, format, json!({ "kind": spec.region.kind() }))?, 0))
}

fn summary_text(label: &str, checks: &[TheoremCheck]) -> String {
    let (pass, fail, vacuous) = verify::tally(checks);
    let mut s = format!("{label}: {} checks, {pass} pass, {fail} fail, {vacuous} vacuous\n", checks.len());
    for c in checks.iter().filter(|c| c.status == Status::Fail) {
        s.push_str(&format!("FAIL {}\n", serde_json::to_string(c).unwrap()));
    }
    s
}

fn write_report(path: &Option<PathBuf>, lines: &str) -> Result<(), Fail> {
    match path {
        Some(p) => write_atomic(p, lines),
        None => Ok(()),
    }
}

#[derive(serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct Fixture {
    schema_version: u32,
    cases: Vec<FixtureCase>,
}

#[derive(serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct FixtureCase {
    name: String,
    region: RegionSpec,
    #[serde(default)]
    count: Option<String>,
    /// Expected factorization as printed by `count --factor`.
    #[serde(default)]
    factorization: Option<String>,
}

#[derive(serde::Serialize)]
struct FixtureResult {
    name: String,
    field: &'static str,
    expected: String,
    computed: String,
    status: Status,
    engine: &'static str,
}

/// Compares recorded counts and factorizations with computed ones.
fn fixture_results(path: &Path) -> Result<Vec<FixtureResult>, Fail> {
    let text = read(path)?;
    let fx: Fixture = serde_json::from_str(&text).map_err(|e| Fail::new(EXIT_SPEC, format!("{}: {e}", path.display())))?;
    if fx.schema_version != spec::SCHEMA_VERSION {
        return Err(Fail::new(EXIT_SPEC, format!("fixture schema_version {} is not supported", fx.schema_version)));
    }
    let mut out = Vec::new();
    for case in fx.cases {
        let b = case.region.build()?;
        let (count, engine) = count_graph(&b, EngineArg::Auto, usize::MAX)?;
        let mut expected = Vec::new();
        if let Some(c) = case.count {
            expected.push(("count", c, count.to_string()));
        }
        if let Some(f) = case.factorization {
            expected.push(("factorization", f, factor_text(&count)?));
        }
        for (field, want, got) in expected {
            let status = if want == got { Status::Pass } else { Status::Fail };
            out.push(FixtureResult { name: case.name.clone(), field, expected: want, computed: got, status, engine });
        }
    }
    Ok(out)
}

fn params_json(p: &str) -> Result<serde_json::Value, Fail> {
    let text = match p.strip_prefix('@') {
        Some(path) => read(Path::new(path))?,
        None => p.to_string(),
    };
    serde_json::from_str(&text).map_err(|e| Fail::new(EXIT_SPEC, format!("params: {e}")))
}

fn cmd_verify(
    suite: &Option<String>,
    theorem: &Option<String>,
    params: &Option<String>,
    fixture: &Option<PathBuf>,
    report: &Option<PathBuf>,
    timing: bool,
) -> Out {
    let (label, checks, lines) = if let Some(id) = theorem {
        let id = TheoremId::parse(id).ok_or_else(|| Fail::new(EXIT_SPEC, format!("unknown theorem {id:?}")))?;
        let checks = verify::check(id, &params_json(params.as_deref().unwrap_or("{}"))?)?;
        let lines: String = checks.iter().map(|c| serde_json::to_string(c).unwrap() + "\n").collect();
        (id.to_string(), checks, lines)
    } else if let Some(path) = fixture {
        let results = fixture_results(path)?;
        let lines: String = results.iter().map(|r| serde_json::to_string(r).unwrap() + "\n").collect();
        write_report(report, &lines)?;
        let fail = results.iter().filter(|r| r.status == Status::Fail).count();
        let mut text = format!("{}: {} values, {} pass, {fail} fail\n", path.display(), results.len(), results.len() - fail);
        for r in results.iter().filter(|r| r.status == Status::Fail) {
            text.push_str(&format!("FAIL {}\n", serde_json::to_string(r).unwrap()));
        }
        return Ok((text, if fail == 0 { 0 } else { EXIT_VERIFY }));
    } else {
        let name = suite.as_deref().unwrap_or("smoke");
        let s = Suite::parse(name).ok_or_else(|| Fail::new(EXIT_SPEC, format!("unknown suite {name:?}")))?;
        let r: SuiteReport = verify::run_suite(s, timing)?;
        let lines = r.to_json_lines();
        (format!("suite {name}"), r.checks, lines)
    };
    write_report(report, &lines)?;
    let mut text = summary_text(&label, &checks);
    if theorem.is_some() {
        for c in &checks {
            text.push_str(&format!("{}: lhs {} rhs {} ({:?})\n", c.theorem, c.lhs, c.rhs, c.status));
        }
    }
    let ok = checks.iter().all(TheoremCheck::passed);
    Ok((text, if ok { 0 } else { EXIT_VERIFY }))
}

fn cmd_complement(region: &RegionArgs, shading: i64, axis: AxisArg, count: bool, format: Format) -> Out {
    let spec = region.spec()?;
    let b = spec.region.build()?;
    let axis = match axis {
        AxisArg::Horizontal => Axis::Horizontal,
        AxisArg::Vertical => Axis::Vertical,
    };
    let c = complement_graph(&b.graph, shading, axis)?;
    let census = c.decomposition.kind_census();
    let mut v = json!({
        "t": c.t,
        "cells": c.decomposition.cells.len(),
        "paths": c.decomposition.paths.len(),
        "census": census,
        "vertices": b.graph.vertex_count(),
        "complement_vertices": c.graph.vertex_count(),
    });
    let mut code = 0;
    if count {
        let counter = |g: &MatchGraph| -> Result<BigUint, Fail> {
            Ok(match b.torus {
                Some(_) => tilings::matchcount::count_kasteleyn(g, Surface::Torus)?,
                None => count_planar_kasteleyn(g)?,
            })
        };
        let (h, k) = (counter(&b.graph)?, counter(&c.graph)?);
        let holds = if c.t >= 0 { h == &k << c.t as u64 } else { &h << (-c.t) as u64 == k };
        v["count"] = json!(h.to_string());
        v["complement_count"] = json!(k.to_string());
        v["identity_holds"] = json!(holds);
        if !holds {
            code = EXIT_VERIFY;
        }
    }
    let text = match format {
        Format::Json => serde_json::to_string(&v).unwrap() + "\n",
        Format::Text => {
            let mut s = format!(
                "t = {}, {} cells, {} paths {}, {} -> {} vertices\n",
                c.t,
                v["cells"],
                v["paths"],
                serde_json::to_string(&census).unwrap(),
                v["vertices"],
                v["complement_vertices"]
            );
            if count {
                s.push_str(&format!(
                    "M(H) = {}, M(complement) = {}, M(H) = 2^t M(complement): {}\n",
                    v["count"].as_str().unwrap(),
                    v["complement_count"].as_str().unwrap(),
                    v["identity_holds"]
                ));
            }
            s
        }
    };
    Ok((text, code))
}

fn cmd_correlate(region: &RegionArgs, format: Format) -> Out {
    let spec = region.spec()?;
    let b = spec.region.build()?;
    let Some(t) = b.torus else {
        return Err(Fail::new(EXIT_SPEC, "correlations are defined on a torus region"));
    };
    let c = verify::finite_size_correlation(t.m, t.n, &t.holes)?;
    Ok(match format {
        Format::Json => (serde_json::to_string(&c).unwrap() + "\n", 0),
        Format::Text => (format!("omega_{{{},{}}} = {}\n", c.m, c.n, c.value), 0),
    })
}

fn cmd_render(region: &RegionArgs, out: &Option<PathBuf>, label_row: bool, scale: i64) -> Out {
    if scale < 2 {
        return Err(Fail::new(EXIT_SPEC, "scale must be at least 2"));
    }
    let spec = region.spec()?;
    let b = spec.region.build()?;
    let svg = render::render(&b, render::Style { scale, label_row });
    match out {
        Some(p) => {
            write_atomic(p, &svg)?;
            Ok((String::new(), 0))
        }
        None => Ok((svg, 0)),
    }
}

fn run(cli: &Cli) -> Out {
    match &cli.cmd {
        Cmd::Build { region, emit_spec, format } => cmd_build(region, *emit_spec, *format),
        Cmd::Count { region, engine, factor, max_vertices, format } => {
            cmd_count(region, *engine, *factor, *max_vertices, *format)
        }
        Cmd::Formula { region, factor, format } => cmd_formula(region, *factor, *format),
        Cmd::Verify { suite, theorem, params, fixture, report, timing } => {
            cmd_verify(suite, theorem, params, fixture, report, *timing)
        }
        Cmd::Complement { region, shading, axis, count, format } => {
            cmd_complement(region, *shading, *axis, *count, *format)
        }
        Cmd::Correlate { region, format } => cmd_correlate(region, *format),
        Cmd::Render { region, out, label_row, scale } => cmd_render(region, out, *label_row, *scale),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((text, code)) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(EXIT_IO);
            }
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code)
        }
    }
}
