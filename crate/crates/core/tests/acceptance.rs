use num_bigint::BigUint;
use std::process::ExitCode;
use std::time::{Duration, Instant};
use tilings::complement::{complement_graph, Axis};
use tilings::lattice::{build_cruciform_windowed, build_r_graph, build_windowed_region, MatchGraph, TorusGraph};
use tilings::matchcount::{
    calibrate_torus_signs, count_bruteforce_with_limit, count_kasteleyn, count_planar_kasteleyn, count_torus_periodic,
    Surface, MAX_BRUTE_LIMIT,
};
use tilings::verify::{self, Contact, Status, TheoremCheck, TheoremId};

struct Outcome {
    pass: bool,
    detail: String,
}

fn from_checks(checks: &[TheoremCheck], extra: &str) -> Outcome {
    let (pass, fail, vacuous) = verify::tally(checks);
    let mut detail = format!("{} checks: {pass} pass, {fail} fail, {vacuous} vacuous", checks.len());
    if !extra.is_empty() {
        detail = format!("{detail}; {extra}");
    }
    for c in checks.iter().filter(|c| c.status == Status::Fail).take(3) {
        detail.push_str(&format!("\n    failing: {}", serde_json::to_string(c).unwrap()));
    }
    Outcome { pass: fail == 0 && !checks.is_empty(), detail }
}

fn within(o: Outcome, elapsed: Duration, budget: Duration) -> Outcome {
    if elapsed <= budget {
        o
    } else {
        Outcome { pass: false, detail: format!("{}; over the {:?} budget", o.detail, budget) }
    }
}

fn criterion1() -> Outcome {
    let start = Instant::now();
    let checks: Vec<_> = (1..=8).map(|n| verify::check_eq1(n).unwrap()).collect();
    within(from_checks(&checks, ""), start.elapsed(), Duration::from_secs(5))
}

fn criterion2() -> Outcome {
    let start = Instant::now();
    let inputs = verify::r_inputs(5, 7);
    let checks: Vec<_> = inputs.iter().map(|i| verify::check_r_formula(i).unwrap()).collect();
    let variants: std::collections::BTreeSet<_> = inputs.iter().map(|i| i.variant).collect();
    let extra = format!("{} variants covered", variants.len());
    within(from_checks(&checks, &extra), start.elapsed(), Duration::from_secs(120))
}

fn criterion3() -> Outcome {
    let start = Instant::now();
    let grid = verify::windowed_grid();
    let checks: Vec<_> = grid.iter().map(|s| verify::check_windowed(s).unwrap()).collect();
    let cruciform = checks.iter().filter(|c| c.note.as_deref() == Some("cruciform")).count();
    let ids: std::collections::BTreeSet<_> = checks.iter().map(|c| c.theorem).collect();
    let mut o = from_checks(&checks, &format!("{} theorems covered, {cruciform} cruciform", ids.len()));
    o.pass &= ids.len() == 4;
    within(o, start.elapsed(), Duration::from_secs(600))
}

fn criterion4() -> Outcome {
    let start = Instant::now();
    let checks = verify::check_figure1().unwrap();
    let mut o = from_checks(&checks, "");
    o.pass &= checks.len() == 2;
    within(o, start.elapsed(), Duration::from_secs(900))
}

fn criterion5() -> Outcome {
    let checks = verify::complement_checks(11, 100).unwrap();
    let tori = checks.iter().filter(|c| c.instance.get("torus").is_some()).count();
    let planar = checks.len() - tori;
    let fig7 = verify::check_windowed_evolution(&verify::figure7_spec().with_k(1)).unwrap();
    let fig7_ok = fig7.len() == 1 && fig7[0].status == Status::Pass && fig7[0].note.as_deref().unwrap_or("").starts_with("t = -8,");
    let mut all = checks;
    all.extend(fig7);
    let mut o = from_checks(&all, &format!("{planar} planar evolution steps, {tori} tori, figure 7 step t = -8: {fig7_ok}"));
    o.pass &= tori >= 100 && fig7_ok;
    o
}

/// Checks whose windows share an edge: outside the admissible corpus, the
/// identities are reported for information only.
fn touching(checks: &[TheoremCheck], id: TheoremId) -> String {
    let of: Vec<_> = checks
        .iter()
        .filter(|c| c.theorem == id && c.note.as_deref().is_some_and(|n| n.contains("windows touch")))
        .collect();
    let fail = of.iter().filter(|c| c.status == Status::Fail).count();
    let vacuous = of.iter().filter(|c| c.status == Status::Vacuous).count();
    format!("{id} with touching windows (informational): {} checks, {fail} fail, {vacuous} vacuous", of.len())
}

fn criterion6() -> Outcome {
    let checks = verify::torus_theorem_checks(12, 50, Contact::Separated).unwrap();
    let mut detail = String::new();
    let mut pass = true;
    for id in [TheoremId::T42, TheoremId::C43, TheoremId::T44] {
        let of: Vec<_> = checks.iter().filter(|c| c.theorem == id).cloned().collect();
        let o = from_checks(&of, "");
        detail.push_str(&format!("\n    {id}: {}", o.detail));
        pass &= o.pass && of.len() >= 50 * 9;
    }
    let lemma: Vec<_> = checks.iter().filter(|c| c.theorem == TheoremId::L41).cloned().collect();
    detail.push_str(&format!("\n    L4.1: {}", from_checks(&lemma, "").detail));
    let loose = verify::torus_theorem_checks(21, 50, Contact::Any).unwrap();
    for id in [TheoremId::L41, TheoremId::T42, TheoremId::C43, TheoremId::T44] {
        detail.push_str(&format!("\n    {}", touching(&loose, id)));
    }
    Outcome { pass, detail }
}

fn criterion7() -> Outcome {
    let start = Instant::now();
    let checks = verify::flip_checks(13, 50, Contact::Separated).unwrap();
    let fig10 = checks.iter().any(|c| c.instance["m"] == 8 && c.instance["n"] == 10 && c.status == Status::Pass);
    let loose = verify::flip_checks(22, 200, Contact::Any).unwrap();
    let mut o = from_checks(&checks, &format!("figure 10 passes: {fig10}\n    {}", touching(&loose, TheoremId::C45)));
    o.pass &= fig10 && checks.len() >= 51;
    within(o, start.elapsed(), Duration::from_secs(300))
}

fn criterion8() -> Outcome {
    let checks = verify::eceee_checks(14, 3, Contact::Any).unwrap();
    let mut shapes = std::collections::BTreeSet::new();
    for c in &checks {
        let w = &c.instance["holes"][0];
        shapes.insert((c.instance["m"].to_string(), w["k"].to_string(), w["l"].to_string()));
    }
    let mut o = from_checks(&checks, &format!("{} (torus, k, l) shapes", shapes.len()));
    o.pass &= shapes.len() == 2 * 15;
    o
}

fn agree(g: &MatchGraph, surface: Surface) -> bool {
    let brute = count_bruteforce_with_limit(g, MAX_BRUTE_LIMIT).unwrap();
    let det: BigUint = match surface {
        Surface::Plane => count_planar_kasteleyn(g).unwrap(),
        Surface::Torus => count_kasteleyn(g, Surface::Torus).unwrap(),
    };
    brute == det
}

fn criterion9() -> Outcome {
    let mut planar: Vec<MatchGraph> = Vec::new();
    for i in verify::r_inputs(5, 7) {
        planar.push(build_r_graph(i.variant, i.m, i.n, &i.t).unwrap());
    }
    for s in verify::windowed_grid() {
        let w = build_windowed_region(&s).or_else(|_| build_cruciform_windowed(&s)).unwrap();
        if let Ok(c) = complement_graph(&w.graph, 0, Axis::Horizontal) {
            planar.push(c.graph);
        }
        planar.push(w.graph);
    }
    planar.retain(|g| g.vertex_count() <= 36);
    let planar_bad = planar.iter().filter(|g| !agree(g, Surface::Plane)).count();

    let mut tori: Vec<MatchGraph> = Vec::new();
    for (t, shading, axis) in verify::torus_complement_corpus(11, 100, 5) {
        if let Ok(c) = complement_graph(&t.graph, shading, axis) {
            tori.push(c.graph);
        }
        tori.push(t.graph);
    }
    let mut rng = verify::rng(15);
    for (m, n) in [(2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 3), (3, 4)] {
        tori.push(TorusGraph::plain(m, n).unwrap().graph);
        for _ in 0..10 {
            if let Some(t) = verify::random_balanced_holes(&mut rng, m, n, 1) {
                tori.push(t.graph);
            }
        }
    }
    tori.retain(|g| g.vertex_count() <= 24);
    let torus_bad = tori.iter().filter(|g| !agree(g, Surface::Torus)).count();

    let mut periodic_bad = 0;
    let mut periodic_n = 0;
    for m in 2..=6 {
        for n in 2..=6 {
            let t = TorusGraph::plain(m, n).unwrap();
            let p = count_torus_periodic(&t).unwrap();
            let reference = if t.graph.vertex_count() <= 24 {
                count_bruteforce_with_limit(&t.graph, MAX_BRUTE_LIMIT).unwrap()
            } else {
                count_kasteleyn(&t.graph, Surface::Torus).unwrap()
            };
            periodic_n += 1;
            if p != reference {
                periodic_bad += 1;
            }
        }
    }

    let cal = calibrate_torus_signs().unwrap();
    let unique = cal.unique_up_to_sign();
    let classes: Vec<String> = cal
        .classes
        .iter()
        .map(|c| format!("(m, n) = {:?} mod 2: {} instances, surviving {:?}", c.parity, c.instances, c.surviving))
        .collect();
    Outcome {
        pass: planar_bad == 0
            && torus_bad == 0
            && periodic_bad == 0
            && unique
            && !planar.is_empty()
            && !tori.is_empty(),
        detail: format!(
            "planar {} graphs, {planar_bad} disagree; torus {} graphs, {torus_bad} disagree; \
             periodic combination on {periodic_n} plain tori, {periodic_bad} disagree\n    \
             sign patterns valid on every size at once: {:?}\n    {}",
            planar.len(),
            tori.len(),
            cal.common,
            classes.join("\n    ")
        ),
    }
}

fn main() -> ExitCode {
    let criteria: [(u32, fn() -> Outcome); 9] = [
        (1, criterion1),
        (2, criterion2),
        (3, criterion3),
        (4, criterion4),
        (5, criterion5),
        (6, criterion6),
        (7, criterion7),
        (8, criterion8),
        (9, criterion9),
    ];
    let only: Option<u32> = std::env::var("ACCEPTANCE_ONLY").ok().and_then(|v| v.parse().ok());
    let mut failed = 0;
    for (i, f) in criteria {
        if only.is_some_and(|o| o != i) {
            continue;
        }
        let start = Instant::now();
        let o = f();
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {i}: {verdict} ({:.1}s) {}", start.elapsed().as_secs_f64(), o.detail);
        if !o.pass {
            failed += 1;
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
