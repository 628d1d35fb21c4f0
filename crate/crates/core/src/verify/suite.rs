use super::checks::*;
use super::gen::*;
use super::{Status, TheoremCheck};
use crate::formulas::FormulaInput;
use crate::lattice::{build_windowed_region, Family, OddRect, RVariant, TorusGraph, WindowedSpec};
use crate::{Error, Result};
use rand::Rng as _;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Smoke,
    ExhaustiveSmall,
    Figures,
    Torus,
    Full,
}

impl Suite {
    pub fn parse(s: &str) -> Option<Suite> {
        Some(match s {
            "smoke" => Suite::Smoke,
            "exhaustive-small" => Suite::ExhaustiveSmall,
            "figures" => Suite::Figures,
            "torus" => Suite::Torus,
            "full" => Suite::Full,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub vacuous: usize,
}

impl Summary {
    pub fn of(checks: &[TheoremCheck]) -> Summary {
        let (pass, fail, vacuous) = tally(checks);
        Summary { total: checks.len(), pass, fail, vacuous }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<TheoremCheck>,
    pub summary: Summary,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.summary.fail == 0
    }

    /// One JSON object per check, then the summary.
    pub fn to_json_lines(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            s.push_str(&serde_json::to_string(c).unwrap());
            s.push('\n');
        }
        s.push_str(&serde_json::to_string(&json!({ "suite": self.suite, "summary": self.summary })).unwrap());
        s.push('\n');
        s
    }
}

type Job = Box<dyn Fn() -> Result<Vec<TheoremCheck>> + Send + Sync>;

fn job<F: Fn() -> Result<Vec<TheoremCheck>> + Send + Sync + 'static>(f: F) -> Job {
    Box::new(f)
}

fn one<F: Fn() -> Result<TheoremCheck> + Send + Sync + 'static>(f: F) -> Job {
    Box::new(move || Ok(vec![f()?]))
}

fn run_jobs(jobs: Vec<Job>, timing: bool) -> Result<Vec<TheoremCheck>> {
    let results: Vec<Result<Vec<TheoremCheck>>> = jobs
        .par_iter()
        .map(|j| {
            let start = Instant::now();
            let mut v = j()?;
            if timing {
                let ms = start.elapsed().as_millis() as u64;
                for c in &mut v {
                    c.millis = Some(ms);
                }
            }
            Ok(v)
        })
        .collect();
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

fn sort_checks(v: &mut [TheoremCheck]) {
    v.sort_by_cached_key(|c| (c.theorem, serde_json::to_string(&c.instance).unwrap()));
}

/// The grid of windowed regions: `m` in 2..=5 of the family's parity,
/// `k` in {1, 2}, `s` in {1, 2}, `a_i <= 4`.
pub fn windowed_grid() -> Vec<WindowedSpec> {
    Family::ALL.iter().flat_map(|&f| admissible_windowed_specs(f, &[2, 3, 4, 5], &[1, 2], &[1, 2], 4)).collect()
}

/// The complemented graph of the first evolution step in the proof for
/// growing windows: `m = 6`, one window with `a_1 = 3`.
pub fn figure7_spec() -> WindowedSpec {
    WindowedSpec::new(Family::Ar, 6, 0, &[(3, 11)])
}

fn figure_specs() -> Vec<(&'static str, WindowedSpec)> {
    vec![
        ("fig3", WindowedSpec::new(Family::Ar, 14, 2, &[(4, 14), (2, 26), (3, 41)])),
        ("fig3-prime", WindowedSpec::new(Family::ArPrime, 13, 2, &[(4, 14), (2, 26), (3, 41)])),
        ("fig5-left", WindowedSpec::new(Family::ArDouble, 19, 2, &[(3, 11), (2, 20)])),
        ("fig6", WindowedSpec::new(Family::ArDouble, 25, 4, &[(1, 3), (5, 17), (1, 31)])),
    ]
}

/// Figure 4 (left): three holes on `T_{13,17}`.
pub fn figure4_torus() -> Result<TorusGraph> {
    TorusGraph::with_holes(
        13,
        17,
        vec![OddRect::new(0, 3, 4, 4)?, OddRect::new(1, 1, 20, 7)?, OddRect::new(4, 2, 12, 17)?],
    )
}

/// Complementation corpus: each evolution step of the windowed grid, the
/// figure-7 step and random tori.
pub fn complement_checks(seed: u64, tori: usize) -> Result<Vec<TheoremCheck>> {
    let mut jobs: Vec<Job> = Vec::new();
    for spec in windowed_grid().into_iter().filter(|s| build_windowed_region(s).is_ok()) {
        jobs.push(job(move || check_windowed_evolution(&spec)));
    }
    jobs.push(job(|| check_windowed_evolution(&figure7_spec().with_k(1))));
    for (i, (t, shading, axis)) in torus_complement_corpus(seed, tori, 5).into_iter().enumerate() {
        jobs.push(one(move || {
            check_complement(&t.graph, shading, axis, json!({ "torus": [t.m, t.n], "holes": t.holes, "index": i }))
        }));
    }
    run_jobs(jobs, false)
}

/// Random instances of the three torus evolution identities on
/// `T_{m,n}`, `m, n` in {4, 5, 6}: `per_torus` hole sets of each kind per
/// torus, plus the disjointness lemma on the hole sets of the first kind.
pub fn torus_theorem_checks(seed: u64, per_torus: usize, contact: Contact) -> Result<Vec<TheoremCheck>> {
    let mut jobs: Vec<Job> = Vec::new();
    let mut rng = rng(seed);
    for m in 4..=6 {
        for n in 4..=6 {
            let (mut a, mut b, mut c) = (0, 0, 0);
            let mut attempts = 0;
            while (a < per_torus || b < per_torus || c < per_torus) && attempts < 50 * per_torus {
                attempts += 1;
                if a < per_torus {
                    if let Some(t) = random_balanced_holes_with(&mut rng, m, n, 2, contact) {
                        let t2 = t.clone();
                        jobs.push(one(move || check_t42(&t)));
                        jobs.push(one(move || check_lemma41(&t2)));
                        a += 1;
                    }
                }
                let s = rng.gen_range(1..=2);
                if b < per_torus {
                    let (k, l) = (rng.gen_range(0..=1), rng.gen_range(1..=2));
                    if let Some((w, bl)) = random_rotated_pairs_with(&mut rng, m, n, s, k, l, contact) {
                        jobs.push(one(move || check_c43(m, n, &w, &bl)));
                        b += 1;
                    }
                }
                if c < per_torus {
                    let k = rng.gen_range(0..=3);
                    let l = rng.gen_range((1 - k).max(0)..=3 - k);
                    if let Some((w, bl)) = random_rotated_pairs_with(&mut rng, m, n, s, k, l, contact) {
                        jobs.push(one(move || check_t44(m, n, &w, &bl)));
                        c += 1;
                    }
                }
            }
        }
    }
    run_jobs(jobs, false)
}

/// Flip symmetry: the figure-10 slits and random multiplet configurations.
pub fn flip_checks(seed: u64, count: usize, contact: Contact) -> Result<Vec<TheoremCheck>> {
    let mut jobs: Vec<Job> = Vec::new();
    let (m, n, w, b) = fig10_configuration();
    jobs.push(one(move || check_c45(m, n, &w, &b)));
    let tori = [(4, 4), (4, 5), (5, 5), (5, 6), (6, 6), (6, 8), (8, 8), (8, 10)];
    let mut rng = rng(seed);
    let mut made = 0;
    while made < count {
        let (m, n) = tori[rng.gen_range(0..tori.len())];
        let (s, len) = (rng.gen_range(1..=2), rng.gen_range(1..=3));
        if let Some((w, b)) = random_multiplet_configuration(&mut rng, m, n, s, len, contact) {
            jobs.push(one(move || check_c45(m, n, &w, &b)));
            made += 1;
        }
    }
    run_jobs(jobs, false)
}

/// The finite-size identity for all `k + l <= 4` on `T_{6,6}` and
/// `T_{8,8}`, `per_shape` placements each. On `T_{6,6}` the windows of
/// `k + l = 4` cannot avoid touching.
pub fn eceee_checks(seed: u64, per_shape: usize, contact: Contact) -> Result<Vec<TheoremCheck>> {
    let mut jobs: Vec<Job> = Vec::new();
    let mut rng = rng(seed);
    for size in [6, 8] {
        for k in 0..=4 {
            for l in 0..=4 - k {
                let mut made = 0;
                for _ in 0..20 * per_shape {
                    if made == per_shape {
                        break;
                    }
                    if let Some((w, b)) = random_rotated_pairs_with(&mut rng, size, size, 1, k, l, contact) {
                        jobs.push(one(move || check_eceee(size, size, w[0], b[0])));
                        made += 1;
                    }
                }
            }
        }
    }
    run_jobs(jobs, false)
}

/// Finite windowed correlation ratios: two windows moved apart, height
/// `k` against the monomer runs.
pub fn r3_checks() -> Result<Vec<TheoremCheck>> {
    let mut jobs: Vec<Job> = Vec::new();
    for (family, m) in [(Family::Ar, 4), (Family::Ar, 6), (Family::ArPrime, 5)] {
        for k in 1..=2 {
            let a = [2, 3];
            for gap in [0, 2, 4] {
                let c1 = 4;
                let c0 = super::reference_centres(&a, c1);
                let holes = vec![(a[0], c0[0]), (a[1], c0[1] + gap)];
                jobs.push(one(move || check_r3(family, m, k, &holes, &c0)));
            }
        }
    }
    run_jobs(jobs, false)
}

fn smoke_jobs() -> Vec<Job> {
    let mut jobs: Vec<Job> = (1..=5).map(|n| one(move || check_eq1(n))).collect();
    jobs.push(one(|| check_r_formula(&FormulaInput { variant: RVariant::R, m: 2, n: 3, t: vec![1, 2] })));
    jobs.push(one(|| check_r_formula(&FormulaInput { variant: RVariant::RDouble, m: 5, n: 3, t: vec![2, 4] })));
    for spec in [
        WindowedSpec::new(Family::Ar, 2, 1, &[(1, 3)]),
        WindowedSpec::new(Family::ArPrime, 3, 1, &[(1, 3)]),
        WindowedSpec::new(Family::ArDouble, 9, 1, &[(1, 5)]),
        WindowedSpec::new(Family::ArTriple, 8, 1, &[(1, 5)]),
    ] {
        jobs.push(one(move || check_windowed(&spec)));
    }
    jobs.push(job(|| check_windowed_evolution(&figure7_spec().with_k(1))));
    let small = || TorusGraph::with_holes(4, 5, vec![OddRect::new(0, 1, 2, 2)?, OddRect::new(1, 0, 6, 4)?]);
    jobs.push(one(move || check_t42(&small()?)));
    jobs.push(one(move || check_lemma41(&small()?)));
    jobs.push(one(|| {
        let w = OddRect::new(1, 1, 4, 3)?;
        let b = OddRect::new(1, 1, 9, 6)?;
        check_c43(5, 5, &[w], &[b])
    }));
    jobs.push(one(|| {
        let w = OddRect::new(0, 2, 3, 2)?;
        let b = OddRect::new(2, 0, 8, 5)?;
        check_t44(5, 5, &[w], &[b])
    }));
    jobs.push(one(|| {
        let (m, n, w, b) = fig10_configuration();
        check_c45(m, n, &w, &b)
    }));
    jobs.push(one(|| check_eceee(5, 5, OddRect::new(1, 1, 4, 3)?, OddRect::new(1, 1, 9, 6)?)));
    jobs.push(one(|| {
        let c0 = super::reference_centres(&[1, 1], 3);
        check_r3(Family::Ar, 4, 1, &[(1, 3), (1, 11)], &c0)
    }));
    jobs
}

fn figure_jobs() -> Vec<Job> {
    let mut jobs: Vec<Job> = vec![job(check_figure1)];
    for (_, spec) in figure_specs() {
        jobs.push(one(move || check_windowed(&spec)));
    }
    jobs.push(job(|| check_windowed_evolution(&figure7_spec().with_k(1))));
    jobs.push(one(|| check_t42(&figure4_torus()?)));
    jobs.push(one(|| check_lemma41(&figure4_torus()?)));
    jobs.push(one(|| {
        let (m, n, w, b) = fig10_configuration();
        check_c45(m, n, &w, &b)
    }));
    jobs
}

/// Runs a named suite. Checks are sorted by theorem and instance.
pub fn run_suite(suite: Suite, timing: bool) -> Result<SuiteReport> {
    let mut checks = match suite {
        Suite::Smoke => run_jobs(smoke_jobs(), timing)?,
        Suite::ExhaustiveSmall => {
            run_jobs(r_inputs(5, 7).into_iter().map(|i| one(move || check_r_formula(&i))).collect(), timing)?
        }
        Suite::Figures => run_jobs(figure_jobs(), timing)?,
        Suite::Torus => {
            let mut v = complement_checks(11, 100)?;
            v.retain(|c| c.instance.get("torus").is_some());
            v.extend(torus_theorem_checks(12, 50, Contact::Separated)?);
            v.extend(flip_checks(13, 50, Contact::Separated)?);
            v.extend(eceee_checks(14, 3, Contact::Any)?);
            v
        }
        Suite::Full => {
            let mut v = run_jobs(smoke_jobs(), timing)?;
            v.extend(run_suite(Suite::ExhaustiveSmall, timing)?.checks);
            v.extend(run_suite(Suite::Figures, timing)?.checks);
            v.extend(run_jobs(windowed_grid().into_iter().map(|s| one(move || check_windowed(&s))).collect(), timing)?);
            v.extend(complement_checks(11, 100)?);
            v.extend(torus_theorem_checks(12, 50, Contact::Separated)?);
            v.extend(flip_checks(13, 50, Contact::Separated)?);
            v.extend(eceee_checks(14, 3, Contact::Any)?);
            v.extend(r3_checks()?);
            v
        }
    };
    sort_checks(&mut checks);
    let summary = Summary::of(&checks);
    Ok(SuiteReport { suite, checks, summary })
}

/// Fails with the first failing check, for callers that only need a verdict.
pub fn require_all(checks: &[TheoremCheck]) -> Result<()> {
    match checks.iter().find(|c| c.status == Status::Fail) {
        Some(c) => Err(Error::Internal(format!("{} failed on {}", c.theorem, c.instance))),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::TheoremId;

    #[test]
    fn smoke_suite_passes() {
        let r = run_suite(Suite::Smoke, false).unwrap();
        for c in &r.checks {
            assert!(c.passed(), "{}", serde_json::to_string(c).unwrap());
        }
        assert!(r.summary.total >= 15);
        let ids: std::collections::BTreeSet<TheoremId> = r.checks.iter().map(|c| c.theorem).collect();
        assert!(ids.len() >= 13);
    }
}
