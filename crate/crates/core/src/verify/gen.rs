//! Seeded instance generators. The same seed always yields the same list.

use crate::complement::{cellular_completion, Axis};
use crate::formulas::{horizontal_multiplet, vertical_multiplet, FormulaInput};
use crate::lattice::{build_cruciform_windowed, build_windowed_region, Color, Family, OddRect, RVariant, TorusGraph, WindowedSpec};
use itertools::Itertools;
use rand::{Rng as _, SeedableRng};
use std::collections::BTreeSet;

pub type Rng = rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> Rng {
    Rng::seed_from_u64(seed)
}

/// Every admissible `(variant, m, n, T)` with `m <= max_m`, `n <= max_n`.
pub fn r_inputs(max_m: i64, max_n: i64) -> Vec<FormulaInput> {
    let mut out = Vec::new();
    for variant in RVariant::ALL {
        for m in 1..=max_m {
            for n in 1..=max_n {
                if variant.check(m, n).is_err() {
                    continue;
                }
                let labels = 1..=variant.label_count(n);
                for t in labels.combinations(variant.kept(m, n) as usize) {
                    out.push(FormulaInput { variant, m, n, t });
                }
            }
        }
    }
    out
}

fn reflect(spec: &WindowedSpec) -> WindowedSpec {
    let count = spec.family.r_variant().label_count(spec.frame_n());
    let mut r = spec.clone();
    r.holes.reverse();
    for h in &mut r.holes {
        h.center2 = 2 * (count + 1) - h.center2;
    }
    r
}

/// Windowed regions for each `m` of the family's parity in `ms`, each `k`
/// in `ks` and `s` in `ss`, with `k <= a_i <= max_a` and every centre
/// placement up to left-right reflection. Cruciform regions are included.
pub fn admissible_windowed_specs(family: Family, ms: &[i64], ks: &[i64], ss: &[usize], max_a: i64) -> Vec<WindowedSpec> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &m in ms.iter().filter(|&&m| m.rem_euclid(2) == family.m_parity()) {
        for &k in ks {
            for &s in ss {
                for a in (0..s).map(|_| k..=max_a).multi_cartesian_product() {
                    let probe = WindowedSpec::new(family, m, k, &a.iter().map(|&ai| (ai, ai)).collect::<Vec<_>>());
                    if probe.frame_n() < 1 {
                        continue;
                    }
                    let count = family.r_variant().label_count(probe.frame_n());
                    let centre_lists = a.iter().map(|&ai| (ai + 2..=2 * count - ai).step_by(2)).multi_cartesian_product();
                    for cs in centre_lists {
                        let holes: Vec<(i64, i64)> = a.iter().copied().zip(cs).collect();
                        let spec = WindowedSpec::new(family, m, k, &holes);
                        if spec.runs().is_err() {
                            continue;
                        }
                        let key = |s: &WindowedSpec| serde_json::to_string(s).unwrap();
                        let canon = key(&spec).min(key(&reflect(&spec)));
                        if !seen.insert(canon) {
                            continue;
                        }
                        if build_windowed_region(&spec).is_ok() || build_cruciform_windowed(&spec).is_ok() {
                            out.push(spec);
                        }
                    }
                }
            }
        }
    }
    out
}

/// A random placement of `O_{k,l}` with the given majority colour.
fn random_placement(rng: &mut Rng, m: usize, n: usize, k: i64, l: i64, color: Color) -> OddRect {
    let mut cy = rng.gen_range(0..2 * m as i64);
    if Color::of_row(cy - k) != color {
        cy += 1;
    }
    let mut cx = rng.gen_range(0..2 * n as i64);
    if (cx + cy - 1 - k - l).rem_euclid(2) != 0 {
        cx += 1;
    }
    OddRect { k, l, cx, cy }
}

/// How close two windows may be.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Contact {
    /// No edge joins two windows; they may meet at corners.
    Separated,
    /// Only disjoint vertex sets.
    Any,
}

fn place_all(rng: &mut Rng, m: usize, n: usize, shapes: &[(i64, i64, Color)], contact: Contact) -> Option<TorusGraph> {
    for _ in 0..200 {
        let holes: Vec<OddRect> = shapes.iter().map(|&(k, l, c)| random_placement(rng, m, n, k, l, c)).collect();
        if let Ok(t) = TorusGraph::with_holes(m, n, holes) {
            if contact == Contact::Any || t.touching_windows().is_none() {
                return Some(t);
            }
        }
    }
    None
}

/// One or two white holes with `k, l <= max_kl`, balanced by black holes
/// of random shapes, placed at random with no edge between two windows.
pub fn random_balanced_holes(rng: &mut Rng, m: usize, n: usize, max_kl: i64) -> Option<TorusGraph> {
    random_balanced_holes_with(rng, m, n, max_kl, Contact::Separated)
}

pub fn random_balanced_holes_with(rng: &mut Rng, m: usize, n: usize, max_kl: i64, contact: Contact) -> Option<TorusGraph> {
    let whites = rng.gen_range(1..=2);
    let mut shapes = Vec::new();
    let mut q = 0;
    for _ in 0..whites {
        let (k, l) = (rng.gen_range(0..=max_kl), rng.gen_range(0..=max_kl));
        q += k + l + 1;
        shapes.push((k, l, Color::White));
    }
    while q > 0 {
        let size = rng.gen_range(1..=q.min(2 * max_kl + 1));
        let k = rng.gen_range(0.max(size - 1 - max_kl)..=(size - 1).min(max_kl));
        shapes.push((k, size - 1 - k, Color::Black));
        q -= size;
    }
    place_all(rng, m, n, &shapes, contact)
}

/// `s` white `O_{k,l}` and `s` black `O_{l,k}` with no edge between two
/// windows.
pub fn random_rotated_pairs(
    rng: &mut Rng,
    m: usize,
    n: usize,
    s: usize,
    k: i64,
    l: i64,
) -> Option<(Vec<OddRect>, Vec<OddRect>)> {
    random_rotated_pairs_with(rng, m, n, s, k, l, Contact::Separated)
}

pub fn random_rotated_pairs_with(
    rng: &mut Rng,
    m: usize,
    n: usize,
    s: usize,
    k: i64,
    l: i64,
    contact: Contact,
) -> Option<(Vec<OddRect>, Vec<OddRect>)> {
    let shapes: Vec<(i64, i64, Color)> =
        (0..s).map(|_| (k, l, Color::White)).chain((0..s).map(|_| (l, k, Color::Black))).collect();
    let t = place_all(rng, m, n, &shapes, contact)?;
    let (w, b) = t.holes.split_at(s);
    Some((w.to_vec(), b.to_vec()))
}

/// `s` white vertical and `s` black horizontal multiplets of length `len`.
pub fn random_multiplet_configuration(
    rng: &mut Rng,
    m: usize,
    n: usize,
    s: usize,
    len: i64,
    contact: Contact,
) -> Option<(Vec<OddRect>, Vec<OddRect>)> {
    random_rotated_pairs_with(rng, m, n, s, len - 1, 0, contact)
}

/// A fixed configuration of slits of length `len` on a torus: white
/// vertical slits centred at `whites`, black horizontal ones at `blacks`.
pub fn multiplet_configuration(len: i64, whites: &[(i64, i64)], blacks: &[(i64, i64)]) -> crate::Result<(Vec<OddRect>, Vec<OddRect>)> {
    let k = len - 1;
    let w = whites.iter().map(|&(x, y)| OddRect::new(k, 0, x, y)).collect::<crate::Result<Vec<_>>>()?;
    let b = blacks.iter().map(|&(x, y)| OddRect::new(0, k, x, y)).collect::<crate::Result<Vec<_>>>()?;
    Ok((w, b))
}

/// Four slits of length 2 on `T_{8,10}`, the two black ones contiguous.
pub fn fig10_configuration() -> (usize, usize, Vec<OddRect>, Vec<OddRect>) {
    let (w, b) = multiplet_configuration(2, &[(13, 9), (3, 11)], &[(5, 5), (9, 5)]).expect("valid slits");
    (8, 10, w, b)
}

/// Each white hole replaced by its horizontal multiplet and each black one
/// by its vertical multiplet.
pub fn flipped(whites: &[OddRect], blacks: &[OddRect]) -> Vec<OddRect> {
    whites.iter().map(horizontal_multiplet).chain(blacks.iter().map(vertical_multiplet)).collect()
}

/// Random tori with balanced holes, paired with a shading and an axis for
/// which the cellular completion exists.
pub fn torus_complement_corpus(seed: u64, count: usize, max_mn: usize) -> Vec<(TorusGraph, i64, Axis)> {
    let mut rng = rng(seed);
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count && attempts < 100 * count {
        attempts += 1;
        let (m, n) = (rng.gen_range(2..=max_mn), rng.gen_range(2..=max_mn));
        let t = if rng.gen_bool(0.2) {
            TorusGraph::plain(m, n).ok()
        } else {
            random_balanced_holes(&mut rng, m, n, 1)
        };
        let Some(t) = t else { continue };
        let shading = rng.gen_range(0..2);
        let axis = if rng.gen_bool(0.5) { Axis::Vertical } else { Axis::Horizontal };
        if cellular_completion(&t.graph, shading).is_ok() {
            out.push((t, shading, axis));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theorem_two_one_instance_count() {
        let all = r_inputs(5, 7);
        let binom = |n: u64, k: u64| (1..=k).fold(1u64, |acc, i| acc * (n + 1 - i) / i);
        let mut expected = 0;
        for m in 1..=5u64 {
            for n in 1..=7u64 {
                if m < n {
                    expected += binom(n, m);
                } else if m > n && m <= 2 * n + 1 {
                    expected += binom(n + 1, 2 * n + 1 - m);
                }
            }
        }
        assert_eq!(all.len() as u64, expected);
        assert_eq!(expected, 258);
        assert!(all.iter().all(|i| i.variant.check(i.m, i.n).is_ok()));
    }

    #[test]
    fn generators_are_deterministic() {
        let a = random_balanced_holes(&mut rng(7), 5, 5, 2).unwrap();
        let b = random_balanced_holes(&mut rng(7), 5, 5, 2).unwrap();
        assert_eq!(a.holes, b.holes);
        assert_eq!(a.total_charge(), 0);
    }

    #[test]
    fn windowed_grid_is_nonempty_and_balanced() {
        for family in Family::ALL {
            let specs = admissible_windowed_specs(family, &[2, 3, 4, 5], &[1], &[1], 2);
            for s in &specs {
                let w = build_windowed_region(s).or_else(|_| build_cruciform_windowed(s)).unwrap();
                assert!(w.graph.is_balanced());
            }
            if family.grows() {
                assert!(!specs.is_empty(), "{family:?}");
            }
        }
    }

    #[test]
    fn figure_ten_is_valid() {
        let (m, n, w, b) = fig10_configuration();
        let mut all = w.clone();
        all.extend(&b);
        let t = TorusGraph::with_holes(m, n, all).unwrap();
        assert_eq!(t.total_charge(), 0);
        assert_eq!(t.touching_windows(), None);
        assert!(TorusGraph::with_holes(m, n, flipped(&w, &b)).is_ok());
    }
}
