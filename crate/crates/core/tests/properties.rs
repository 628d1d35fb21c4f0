use num_bigint::BigUint;
use proptest::prelude::*;
use tilings::complement::{complement_graph, Axis};
use tilings::formulas::{count_r_formula, FormulaInput};
use tilings::lattice::{aztec_rectangle_sites, build_r_graph, MatchGraph, OddRect, RVariant, TorusGraph};
use tilings::matchcount::{count_bruteforce_with_limit, count_kasteleyn, count_planar_kasteleyn, factorize, Surface};
use tilings::verify::{self, finite_size_correlation, Contact, Status};

fn subset(sites: &[(i64, i64)], mask: u64) -> Vec<(i64, i64)> {
    sites.iter().enumerate().filter(|(i, _)| mask >> (i % 64) & 1 == 1).map(|(_, s)| *s).collect()
}

fn torus_with(m: usize, n: usize, seed: u64, contact: Contact) -> Option<TorusGraph> {
    verify::random_balanced_holes_with(&mut verify::rng(seed), m, n, 1, contact)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn plane_engines_agree(m in 1i64..4, n in 1i64..4, mask: u64) {
        let sites = aztec_rectangle_sites(m, n, 0, 0);
        let g = MatchGraph::from_sites(subset(&sites, mask));
        prop_assert_eq!(count_bruteforce_with_limit(&g, 64).unwrap(), count_planar_kasteleyn(&g).unwrap());
    }

    #[test]
    fn torus_engines_agree(m in 2usize..4, n in 2usize..4, seed: u64) {
        let Some(t) = torus_with(m, n, seed, Contact::Any) else { return Ok(()) };
        prop_assume!(t.graph.vertex_count() <= 24);
        prop_assert_eq!(
            count_bruteforce_with_limit(&t.graph, 64).unwrap(),
            count_kasteleyn(&t.graph, Surface::Torus).unwrap()
        );
    }

    #[test]
    fn complement_identity_on_random_regions(m in 1i64..4, n in 1i64..4, mask: u64, shading in 0i64..2, vertical: bool) {
        let sites = aztec_rectangle_sites(m, n, 0, 0);
        let g = MatchGraph::from_sites(subset(&sites, mask | 1));
        let axis = if vertical { Axis::Vertical } else { Axis::Horizontal };
        let Ok(c) = complement_graph(&g, shading, axis) else { return Ok(()) };
        prop_assume!(c.graph.vertex_count() <= 64);
        let a = count_bruteforce_with_limit(&g, 64).unwrap();
        let b = count_bruteforce_with_limit(&c.graph, 64).unwrap();
        if c.t >= 0 {
            prop_assert_eq!(a, b << c.t as u64);
        } else {
            prop_assert_eq!(a << (-c.t) as u64, b);
        }
    }

    #[test]
    fn correlation_is_translation_invariant(m in 3usize..6, n in 3usize..6, seed: u64, dx in -8i64..8, dy in -8i64..8) {
        let dy = if (dx + dy).rem_euclid(2) == 0 { dy } else { dy + 1 };
        let Some(t) = torus_with(m, n, seed, Contact::Any) else { return Ok(()) };
        let moved = t.translated(dx, dy).unwrap();
        let a = finite_size_correlation(m, n, &t.holes).unwrap();
        let b = finite_size_correlation(m, n, &moved.holes).unwrap();
        prop_assert_eq!(a.value, b.value);
    }

    #[test]
    fn correlation_is_reflection_invariant(m in 3usize..6, n in 3usize..6, seed: u64) {
        let Some(t) = torus_with(m, n, seed, Contact::Any) else { return Ok(()) };
        let mirrored: Vec<OddRect> = t.holes.iter().map(|h| OddRect { cx: -h.cx, ..*h }).collect();
        let flipped: Vec<OddRect> = t.holes.iter().map(|h| OddRect { cy: -h.cy, ..*h }).collect();
        let a = finite_size_correlation(m, n, &t.holes).unwrap().value;
        prop_assert_eq!(&a, &finite_size_correlation(m, n, &mirrored).unwrap().value);
        prop_assert_eq!(&a, &finite_size_correlation(m, n, &flipped).unwrap().value);
    }

    #[test]
    fn separated_windows_evolve_disjointly(m in 4usize..7, n in 4usize..7, seed: u64) {
        let Some(t) = torus_with(m, n, seed, Contact::Separated) else { return Ok(()) };
        let c = verify::check_lemma41(&t).unwrap();
        prop_assert_ne!(c.status, Status::Fail, "{:?}", c);
        let c = verify::check_t42(&t).unwrap();
        prop_assert_ne!(c.status, Status::Fail, "{:?}", c);
    }

    #[test]
    fn product_formula_matches_determinant(m in 1i64..6, n in 1i64..8, seed: u64) {
        let variant = match (m < n, m % 2 == 0) {
            (true, true) => RVariant::R,
            (true, false) => RVariant::RPrime,
            (false, false) => RVariant::RDouble,
            (false, true) => RVariant::RTriple,
        };
        prop_assume!(variant.check(m, n).is_ok());
        let labels = variant.label_count(n);
        let kept = variant.kept(m, n) as usize;
        let mut pool: Vec<i64> = (1..=labels).collect();
        let mut s = seed;
        for i in (1..pool.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            pool.swap(i, (s >> 33) as usize % (i + 1));
        }
        let mut t: Vec<i64> = pool[..kept].to_vec();
        t.sort();
        let formula = count_r_formula(&FormulaInput { variant, m, n, t: t.clone() }).unwrap();
        let det = count_planar_kasteleyn(&build_r_graph(variant, m, n, &t).unwrap()).unwrap();
        prop_assert_eq!(formula, det);
    }

    #[test]
    fn factorization_multiplies_back(v in 1u64..u64::MAX, w in 1u64..1_000_000) {
        let c = BigUint::from(v) * BigUint::from(w);
        let f = factorize(&c).unwrap();
        prop_assert_eq!(f.value(), c);
        let mut last = BigUint::from(1u8);
        for (p, e) in &f.factors {
            prop_assert!(*p > last);
            prop_assert!(*e >= 1);
            last = p.clone();
        }
    }
}

/// Every path of cells of a torus with balanced holes has a type in
/// {-1, 0, 1}, and the types sum to the exponent of the complementation.
#[test]
fn torus_path_types_are_bounded() {
    let mut seen = 0;
    for seed in 0..40u64 {
        let Some(t) = torus_with(4, 5, seed, Contact::Any) else { continue };
        for shading in 0..2 {
            for axis in [Axis::Horizontal, Axis::Vertical] {
                let Ok(c) = complement_graph(&t.graph, shading, axis) else { continue };
                assert!(c.decomposition.paths.iter().all(|p| (-1..=1).contains(&p.kind)));
                assert_eq!(c.decomposition.t(), c.t);
                seen += 1;
            }
        }
    }
    assert!(seen > 0);
}
