use crate::lattice::MatchGraph;
use crate::{Error, Result};
use num_bigint::BigUint;
use std::collections::HashMap;

pub const DEFAULT_BRUTE_LIMIT: usize = 48;
pub const MAX_BRUTE_LIMIT: usize = 128;

/// Counts perfect matchings by branching on a minimum-degree vertex,
/// memoised on the set of unmatched vertices. Refuses graphs with more
/// than `DEFAULT_BRUTE_LIMIT` vertices.
pub fn count_bruteforce(g: &MatchGraph) -> Result<BigUint> {
    count_bruteforce_with_limit(g, DEFAULT_BRUTE_LIMIT)
}

pub fn count_bruteforce_with_limit(g: &MatchGraph, limit: usize) -> Result<BigUint> {
    let n = g.vertex_count();
    let limit = limit.min(MAX_BRUTE_LIMIT);
    if n > limit {
        return Err(Error::SizeGuard { vertices: n, limit });
    }
    if !g.is_balanced() {
        return Ok(BigUint::from(0u8));
    }
    let mut adj = vec![0u128; n];
    for &(u, v) in &g.edges {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    let full: u128 = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
    let mut search = Search { adj, memo: HashMap::new() };
    let c = search.go(full);
    Ok(BigUint::from(c))
}

struct Search {
    adj: Vec<u128>,
    memo: HashMap<u128, u128>,
}

impl Search {
    fn go(&mut self, rem: u128) -> u128 {
        if rem == 0 {
            return 1;
        }
        if let Some(&c) = self.memo.get(&rem) {
            return c;
        }
        let mut best = usize::MAX;
        let mut best_deg = u32::MAX;
        let mut r = rem;
        while r != 0 {
            let v = r.trailing_zeros() as usize;
            r &= r - 1;
            let d = (self.adj[v] & rem).count_ones();
            if d < best_deg {
                best_deg = d;
                best = v;
                if d <= 1 {
                    break;
                }
            }
        }
        let mut total: u128 = 0;
        if best_deg > 0 {
            let rest = rem & !(1u128 << best);
            let mut nb = self.adj[best] & rest;
            while nb != 0 {
                let u = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                let c = self.go(rest & !(1u128 << u));
                total = total.checked_add(c).expect("matching count overflows u128");
            }
        }
        self.memo.insert(rem, total);
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{aztec_diamond_graph, aztec_rectangle_sites};

    #[test]
    fn tiny_graphs() {
        let edge = MatchGraph::from_sites([(0, 1), (1, 0)]);
        assert_eq!(count_bruteforce(&edge).unwrap(), BigUint::from(1u8));
        let single = MatchGraph::from_sites([(0, 1)]);
        assert_eq!(count_bruteforce(&single).unwrap(), BigUint::from(0u8));
        let empty = MatchGraph::from_sites([]);
        assert_eq!(count_bruteforce(&empty).unwrap(), BigUint::from(1u8));
    }

    #[test]
    fn aztec_diamonds() {
        for n in 1..=4 {
            let c = count_bruteforce_with_limit(&aztec_diamond_graph(n), 64).unwrap();
            assert_eq!(c, BigUint::from(1u64 << (n * (n + 1) / 2)));
        }
    }

    #[test]
    fn unbalanced_is_zero_and_guard_refuses() {
        let g = MatchGraph::from_sites(aztec_rectangle_sites(2, 3, 0, 0));
        assert_eq!(count_bruteforce(&g).unwrap(), BigUint::from(0u8));
        let big = aztec_diamond_graph(5);
        assert!(matches!(count_bruteforce(&big), Err(Error::SizeGuard { .. })));
    }
}
