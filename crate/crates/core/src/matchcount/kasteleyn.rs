//! Kasteleyn orientations from the grid rotation system, and determinant
//! counts on the plane and the torus.

use super::det::{abs_to_uint, exact_determinant, IntMatrix};
use crate::lattice::{Color, Dir, MatchGraph};
use crate::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use std::collections::VecDeque;

/// A graph with one direction per edge and its faces.
#[derive(Clone, Debug)]
pub struct OrientedGraph {
    pub graph: MatchGraph,
    /// `forward[i]`: edge `i` points from `edges[i].0` to `edges[i].1`.
    pub forward: Vec<bool>,
    /// Each face as a closed walk of darts `(from, to)`.
    pub faces: Vec<Vec<(usize, usize)>>,
    /// `V - E + F`.
    pub euler: i64,
}

impl OrientedGraph {
    fn along(&self, from: usize, _to: usize, edge: usize) -> bool {
        let (a, _) = self.graph.edges[edge];
        (a == from) == self.forward[edge]
    }

    /// Number of edges of each face pointing along its boundary walk.
    /// Face lengths are even, so this is odd exactly when the number of
    /// edges pointing against the walk is odd.
    pub fn face_parities(&self) -> Vec<usize> {
        let idx = edge_index(&self.graph);
        self.faces
            .iter()
            .map(|f| f.iter().filter(|&&(u, v)| self.along(u, v, idx[&(u.min(v), u.max(v))])).count())
            .collect()
    }

    /// True when every face has an odd number of edges pointing each way.
    pub fn audit(&self) -> bool {
        self.face_parities().iter().all(|c| c % 2 == 1)
    }

    /// Signed bipartite adjacency matrix: rows white, columns black.
    /// Edges crossing a torus seam pick up `theta`.
    pub fn kasteleyn_matrix(&self, theta: (i64, i64)) -> (IntMatrix, Vec<usize>, Vec<usize>) {
        let g = &self.graph;
        let whites: Vec<usize> = (0..g.vertex_count()).filter(|&i| g.vertices[i].color() == Color::White).collect();
        let blacks: Vec<usize> = (0..g.vertex_count()).filter(|&i| g.vertices[i].color() == Color::Black).collect();
        let mut row = vec![usize::MAX; g.vertex_count()];
        for (r, &w) in whites.iter().enumerate() {
            row[w] = r;
        }
        for (c, &b) in blacks.iter().enumerate() {
            row[b] = c;
        }
        let mut k = vec![vec![0i64; blacks.len()]; whites.len()];
        for (i, &(u, v)) in g.edges.iter().enumerate() {
            let (w, b) = if g.vertices[u].color() == Color::White { (u, v) } else { (v, u) };
            let mut s = if self.along(w, b, i) { 1 } else { -1 };
            let (wx, wy) = g.winding(w, b);
            if wx != 0 {
                s *= theta.0;
            }
            if wy != 0 {
                s *= theta.1;
            }
            k[row[w]][row[b]] = s;
        }
        (k, whites, blacks)
    }
}

fn edge_index(g: &MatchGraph) -> std::collections::HashMap<(usize, usize), usize> {
    g.edges.iter().enumerate().map(|(i, &(u, v))| ((u.min(v), u.max(v)), i)).collect()
}

/// Neighbours of every vertex in clockwise order of direction.
fn rotation(g: &MatchGraph) -> Vec<Vec<usize>> {
    let mut adj = g.adjacency();
    for (v, nb) in adj.iter_mut().enumerate() {
        nb.sort_by_key(|&w| Dir::CLOCKWISE.iter().position(|&d| d == g.edge_dir(v, w)).unwrap());
    }
    adj
}

/// Traces the faces of the rotation system. Dart `2i` runs along edge `i`
/// as stored, dart `2i + 1` against it.
fn trace_faces(g: &MatchGraph) -> (Vec<Vec<(usize, usize)>>, Vec<usize>) {
    let rot = rotation(g);
    let idx = edge_index(g);
    let dart = |u: usize, v: usize| -> usize {
        let e = idx[&(u.min(v), u.max(v))];
        2 * e + usize::from(g.edges[e].0 != u)
    };
    let mut face_of = vec![usize::MAX; 2 * g.edges.len()];
    let mut faces = Vec::new();
    for start in 0..2 * g.edges.len() {
        if face_of[start] != usize::MAX {
            continue;
        }
        let f = faces.len();
        let mut walk = Vec::new();
        let (a, b) = g.edges[start / 2];
        let (mut u, mut v) = if start % 2 == 0 { (a, b) } else { (b, a) };
        loop {
            let d = dart(u, v);
            if face_of[d] != usize::MAX {
                break;
            }
            face_of[d] = f;
            walk.push((u, v));
            let r = &rot[v];
            let pos = r.iter().position(|&w| w == u).unwrap();
            let w = r[(pos + 1) % r.len()];
            u = v;
            v = w;
        }
        faces.push(walk);
    }
    (faces, face_of)
}

/// Orients a connected graph so that every face of its rotation system is
/// odd. Works on any orientable surface; on the torus two edges are left
/// free and oriented arbitrarily.
pub fn orient_connected(g: &MatchGraph) -> Result<OrientedGraph> {
    let nv = g.vertex_count();
    let ne = g.edges.len();
    let (faces, face_of) = trace_faces(g);
    let euler = nv as i64 - ne as i64 + faces.len() as i64;
    let forward = vec![true; ne];
    if ne > 0 {
        let adj = g.adjacency();
        let idx = edge_index(g);
        let mut in_tree = vec![false; ne];
        let mut seen = vec![false; nv];
        let mut q = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(v) = q.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    in_tree[idx[&(v.min(w), v.max(w))]] = true;
                    q.push_back(w);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Internal("orient_connected called on a disconnected graph".into()));
        }
        // spanning tree of the dual among the remaining edges
        let nf = faces.len();
        let mut dual_adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nf];
        let mut parent = (0..nf).collect::<Vec<_>>();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let n = p[y];
                p[y] = r;
                y = n;
            }
            r
        }
        for e in 0..ne {
            if in_tree[e] {
                continue;
            }
            let (f1, f2) = (face_of[2 * e], face_of[2 * e + 1]);
            let (r1, r2) = (find(&mut parent, f1), find(&mut parent, f2));
            if r1 != r2 {
                parent[r1] = r2;
                dual_adj[f1].push((f2, e));
                dual_adj[f2].push((f1, e));
            }
        }
        let mut order = Vec::with_capacity(nf);
        let mut up: Vec<Option<usize>> = vec![None; nf];
        let mut fseen = vec![false; nf];
        fseen[0] = true;
        let mut q = VecDeque::from([0usize]);
        while let Some(f) = q.pop_front() {
            order.push(f);
            for &(h, e) in &dual_adj[f] {
                if !fseen[h] {
                    fseen[h] = true;
                    up[h] = Some(e);
                    q.push_back(h);
                }
            }
        }
        let mut og = OrientedGraph { graph: g.clone(), forward, faces, euler };
        let mut counts = og.face_parities();
        for &f in order.iter().rev() {
            let Some(e) = up[f] else { continue };
            if counts[f].is_multiple_of(2) {
                og.forward[e] = !og.forward[e];
                counts[face_of[2 * e]] += 1;
                counts[face_of[2 * e + 1]] += 1;
            }
        }
        if !og.audit() {
            return Err(Error::Internal("could not make every face odd".into()));
        }
        return Ok(og);
    }
    Ok(OrientedGraph { graph: g.clone(), forward, faces, euler })
}

/// Pfaffian orientation of a planar graph, component by component.
pub fn pfaffian_orientation(g: &MatchGraph) -> Result<OrientedGraph> {
    let comps = components(g, &vec![true; g.vertex_count()]);
    let mut forward = vec![true; g.edges.len()];
    let mut faces = Vec::new();
    let mut euler = 0;
    let idx = edge_index(g);
    for comp in comps {
        let (sub, back) = induced(g, &comp);
        let og = orient_connected(&sub)?;
        if og.euler != 2 {
            return Err(Error::Unsupported(format!("component has Euler characteristic {}", og.euler)));
        }
        euler += og.euler;
        for (i, &(u, v)) in sub.edges.iter().enumerate() {
            let (a, b) = (back[u], back[v]);
            let e = idx[&(a.min(b), a.max(b))];
            // forward in sub means back[u] -> back[v]
            forward[e] = og.forward[i] == (g.edges[e].0 == a);
        }
        faces.extend(og.faces.iter().map(|f| f.iter().map(|&(u, v)| (back[u], back[v])).collect::<Vec<_>>()));
    }
    Ok(OrientedGraph { graph: g.clone(), forward, faces, euler })
}

fn components(g: &MatchGraph, alive: &[bool]) -> Vec<Vec<usize>> {
    let adj = g.adjacency();
    let mut comp = vec![usize::MAX; g.vertex_count()];
    let mut out = Vec::new();
    for s in 0..g.vertex_count() {
        if !alive[s] || comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![s];
        comp[s] = id;
        let mut i = 0;
        while i < members.len() {
            let v = members[i];
            i += 1;
            for &w in &adj[v] {
                if alive[w] && comp[w] == usize::MAX {
                    comp[w] = id;
                    members.push(w);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

/// Induced subgraph on sorted `verts`, with the map back to `g`'s indices.
fn induced(g: &MatchGraph, verts: &[usize]) -> (MatchGraph, Vec<usize>) {
    let mut local = vec![usize::MAX; g.vertex_count()];
    for (i, &v) in verts.iter().enumerate() {
        local[v] = i;
    }
    let edges = g
        .edges
        .iter()
        .filter(|&&(u, v)| local[u] != usize::MAX && local[v] != usize::MAX)
        .map(|&(u, v)| (local[u], local[v]))
        .collect();
    let vertices = verts.iter().map(|&v| g.vertices[v]).collect();
    (MatchGraph { topology: g.topology, vertices, edges }, verts.to_vec())
}

/// Removes forced edges at degree-one vertices. Returns `None` when some
/// vertex is left with no neighbours.
fn peel(g: &MatchGraph) -> Option<Vec<bool>> {
    let adj = g.adjacency();
    let n = g.vertex_count();
    let mut alive = vec![true; n];
    let mut deg: Vec<usize> = adj.iter().map(|a| a.len()).collect();
    let mut stack: Vec<usize> = (0..n).filter(|&v| deg[v] <= 1).collect();
    while let Some(v) = stack.pop() {
        if !alive[v] {
            continue;
        }
        if deg[v] == 0 {
            return None;
        }
        if deg[v] > 1 {
            continue;
        }
        let u = *adj[v].iter().find(|&&w| alive[w]).unwrap();
        alive[v] = false;
        alive[u] = false;
        for &w in &adj[u] {
            if alive[w] {
                deg[w] -= 1;
                if deg[w] <= 1 {
                    stack.push(w);
                }
            }
        }
    }
    Some(alive)
}

/// Which surfaces the determinant engine may handle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Surface {
    Plane,
    Torus,
}

/// Counts perfect matchings with Kasteleyn determinants, after peeling
/// forced edges and splitting into components.
pub fn count_kasteleyn(g: &MatchGraph, surface: Surface) -> Result<BigUint> {
    if !g.is_balanced() {
        return Ok(BigUint::zero());
    }
    let Some(alive) = peel(g) else { return Ok(BigUint::zero()) };
    let mut total = BigUint::one();
    for comp in components(g, &alive) {
        let (sub, _) = induced(g, &comp);
        if !sub.is_balanced() {
            return Ok(BigUint::zero());
        }
        let og = orient_connected(&sub)?;
        let c = match og.euler {
            2 => {
                let (k, _, _) = og.kasteleyn_matrix((1, 1));
                abs_to_uint(&exact_determinant(&k))
            }
            0 if surface == Surface::Torus => torus_classes(&og)?.iter().sum(),
            e => return Err(Error::Unsupported(format!("component of Euler characteristic {e}"))),
        };
        if c.is_zero() {
            return Ok(c);
        }
        total *= c;
    }
    Ok(total)
}

pub fn count_planar_kasteleyn(g: &MatchGraph) -> Result<BigUint> {
    count_kasteleyn(g, Surface::Plane)
}

pub const THETAS: [(i64, i64); 4] = [(1, 1), (-1, 1), (1, -1), (-1, -1)];

/// `det K_theta` for the four seam twists, in the order of `THETAS`.
pub fn twisted_determinants(og: &OrientedGraph) -> Vec<BigInt> {
    THETAS
        .par_iter()
        .map(|&t| exact_determinant(&og.kasteleyn_matrix(t).0))
        .collect()
}

/// A perfect matching as `partner[row] = column`, by augmenting paths.
fn some_matching(k: &IntMatrix) -> Option<Vec<usize>> {
    let n = k.len();
    let adj: Vec<Vec<usize>> = k.iter().map(|r| (0..n).filter(|&c| r[c] != 0).collect()).collect();
    let mut col_of_row = vec![usize::MAX; n];
    let mut row_of_col = vec![usize::MAX; n];
    fn augment(r: usize, adj: &[Vec<usize>], seen: &mut [bool], roc: &mut [usize], cor: &mut [usize]) -> bool {
        for &c in &adj[r] {
            if seen[c] {
                continue;
            }
            seen[c] = true;
            if roc[c] == usize::MAX || augment(roc[c], adj, seen, roc, cor) {
                roc[c] = r;
                cor[r] = c;
                return true;
            }
        }
        false
    }
    for r in 0..n {
        let mut seen = vec![false; n];
        if !augment(r, &adj, &mut seen, &mut row_of_col, &mut col_of_row) {
            return None;
        }
    }
    Some(col_of_row)
}

fn permutation_sign(p: &[usize]) -> i64 {
    let mut seen = vec![false; p.len()];
    let mut s = 1;
    for i in 0..p.len() {
        if seen[i] {
            continue;
        }
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = p[j];
            len += 1;
        }
        if len % 2 == 0 {
            s = -s;
        }
    }
    s
}

/// Numbers of perfect matchings in each of the four classes of seam
/// crossing parities, measured relative to a fixed reference matching.
///
/// Every matching `M` contributes `eps(g) * theta^g` to `s(M0) det K_theta`,
/// where `g` is the class of `M` relative to `M0` and `eps(0) = 1`.
/// Summing against the four characters isolates each class.
pub fn torus_classes(og: &OrientedGraph) -> Result<[BigUint; 4]> {
    let (k0, _, _) = og.kasteleyn_matrix((1, 1));
    if k0.len() != k0.first().map_or(0, |r| r.len()) {
        return Ok(Default::default());
    }
    let Some(m0) = some_matching(&k0) else { return Ok(Default::default()) };
    let sign = permutation_sign(&m0);
    let dets = twisted_determinants(og);
    let mut e = Vec::with_capacity(4);
    for (t, d) in THETAS.iter().zip(&dets) {
        let (k, _, _) = og.kasteleyn_matrix(*t);
        let s: i64 = sign * m0.iter().enumerate().map(|(r, &c)| k[r][c]).product::<i64>();
        e.push(d * s);
    }
    let mut out: [BigUint; 4] = Default::default();
    for (gi, slot) in out.iter_mut().enumerate() {
        let g = THETAS[gi];
        let mut acc = BigInt::zero();
        for (t, et) in THETAS.iter().zip(&e) {
            let mut c = et.clone();
            if g.0 == -1 && t.0 == -1 {
                c = -c;
            }
            if g.1 == -1 && t.1 == -1 {
                c = -c;
            }
            acc += c;
        }
        let (q, r) = acc.abs().div_rem(&BigInt::from(4));
        if !r.is_zero() {
            return Err(Error::Internal("class sum is not divisible by 4".into()));
        }
        *slot = abs_to_uint(&q);
    }
    Ok(out)
}
