//! Cellular completions, paths of cells and the complement `H'` with
//! `M(H) = 2^t M(H')`.

mod evolve;

pub use evolve::{evolve_torus, evolve_windowed, windowed_shading, Evolution, TorusEvolution};

use crate::lattice::{Dir, MatchGraph, Part, Site, Topology, Vertex};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Horizontal,
    Vertical,
}

/// Corner roles of a cell, in cyclic order.
const ROLES: [(Dir, Dir, Part); 4] = [
    // top corner: edges SW and SE
    (Dir::SW, Dir::SE, Part::Bottom),
    // right corner
    (Dir::NW, Dir::SW, Part::Left),
    // bottom corner
    (Dir::NW, Dir::NE, Part::Top),
    // left corner
    (Dir::NE, Dir::SE, Part::Right),
];

/// A shaded face with its four corner vertices (top, right, bottom, left).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub face: Site,
    pub corners: [Vertex; 4],
}

impl Cell {
    pub fn top(&self) -> Vertex {
        self.corners[0]
    }
    pub fn right(&self) -> Vertex {
        self.corners[1]
    }
    pub fn bottom(&self) -> Vertex {
        self.corners[2]
    }
    pub fn left(&self) -> Vertex {
        self.corners[3]
    }

    pub fn edges(&self) -> [(Vertex, Vertex); 4] {
        let c = self.corners;
        [(c[0], c[1]), (c[1], c[2]), (c[2], c[3]), (c[3], c[0])]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathOfCells {
    /// Indices into the decomposition's cells, in order along the axis.
    pub cells: Vec<usize>,
    pub ring: bool,
    pub ends: Option<(Vertex, Vertex)>,
    /// Number of ends in `H`, minus one; 0 for rings.
    pub kind: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CellularDecomposition {
    #[serde(skip)]
    pub host: MatchGraph,
    /// Faces `(fx, fy)` with `fy` of this parity are shaded.
    pub shading: i64,
    pub axis: Axis,
    pub cells: Vec<Cell>,
    /// Vertices of `G` lying in exactly one cell.
    pub extremal: BTreeSet<Vertex>,
    pub paths: Vec<PathOfCells>,
}

impl CellularDecomposition {
    pub fn t(&self) -> i64 {
        self.paths.iter().map(|p| p.kind).sum()
    }

    /// Number of paths of each kind: (rings, type -1, type 0, type 1).
    pub fn kind_census(&self) -> BTreeMap<String, usize> {
        let mut out = BTreeMap::new();
        for p in &self.paths {
            let key = if p.ring { "ring".to_string() } else { format!("type {}", p.kind) };
            *out.entry(key).or_insert(0) += 1;
        }
        out
    }
}

fn face_corner_sites(topo: &Topology, f: Site) -> [Site; 4] {
    let (fx, fy) = f;
    [(fx, fy - 1), (fx + 1, fy), (fx, fy + 1), (fx - 1, fy)].map(|s| topo.normalize(s))
}

/// The union of the shaded 4-cycles that contain an edge of `h`, checked
/// to be a cellular completion of `h`.
pub fn cellular_completion(h: &MatchGraph, shading: i64) -> Result<CellularDecomposition> {
    let topo = h.topology;
    let p = shading.rem_euclid(2);
    let mut by_site: HashMap<Site, Vec<Vertex>> = HashMap::new();
    for v in &h.vertices {
        by_site.entry(v.site()).or_default().push(*v);
    }
    let hv: HashSet<Vertex> = h.vertices.iter().copied().collect();
    let he: HashSet<(Vertex, Vertex)> = h
        .edges
        .iter()
        .flat_map(|&(u, v)| {
            let (a, b) = (h.vertices[u], h.vertices[v]);
            [(a, b), (b, a)]
        })
        .collect();

    let mut faces: BTreeSet<Site> = BTreeSet::new();
    for &(u, v) in &h.edges {
        let (a, d) = (h.vertices[u], h.edge_dir(u, v));
        let (dx, dy) = d.delta();
        let f = if a.y.rem_euclid(2) == p { (a.x + dx, a.y) } else { (a.x, a.y + dy) };
        faces.insert(topo.normalize(f));
    }

    let corner = |s: Site, role: usize| -> Result<Vertex> {
        let (d1, d2, fresh) = ROLES[role];
        let here = by_site.get(&s).map(|v| v.as_slice()).unwrap_or(&[]);
        if let Some(v) = here.iter().find(|v| v.part.has(d1) && v.part.has(d2)) {
            return Ok(*v);
        }
        if here.iter().any(|v| v.part.has(d1) || v.part.has(d2)) {
            return Err(Error::NotCompletable(format!("a split vertex at {s:?} straddles a cell")));
        }
        Ok(match topo {
            Topology::Plane => Vertex::whole(s.0, s.1),
            Topology::Torus { .. } => Vertex { x: s.0, y: s.1, part: fresh },
        })
    };

    let mut cells = Vec::new();
    for f in faces {
        let sites = face_corner_sites(&topo, f);
        let mut corners = [Vertex::whole(0, 0); 4];
        for r in 0..4 {
            corners[r] = corner(sites[r], r)?;
        }
        let cell = Cell { face: f, corners };
        if cell.edges().iter().any(|e| he.contains(e)) {
            cells.push(cell);
        }
    }

    let mut incidence: HashMap<Vertex, usize> = HashMap::new();
    for c in &cells {
        for v in c.corners {
            *incidence.entry(v).or_insert(0) += 1;
        }
    }
    let extremal: BTreeSet<Vertex> = incidence.iter().filter(|(_, &c)| c == 1).map(|(v, _)| *v).collect();
    for v in incidence.keys() {
        if !hv.contains(v) && !extremal.contains(v) {
            return Err(Error::NotCompletable(format!("vertex {v:?} is added but not extremal")));
        }
    }
    for c in &cells {
        for (a, b) in c.edges() {
            if hv.contains(&a) && hv.contains(&b) && !he.contains(&(a, b)) {
                return Err(Error::NotCompletable(format!("cell edge {a:?}-{b:?} is missing from H")));
            }
        }
    }
    Ok(CellularDecomposition { host: h.clone(), shading: p, axis: Axis::Horizontal, cells, extremal, paths: Vec::new() })
}

/// Strings the cells into maximal runs along the axis, detecting rings.
pub fn partition_paths(mut d: CellularDecomposition, axis: Axis) -> CellularDecomposition {
    let topo = d.host.topology;
    let hv: HashSet<Vertex> = d.host.vertices.iter().copied().collect();
    let index: HashMap<Site, usize> = d.cells.iter().enumerate().map(|(i, c)| (c.face, i)).collect();
    let step = match axis {
        Axis::Horizontal => (2, 0),
        Axis::Vertical => (0, 2),
    };
    let cells = &d.cells;
    let next = |i: usize| -> Option<usize> {
        let f = cells[i].face;
        let j = *index.get(&topo.normalize((f.0 + step.0, f.1 + step.1)))?;
        let joined = match axis {
            Axis::Horizontal => cells[i].right() == cells[j].left(),
            Axis::Vertical => cells[i].bottom() == cells[j].top(),
        };
        joined.then_some(j)
    };
    let mut prev: Vec<Option<usize>> = vec![None; cells.len()];
    let nexts: Vec<Option<usize>> = (0..cells.len()).map(next).collect();
    for (i, nx) in nexts.iter().enumerate() {
        if let Some(j) = *nx {
            prev[j] = Some(i);
        }
    }
    let mut used = vec![false; cells.len()];
    let mut paths = Vec::new();
    for i in 0..cells.len() {
        if used[i] || prev[i].is_some() {
            continue;
        }
        let mut run = vec![i];
        used[i] = true;
        let mut c = i;
        while let Some(j) = nexts[c] {
            used[j] = true;
            run.push(j);
            c = j;
        }
        let (first, last) = (&cells[run[0]], &cells[c]);
        let ends = match axis {
            Axis::Horizontal => (first.left(), last.right()),
            Axis::Vertical => (first.top(), last.bottom()),
        };
        let kind = i64::from(hv.contains(&ends.0)) + i64::from(hv.contains(&ends.1)) - 1;
        paths.push(PathOfCells { cells: run, ring: false, ends: Some(ends), kind });
    }
    // whatever is left lies on rings
    for i in 0..cells.len() {
        if used[i] {
            continue;
        }
        let mut run = vec![i];
        used[i] = true;
        let mut c = nexts[i].expect("ring cells have successors");
        while c != i {
            used[c] = true;
            run.push(c);
            c = nexts[c].expect("ring cells have successors");
        }
        paths.push(PathOfCells { cells: run, ring: true, ends: None, kind: 0 });
    }
    d.axis = axis;
    d.paths = paths;
    d
}

/// `H'` on the vertex set `V(H) xor X(G)`, with the edges of `G` among them.
pub fn complement(d: &CellularDecomposition) -> (MatchGraph, i64) {
    let hv: BTreeSet<Vertex> = d.host.vertices.iter().copied().collect();
    let verts: BTreeSet<Vertex> = hv.symmetric_difference(&d.extremal).copied().collect();
    let edges: Vec<(Vertex, Vertex)> = d
        .cells
        .iter()
        .flat_map(|c| c.edges())
        .filter(|(a, b)| verts.contains(a) && verts.contains(b))
        .collect();
    let g = MatchGraph::with_edges(d.host.topology, verts.into_iter().collect(), &edges);
    (g, d.t())
}

/// Result of one complementation.
#[derive(Clone, Debug)]
pub struct Complement {
    pub decomposition: CellularDecomposition,
    pub graph: MatchGraph,
    pub t: i64,
}

pub fn complement_graph(h: &MatchGraph, shading: i64, axis: Axis) -> Result<Complement> {
    let d = partition_paths(cellular_completion(h, shading)?, axis);
    let (graph, t) = complement(&d);
    Ok(Complement { decomposition: d, graph, t })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{aztec_diamond_graph, TorusGraph};
    use crate::matchcount::count_bruteforce_with_limit;
    use num_bigint::BigUint;

    fn check_identity(h: &MatchGraph, c: &Complement) {
        let a = count_bruteforce_with_limit(h, 128).unwrap();
        let b = count_bruteforce_with_limit(&c.graph, 128).unwrap();
        if c.t >= 0 {
            assert_eq!(a, b << c.t as u64);
        } else {
            assert_eq!(a << (-c.t) as u64, b);
        }
    }

    #[test]
    fn single_cell() {
        let h = MatchGraph::from_sites([(0, 1), (1, 0), (1, 2), (2, 1)]);
        // the face (1, 1) is shaded when fy is odd
        let c = complement_graph(&h, 1, Axis::Horizontal).unwrap();
        assert_eq!(c.decomposition.cells.len(), 1);
        assert_eq!(c.decomposition.paths.len(), 1);
        assert_eq!(c.t, 1);
        assert_eq!(c.graph.vertex_count(), 0);
        assert_eq!(c.graph.edges.len(), 0);
        check_identity(&h, &c);
    }

    #[test]
    fn aztec_diamond_grows() {
        // shading the faces around the top row adds a new outer layer
        for n in 1..4 {
            let h = aztec_diamond_graph(n);
            let c = complement_graph(&h, 0, Axis::Horizontal).unwrap();
            assert_eq!(c.graph.vertex_count() as i64, 2 * (n + 1) * (n + 2));
            assert_eq!(c.t, -(n + 1));
            check_identity(&h, &c);
        }
    }

    #[test]
    fn torus_rings_have_type_zero() {
        let t = TorusGraph::plain(2, 3).unwrap();
        let c = complement_graph(&t.graph, 0, Axis::Vertical).unwrap();
        assert!(c.decomposition.paths.iter().all(|p| p.ring && p.kind == 0));
        assert_eq!(c.t, 0);
        check_identity(&t.graph, &c);
        assert_eq!(count_bruteforce_with_limit(&c.graph, 64).unwrap(), count_bruteforce_with_limit(&t.graph, 64).unwrap());
        assert!(count_bruteforce_with_limit(&c.graph, 64).unwrap() > BigUint::from(0u8));
    }
}
