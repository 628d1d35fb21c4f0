//! Sites, graphs and the constructions of every region family.

mod families;
mod region;
mod shapes;
mod torus;
mod validate;

pub use families::{
    aztec_diamond_graph, build_cruciform_windowed, build_r_graph, build_windowed_region,
    figure1_left, figure1_right, label_site, label_row, r_labels, windowed_frame, Family,
    RVariant, WindowSpec, WindowedRegion, WindowedSpec,
};
pub use region::{build_aztec_diamond, dual_graph, Region, Square};
pub use shapes::{aztec_rectangle_sites, HoleSpec, OddRect};
pub use torus::{SepAxis, Separation, TorusGraph};
pub use validate::{validate_graph, validate_region, validate_torus, ValidationReport};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::{BTreeMap, BTreeSet, HashMap};

pub type Site = (i64, i64);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Black,
    White,
}

impl Color {
    /// Colour of a site: white on even rows.
    pub fn of_row(y: i64) -> Color {
        if y.rem_euclid(2) == 0 {
            Color::White
        } else {
            Color::Black
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Color::Black => 0,
            Color::White => 1,
        }
    }

    pub fn from_index(i: u8) -> Option<Color> {
        match i {
            0 => Some(Color::Black),
            1 => Some(Color::White),
            _ => None,
        }
    }

    pub fn flip(self) -> Color {
        match self {
            Color::Black => Color::White,
            Color::White => Color::Black,
        }
    }
}

/// The four diagonal directions, listed clockwise as drawn (y grows downward).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    NE,
    SE,
    SW,
    NW,
}

impl Dir {
    pub const CLOCKWISE: [Dir; 4] = [Dir::NE, Dir::SE, Dir::SW, Dir::NW];

    pub fn delta(self) -> (i64, i64) {
        match self {
            Dir::NE => (1, -1),
            Dir::SE => (1, 1),
            Dir::SW => (-1, 1),
            Dir::NW => (-1, -1),
        }
    }

    pub fn from_delta(dx: i64, dy: i64) -> Option<Dir> {
        match (dx, dy) {
            (1, -1) => Some(Dir::NE),
            (1, 1) => Some(Dir::SE),
            (-1, 1) => Some(Dir::SW),
            (-1, -1) => Some(Dir::NW),
            _ => None,
        }
    }

    pub fn opposite(self) -> Dir {
        match self {
            Dir::NE => Dir::SW,
            Dir::SE => Dir::NW,
            Dir::SW => Dir::NE,
            Dir::NW => Dir::SE,
        }
    }

    pub fn bit(self) -> u8 {
        1 << (self as u8)
    }
}

/// Which of a site's four edges a vertex owns. A separation splits a site
/// into two halves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Part {
    #[serde(rename = "W")]
    Whole,
    /// NW and SW edges.
    #[serde(rename = "L")]
    Left,
    /// NE and SE edges.
    #[serde(rename = "R")]
    Right,
    /// NW and NE edges.
    #[serde(rename = "T")]
    Top,
    /// SW and SE edges.
    #[serde(rename = "B")]
    Bottom,
}

impl Part {
    pub fn mask(self) -> u8 {
        match self {
            Part::Whole => 0b1111,
            Part::Left => Dir::NW.bit() | Dir::SW.bit(),
            Part::Right => Dir::NE.bit() | Dir::SE.bit(),
            Part::Top => Dir::NW.bit() | Dir::NE.bit(),
            Part::Bottom => Dir::SW.bit() | Dir::SE.bit(),
        }
    }

    pub fn has(self, d: Dir) -> bool {
        self.mask() & d.bit() != 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vertex {
    pub x: i64,
    pub y: i64,
    pub part: Part,
}

impl Vertex {
    pub fn whole(x: i64, y: i64) -> Vertex {
        Vertex { x, y, part: Part::Whole }
    }

    pub fn site(&self) -> Site {
        (self.x, self.y)
    }

    pub fn color(&self) -> Color {
        Color::of_row(self.y)
    }

    fn order_key(&self) -> (i64, i64, Part) {
        (self.y, self.x, self.part)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Topology {
    Plane,
    /// `T_{m,n}`: rows taken mod `2m`, columns mod `2n`.
    Torus { m: usize, n: usize },
}

impl Topology {
    pub fn normalize(&self, s: Site) -> Site {
        match *self {
            Topology::Plane => s,
            Topology::Torus { m, n } => (s.0.rem_euclid(2 * n as i64), s.1.rem_euclid(2 * m as i64)),
        }
    }

    pub fn step(&self, s: Site, d: Dir) -> Site {
        let (dx, dy) = d.delta();
        self.normalize((s.0 + dx, s.1 + dy))
    }

    /// Direction from `a` to the neighbouring site `b`, if they are adjacent.
    pub fn dir_between(&self, a: Site, b: Site) -> Option<Dir> {
        Dir::CLOCKWISE.into_iter().find(|&d| self.step(a, d) == self.normalize(b))
    }
}

/// A bipartite graph drawn on the diagonal grid (plane or torus).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchGraph {
    pub topology: Topology,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<(usize, usize)>,
}

impl MatchGraph {
    pub fn empty(topology: Topology) -> MatchGraph {
        MatchGraph { topology, vertices: Vec::new(), edges: Vec::new() }
    }

    /// The grid graph induced on a set of plane sites.
    pub fn from_sites<I: IntoIterator<Item = Site>>(sites: I) -> MatchGraph {
        let verts = sites.into_iter().map(|(x, y)| Vertex::whole(x, y)).collect();
        MatchGraph::lattice(Topology::Plane, verts)
    }

    /// All grid edges compatible with the vertices' parts.
    pub fn lattice(topology: Topology, vertices: Vec<Vertex>) -> MatchGraph {
        let mut vertices: Vec<Vertex> = vertices
            .into_iter()
            .map(|v| {
                let (x, y) = topology.normalize(v.site());
                Vertex { x, y, part: v.part }
            })
            .collect();
        vertices.sort_by_key(|v| v.order_key());
        vertices.dedup();
        let mut by_site: HashMap<Site, Vec<usize>> = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            by_site.entry(v.site()).or_default().push(i);
        }
        let mut edges = Vec::new();
        for (i, v) in vertices.iter().enumerate() {
            for d in [Dir::SE, Dir::SW] {
                if !v.part.has(d) {
                    continue;
                }
                let t = topology.step(v.site(), d);
                if let Some(js) = by_site.get(&t) {
                    for &j in js {
                        if vertices[j].part.has(d.opposite()) {
                            edges.push((i.min(j), i.max(j)));
                        }
                    }
                }
            }
        }
        edges.sort();
        edges.dedup();
        MatchGraph { topology, vertices, edges }
    }

    /// A graph with an explicit edge list given by endpoint vertices.
    pub fn with_edges(topology: Topology, vertices: Vec<Vertex>, edges: &[(Vertex, Vertex)]) -> MatchGraph {
        let mut vertices: Vec<Vertex> = vertices;
        vertices.sort_by_key(|v| v.order_key());
        vertices.dedup();
        let index: HashMap<Vertex, usize> = vertices.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let mut es: Vec<(usize, usize)> = edges
            .iter()
            .filter_map(|(a, b)| {
                let i = *index.get(a)?;
                let j = *index.get(b)?;
                Some((i.min(j), i.max(j)))
            })
            .collect();
        es.sort();
        es.dedup();
        MatchGraph { topology, vertices, edges: es }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    /// (#white, #black)
    pub fn color_counts(&self) -> (usize, usize) {
        let w = self.vertices.iter().filter(|v| v.color() == Color::White).count();
        (w, self.vertices.len() - w)
    }

    pub fn is_balanced(&self) -> bool {
        let (w, b) = self.color_counts();
        w == b
    }

    /// Direction of the edge from `u` to `v`.
    pub fn edge_dir(&self, u: usize, v: usize) -> Dir {
        self.topology
            .dir_between(self.vertices[u].site(), self.vertices[v].site())
            .expect("edge joins diagonal neighbours")
    }

    /// Signed seam crossings of the edge `u -> v` on the torus.
    pub fn winding(&self, u: usize, v: usize) -> (i8, i8) {
        let a = self.vertices[u];
        let b = self.vertices[v];
        let w = |d: i64| -> i8 {
            if d > 1 {
                -1
            } else if d < -1 {
                1
            } else {
                0
            }
        };
        match self.topology {
            Topology::Plane => (0, 0),
            Topology::Torus { .. } => (w(b.x - a.x), w(b.y - a.y)),
        }
    }

    pub fn sites(&self) -> BTreeSet<Site> {
        self.vertices.iter().map(|v| v.site()).collect()
    }

    pub fn index_of(&self) -> HashMap<Vertex, usize> {
        self.vertices.iter().enumerate().map(|(i, v)| (*v, i)).collect()
    }

    /// Checks bipartiteness under the row colouring and adjacency of every edge.
    pub fn check_well_formed(&self) -> crate::Result<()> {
        for &(u, v) in &self.edges {
            if u == v || u >= self.vertices.len() || v >= self.vertices.len() {
                return Err(crate::Error::InvalidInput(format!("bad edge ({u},{v})")));
            }
            let a = self.vertices[u];
            let b = self.vertices[v];
            let d = self
                .topology
                .dir_between(a.site(), b.site())
                .ok_or_else(|| crate::Error::InvalidInput(format!("edge ({u},{v}) is not a diagonal step")))?;
            if !a.part.has(d) || !b.part.has(d.opposite()) {
                return Err(crate::Error::InvalidInput(format!("edge ({u},{v}) leaves a split half")));
            }
            if a.color() == b.color() {
                return Err(crate::Error::InvalidInput(format!("edge ({u},{v}) joins equal colours")));
            }
        }
        Ok(())
    }

    /// Same vertex set and edge set up to vertex numbering.
    pub fn same_as(&self, other: &MatchGraph) -> bool {
        let a: BTreeSet<Vertex> = self.vertices.iter().copied().collect();
        let b: BTreeSet<Vertex> = other.vertices.iter().copied().collect();
        if a != b || self.topology != other.topology {
            return false;
        }
        let ea: BTreeSet<(Vertex, Vertex)> = self.edge_pairs().collect();
        let eb: BTreeSet<(Vertex, Vertex)> = other.edge_pairs().collect();
        ea == eb
    }

    /// Like `same_as`, but a lone half of a split site counts as the whole
    /// site. The two differ only in edges that are absent anyway.
    pub fn same_modulo_halves(&self, other: &MatchGraph) -> bool {
        fn key(g: &MatchGraph) -> (BTreeSet<Vertex>, BTreeSet<(Vertex, Vertex)>) {
            let mut per_site: HashMap<Site, usize> = HashMap::new();
            for v in &g.vertices {
                *per_site.entry(v.site()).or_default() += 1;
            }
            let norm = |v: Vertex| if per_site[&v.site()] == 1 { Vertex { part: Part::Whole, ..v } } else { v };
            let vs = g.vertices.iter().map(|&v| norm(v)).collect();
            let es = g.edge_pairs().map(|(a, b)| (norm(a), norm(b))).map(|(a, b)| if a <= b { (a, b) } else { (b, a) }).collect();
            (vs, es)
        }
        self.topology == other.topology && key(self) == key(other)
    }

    fn edge_pairs(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.edges.iter().map(|&(u, v)| {
            let a = self.vertices[u];
            let b = self.vertices[v];
            if a <= b {
                (a, b)
            } else {
                (b, a)
            }
        })
    }

    /// Translates every vertex (plane only).
    pub fn translated(&self, dx: i64, dy: i64) -> MatchGraph {
        let mut g = self.clone();
        for v in &mut g.vertices {
            v.x += dx;
            v.y += dy;
            let s = g.topology.normalize(v.site());
            v.x = s.0;
            v.y = s.1;
        }
        g
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphJson {
    vertices: Vec<(usize, i64, i64, u8)>,
    edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    torus: Option<(usize, usize)>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    parts: BTreeMap<usize, Part>,
}

impl Serialize for MatchGraph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let j = GraphJson {
            vertices: self
                .vertices
                .iter()
                .enumerate()
                .map(|(i, v)| (i, v.x, v.y, v.color().index()))
                .collect(),
            edges: self.edges.clone(),
            torus: match self.topology {
                Topology::Plane => None,
                Topology::Torus { m, n } => Some((m, n)),
            },
            parts: self
                .vertices
                .iter()
                .enumerate()
                .filter(|(_, v)| v.part != Part::Whole)
                .map(|(i, v)| (i, v.part))
                .collect(),
        };
        j.serialize(s)
    }
}

impl<'de> Deserialize<'de> for MatchGraph {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = GraphJson::deserialize(d)?;
        let topology = match j.torus {
            None => Topology::Plane,
            Some((m, n)) => Topology::Torus { m, n },
        };
        let mut vertices = Vec::with_capacity(j.vertices.len());
        for (pos, &(id, x, y, c)) in j.vertices.iter().enumerate() {
            if id != pos {
                return Err(D::Error::custom("vertex ids must be 0..n in order"));
            }
            if (x + y).rem_euclid(2) != 1 {
                return Err(D::Error::custom(format!("({x},{y}) is not a lattice site")));
            }
            if Color::from_index(c) != Some(Color::of_row(y)) {
                return Err(D::Error::custom(format!("vertex {id} colour disagrees with its row")));
            }
            let part = j.parts.get(&id).copied().unwrap_or(Part::Whole);
            vertices.push(Vertex { x, y, part });
        }
        let g = MatchGraph { topology, vertices, edges: j.edges };
        g.check_well_formed().map_err(D::Error::custom)?;
        Ok(g)
    }
}
