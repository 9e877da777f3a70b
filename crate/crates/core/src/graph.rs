//! Deterministic generators for the pseudofractal scale-free web and the
//! Sierpinski gasket, plus the plain-text edge-list format.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::str::FromStr;

use crate::dsu::UnionFind;
use crate::error::{check_limit, Error, Result};

/// Largest generation any generator will build (3^17 edges).
pub const MAX_GENERATION: u32 = 16;

/// Simple undirected graph on vertices `0..num_vertices`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    num_vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Validates that the edge list has no loops, no repeated edges and no
    /// out-of-range endpoints. Endpoints are stored as given.
    pub fn new(num_vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for &(u, v) in &edges {
            if u >= num_vertices || v >= num_vertices {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) out of range for {num_vertices} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidGraph(format!("repeated edge ({u}, {v})")));
            }
        }
        Ok(Self {
            num_vertices,
            edges,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.num_vertices];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn component_count(&self) -> usize {
        let mut uf = UnionFind::new(self.num_vertices);
        for &(u, v) in &self.edges {
            uf.union(u, v);
        }
        uf.components()
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// Edges normalized to `u < v` and sorted lexicographically.
    pub fn sorted_edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = self.edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        out.sort_unstable();
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// Pseudofractal scale-free web.
    Psw,
    /// Sierpinski gasket.
    Sierpinski,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Psw => "psw",
            Family::Sierpinski => "sg",
        }
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "psw" => Ok(Family::Psw),
            "sg" => Ok(Family::Sierpinski),
            other => Err(Error::InvalidArgument(format!("unknown family {other:?}"))),
        }
    }
}

/// A connected simple graph with three distinguished, pairwise distinct hub
/// vertices `(A, B, C)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HubGraph {
    graph: Graph,
    hubs: [usize; 3],
    generation: Option<u32>,
}

impl HubGraph {
    pub fn new(graph: Graph, hubs: [usize; 3], generation: Option<u32>) -> Result<Self> {
        let [a, b, c] = hubs;
        if a == b || b == c || a == c {
            return Err(Error::InvalidGraph(format!("hubs {hubs:?} are not distinct")));
        }
        if hubs.iter().any(|&h| h >= graph.num_vertices()) {
            return Err(Error::InvalidGraph(format!("hub out of range in {hubs:?}")));
        }
        if !graph.is_connected() {
            return Err(Error::InvalidGraph("graph is not connected".into()));
        }
        Ok(Self {
            graph,
            hubs,
            generation,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn hubs(&self) -> [usize; 3] {
        self.hubs
    }

    pub fn generation(&self) -> Option<u32> {
        self.generation
    }

    pub fn num_vertices(&self) -> usize {
        self.graph.num_vertices()
    }

    pub fn num_edges(&self) -> usize {
        self.graph.num_edges()
    }

    /// Serializes to the edge-list text format:
    ///
    /// ```text
    /// V E
    /// H a b c
    /// u v        (E lines, u < v, sorted)
    /// ```
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let [a, b, c] = self.hubs;
        writeln!(out, "{} {}", self.num_vertices(), self.num_edges()).unwrap();
        writeln!(out, "H {a} {b} {c}").unwrap();
        for (u, v) in self.graph.sorted_edges() {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }

    pub fn from_edge_list(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty input".into()))?;
        let nums = parse_usizes(header)?;
        let [v, e] = nums[..] else {
            return Err(Error::Parse(format!("bad header {header:?}")));
        };
        let hub_line = lines.next().ok_or_else(|| Error::Parse("missing hub line".into()))?;
        let hub_fields = hub_line
            .strip_prefix("H ")
            .ok_or_else(|| Error::Parse(format!("bad hub line {hub_line:?}")))?;
        let hub_nums = parse_usizes(hub_fields)?;
        let [a, b, c] = hub_nums[..] else {
            return Err(Error::Parse(format!("bad hub line {hub_line:?}")));
        };
        let mut edges = Vec::with_capacity(e);
        for line in lines {
            let pair = parse_usizes(line)?;
            let [u, w] = pair[..] else {
                return Err(Error::Parse(format!("bad edge line {line:?}")));
            };
            edges.push((u, w));
        }
        if edges.len() != e {
            return Err(Error::Parse(format!(
                "header declares {e} edges, found {}",
                edges.len()
            )));
        }
        let generation = (0..=MAX_GENERATION).find(|&n| 3usize.pow(n + 1) == e);
        HubGraph::new(Graph::new(v, edges)?, [a, b, c], generation)
    }
}

fn parse_usizes(line: &str) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::Parse(format!("not an unsigned integer: {t:?}")))
        })
        .collect()
}

/// `V_n = (3^{n+1} + 3) / 2`
pub fn vertex_count(n: u32) -> u64 {
    (3u64.pow(n + 1) + 3) / 2
}

/// `E_n = 3^{n+1}`
pub fn edge_count(n: u32) -> u64 {
    3u64.pow(n + 1)
}

fn guard(n: u32) -> Result<()> {
    check_limit("generation", u64::from(n), u64::from(MAX_GENERATION))
}

fn triangle_edges() -> Vec<(usize, usize)> {
    vec![(0, 1), (0, 2), (1, 2)]
}

fn finish(num_vertices: usize, edges: Vec<(usize, usize)>, hubs: [usize; 3], n: u32) -> HubGraph {
    let graph = Graph::new(num_vertices, edges).expect("generator produces a simple graph");
    HubGraph::new(graph, hubs, Some(n)).expect("generator produces a connected hub graph")
}

/// `G(n)` by edge expansion: every edge present at step `t` spawns a new
/// vertex joined to both of its endpoints. Old vertices keep their index; new
/// ones are numbered in the order of their parent edges. Hubs are the
/// initial triangle `{0, 1, 2}`.
pub fn build_psw_edge_expansion(n: u32) -> Result<HubGraph> {
    guard(n)?;
    let mut edges = triangle_edges();
    let mut num_vertices = 3;
    for _ in 0..n {
        let current = edges.len();
        edges.reserve(2 * current);
        for i in 0..current {
            let (u, v) = edges[i];
            let w = num_vertices;
            num_vertices += 1;
            edges.push((u, w));
            edges.push((v, w));
        }
    }
    Ok(finish(num_vertices, edges, [0, 1, 2], n))
}

// Identification: A1~B3 -> A, A3~B2 -> B, A2~B1 -> C, with the new
// hubs numbered 0, 1, 2.
const COPY_HUB_A: [usize; 3] = [0, 2, 1];
const COPY_HUB_B: [usize; 3] = [2, 1, 0];

/// `G(n)` by recursively merging three copies of `G(n-1)` at their hubs.
pub fn build_psw_copy_merge(n: u32) -> Result<HubGraph> {
    guard(n)?;
    let mut num_vertices = 3;
    let mut edges = triangle_edges();
    let mut hubs = [0usize, 1, 2];
    for _ in 0..n {
        let mut next_edges = Vec::with_capacity(3 * edges.len());
        let mut next_vertices = 3;
        for copy in 0..3 {
            let mut map = vec![usize::MAX; num_vertices];
            map[hubs[0]] = COPY_HUB_A[copy];
            map[hubs[1]] = COPY_HUB_B[copy];
            for slot in map.iter_mut().filter(|m| **m == usize::MAX) {
                *slot = next_vertices;
                next_vertices += 1;
            }
            next_edges.extend(edges.iter().map(|&(u, v)| (map[u], map[v])));
        }
        num_vertices = next_vertices;
        edges = next_edges;
        hubs = [0, 1, 2];
    }
    Ok(finish(num_vertices, edges, hubs, n))
}

/// `SG(n)` by subdivision: every smallest triangle `(u, v, w)` gets its three
/// edge midpoints and is replaced by its three corner triangles. Hubs are the
/// outer corners `{0, 1, 2}`.
pub fn build_sierpinski(n: u32) -> Result<HubGraph> {
    guard(n)?;
    let mut triangles = vec![[0usize, 1, 2]];
    let mut num_vertices = 3;
    for _ in 0..n {
        let mut next = Vec::with_capacity(3 * triangles.len());
        for &[u, v, w] in &triangles {
            let (uv, vw, uw) = (num_vertices, num_vertices + 1, num_vertices + 2);
            num_vertices += 3;
            next.push([u, uv, uw]);
            next.push([uv, v, vw]);
            next.push([uw, vw, w]);
        }
        triangles = next;
    }
    let edges = triangles
        .iter()
        .flat_map(|&[u, v, w]| [(u, v), (u, w), (v, w)])
        .collect();
    Ok(finish(num_vertices, edges, [0, 1, 2], n))
}

pub fn build(family: Family, n: u32) -> Result<HubGraph> {
    match family {
        Family::Psw => build_psw_edge_expansion(n),
        Family::Sierpinski => build_sierpinski(n),
    }
}

/// Number of vertices of each degree.
pub fn degree_histogram(g: &Graph) -> BTreeMap<usize, usize> {
    let mut hist = BTreeMap::new();
    for d in g.degrees() {
        *hist.entry(d).or_insert(0) += 1;
    }
    hist
}
