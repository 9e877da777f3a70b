//! Exhaustive census of spanning subgraphs, tabulated by hub pattern,
//! component count and edge count. Every subgraph-sum oracle is a weighted
//! read of this table.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::bipoly::BiPoly;
use crate::dsu::UnionFind;
use crate::error::{check_limit, Result};
use crate::graph::{Graph, HubGraph};

/// Largest edge count for exhaustive enumeration (`2^27` subsets).
pub const MAX_CENSUS_EDGES: usize = 27;

/// How the three hubs `(A, B, C)` are distributed over components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum HubPattern {
    #[serde(rename = "ALL_TOGETHER")]
    Together,
    /// `BC|A`
    #[serde(rename = "BC|A")]
    SplitA,
    /// `AC|B`
    #[serde(rename = "AC|B")]
    SplitB,
    /// `AB|C`
    #[serde(rename = "AB|C")]
    SplitC,
    #[serde(rename = "A|B|C")]
    Separate,
}

impl HubPattern {
    pub const ALL: [HubPattern; 5] = [
        HubPattern::Together,
        HubPattern::SplitA,
        HubPattern::SplitB,
        HubPattern::SplitC,
        HubPattern::Separate,
    ];

    /// Pattern from the component representatives of `A`, `B`, `C`.
    pub fn from_roots(a: usize, b: usize, c: usize) -> Self {
        match (a == b, a == c, b == c) {
            (true, true, _) => HubPattern::Together,
            (false, false, true) => HubPattern::SplitA,
            (false, true, false) => HubPattern::SplitB,
            (true, false, false) => HubPattern::SplitC,
            _ => HubPattern::Separate,
        }
    }

    /// Number of distinct components among the hubs.
    pub fn hub_components(self) -> usize {
        match self {
            HubPattern::Together => 1,
            HubPattern::Separate => 3,
            _ => 2,
        }
    }

    pub(crate) fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for HubPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HubPattern::Together => "ALL_TOGETHER",
            HubPattern::SplitA => "BC|A",
            HubPattern::SplitB => "AC|B",
            HubPattern::SplitC => "AB|C",
            HubPattern::Separate => "A|B|C",
        })
    }
}

/// Rank data of a single spanning subgraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SubgraphClassification {
    pub components: usize,
    pub rank: usize,
    pub nullity: usize,
    pub pattern: HubPattern,
}

/// Classifies the subgraph whose edges are the set bits of `mask`.
pub fn classify_subset(g: &HubGraph, mask: u64) -> SubgraphClassification {
    let graph = g.graph();
    let mut uf = UnionFind::new(graph.num_vertices());
    let mut size = 0;
    for (i, &(u, v)) in graph.edges().iter().enumerate() {
        if mask >> i & 1 == 1 {
            uf.union(u, v);
            size += 1;
        }
    }
    let [a, b, c] = g.hubs();
    let components = uf.components();
    let rank = graph.num_vertices() - components;
    SubgraphClassification {
        components,
        rank,
        nullity: size - rank,
        pattern: HubPattern::from_roots(uf.find(a), uf.find(b), uf.find(c)),
    }
}

/// `counts[pattern][k - 1][|S|]`: number of edge subsets `S` whose spanning
/// subgraph has `k` components and the given hub pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetCensus {
    num_vertices: usize,
    num_edges: usize,
    base_components: usize,
    counts: Vec<u64>,
}

impl SubsetCensus {
    fn slot(&self, pattern: HubPattern, k: usize, s: usize) -> usize {
        (pattern.index() * self.num_vertices + (k - 1)) * (self.num_edges + 1) + s
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.num_edges
    }

    /// Component count of the full graph.
    pub fn base_components(&self) -> usize {
        self.base_components
    }

    pub fn count(&self, pattern: HubPattern, k: usize, s: usize) -> u64 {
        if k == 0 || k > self.num_vertices || s > self.num_edges {
            return 0;
        }
        self.counts[self.slot(pattern, k, s)]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// `sum (x-1)^{r(G) - r(H)} (y-1)^{n(H)}` over subsets in the given
    /// pattern classes.
    pub fn tutte_restricted(&self, patterns: &[HubPattern]) -> BiPoly {
        let (v, e) = (self.num_vertices, self.num_edges);
        // (i, j) -> count, with i = k - k(G) and j = |S| - V + k
        let mut grouped = std::collections::BTreeMap::<(usize, usize), u64>::new();
        for &pat in patterns {
            for k in self.base_components..=v {
                for s in 0..=e {
                    let c = self.count(pat, k, s);
                    if c > 0 {
                        *grouped.entry((k - self.base_components, s + k - v)).or_default() += c;
                    }
                }
            }
        }
        let xm1 = BiPoly::x_minus_one();
        let ym1 = BiPoly::y_minus_one();
        grouped
            .into_iter()
            .fold(BiPoly::zero(), |acc, ((i, j), c)| {
                let term = &xm1.pow(i as u32) * &ym1.pow(j as u32);
                &acc + &term.scale(&BigInt::from(c))
            })
    }

    pub fn tutte(&self) -> BiPoly {
        self.tutte_restricted(&HubPattern::ALL)
    }

    /// `sum p^{|S|} (1-p)^{E-|S|}` over subsets with exactly `k` components
    /// and the given pattern.
    pub fn probability(&self, pattern: HubPattern, k: usize, p: &BigRational) -> BigRational {
        let q = BigRational::one() - p;
        let e = self.num_edges;
        (0..=e).fold(BigRational::zero(), |acc, s| {
            let c = self.count(pattern, k, s);
            if c == 0 {
                return acc;
            }
            acc + BigRational::from_integer(c.into())
                * num_traits::pow::Pow::pow(p, s)
                * num_traits::pow::Pow::pow(&q, e - s)
        })
    }
}

#[derive(Clone, Copy)]
struct Undo {
    child: u32,
    root: u32,
}

/// Disjoint sets without path compression, so unions can be undone in LIFO
/// order.
#[derive(Clone)]
struct RollbackDsu {
    parent: Vec<u32>,
    size: Vec<u32>,
    components: usize,
}

impl RollbackDsu {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
            components: n,
        }
    }

    fn find(&self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            x = self.parent[x as usize];
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) -> Option<Undo> {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return None;
        }
        if self.size[ra as usize] < self.size[rb as usize] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb as usize] = ra;
        self.size[ra as usize] += self.size[rb as usize];
        self.components -= 1;
        Some(Undo { child: rb, root: ra })
    }

    fn undo(&mut self, u: Undo) {
        self.size[u.root as usize] -= self.size[u.child as usize];
        self.parent[u.child as usize] = u.child;
        self.components += 1;
    }
}

struct Walker<'a> {
    edges: &'a [(u32, u32)],
    hubs: [u32; 3],
    dsu: RollbackDsu,
    census: SubsetCensus,
}

impl Walker<'_> {
    fn walk(&mut self, i: usize, size: usize) {
        if i == self.edges.len() {
            let [a, b, c] = self.hubs.map(|h| self.dsu.find(h) as usize);
            let pattern = HubPattern::from_roots(a, b, c);
            let slot = self.census.slot(pattern, self.dsu.components, size);
            self.census.counts[slot] += 1;
            return;
        }
        self.walk(i + 1, size);
        let (u, v) = self.edges[i];
        let undo = self.dsu.union(u, v);
        self.walk(i + 1, size + 1);
        if let Some(undo) = undo {
            self.dsu.undo(undo);
        }
    }
}

/// Number of leading edges fixed per parallel task.
const PREFIX_EDGES: usize = 8;

fn run_census(graph: &Graph, hubs: [usize; 3]) -> Result<SubsetCensus> {
    let (v, e) = (graph.num_vertices(), graph.num_edges());
    check_limit("edges for exhaustive enumeration", e as u64, MAX_CENSUS_EDGES as u64)?;
    let empty = SubsetCensus {
        num_vertices: v,
        num_edges: e,
        base_components: graph.component_count(),
        counts: vec![0; 5 * v.max(1) * (e + 1)],
    };
    let edges: Vec<(u32, u32)> = graph.edges().iter().map(|&(a, b)| (a as u32, b as u32)).collect();
    let hubs = hubs.map(|h| h as u32);
    let prefix = e.min(PREFIX_EDGES);
    let parts: Vec<SubsetCensus> = (0u64..1 << prefix)
        .into_par_iter()
        .map(|mask| {
            let mut dsu = RollbackDsu::new(v);
            let mut size = 0;
            for (i, &(a, b)) in edges[..prefix].iter().enumerate() {
                if mask >> i & 1 == 1 {
                    dsu.union(a, b);
                    size += 1;
                }
            }
            let mut walker = Walker { edges: &edges, hubs, dsu, census: empty.clone() };
            walker.walk(prefix, size);
            walker.census
        })
        .collect();
    Ok(parts.into_iter().fold(empty, |mut acc, part| {
        for (a, b) in acc.counts.iter_mut().zip(part.counts) {
            *a += b;
        }
        acc
    }))
}

/// Census of all `2^{|E|}` subsets of a hub graph.
pub fn subset_census(g: &HubGraph) -> Result<SubsetCensus> {
    run_census(g.graph(), g.hubs())
}

/// Census of a plain graph; every subset is filed under `Together` unless the
/// graph has at least three vertices, in which case vertices 0, 1, 2 act as
/// hubs.
pub fn graph_census(g: &Graph) -> Result<SubsetCensus> {
    let hubs = if g.num_vertices() >= 3 { [0, 1, 2] } else { [0; 3] };
    run_census(g, hubs)
}

/// The Tutte polynomial as the rank-nullity sum over all spanning subgraphs.
pub fn tutte_subgraph_sum(g: &Graph) -> Result<BiPoly> {
    Ok(graph_census(g)?.tutte())
}

/// Hub-pattern class polynomials of a hub graph. `t2a` collects subgraphs in
/// which hub `A` is separated from `B` and `C`, and so on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionSums {
    pub t1: BiPoly,
    pub t2a: BiPoly,
    pub t2b: BiPoly,
    pub t2c: BiPoly,
    pub t3: BiPoly,
}

impl PartitionSums {
    pub fn total(&self) -> BiPoly {
        [&self.t2a, &self.t2b, &self.t2c, &self.t3]
            .into_iter()
            .fold(self.t1.clone(), |acc, t| &acc + t)
    }
}

pub fn partition_subgraph_sum(g: &HubGraph) -> Result<PartitionSums> {
    let census = subset_census(g)?;
    let class = |p| census.tutte_restricted(&[p]);
    Ok(PartitionSums {
        t1: class(HubPattern::Together),
        t2a: class(HubPattern::SplitA),
        t2b: class(HubPattern::SplitB),
        t2c: class(HubPattern::SplitC),
        t3: class(HubPattern::Separate),
    })
}

/// Exact edge-failure probabilities of a hub graph at edge probability `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReliabilityEnumeration {
    /// All vertices connected.
    pub connected: BigRational,
    /// Exactly two components, `{A, B}` against `{C}`.
    pub split_ab_c: BigRational,
    /// Exactly two components, `{A, C}` against `{B}`.
    pub split_ac_b: BigRational,
    /// Exactly two components, `{B, C}` against `{A}`.
    pub split_bc_a: BigRational,
    /// Exactly three components, one hub in each.
    pub separate: BigRational,
}

/// Largest edge count for reliability enumeration.
pub const MAX_RELIABILITY_EDGES: usize = 20;

pub fn reliability_enumeration(g: &HubGraph, p: &BigRational) -> Result<ReliabilityEnumeration> {
    check_limit("edges for reliability enumeration", g.num_edges() as u64, MAX_RELIABILITY_EDGES as u64)?;
    if !crate::numeric::is_probability(p) {
        return Err(crate::error::Error::Domain(format!("p = {p} is outside [0, 1]")));
    }
    let census = subset_census(g)?;
    Ok(ReliabilityEnumeration {
        connected: census.probability(HubPattern::Together, 1, p),
        split_ab_c: census.probability(HubPattern::SplitC, 2, p),
        split_ac_b: census.probability(HubPattern::SplitB, 2, p),
        split_bc_a: census.probability(HubPattern::SplitA, 2, p),
        separate: census.probability(HubPattern::Separate, 3, p),
    })
}
