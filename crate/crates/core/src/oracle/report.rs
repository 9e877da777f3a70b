//! Runs the oracle checks for one graph and collects a pass/fail/skip report.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{build, build_psw_copy_merge, degree_histogram, edge_count, vertex_count, Family, HubGraph};
use crate::graph::Graph;
use crate::invariants::spanning_trees_closed_form;
use crate::oracle::census::{subset_census, HubPattern, SubsetCensus, MAX_CENSUS_EDGES, MAX_RELIABILITY_EDGES};
use crate::oracle::composition::{compose_partition, compose_probabilities};
use crate::oracle::deletion::{matrix_tree_count, tutte_deletion_contraction, MAX_DELETION_CONTRACTION_EDGES, MAX_MATRIX_TREE_VERTICES};
use crate::recursion::{psw_state, state_to_partition, step_partition, check_divisibility, PartitionTriple, MAX_SYMBOLIC_GENERATION};
use crate::reliability::{psw_rel_exact, sg_rel_exact, RelStatePsw, RelStateSg};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    Constructions,
    Tutte,
    Partition,
    DeletionContraction,
    MatrixTree,
    Reliability,
    TutteBridge,
    Composition,
}

impl CheckKind {
    pub const ALL: [CheckKind; 8] = [
        CheckKind::Constructions,
        CheckKind::Tutte,
        CheckKind::Partition,
        CheckKind::DeletionContraction,
        CheckKind::MatrixTree,
        CheckKind::Reliability,
        CheckKind::TutteBridge,
        CheckKind::Composition,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Constructions => "constructions",
            CheckKind::Tutte => "tutte",
            CheckKind::Partition => "partition",
            CheckKind::DeletionContraction => "deletion-contraction",
            CheckKind::MatrixTree => "matrix-tree",
            CheckKind::Reliability => "reliability",
            CheckKind::TutteBridge => "tutte-bridge",
            CheckKind::Composition => "composition",
        }
    }

    /// Parses `all` or a comma-separated list of check names.
    pub fn parse_list(text: &str) -> Result<Vec<CheckKind>> {
        if text.trim() == "all" {
            return Ok(Self::ALL.to_vec());
        }
        text.split(',').map(|s| s.trim().parse()).collect()
    }
}

impl FromStr for CheckKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown check {s:?}")))
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub family: &'static str,
    pub n: u32,
    pub checks: Vec<CheckOutcome>,
    pub passed: bool,
}

impl OracleReport {
    /// One line per check, e.g. `PASS tutte: ...`.
    pub fn to_text(&self) -> String {
        self.checks
            .iter()
            .map(|c| {
                let tag = match c.status {
                    CheckStatus::Pass => "PASS",
                    CheckStatus::Fail => "FAIL",
                    CheckStatus::Skip => "SKIP",
                };
                format!("{tag} {}: {}\n", c.name, c.detail)
            })
            .collect()
    }
}

type Outcome = (CheckStatus, String);

fn verdict(ok: bool, detail: impl Into<String>) -> Outcome {
    let status = if ok { CheckStatus::Pass } else { CheckStatus::Fail };
    (status, detail.into())
}

fn skip(detail: impl Into<String>) -> Outcome {
    (CheckStatus::Skip, detail.into())
}

struct Context {
    family: Family,
    n: u32,
    graph: HubGraph,
    census: Option<SubsetCensus>,
}

impl Context {
    fn census(&mut self) -> Result<Option<&SubsetCensus>> {
        if self.census.is_none() && self.graph.num_edges() <= MAX_CENSUS_EDGES {
            self.census = Some(subset_census(&self.graph)?);
        }
        Ok(self.census.as_ref())
    }
}

fn sorted_degrees(g: &Graph) -> Vec<usize> {
    let mut d = g.degrees();
    d.sort_unstable();
    d
}

fn check_constructions(ctx: &mut Context) -> Result<Outcome> {
    let g = ctx.graph.graph();
    let (v, e) = (vertex_count(ctx.n) as usize, edge_count(ctx.n) as usize);
    if g.num_vertices() != v || g.num_edges() != e || !g.is_connected() {
        return Ok(verdict(false, format!("V = {}, E = {}, expected {v}, {e}", g.num_vertices(), g.num_edges())));
    }
    match ctx.family {
        Family::Psw => {
            let merged = build_psw_copy_merge(ctx.n)?;
            let same = sorted_degrees(merged.graph()) == sorted_degrees(g)
                && merged.num_vertices() == v
                && merged.num_edges() == e;
            Ok(verdict(same, "edge expansion and copy merge give equal V, E and degree sequences"))
        }
        Family::Sierpinski => {
            let hist = degree_histogram(g);
            let expected = if ctx.n == 0 {
                [(2, 3)].into_iter().collect()
            } else {
                [(2, 3), (4, v - 3)].into_iter().collect()
            };
            Ok(verdict(hist == expected, format!("degree histogram {hist:?}")))
        }
    }
}

fn check_tutte(ctx: &mut Context) -> Result<Outcome> {
    if ctx.family != Family::Psw {
        return Ok(skip("no symbolic recursion for this family"));
    }
    if ctx.n > MAX_SYMBOLIC_GENERATION {
        return Ok(skip("generation above the symbolic limit"));
    }
    let Some(census) = ctx.census()? else {
        return Ok(skip(format!("more than {MAX_CENSUS_EDGES} edges")));
    };
    let oracle = census.tutte();
    let recursion = crate::recursion::tutte_psw(ctx.n)?;
    Ok(verdict(oracle == recursion, format!("{} terms compared against the subgraph sum", oracle.len())))
}

fn oracle_triple(census: &SubsetCensus, level: u32) -> (PartitionTriple, [crate::bipoly::BiPoly; 3]) {
    let class = |p| census.tutte_restricted(&[p]);
    let splits = [class(HubPattern::SplitA), class(HubPattern::SplitB), class(HubPattern::SplitC)];
    let triple = PartitionTriple {
        level,
        t1: class(HubPattern::Together),
        t2: splits[0].clone(),
        t3: class(HubPattern::Separate),
    };
    (triple, splits)
}

fn check_partition(ctx: &mut Context) -> Result<Outcome> {
    let (family, n) = (ctx.family, ctx.n);
    let Some(census) = ctx.census()? else {
        return Ok(skip(format!("more than {MAX_CENSUS_EDGES} edges")));
    };
    let (triple, splits) = oracle_triple(census, n);
    let symmetric = splits[0] == splits[1] && splits[1] == splits[2];
    let divisible = check_divisibility(&triple).is_ok();
    let recombines = triple.total() == census.tutte();
    let mut ok = symmetric && divisible && recombines;
    let mut detail = format!("symmetric {symmetric}, divisible {divisible}, recombines {recombines}");
    if family == Family::Psw && n <= MAX_SYMBOLIC_GENERATION {
        let matches = state_to_partition(&psw_state(n)?) == triple;
        ok &= matches;
        detail.push_str(&format!(", equals state recursion {matches}"));
    }
    Ok(verdict(ok, detail))
}

fn check_deletion_contraction(ctx: &mut Context) -> Result<Outcome> {
    if ctx.graph.num_edges() > MAX_DELETION_CONTRACTION_EDGES {
        return Ok(skip(format!("more than {MAX_DELETION_CONTRACTION_EDGES} edges")));
    }
    let dc = tutte_deletion_contraction(ctx.graph.graph())?;
    let Some(census) = ctx.census()? else {
        return Ok(skip("census unavailable"));
    };
    Ok(verdict(dc == census.tutte(), "deletion-contraction equals the subgraph sum"))
}

fn check_matrix_tree(ctx: &mut Context) -> Result<Outcome> {
    if ctx.graph.num_vertices() > MAX_MATRIX_TREE_VERTICES {
        return Ok(skip(format!("more than {MAX_MATRIX_TREE_VERTICES} vertices")));
    }
    let det = matrix_tree_count(ctx.graph.graph())?;
    let mut ok = true;
    let mut compared = Vec::new();
    if ctx.family == Family::Psw {
        ok &= det == spanning_trees_closed_form(ctx.n)?;
        compared.push("closed form");
    }
    if let Some(census) = ctx.census()? {
        let one = BigInt::one();
        ok &= census.tutte().eval_integer(&one, &one) == det;
        compared.push("T(1,1) of the subgraph sum");
    }
    if compared.is_empty() {
        return Ok(skip("nothing to compare against"));
    }
    Ok(verdict(ok, format!("determinant {det} against {}", compared.join(" and "))))
}

fn probes() -> [BigRational; 3] {
    [(1, 3), (1, 2), (2, 3)].map(|(a, b)| BigRational::new(BigInt::from(a), BigInt::from(b)))
}

fn check_reliability(ctx: &mut Context) -> Result<Outcome> {
    if ctx.graph.num_edges() > MAX_RELIABILITY_EDGES {
        return Ok(skip(format!("more than {MAX_RELIABILITY_EDGES} edges")));
    }
    let mut ok = true;
    for p in probes() {
        let e = crate::oracle::census::reliability_enumeration(&ctx.graph, &p)?;
        ok &= e.split_ab_c == e.split_ac_b && e.split_ac_b == e.split_bc_a;
        match ctx.family {
            Family::Psw => {
                let s = psw_rel_exact(ctx.n, &p)?;
                ok &= e.connected == s.r.to_ratio() && e.split_ab_c == s.b.to_ratio();
            }
            Family::Sierpinski => {
                let s = sg_rel_exact(ctx.n, &p)?;
                ok &= e.connected == s.rs.to_ratio()
                    && e.split_ab_c == s.bs.to_ratio()
                    && e.separate == s.ts.to_ratio();
            }
        }
    }
    Ok(verdict(ok, "enumerated probabilities equal the recursion at p = 1/3, 1/2, 2/3"))
}

fn check_tutte_bridge(ctx: &mut Context) -> Result<Outcome> {
    if ctx.graph.num_edges() > MAX_RELIABILITY_EDGES {
        return Ok(skip(format!("more than {MAX_RELIABILITY_EDGES} edges")));
    }
    let graph = ctx.graph.clone();
    let n = ctx.n;
    let Some(census) = ctx.census()? else {
        return Ok(skip("census unavailable"));
    };
    let (v, e) = (graph.num_vertices(), graph.num_edges());
    let (triple, _) = oracle_triple(census, n);
    let p_class = triple.t2.div_exact_xminus1(1)?;
    let mut ok = true;
    for p in probes() {
        let enumerated = crate::oracle::census::reliability_enumeration(&graph, &p)?;
        let q = BigRational::one() - &p;
        let x = BigRational::one();
        let y = q.recip();
        let pw = |b: &BigRational, k: usize| Pow::pow(b, k);
        let r = pw(&p, v - 1) * pw(&q, e - v + 1) * triple.t1.eval_exact(&x, &y);
        let b = pw(&p, v - 2) * pw(&q, e - v + 2) * p_class.eval_exact(&x, &y);
        ok &= r == enumerated.connected && b == enumerated.split_bc_a;
    }
    Ok(verdict(ok, "p^{V-1}(1-p)^{E-V+1} T1(1, 1/(1-p)) equals the enumerated reliability"))
}

fn check_composition(ctx: &mut Context) -> Result<Outcome> {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let q = BigRational::one() - &half;
    let mut ok = true;
    let mut detail = Vec::new();
    match ctx.family {
        Family::Psw => {
            let s = RelStatePsw::initial(&half, &q);
            let composed = compose_probabilities(Family::Psw, &s.r, &s.b, &BigRational::from_integer(0.into()));
            let stepped = s.step();
            ok &= composed[0] == stepped.r && composed[1] == stepped.b;
            detail.push("probability table");
            if ctx.n < MAX_SYMBOLIC_GENERATION.min(4) {
                let t = state_to_partition(&psw_state(ctx.n)?);
                ok &= compose_partition(&t)? == step_partition(&t)?;
                detail.push("partition classes");
            }
        }
        Family::Sierpinski => {
            let s = RelStateSg::initial(&half, &q);
            let composed = compose_probabilities(Family::Sierpinski, &s.rs, &s.bs, &s.ts);
            let stepped = s.step();
            ok &= composed[0] == stepped.rs && composed[1] == stepped.bs && composed[2] == stepped.ts;
            detail.push("probability table");
        }
    }
    Ok(verdict(ok, format!("gluing enumeration reproduces the {}", detail.join(" and "))))
}

/// Runs the requested checks on generation `n` of `family`.
pub fn run_oracle(family: Family, n: u32, checks: &[CheckKind]) -> Result<OracleReport> {
    let mut ctx = Context { family, n, graph: build(family, n)?, census: None };
    let mut outcomes = Vec::with_capacity(checks.len());
    for &kind in checks {
        let result = match kind {
            CheckKind::Constructions => check_constructions(&mut ctx),
            CheckKind::Tutte => check_tutte(&mut ctx),
            CheckKind::Partition => check_partition(&mut ctx),
            CheckKind::DeletionContraction => check_deletion_contraction(&mut ctx),
            CheckKind::MatrixTree => check_matrix_tree(&mut ctx),
            CheckKind::Reliability => check_reliability(&mut ctx),
            CheckKind::TutteBridge => check_tutte_bridge(&mut ctx),
            CheckKind::Composition => check_composition(&mut ctx),
        };
        let (status, detail) = result.unwrap_or_else(|e| (CheckStatus::Fail, e.to_string()));
        outcomes.push(CheckOutcome { name: kind.name(), status, detail });
    }
    let passed = outcomes.iter().all(|o| o.status != CheckStatus::Fail);
    Ok(OracleReport { family: family.name(), n, checks: outcomes, passed })
}
