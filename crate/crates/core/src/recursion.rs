//! Self-similarity recursions for the Tutte polynomial of `G(n)`.
//!
//! The state at generation `n` is `(T1, P, Q)`, where `T1` sums over spanning
//! subgraphs with all three hubs in one component, `(x-1) P` over those with
//! exactly one hub split off (one fixed choice of which), and `(x-1)^2 Q`
//! over those with all hubs separated. The full polynomial is
//! `T = T1 + 3 (x-1) P + (x-1)^2 Q`.

use serde::Serialize;

use crate::bipoly::BiPoly;
use crate::error::{check_limit, Error, Result};
use crate::graph::{edge_count, vertex_count};
use crate::semiring::{sum, Semiring};

/// Largest generation for which the full symbolic polynomial is built.
pub const MAX_SYMBOLIC_GENERATION: u32 = 6;

/// `(T1, P, Q)` at generation `level`, over any semiring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TutteState<S> {
    pub level: u32,
    pub t1: S,
    pub p: S,
    pub q: S,
}

pub type PswTutteState = TutteState<BiPoly>;

impl<S: Semiring> TutteState<S> {
    /// Generation 0 with `T1 = y + 2` already evaluated.
    pub fn initial(t1: S) -> Self {
        Self {
            level: 0,
            t1,
            p: S::empty_product(),
            q: S::empty_product(),
        }
    }

    /// One generation of the state recursion, given the values of `x - 1`
    /// and `y - 1` in `S`.
    pub fn step(&self, xm1: &S, ym1: &S) -> Self {
        let (t, p, q, a, b) = (&self.t1, &self.p, &self.q, xm1, ym1);
        let a2 = a.times(a);
        let a3 = a2.times(a);

        let t2 = t.times(t);
        let p2 = p.times(p);
        let q2 = q.times(q);
        let tp = t.times(p);

        let t3 = t2.times(t);
        let t2p = t2.times(p);
        let tp2 = tp.times(p);
        let p3 = p2.times(p);
        let t2q = t2.times(q);
        let p2q = p2.times(q);
        let tpq = tp.times(q);
        let tq2 = t.times(&q2);
        let pq2 = p.times(&q2);
        let q3 = q2.times(q);

        let connected_all = sum(&[
            t3,
            a.times(&t2p).scaled(3),
            a2.times(&tp2).scaled(3),
            a3.times(&p3),
        ]);
        let t1 = sum(&[
            b.times(&connected_all),
            a.times(&t2q).scaled(3),
            t2p.scaled(6),
            a.times(&tp2).scaled(12),
            a2.times(&p3).scaled(6),
            a3.times(&p2q).scaled(3),
            a2.times(&tpq).scaled(6),
        ]);
        let p_next = sum(&[
            tp2.scaled(4),
            a.times(&tpq).scaled(4),
            a.times(&p3).scaled(4),
            a2.times(&p2q).scaled(4),
            a2.times(&tq2),
            a3.times(&pq2),
        ]);
        let q_next = sum(&[
            p3.scaled(8),
            a.times(&p2q).scaled(12),
            a2.times(&pq2).scaled(6),
            a3.times(&q3),
        ]);
        Self {
            level: self.level + 1,
            t1,
            p: p_next,
            q: q_next,
        }
    }

    /// `T1 + 3 (x-1) P + (x-1)^2 Q`
    pub fn assemble(&self, xm1: &S) -> S {
        let a2 = xm1.times(xm1);
        sum(&[
            self.t1.clone(),
            xm1.times(&self.p).scaled(3),
            a2.times(&self.q),
        ])
    }
}

/// Partition-class polynomials `(T1, T2, T3)` of `G(n)`: hubs all together,
/// one fixed hub split off, all three separated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionTriple {
    pub level: u32,
    pub t1: BiPoly,
    pub t2: BiPoly,
    pub t3: BiPoly,
}

impl PartitionTriple {
    /// `T1 + 3 T2 + T3`
    pub fn total(&self) -> BiPoly {
        &(&self.t1 + &self.t2.scale(&3.into())) + &self.t3
    }
}

/// `T1 = y + 2`, `P = Q = 1`.
pub fn initial_state() -> PswTutteState {
    TutteState::initial(&BiPoly::y() + &BiPoly::constant(2))
}

pub fn step_state(s: &PswTutteState) -> PswTutteState {
    s.step(&BiPoly::x_minus_one(), &BiPoly::y_minus_one())
}

pub fn assemble_tutte(s: &PswTutteState) -> BiPoly {
    s.assemble(&BiPoly::x_minus_one())
}

pub fn state_to_partition(s: &PswTutteState) -> PartitionTriple {
    let a = BiPoly::x_minus_one();
    PartitionTriple {
        level: s.level,
        t1: s.t1.clone(),
        t2: &a * &s.p,
        t3: &a.pow(2) * &s.q,
    }
}

/// `(T2, T3) -> (P, Q)` by exact division; fails if either divisibility
/// claim is violated.
pub fn partition_to_state(t: &PartitionTriple) -> Result<PswTutteState> {
    Ok(TutteState {
        level: t.level,
        t1: t.t1.clone(),
        p: t.t2.div_exact_xminus1(1)?,
        q: t.t3.div_exact_xminus1(2)?,
    })
}

/// One generation of the partition-class recursion. Every `1/(x-1)` factor
/// is an exact division.
pub fn step_partition(t: &PartitionTriple) -> Result<PartitionTriple> {
    let (t1, t2, t3) = (&t.t1, &t.t2, &t.t3);
    let ym1 = BiPoly::y_minus_one();

    let t1sq = t1 * t1;
    let t2sq = t2 * t2;
    let t3sq = t3 * t3;
    let t1t2 = t1 * t2;
    let t2cube = &t2sq * t2;
    let t1t2sq = &t1t2 * t2;
    let t1sq_t2 = &t1sq * t2;
    let t2sq_t3 = &t2sq * t3;
    let t1t2t3 = &t1t2 * t3;

    let together = sum(&[
        &t1sq * t1,
        t1sq_t2.scaled(3),
        t1t2sq.scaled(3),
        t2cube.clone(),
    ]);
    let split_t1 = sum(&[
        (&t1sq * t3).scaled(3),
        t1sq_t2.scaled(6),
        t1t2sq.scaled(12),
        t2cube.scaled(6),
        t2sq_t3.scaled(3),
        t1t2t3.scaled(6),
    ]);
    let split_t2 = sum(&[
        t1t2sq.scaled(4),
        t1t2t3.scaled(4),
        t2cube.scaled(4),
        t2sq_t3.scaled(4),
        t1 * &t3sq,
        t2 * &t3sq,
    ]);
    let split_t3 = sum(&[
        t2cube.scaled(8),
        t2sq_t3.scaled(12),
        (t2 * &t3sq).scaled(6),
        &t3sq * t3,
    ]);

    Ok(PartitionTriple {
        level: t.level + 1,
        t1: &(&ym1 * &together) + &split_t1.div_exact_xminus1(1)?,
        t2: split_t2.div_exact_xminus1(1)?,
        t3: split_t3.div_exact_xminus1(1)?,
    })
}

/// State `(T1, P, Q)` at generation `n`.
pub fn psw_state(n: u32) -> Result<PswTutteState> {
    check_limit("symbolic generation", u64::from(n), u64::from(MAX_SYMBOLIC_GENERATION))?;
    let mut s = initial_state();
    for _ in 0..n {
        s = step_state(&s);
    }
    Ok(s)
}

/// Full Tutte polynomial `T_n(x, y)` of `G(n)`.
pub fn tutte_psw(n: u32) -> Result<BiPoly> {
    Ok(assemble_tutte(&psw_state(n)?))
}

/// Expected `(deg_x, deg_y)` of `T_n`: rank `V_n - 1` and nullity
/// `E_n - V_n + 1`.
pub fn expected_degrees(n: u32) -> (u32, u32) {
    let (v, e) = (vertex_count(n), edge_count(n));
    ((v - 1) as u32, (e - v + 1) as u32)
}

/// Consistency of a partition triple with the divisibility claims.
pub fn check_divisibility(t: &PartitionTriple) -> Result<()> {
    partition_to_state(t).map(|_| ()).map_err(|e| match e {
        Error::NonDivisible { .. } => Error::Inconsistent(format!(
            "level {}: partition classes violate (x-1) | T2 or (x-1)^2 | T3",
            t.level
        )),
        other => other,
    })
}
