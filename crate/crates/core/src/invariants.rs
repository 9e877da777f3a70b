//! Numeric evaluation of `T_n` at a point by running the recursion on scalars,
//! the closed-form spanning-tree count, and its exponent sequences.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use serde::Serialize;

use crate::error::{check_limit, Error, Result};
use crate::graph::edge_count;
use crate::recursion::TutteState;
use crate::semiring::{LogPos, Semiring};

/// Largest generation for exact point evaluation (value bit-length grows like
/// `3^n`).
pub const MAX_EXACT_GENERATION: u32 = 14;
/// Largest generation for the spanning-tree closed form and recurrence.
pub const MAX_TREE_GENERATION: u32 = 20;

/// Runs `n` steps from `T1 = y + 2`, `P = Q = 1`.
fn run_state<S: Semiring>(n: u32, t1_initial: S, xm1: &S, ym1: &S) -> TutteState<S> {
    let mut s = TutteState::initial(t1_initial);
    for _ in 0..n {
        s = s.step(xm1, ym1);
    }
    s
}

pub fn eval_state_integer(n: u32, x: &BigInt, y: &BigInt) -> Result<TutteState<BigInt>> {
    check_limit("exact generation", u64::from(n), u64::from(MAX_EXACT_GENERATION))?;
    let one = BigInt::one();
    Ok(run_state(n, y + 2, &(x - &one), &(y - &one)))
}

/// Exact `(T1, P, Q)` at `(x, y)` after `n` scalar steps. Integer points run
/// on plain integers.
pub fn eval_state_at_point(
    n: u32,
    x: &BigRational,
    y: &BigRational,
) -> Result<TutteState<BigRational>> {
    check_limit("exact generation", u64::from(n), u64::from(MAX_EXACT_GENERATION))?;
    if x.is_integer() && y.is_integer() {
        let s = eval_state_integer(n, x.numer(), y.numer())?;
        return Ok(TutteState {
            level: s.level,
            t1: BigRational::from_integer(s.t1),
            p: BigRational::from_integer(s.p),
            q: BigRational::from_integer(s.q),
        });
    }
    let one = BigRational::one();
    let two = BigRational::from_integer(2.into());
    Ok(run_state(n, y + two, &(x - &one), &(y - &one)))
}

pub fn eval_tutte_integer(n: u32, x: &BigInt, y: &BigInt) -> Result<BigInt> {
    let s = eval_state_integer(n, x, y)?;
    Ok(s.assemble(&(x - 1)))
}

pub fn eval_tutte_exact(n: u32, x: &BigRational, y: &BigRational) -> Result<BigRational> {
    let s = eval_state_at_point(n, x, y)?;
    Ok(s.assemble(&(x - BigRational::one())))
}

/// Double-precision evaluation. Fails once an intermediate leaves the finite
/// range, which happens near `n = 6` at `(1, 1)`.
pub fn eval_tutte_float(n: u32, x: f64, y: f64) -> Result<f64> {
    let v = run_state(n, y + 2.0, &(x - 1.0), &(y - 1.0)).assemble(&(x - 1.0));
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow(format!("T_{n}({x}, {y})")))
    }
}

/// `ln T_n(x, y)` in the log domain. Needs `x >= 1` and `y >= 1` so that
/// every recursion term is nonnegative.
pub fn eval_tutte_log(n: u32, x: f64, y: f64) -> Result<f64> {
    if !(x >= 1.0 && y >= 1.0 && x.is_finite() && y.is_finite()) {
        return Err(Error::Domain(format!(
            "log mode needs x >= 1 and y >= 1, got ({x}, {y})"
        )));
    }
    let xm1 = LogPos::from_value(x - 1.0);
    let ym1 = LogPos::from_value(y - 1.0);
    let s = run_state(n, LogPos::from_value(y + 2.0), &xm1, &ym1);
    Ok(s.assemble(&xm1).ln())
}

/// Numeric invariants of `G(n)` read off `T_n` at the standard points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub n: u32,
    /// `T(1, 1)`
    #[serde(serialize_with = "as_decimal")]
    pub spanning_trees: BigInt,
    /// `T(1, 2)`
    #[serde(serialize_with = "as_decimal")]
    pub connected_spanning_subgraphs: BigInt,
    /// `T(2, 1)`
    #[serde(serialize_with = "as_decimal")]
    pub spanning_forests: BigInt,
    /// `T(2, 0)`
    #[serde(serialize_with = "as_decimal")]
    pub acyclic_orientations: BigInt,
    /// `T(2, 2) = 2^{E_n}`
    #[serde(serialize_with = "as_decimal")]
    pub all_subgraphs: BigInt,
}

fn as_decimal<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub fn invariant_report(n: u32) -> Result<InvariantReport> {
    let at = |x: i64, y: i64| eval_tutte_integer(n, &BigInt::from(x), &BigInt::from(y));
    Ok(InvariantReport {
        n,
        spanning_trees: at(1, 1)?,
        connected_spanning_subgraphs: at(1, 2)?,
        spanning_forests: at(2, 1)?,
        acyclic_orientations: at(2, 0)?,
        all_subgraphs: at(2, 2)?,
    })
}

impl InvariantReport {
    /// Ordering constraints every report must satisfy.
    pub fn check(&self) -> Result<()> {
        let expected_all = Pow::pow(BigInt::from(2), edge_count(self.n));
        let ok = self.spanning_trees <= self.connected_spanning_subgraphs
            && self.connected_spanning_subgraphs <= self.all_subgraphs
            && self.spanning_trees <= self.spanning_forests
            && self.spanning_forests <= self.all_subgraphs
            && self.all_subgraphs == expected_all;
        if ok {
            Ok(())
        } else {
            Err(Error::Inconsistent(format!("invariant ordering violated at n = {}", self.n)))
        }
    }
}

fn exact_integer(value: &BigRational, label: &str) -> Result<BigInt> {
    if value.is_integer() {
        Ok(value.to_integer())
    } else {
        Err(Error::NonIntegralExponent(format!("{label} = {value}")))
    }
}

fn pow_big(base: u32, exp: &BigInt) -> Result<BigInt> {
    let e: u64 = exp
        .try_into()
        .map_err(|_| Error::Inconsistent(format!("exponent {exp} out of range")))?;
    Ok(Pow::pow(BigInt::from(base), e))
}

/// `N_ST(n) = 2^{(3^{n+1} - 2n - 3)/4} * 3^{(3^{n+1} + 2n + 1)/4}`. Both
/// exponents are formed as exact rationals and must be integral.
pub fn spanning_trees_closed_form(n: u32) -> Result<BigInt> {
    check_limit("tree generation", u64::from(n), u64::from(MAX_TREE_GENERATION))?;
    let three_pow = BigInt::from(3).pow(n + 1);
    let n_big = BigInt::from(n);
    let four = BigInt::from(4);
    let e2 = BigRational::new(&three_pow - &n_big * 2 - 3, four.clone());
    let e3 = BigRational::new(&three_pow + &n_big * 2 + 1, four);
    let e2 = exact_integer(&e2, "exponent of 2")?;
    let e3 = exact_integer(&e3, "exponent of 3")?;
    Ok(pow_big(2, &e2)? * pow_big(3, &e3)?)
}

/// Iterates `N(n+1) = 6 N(n)^2 P(n)`, `P(n+1) = 4 N(n) P(n)^2` from
/// `N(0) = 3`, `P(0) = 1`.
pub fn spanning_trees_recurrence(n: u32) -> Result<BigInt> {
    check_limit("tree generation", u64::from(n), u64::from(MAX_TREE_GENERATION))?;
    let mut trees = BigInt::from(3);
    let mut p = BigInt::one();
    for _ in 0..n {
        let next_trees = &trees * &trees * &p * 6;
        p = &trees * &p * &p * 4;
        trees = next_trees;
    }
    Ok(trees)
}

/// Exponents in `N_ST(n) = 6^{a_k} 4^{b_k} N_ST(n-k)^{c_k} P_{n-k}^{d_k}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExponentSeq {
    pub k: u32,
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

/// Closed forms: `a_k = (k+1)/2 + (3^k-3)/4`, `b_k = -(k-1)/2 + (3^k-3)/4`,
/// `c_k = (3^k+1)/2`, `d_k = (3^k-1)/2`, evaluated in exact rationals.
pub fn exponent_closed_form(k: u32) -> Result<ExponentSeq> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let r = |n: BigInt, d: i64| BigRational::new(n, BigInt::from(d));
    let pow3 = BigInt::from(3).pow(k);
    let kb = BigInt::from(k);
    let quarter = r(&pow3 - 3, 4);
    let a = r(&kb + 1, 2) + &quarter;
    let b = quarter - r(&kb - 1, 2);
    let c = r(&pow3 + 1, 2);
    let d = r(&pow3 - 1, 2);
    Ok(ExponentSeq {
        k,
        a: exact_integer(&a, "a_k")?,
        b: exact_integer(&b, "b_k")?,
        c: exact_integer(&c, "c_k")?,
        d: exact_integer(&d, "d_k")?,
    })
}

/// `a_k, b_k, c_k, d_k` for `k = 1..=k_max` by the recurrence
/// `a_k = a_{k-1} + c_{k-1}`, `b_k = b_{k-1} + d_{k-1}`,
/// `c_k = 2 c_{k-1} + d_{k-1}`, `d_k = c_{k-1} + 2 d_{k-1}`, from
/// `(1, 0, 2, 1)`. Each entry is checked against the closed form.
pub fn exponent_sequences(k_max: u32) -> Result<Vec<ExponentSeq>> {
    if k_max == 0 {
        return Err(Error::InvalidArgument("k_max must be at least 1".into()));
    }
    let mut out = Vec::with_capacity(k_max as usize);
    let mut cur = ExponentSeq {
        k: 1,
        a: BigInt::one(),
        b: BigInt::zero(),
        c: BigInt::from(2),
        d: BigInt::one(),
    };
    loop {
        let closed = exponent_closed_form(cur.k)?;
        if closed != cur {
            return Err(Error::Inconsistent(format!(
                "exponent recurrence and closed form disagree at k = {}",
                cur.k
            )));
        }
        out.push(cur.clone());
        if cur.k == k_max {
            break;
        }
        cur = ExponentSeq {
            k: cur.k + 1,
            a: &cur.a + &cur.c,
            b: &cur.b + &cur.d,
            c: &cur.c * 2 + &cur.d,
            d: &cur.c + &cur.d * 2,
        };
    }
    Ok(out)
}

/// `6^{a_n} 4^{b_n} 3^{c_n}` (with `P_0 = 1`), a third route to `N_ST(n)`.
pub fn spanning_trees_from_exponents(n: u32) -> Result<BigInt> {
    check_limit("tree generation", u64::from(n), u64::from(MAX_TREE_GENERATION))?;
    if n == 0 {
        return Ok(BigInt::from(3));
    }
    let e = exponent_closed_form(n)?;
    Ok(pow_big(6, &e.a)? * pow_big(4, &e.b)? * pow_big(3, &e.c)?)
}
