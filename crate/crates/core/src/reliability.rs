//! All-terminal reliability of PSW and the Sierpinski gasket by the scalar
//! self-similarity recursions, in exact, float and log-domain modes.
//!
//! Exact mode works on integer numerators. With `p = a/b` every state value
//! at generation `n` has denominator `b^{E_n}`, and each step is homogeneous
//! of degree 3 in the state, so the numerators alone can be iterated.

use std::cmp::Ordering;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{check_limit, Error, Result};
use crate::graph::{edge_count, vertex_count};
use crate::numeric::{is_probability, ln_bigint, parse_rational, ratio_to_f64};
use crate::semiring::{sum, LogPos, Semiring};

/// Largest generation for exact-mode reliability (numerator bit-length is
/// about `3^{n+1} log2 b`).
pub const MAX_EXACT_RELIABILITY_GENERATION: u32 = 10;
/// Largest generation for the rational Tutte-route reliability.
pub const MAX_TUTTE_ROUTE_GENERATION: u32 = 10;
/// Largest number of points accepted in a grid.
pub const MAX_GRID_POINTS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
    Log,
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            "log" => Ok(Mode::Log),
            other => Err(Error::Parse(format!("unknown mode {other:?} (exact, float, log)"))),
        }
    }
}

/// PSW state: `R` all-terminal reliability, `B` probability of the
/// two-component split with one fixed hub isolated from the other two.
#[derive(Debug, Clone, PartialEq)]
pub struct RelStatePsw<S> {
    pub level: u32,
    pub r: S,
    pub b: S,
}

/// Sierpinski gasket state `(Rs, Bs, Ts)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RelStateSg<S> {
    pub level: u32,
    pub rs: S,
    pub bs: S,
    pub ts: S,
}

impl<S: Semiring> RelStatePsw<S> {
    /// `R(0) = p^3 + 3 p^2 q`, `B(0) = p q^2` with `q = 1 - p`.
    pub fn initial(p: &S, q: &S) -> Self {
        let p2 = p.times(p);
        Self {
            level: 0,
            r: p2.times(p).plus(&p2.times(q).scaled(3)),
            b: p.times(q).times(q),
        }
    }

    pub fn step(&self) -> Self {
        let (r, b) = (&self.r, &self.b);
        let r2 = r.times(r);
        Self {
            level: self.level + 1,
            r: r2.times(r).plus(&r2.times(b).scaled(6)),
            b: r.times(b).times(b).scaled(4),
        }
    }
}

impl<S: Semiring> RelStateSg<S> {
    /// PSW initial values plus `Ts(0) = q^3`.
    pub fn initial(p: &S, q: &S) -> Self {
        let psw = RelStatePsw::initial(p, q);
        Self {
            level: 0,
            rs: psw.r,
            bs: psw.b,
            ts: q.times(q).times(q),
        }
    }

    pub fn step(&self) -> Self {
        let (r, b, t) = (&self.rs, &self.bs, &self.ts);
        let r2 = r.times(r);
        let b2 = b.times(b);
        let rb = r.times(b);
        Self {
            level: self.level + 1,
            rs: r2.times(r).plus(&r2.times(b).scaled(6)),
            bs: sum(&[r2.times(b), r2.times(t), r.times(&b2).scaled(7)]),
            ts: sum(&[
                r.times(&b2).scaled(3),
                rb.times(t).scaled(12),
                b2.times(b).scaled(14),
            ]),
        }
    }
}

impl<S> RelStatePsw<S> {
    pub fn map<T>(self, f: impl Fn(S) -> T) -> RelStatePsw<T> {
        RelStatePsw { level: self.level, r: f(self.r), b: f(self.b) }
    }
}

impl<S> RelStateSg<S> {
    pub fn map<T>(self, f: impl Fn(S) -> T) -> RelStateSg<T> {
        RelStateSg {
            level: self.level,
            rs: f(self.rs),
            bs: f(self.bs),
            ts: f(self.ts),
        }
    }
}

/// An exact probability `numer / base^exp`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactProb {
    pub numer: BigInt,
    pub base: BigInt,
    pub exp: u64,
}

impl ExactProb {
    pub fn denominator(&self) -> BigInt {
        num_traits::pow::Pow::pow(&self.base, self.exp)
    }

    /// Reduced rational value. Cost grows with the size of the denominator.
    pub fn to_ratio(&self) -> BigRational {
        BigRational::new(self.numer.clone(), self.denominator())
    }

    pub fn ln(&self) -> f64 {
        ln_bigint(&self.numer) - self.exp as f64 * ln_bigint(&self.base)
    }

    pub fn to_f64(&self) -> f64 {
        self.ln().exp()
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    /// `self + k * other`, both over the same denominator.
    pub fn plus_scaled(&self, k: u32, other: &ExactProb) -> Result<ExactProb> {
        if self.base != other.base || self.exp != other.exp {
            return Err(Error::Inconsistent("denominators differ".into()));
        }
        Ok(ExactProb {
            numer: &self.numer + &other.numer * k,
            base: self.base.clone(),
            exp: self.exp,
        })
    }

    /// Twelve significant digits in the form `d.ddddddddddde-N`, computed
    /// exactly and rounded half up.
    pub fn to_sci_string(&self) -> String {
        if self.numer.is_zero() {
            return format!("{:.11e}", 0.0);
        }
        let den = self.denominator();
        let ten = BigInt::from(10);
        // estimate the decimal exponent, then correct by at most a step
        let mut e10 = (self.ln() / std::f64::consts::LN_10).floor() as i64;
        loop {
            let shift = 11 - e10;
            let (num, d) = if shift >= 0 {
                (&self.numer * num_traits::pow::Pow::pow(&ten, shift as u64), den.clone())
            } else {
                (self.numer.clone(), &den * num_traits::pow::Pow::pow(&ten, (-shift) as u64))
            };
            let (quot, rem) = num_integer::Integer::div_rem(&num, &d);
            if quot < BigInt::from(100_000_000_000u64) {
                e10 -= 1;
                continue;
            }
            if quot >= BigInt::from(1_000_000_000_000u64) {
                e10 += 1;
                continue;
            }
            let mut digits = quot;
            if (rem * 2u32) >= d {
                digits += 1u32;
            }
            if digits == BigInt::from(1_000_000_000_000u64) {
                digits = BigInt::from(100_000_000_000u64);
                e10 += 1;
            }
            let s = digits.to_string();
            return format!("{}.{}e{}", &s[..1], &s[1..], e10);
        }
    }
}

impl PartialOrd for ExactProb {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        if self.base == other.base && self.exp == other.exp {
            return Some(self.numer.cmp(&other.numer));
        }
        let lhs = &self.numer * other.denominator();
        let rhs = &other.numer * self.denominator();
        Some(lhs.cmp(&rhs))
    }
}

/// One reliability value in the representation of its mode.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Exact(ExactProb),
    Float(f64),
    /// Natural log of the value.
    Log(f64),
}

impl Scalar {
    pub fn ln(&self) -> f64 {
        match self {
            Scalar::Exact(e) => e.ln(),
            Scalar::Float(v) => v.ln(),
            Scalar::Log(l) => *l,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(e) => e.to_f64(),
            Scalar::Float(v) => *v,
            Scalar::Log(l) => l.exp(),
        }
    }

    /// Scientific notation with 12 significant digits. Exact values are
    /// formatted exactly; the other modes go through the logarithm so that
    /// values below the f64 range still print.
    pub fn to_sci_string(&self) -> String {
        match self {
            Scalar::Exact(e) => e.to_sci_string(),
            other => sci_from_ln(other.ln()),
        }
    }
}

fn sci_from_ln(ln: f64) -> String {
    if ln == f64::NEG_INFINITY {
        return format!("{:.11e}", 0.0);
    }
    if !ln.is_finite() {
        return format!("{ln}");
    }
    let log10 = ln / std::f64::consts::LN_10;
    let mut e10 = log10.floor();
    let mut mantissa = format!("{:.11}", 10f64.powf(log10 - e10));
    if mantissa.starts_with("10") {
        mantissa = format!("{:.11}", 1.0);
        e10 += 1.0;
    }
    format!("{mantissa}e{}", e10 as i64)
}

fn check_probability(p: &BigRational) -> Result<()> {
    if is_probability(p) {
        Ok(())
    } else {
        Err(Error::Domain(format!("p = {p} is outside [0, 1]")))
    }
}

fn exact_prob(numer: BigInt, base: &BigInt, level: u32) -> ExactProb {
    ExactProb { numer, base: base.clone(), exp: edge_count(level) }
}

pub fn psw_rel_exact(n: u32, p: &BigRational) -> Result<RelStatePsw<ExactProb>> {
    check_probability(p)?;
    check_limit("exact reliability generation", u64::from(n), u64::from(MAX_EXACT_RELIABILITY_GENERATION))?;
    let (a, b) = (p.numer().clone(), p.denom().clone());
    let mut s = RelStatePsw::initial(&a, &(&b - &a));
    for _ in 0..n {
        s = s.step();
    }
    Ok(s.map(|v| exact_prob(v, &b, n)))
}

pub fn sg_rel_exact(n: u32, p: &BigRational) -> Result<RelStateSg<ExactProb>> {
    check_probability(p)?;
    check_limit("exact reliability generation", u64::from(n), u64::from(MAX_EXACT_RELIABILITY_GENERATION))?;
    let (a, b) = (p.numer().clone(), p.denom().clone());
    let mut s = RelStateSg::initial(&a, &(&b - &a));
    for _ in 0..n {
        s = s.step();
    }
    Ok(s.map(|v| exact_prob(v, &b, n)))
}

fn check_unit_f64(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::Domain(format!("p = {p} is outside [0, 1]")))
    }
}

pub fn psw_rel_float(n: u32, p: f64) -> Result<RelStatePsw<f64>> {
    check_unit_f64(p)?;
    let mut s = RelStatePsw::initial(&p, &(1.0 - p));
    for _ in 0..n {
        s = s.step();
    }
    Ok(s)
}

pub fn sg_rel_float(n: u32, p: f64) -> Result<RelStateSg<f64>> {
    check_unit_f64(p)?;
    let mut s = RelStateSg::initial(&p, &(1.0 - p));
    for _ in 0..n {
        s = s.step();
    }
    Ok(s)
}

fn log_inputs(p: f64, q: f64) -> Result<(LogPos, LogPos)> {
    if p > 0.0 && q > 0.0 && p < 1.0 {
        Ok((LogPos(p.ln()), LogPos(q.ln())))
    } else {
        Err(Error::Domain(format!("log mode needs 0 < p < 1, got p = {p}")))
    }
}

/// Log-domain PSW state; fields are `ln R`, `ln B`. `q` is passed separately
/// so that `1 - p` keeps full precision near `p = 1`.
pub fn psw_rel_log(n: u32, p: f64, q: f64) -> Result<RelStatePsw<f64>> {
    let (lp, lq) = log_inputs(p, q)?;
    let mut s = RelStatePsw::initial(&lp, &lq);
    for _ in 0..n {
        s = s.step();
    }
    Ok(s.map(LogPos::ln))
}

pub fn sg_rel_log(n: u32, p: f64, q: f64) -> Result<RelStateSg<f64>> {
    let (lp, lq) = log_inputs(p, q)?;
    let mut s = RelStateSg::initial(&lp, &lq);
    for _ in 0..n {
        s = s.step();
    }
    Ok(s.map(LogPos::ln))
}

/// Is `p` one of the endpoints that every mode short-circuits?
fn endpoint(p: &BigRational) -> bool {
    p.is_zero() || p.is_one()
}

/// PSW reliability at generation `n` in the requested mode. `p = 0` and
/// `p = 1` are answered exactly before dispatch.
pub fn psw_reliability(n: u32, p: &BigRational, mode: Mode) -> Result<RelStatePsw<Scalar>> {
    check_probability(p)?;
    if endpoint(p) {
        // the level-0 values are already fixed points
        let s = RelStatePsw { level: n, ..psw_rel_exact(0, p)? };
        return Ok(s.map(|v| from_exact(v, mode)));
    }
    if mode == Mode::Exact {
        return Ok(psw_rel_exact(n, p)?.map(Scalar::Exact));
    }
    let (pf, qf) = (ratio_to_f64(p), ratio_to_f64(&(BigRational::one() - p)));
    Ok(match mode {
        Mode::Float => psw_rel_float(n, pf)?.map(Scalar::Float),
        _ => psw_rel_log(n, pf, qf)?.map(Scalar::Log),
    })
}

pub fn sg_reliability(n: u32, p: &BigRational, mode: Mode) -> Result<RelStateSg<Scalar>> {
    check_probability(p)?;
    if endpoint(p) {
        // fixed from level 1 on
        let s = sg_rel_exact(n.min(1), p)?;
        let s = RelStateSg { level: n, ..s };
        return Ok(s.map(|v| from_exact(v, mode)));
    }
    if mode == Mode::Exact {
        return Ok(sg_rel_exact(n, p)?.map(Scalar::Exact));
    }
    let (pf, qf) = (ratio_to_f64(p), ratio_to_f64(&(BigRational::one() - p)));
    Ok(match mode {
        Mode::Float => sg_rel_float(n, pf)?.map(Scalar::Float),
        _ => sg_rel_log(n, pf, qf)?.map(Scalar::Log),
    })
}

fn from_exact(v: ExactProb, mode: Mode) -> Scalar {
    match mode {
        Mode::Exact => Scalar::Exact(v),
        Mode::Float => Scalar::Float(v.to_f64()),
        Mode::Log => Scalar::Log(v.ln()),
    }
}

fn powi(v: &BigRational, e: u64) -> BigRational {
    num_traits::pow::Pow::pow(v, e)
}

/// Runs the Tutte-polynomial form at `x = 1`, `y = 1/(1-p)`:
/// `T1' = w T1^3 + 6 T1^2 P`, `P' = 4 T1 P^2` with `w = p/(1-p)`, then
/// `R = p^{V-1} (1-p)^{E-V+1} T1` and `B = p^{V-2} (1-p)^{E-V+2} P`.
pub fn psw_rel_via_tutte(n: u32, p: &BigRational) -> Result<(BigRational, BigRational)> {
    check_probability(p)?;
    check_limit("tutte-route generation", u64::from(n), u64::from(MAX_TUTTE_ROUTE_GENERATION))?;
    if p.is_one() {
        return Ok((BigRational::one(), BigRational::zero()));
    }
    let one = BigRational::one();
    let q = &one - p;
    let w = p / &q;
    let mut t1 = (BigRational::from_integer(3.into()) - p * BigRational::from_integer(2.into())) / &q;
    let mut pp = one;
    for _ in 0..n {
        let t1sq = &t1 * &t1;
        let next_t1 = &w * &t1sq * &t1 + &t1sq * &pp * BigRational::from_integer(6.into());
        pp = &t1 * &pp * &pp * BigRational::from_integer(4.into());
        t1 = next_t1;
    }
    let (v, e) = (vertex_count(n), edge_count(n));
    let r = powi(p, v - 1) * powi(&q, e - v + 1) * t1;
    let b = powi(p, v - 2) * powi(&q, e - v + 2) * pp;
    Ok((r, b))
}

/// The gasket analogue: `T' = w T^3 + 6 T^2 N`, `N' = w T^2 N + T^2 M + 7 T N^2`,
/// `M' = 3 w T N^2 + 12 T N M + 14 N^3`, from `(3-2p)/(1-p), 1, 1`.
pub fn sg_rel_via_tutte(n: u32, p: &BigRational) -> Result<(BigRational, BigRational, BigRational)> {
    check_probability(p)?;
    check_limit("tutte-route generation", u64::from(n), u64::from(MAX_TUTTE_ROUTE_GENERATION))?;
    if p.is_one() {
        return Ok((BigRational::one(), BigRational::zero(), BigRational::zero()));
    }
    let k = |c: i64| BigRational::from_integer(c.into());
    let q = k(1) - p;
    let w = p / &q;
    let (mut t, mut nn, mut m) = ((k(3) - p * k(2)) / &q, k(1), k(1));
    for _ in 0..n {
        let t2 = &t * &t;
        let n2 = &nn * &nn;
        let next_t = &w * &t2 * &t + &t2 * &nn * k(6);
        let next_n = &w * &t2 * &nn + &t2 * &m + &t * &n2 * k(7);
        let next_m = &w * &t * &n2 * k(3) + &t * &nn * &m * k(12) + &n2 * &nn * k(14);
        (t, nn, m) = (next_t, next_n, next_m);
    }
    let (v, e) = (vertex_count(n), edge_count(n));
    let rs = powi(p, v - 1) * powi(&q, e - v + 1) * t;
    let bs = powi(p, v - 2) * powi(&q, e - v + 2) * nn;
    let ts = powi(p, v - 3) * powi(&q, e - v + 3) * m;
    Ok((rs, bs, ts))
}

/// Baselines for the decay estimate `ln R(n) ~ 3^{n-1} ln(base)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Approx {
    /// `3^{n-1} ln(p(2-p))`
    Standard,
    /// `3^{n-1} ln(R(1) + 2 B(1))`
    LevelOne,
    /// `3^n ln(p(2-p))`, i.e. `3^{n-1} ln(R(0) + 2 B(0))^3`
    LevelZero,
}

fn approx_domain(n: u32, p: f64) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("the decay estimate needs n >= 1".into()));
    }
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain(format!("the decay estimate needs 0 < p < 1, got {p}")));
    }
    Ok(())
}

/// `3^{n-1} ln(p(2-p))`.
pub fn psw_rel_approx_log(n: u32, p: f64) -> Result<f64> {
    psw_rel_approx_log_with(n, p, Approx::Standard)
}

pub fn psw_rel_approx_log_with(n: u32, p: f64, baseline: Approx) -> Result<f64> {
    approx_domain(n, p)?;
    let scale = 3f64.powi(n as i32 - 1);
    let q = 1.0 - p;
    Ok(match baseline {
        Approx::Standard => scale * (p * (2.0 - p)).ln(),
        Approx::LevelZero => 3.0 * scale * (p * (2.0 - p)).ln(),
        Approx::LevelOne => {
            let s1 = RelStatePsw::initial(&p, &q).step();
            scale * (s1.r + 2.0 * s1.b).ln()
        }
    })
}

/// One row of the PSW versus gasket comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveRow {
    pub p: BigRational,
    pub r_psw: Scalar,
    pub r_sg: Scalar,
}

impl CurveRow {
    pub fn ln_psw(&self) -> f64 {
        self.r_psw.ln()
    }

    pub fn ln_sg(&self) -> f64 {
        self.r_sg.ln()
    }

    /// Is the gasket strictly more reliable? Exact rows compare exactly.
    pub fn sg_more_reliable(&self) -> bool {
        match (&self.r_psw, &self.r_sg) {
            (Scalar::Exact(a), Scalar::Exact(b)) => b > a,
            (a, b) => b.ln() > a.ln(),
        }
    }
}

/// Evaluates both families at generation `n` for every grid point; rows are
/// sorted by `p`.
pub fn compare_curves(n: u32, grid: &[BigRational], mode: Mode) -> Result<Vec<CurveRow>> {
    let mut rows = grid
        .par_iter()
        .map(|p| {
            Ok(CurveRow {
                p: p.clone(),
                r_psw: psw_reliability(n, p, mode)?.r,
                r_sg: sg_reliability(n, p, mode)?.rs,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by(|a, b| a.p.cmp(&b.p));
    Ok(rows)
}

pub const CSV_HEADER: &str = "p,R_psw,R_sg,lnR_psw,lnR_sg";

fn format_p(p: &BigRational) -> String {
    // round half up to four decimals, exactly
    let scaled = p * BigRational::from_integer(10_000.into());
    let rounded = (scaled + BigRational::new(1.into(), 2.into())).floor().to_integer();
    let ten_k = BigInt::from(10_000);
    let whole = &rounded / &ten_k;
    let frac: BigInt = (&rounded % &ten_k).abs();
    format!("{whole}.{frac:0>4}")
}

fn format_ln(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.6}")
    } else {
        format!("{v}")
    }
}

/// CSV in the fixed format: `p` to 4 decimals, reliabilities to 12
/// significant digits, logarithms to 6 decimals.
pub fn to_csv(rows: &[CurveRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            format_p(&row.p),
            row.r_psw.to_sci_string(),
            row.r_sg.to_sci_string(),
            format_ln(row.ln_psw()),
            format_ln(row.ln_sg()),
        ));
    }
    out
}

/// CSV with a single family; the header keeps only that family's columns.
pub fn to_csv_single(rows: &[(BigRational, Scalar)], label: &str) -> String {
    let mut out = format!("p,R_{label},lnR_{label}\n");
    for (p, v) in rows {
        out.push_str(&format!("{},{},{}\n", format_p(p), v.to_sci_string(), format_ln(v.ln())));
    }
    out
}

/// Parses `start:stop:step` (inclusive of `stop` within 1e-12) or a comma
/// separated list of values. Decimal literals are taken exactly.
pub fn parse_grid(text: &str) -> Result<Vec<BigRational>> {
    let parts: Vec<&str> = text.split(':').collect();
    let points = match parts.as_slice() {
        [single] => single
            .split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?,
        [start, stop, step] => {
            let (start, stop, step) =
                (parse_rational(start)?, parse_rational(stop)?, parse_rational(step)?);
            if !step.is_positive() {
                return Err(Error::InvalidArgument(format!("grid step must be positive, got {step}")));
            }
            if stop < start {
                return Err(Error::InvalidArgument("grid stop is below start".into()));
            }
            let tolerance = BigRational::new(1.into(), BigInt::from(10u64).pow(12));
            let count = ((&stop - &start + &tolerance) / &step).floor().to_integer();
            let count = count
                .to_usize()
                .filter(|c| *c < MAX_GRID_POINTS)
                .ok_or_else(|| Error::InvalidArgument(format!("grid has more than {MAX_GRID_POINTS} points")))?;
            (0..=count)
                .map(|k| &start + &step * BigRational::from_integer(k.into()))
                .collect()
        }
        _ => return Err(Error::Parse(format!("grid must be start:stop:step, got {text:?}"))),
    };
    if points.is_empty() || points.len() > MAX_GRID_POINTS {
        return Err(Error::InvalidArgument("grid is empty or too large".into()));
    }
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn exact_r(n: u32, p: &BigRational) -> BigRational {
        psw_rel_exact(n, p).unwrap().r.to_ratio()
    }

    #[test]
    fn psw_initial_and_steps_at_half() {
        let half = q(1, 2);
        let s0 = psw_rel_exact(0, &half).unwrap();
        assert_eq!((s0.r.to_ratio(), s0.b.to_ratio()), (q(1, 2), q(1, 8)));
        let s1 = psw_rel_exact(1, &half).unwrap();
        assert_eq!((s1.r.to_ratio(), s1.b.to_ratio()), (q(5, 16), q(1, 32)));
        let s2 = psw_rel_exact(2, &half).unwrap();
        assert_eq!((s2.r.to_ratio(), s2.b.to_ratio()), (q(25, 512), q(5, 4096)));
        let r1 = q(5, 16);
        let b1 = q(1, 32);
        assert_eq!(s2.r.to_ratio(), &r1 * &r1 * &r1 + q(6, 1) * &r1 * &r1 * &b1);
    }

    #[test]
    fn endpoints() {
        for mode in [Mode::Exact, Mode::Float, Mode::Log] {
            let one = psw_reliability(5, &q(1, 1), mode).unwrap();
            assert_eq!(one.r.to_f64(), 1.0);
            assert_eq!(one.b.to_f64(), 0.0);
            let zero = psw_reliability(5, &q(0, 1), mode).unwrap();
            assert_eq!(zero.r.to_f64(), 0.0);
            let sg = sg_reliability(5, &q(1, 1), mode).unwrap();
            assert_eq!((sg.rs.to_f64(), sg.bs.to_f64(), sg.ts.to_f64()), (1.0, 0.0, 0.0));
            let sg0 = sg_reliability(0, &q(0, 1), mode).unwrap();
            assert_eq!(sg0.ts.to_f64(), 1.0);
        }
        assert!(matches!(psw_reliability(1, &q(3, 2), Mode::Float), Err(Error::Domain(_))));
        assert!(matches!(sg_reliability(1, &q(-1, 2), Mode::Log), Err(Error::Domain(_))));
        assert_eq!(exact_r(0, &q(1, 3)), q(7, 27));
    }

    #[test]
    fn sg_values() {
        let half = q(1, 2);
        let s0 = sg_rel_exact(0, &half).unwrap();
        assert_eq!(
            (s0.rs.to_ratio(), s0.bs.to_ratio(), s0.ts.to_ratio()),
            (q(1, 2), q(1, 8), q(1, 8))
        );
        let s1 = sg_rel_exact(1, &half).unwrap();
        assert_eq!(
            (s1.rs.to_ratio(), s1.bs.to_ratio(), s1.ts.to_ratio()),
            (q(5, 16), q(15, 128), q(37, 256))
        );
        let s2 = sg_rel_exact(2, &half).unwrap();
        assert_eq!(s2.rs.to_ratio(), q(1625, 16384));
        assert!(s2.rs > psw_rel_exact(2, &half).unwrap().r);
    }

    #[test]
    fn tutte_route_matches_recursion() {
        for p in [q(1, 3), q(1, 2), q(2, 3)] {
            for n in 0..=4 {
                let (r, b) = psw_rel_via_tutte(n, &p).unwrap();
                let s = psw_rel_exact(n, &p).unwrap();
                assert_eq!(r, s.r.to_ratio());
                assert_eq!(b, s.b.to_ratio());
                let (rs, bs, ts) = sg_rel_via_tutte(n, &p).unwrap();
                let g = sg_rel_exact(n, &p).unwrap();
                assert_eq!((rs, bs, ts), (g.rs.to_ratio(), g.bs.to_ratio(), g.ts.to_ratio()));
            }
        }
        assert_eq!(psw_rel_via_tutte(3, &q(1, 1)).unwrap(), (q(1, 1), q(0, 1)));
    }

    #[test]
    fn modes_agree() {
        for p in [q(1, 10), q(1, 2), q(9, 10)] {
            for n in 0..=6 {
                let exact = psw_reliability(n, &p, Mode::Exact).unwrap();
                let log = psw_reliability(n, &p, Mode::Log).unwrap();
                let fl = psw_reliability(n, &p, Mode::Float).unwrap();
                let l = exact.r.ln();
                assert!((log.r.ln() - l).abs() <= 1e-10 * l.abs().max(1e-300));
                if l > -700.0 {
                    assert!((fl.r.ln() - l).abs() <= 1e-10 * l.abs());
                }
                let sg_exact = sg_reliability(n, &p, Mode::Exact).unwrap();
                let sg_log = sg_reliability(n, &p, Mode::Log).unwrap();
                let ls = sg_exact.ts.ln();
                assert!((sg_log.ts.ln() - ls).abs() <= 1e-10 * ls.abs());
            }
        }
    }

    #[test]
    fn level_one_sum_is_not_p_two_minus_p() {
        let half = q(1, 2);
        let s1 = psw_rel_exact(1, &half).unwrap();
        assert_eq!(s1.r.plus_scaled(2, &s1.b).unwrap().to_ratio(), q(3, 8));
        let s0 = psw_rel_exact(0, &half).unwrap();
        assert_eq!(s0.r.plus_scaled(2, &s0.b).unwrap().to_ratio(), q(3, 4));
    }

    #[test]
    fn approximation_values() {
        let v = psw_rel_approx_log(6, 0.5).unwrap();
        assert!((v - 243.0 * 0.75f64.ln()).abs() < 1e-12);
        assert!((v + 69.906).abs() < 1e-3);
        assert_eq!(psw_rel_approx_log(1, 0.5).unwrap(), 0.75f64.ln());
        assert!((psw_rel_approx_log_with(1, 0.5, Approx::LevelOne).unwrap() - 0.375f64.ln()).abs() < 1e-15);
        assert!((psw_rel_approx_log_with(2, 0.5, Approx::LevelZero).unwrap() - 9.0 * 0.75f64.ln()).abs() < 1e-12);
        assert!(psw_rel_approx_log(1 , 1.0 - 1e-15).unwrap().abs() < 1e-12);
        assert!(psw_rel_approx_log(0, 0.5).is_err());
        assert!(psw_rel_approx_log(2, 1.0).is_err());
    }

    #[test]
    fn sci_formatting() {
        let e = ExactProb { numer: 5.into(), base: 2.into(), exp: 4 };
        assert_eq!(e.to_sci_string(), "3.12500000000e-1");
        let e = ExactProb { numer: 1.into(), base: 3.into(), exp: 1 };
        assert_eq!(e.to_sci_string(), "3.33333333333e-1");
        let e = ExactProb { numer: 2.into(), base: 3.into(), exp: 1 };
        assert_eq!(e.to_sci_string(), "6.66666666667e-1");
        let e = ExactProb { numer: 1.into(), base: 1.into(), exp: 9 };
        assert_eq!(e.to_sci_string(), "1.00000000000e0");
        assert_eq!(Scalar::Log(0.3125f64.ln()).to_sci_string(), "3.12500000000e-1");
        assert_eq!(Scalar::Log(-1000.0 * std::f64::consts::LN_10).to_sci_string(), "1.00000000000e-1000");
        assert_eq!(Scalar::Float(0.0).to_sci_string(), "0.00000000000e0");
        assert_eq!(format_p(&q(1, 100)), "0.0100");
        assert_eq!(format_p(&q(99, 100)), "0.9900");
        assert_eq!(format_p(&q(1, 3)), "0.3333");
        assert_eq!(format_p(&q(1, 1)), "1.0000");
    }

    #[test]
    fn grid_parsing() {
        let g = parse_grid("0.01:0.99:0.01").unwrap();
        assert_eq!(g.len(), 99);
        assert_eq!(g[0], q(1, 100));
        assert_eq!(g[98], q(99, 100));
        assert_eq!(parse_grid("0.1,0.5").unwrap(), vec![q(1, 10), q(1, 2)]);
        assert_eq!(parse_grid("0.5:0.5:0.1").unwrap(), vec![q(1, 2)]);
        assert!(parse_grid("0.5:0.1:0.1").is_err());
        assert!(parse_grid("0.1:0.5:0").is_err());
        assert!(parse_grid("0.1:0.5").is_err());
        assert!(parse_grid("0:1:1e-9").is_err());
    }

    #[test]
    fn curves_sorted_and_ordered() {
        let grid = vec![q(9, 10), q(1, 2), q(1, 10)];
        let rows = compare_curves(1, &grid, Mode::Exact).unwrap();
        assert_eq!(rows.iter().map(|r| r.p.clone()).collect::<Vec<_>>(), vec![q(1, 10), q(1, 2), q(9, 10)]);
        for row in &rows {
            assert_eq!(row.r_psw, row.r_sg);
        }
        let rows = compare_curves(6, &grid, Mode::Log).unwrap();
        assert!(rows.iter().all(CurveRow::sg_more_reliable));
        let csv = to_csv(&rows);
        assert!(csv.starts_with("p,R_psw,R_sg,lnR_psw,lnR_sg\n0.1000,"));
        assert_eq!(csv.lines().count(), 4);
    }
}
