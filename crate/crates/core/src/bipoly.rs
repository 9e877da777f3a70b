//! Sparse bivariate polynomials in `x`, `y` with arbitrary-precision integer
//! coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::semiring::Semiring;

/// Exponent pair `(deg_x, deg_y)`.
pub type Exponents = (u32, u32);

/// Sparse polynomial in `x` and `y` over the integers.
///
/// Terms are kept in a `BTreeMap` keyed by `(deg_x, deg_y)`, so iteration and
/// serialization are lexicographic and equality of values is equality of
/// polynomials. No stored coefficient is ever zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "PolyJson", try_from = "PolyJson")]
pub struct BiPoly {
    terms: BTreeMap<Exponents, BigInt>,
}

// Operand sizes below which schoolbook multiplication wins over packing.
const SCHOOLBOOK_MAX_PAIRS: usize = 64;
const KRONECKER_MAX_FILL: usize = 4;

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, dx: u32, dy: u32) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((dx, dy), c);
        }
        Self { terms }
    }

    pub fn x() -> Self {
        Self::monomial(1, 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(1, 0, 1)
    }

    /// `x - 1`
    pub fn x_minus_one() -> Self {
        Self::from_terms([((1, 0), BigInt::one()), ((0, 0), -BigInt::one())])
    }

    /// `y - 1`
    pub fn y_minus_one() -> Self {
        Self::from_terms([((0, 1), BigInt::one()), ((0, 0), -BigInt::one())])
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs. Repeated
    /// exponents are summed and zero results dropped.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponents, BigInt)>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (Exponents, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, dx: u32, dy: u32) -> BigInt {
        self.terms.get(&(dx, dy)).cloned().unwrap_or_default()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Maximal `x` and `y` exponents present.
    pub fn degrees(&self) -> Result<(u32, u32)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.max_degrees())
    }

    fn max_degrees(&self) -> (u32, u32) {
        self.terms
            .keys()
            .fold((0, 0), |(mx, my), &(dx, dy)| (mx.max(dx), my.max(dy)))
    }

    fn add_term(&mut self, e: Exponents, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Multiplies every coefficient by `k`.
    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        Semiring::pow(self, exp)
    }

    pub(crate) fn mul_schoolbook(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&(ax, ay), ac) in &self.terms {
            for (&(bx, by), bc) in &other.terms {
                out.add_term((ax + bx, ay + by), ac * bc);
            }
        }
        out
    }

    /// Kronecker substitution: both operands are packed into single big
    /// integers with one fixed-width slot per exponent pair, multiplied once,
    /// and unpacked. Each slot holds a signed coefficient whose magnitude is
    /// bounded by `min(len) * max|a| * max|b|` and is biased by half the slot
    /// range so that unpacking never sees borrows.
    pub(crate) fn mul_kronecker(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let (ax, ay) = self.max_degrees();
        let (bx, by) = other.max_degrees();
        let stride = (ay + by + 1) as usize;
        let slots = (ax + bx + 1) as usize * stride;

        let max_bits = |p: &Self| p.terms.values().map(|c| c.bits()).max().unwrap_or(0);
        let len_bits = u64::from(usize::BITS - self.len().min(other.len()).leading_zeros());
        let bound_bits = max_bits(self) + max_bits(other) + len_bits;
        // w - 1 >= bound_bits + 1, rounded up to whole 32-bit digits
        let width = (bound_bits + 2).div_ceil(32) as usize;

        let pa = self.pack(stride, width);
        let pb = other.pack(stride, width);
        let product = pa * pb;

        let top = 1u32 << 31;
        let mut bias = vec![0u32; slots * width];
        for s in 0..slots {
            bias[s * width + width - 1] = top;
        }
        let biased = product + BigInt::from(BigUint::new(bias));
        let (sign, mut digits) = biased.to_u32_digits();
        debug_assert!(sign != Sign::Minus);
        digits.resize(slots * width, 0);

        let half = BigUint::one() << (32 * width - 1);
        let mut terms = BTreeMap::new();
        for (s, chunk) in digits.chunks(width).enumerate() {
            let hi = chunk[width - 1];
            if hi == top && chunk[..width - 1].iter().all(|&d| d == 0) {
                continue;
            }
            let coeff = if hi >= top {
                let mut v = chunk.to_vec();
                v[width - 1] -= top;
                BigInt::from_biguint(Sign::Plus, BigUint::new(v))
            } else {
                let mag = &half - BigUint::new(chunk.to_vec());
                BigInt::from_biguint(Sign::Minus, mag)
            };
            let e = ((s / stride) as u32, (s % stride) as u32);
            terms.insert(e, coeff);
        }
        Self { terms }
    }

    fn pack(&self, stride: usize, width: usize) -> BigInt {
        let (dx, _) = self.max_degrees();
        let len = (dx as usize + 1) * stride * width;
        let mut pos = vec![0u32; len];
        let mut neg = vec![0u32; len];
        for (&(ex, ey), c) in &self.terms {
            let at = (ex as usize * stride + ey as usize) * width;
            let (sign, digits) = c.to_u32_digits();
            let dst = if sign == Sign::Minus { &mut neg } else { &mut pos };
            dst[at..at + digits.len()].copy_from_slice(&digits);
        }
        BigInt::from(BigUint::new(pos)) - BigInt::from(BigUint::new(neg))
    }

    fn multiply(&self, other: &Self) -> Self {
        let pairs = self.len().saturating_mul(other.len());
        if pairs <= SCHOOLBOOK_MAX_PAIRS {
            return self.mul_schoolbook(other);
        }
        let (ax, ay) = self.max_degrees();
        let (bx, by) = other.max_degrees();
        let slots = (ax + bx + 1) as usize * (ay + by + 1) as usize;
        if slots <= pairs.saturating_mul(KRONECKER_MAX_FILL) {
            self.mul_kronecker(other)
        } else {
            self.mul_schoolbook(other)
        }
    }

    /// Exact quotient by `(x - 1)^k`, via `k` rounds of synthetic division in
    /// `x` with coefficients in `Z[y]`.
    pub fn div_exact_xminus1(&self, k: u32) -> Result<Self> {
        let mut cur = self.clone();
        for _ in 0..k {
            cur = cur.div_xminus1_once().ok_or(Error::NonDivisible { power: k })?;
        }
        Ok(cur)
    }

    fn div_xminus1_once(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (dx, _) = self.max_degrees();
        if dx == 0 {
            return None;
        }
        let mut cols: Vec<BTreeMap<u32, BigInt>> = vec![BTreeMap::new(); dx as usize + 1];
        for (&(ex, ey), c) in &self.terms {
            cols[ex as usize].insert(ey, c.clone());
        }
        // q_{d-1} = a_d, q_{i-1} = a_i + q_i, remainder a_0 + q_0
        let mut quotient: Vec<BTreeMap<u32, BigInt>> = vec![BTreeMap::new(); dx as usize];
        let mut carry: BTreeMap<u32, BigInt> = BTreeMap::new();
        for i in (1..=dx as usize).rev() {
            add_univariate(&mut carry, &cols[i]);
            quotient[i - 1] = carry.clone();
        }
        add_univariate(&mut carry, &cols[0]);
        if !carry.is_empty() {
            return None;
        }
        let mut terms = BTreeMap::new();
        for (ex, col) in quotient.into_iter().enumerate() {
            for (ey, c) in col {
                terms.insert((ex as u32, ey), c);
            }
        }
        Some(Self { terms })
    }

    /// Exact value at a rational point. All powers are taken over a common
    /// denominator so only one reduction happens at the end.
    pub fn eval_exact(&self, x: &BigRational, y: &BigRational) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        let (mx, my) = self.max_degrees();
        let xn = powers(x.numer(), mx);
        let xd = powers(x.denom(), mx);
        let yn = powers(y.numer(), my);
        let yd = powers(y.denom(), my);
        let mut acc = BigInt::zero();
        for (&(ex, ey), c) in &self.terms {
            let (ex, ey) = (ex as usize, ey as usize);
            let term = c * &xn[ex] * &xd[mx as usize - ex] * &yn[ey] * &yd[my as usize - ey];
            acc += term;
        }
        let denom = &xd[mx as usize] * &yd[my as usize];
        BigRational::new(acc, denom)
    }

    /// Exact value at an integer point.
    pub fn eval_integer(&self, x: &BigInt, y: &BigInt) -> BigInt {
        let (mx, my) = self.max_degrees();
        let xp = powers(x, mx);
        let yp = powers(y, my);
        self.terms
            .iter()
            .map(|(&(ex, ey), c)| c * &xp[ex as usize] * &yp[ey as usize])
            .sum()
    }

    pub fn all_coefficients_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("polynomial serializes")
    }
}

fn powers(base: &BigInt, max: u32) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(max as usize + 1);
    out.push(BigInt::one());
    for i in 0..max as usize {
        let next = &out[i] * base;
        out.push(next);
    }
    out
}

fn add_univariate(acc: &mut BTreeMap<u32, BigInt>, other: &BTreeMap<u32, BigInt>) {
    for (e, c) in other {
        let slot = acc.entry(*e).or_default();
        *slot += c;
        if slot.is_zero() {
            acc.remove(e);
        }
    }
}

impl Add<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let (mut out, other) = if self.len() >= rhs.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Mul<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        self.multiply(rhs)
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $m(self, rhs: BiPoly) -> BiPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $m(self, rhs: &BiPoly) -> BiPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<BiPoly> for &BiPoly {
            type Output = BiPoly;
            fn $m(self, rhs: BiPoly) -> BiPoly {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        -&self
    }
}

impl Semiring for BiPoly {
    fn empty_sum() -> Self {
        BiPoly::zero()
    }
    fn empty_product() -> Self {
        BiPoly::one()
    }
    fn from_u64(value: u64) -> Self {
        BiPoly::constant(value)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn scaled(&self, k: u64) -> Self {
        self.scale(&BigInt::from(k))
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (&(dx, dy), c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let mut factors = Vec::new();
            if !mag.is_one() || (dx == 0 && dy == 0) {
                factors.push(mag.to_string());
            }
            match dx {
                0 => {}
                1 => factors.push("x".into()),
                _ => factors.push(format!("x^{dx}")),
            }
            match dy {
                0 => {}
                1 => factors.push("y".into()),
                _ => factors.push(format!("y^{dy}")),
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

/// Wire form: `{ "terms": [ { "dx": .., "dy": .., "coeff": "<decimal>" } ] }`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolyJson {
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermJson {
    pub dx: u32,
    pub dy: u32,
    pub coeff: String,
}

impl From<BiPoly> for PolyJson {
    fn from(p: BiPoly) -> Self {
        PolyJson {
            terms: p
                .terms
                .into_iter()
                .map(|((dx, dy), c)| TermJson {
                    dx,
                    dy,
                    coeff: c.to_string(),
                })
                .collect(),
        }
    }
}

impl TryFrom<PolyJson> for BiPoly {
    type Error = Error;
    fn try_from(j: PolyJson) -> Result<Self> {
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in j.terms {
            let c = BigInt::from_str(&t.coeff)
                .map_err(|e| Error::Parse(format!("coefficient {:?}: {e}", t.coeff)))?;
            terms.push(((t.dx, t.dy), c));
        }
        Ok(BiPoly::from_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(terms: &[((u32, u32), i64)]) -> BiPoly {
        BiPoly::from_terms(terms.iter().map(|&(e, c)| (e, BigInt::from(c))))
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn triangle() -> BiPoly {
        p(&[((2, 0), 1), ((1, 0), 1), ((0, 1), 1)])
    }

    #[test]
    fn add_examples() {
        let y2 = p(&[((0, 1), 1), ((0, 0), 2)]);
        assert_eq!(&y2 + &BiPoly::x_minus_one(), p(&[((1, 0), 1), ((0, 1), 1), ((0, 0), 1)]));
        assert_eq!(&y2 + &BiPoly::zero(), y2);
        let one_minus_x = -BiPoly::x_minus_one();
        let s = &BiPoly::x_minus_one() + &one_minus_x;
        assert!(s.is_zero());
        assert_eq!(s.len(), 0);
    }

    #[test]
    fn mul_examples() {
        let xm1 = BiPoly::x_minus_one();
        assert_eq!(&xm1 * &xm1, p(&[((2, 0), 1), ((1, 0), -2), ((0, 0), 1)]));
        let y2 = p(&[((0, 1), 1), ((0, 0), 2)]);
        assert_eq!(&y2 * &BiPoly::one(), y2);
        let cube = y2.pow(3);
        assert_eq!(cube.coeff(0, 3), BigInt::from(1));
        assert_eq!(cube.coeff(0, 0), BigInt::from(8));
        assert_eq!(cube.coeff(0, 2), BigInt::from(6));
        assert_eq!(cube.coeff(0, 1), BigInt::from(12));
    }

    #[test]
    fn div_examples() {
        let sq = BiPoly::x_minus_one().pow(2);
        assert_eq!(sq.div_exact_xminus1(2).unwrap(), BiPoly::one());
        assert_eq!(BiPoly::x_minus_one().div_exact_xminus1(1).unwrap(), BiPoly::one());
        assert_eq!(
            triangle().div_exact_xminus1(1),
            Err(Error::NonDivisible { power: 1 })
        );
        assert_eq!(BiPoly::y().div_exact_xminus1(1), Err(Error::NonDivisible { power: 1 }));
        assert!(BiPoly::zero().div_exact_xminus1(3).unwrap().is_zero());
    }

    #[test]
    fn eval_examples() {
        let t = triangle();
        assert_eq!(t.eval_exact(&q(1, 1), &q(1, 1)), q(3, 1));
        assert_eq!(t.eval_exact(&q(2, 1), &q(2, 1)), q(8, 1));
        assert_eq!(t.eval_exact(&q(2, 1), &q(0, 1)), q(6, 1));
        assert_eq!(t.eval_exact(&q(1, 2), &q(-1, 3)), q(1, 4) + q(1, 2) - q(1, 3));
        assert_eq!(t.eval_integer(&BigInt::from(2), &BigInt::from(0)), BigInt::from(6));
    }

    #[test]
    fn degree_examples() {
        assert_eq!(triangle().degrees(), Ok((2, 1)));
        assert_eq!(p(&[((0, 1), 1), ((0, 0), 2)]).degrees(), Ok((0, 1)));
        assert_eq!(BiPoly::zero().degrees(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(triangle().to_string(), "x^2 + x + y");
        assert_eq!(BiPoly::x_minus_one().to_string(), "x - 1");
        assert_eq!(p(&[((1, 2), -3)]).to_string(), "-3*x*y^2");
        assert_eq!(BiPoly::zero().to_string(), "0");
    }

    #[test]
    fn json_is_sorted_with_string_coefficients() {
        let big = BigInt::from(10).pow(40u32);
        let poly = BiPoly::from_terms([((0, 1), big.clone()), ((2, 0), BigInt::from(-1))]);
        let s = serde_json::to_string(&poly).unwrap();
        assert_eq!(
            s,
            format!(r#"{{"terms":[{{"dx":0,"dy":1,"coeff":"{big}"}},{{"dx":2,"dy":0,"coeff":"-1"}}]}}"#)
        );
        let back: BiPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, poly);
        assert!(serde_json::from_str::<BiPoly>(r#"{"terms":[{"dx":0,"dy":0,"coeff":"1.5"}]}"#).is_err());
    }

    #[test]
    fn kronecker_matches_schoolbook_on_large_signed_operands() {
        let a = BiPoly::x_minus_one().pow(12) * (BiPoly::y() + BiPoly::constant(-3)).pow(9);
        let b = (BiPoly::x() + BiPoly::y() + BiPoly::constant(-7)).pow(10);
        assert_eq!(a.mul_kronecker(&b), a.mul_schoolbook(&b));
        let neg = -&a;
        assert_eq!(neg.mul_kronecker(&b), neg.mul_schoolbook(&b));
    }

    fn arb_poly() -> impl Strategy<Value = BiPoly> {
        prop::collection::vec(((0u32..6, 0u32..6), -50i64..50), 0..12)
            .prop_map(|ts| BiPoly::from_terms(ts.into_iter().map(|(e, c)| (e, BigInt::from(c)))))
    }

    fn arb_wide_poly() -> impl Strategy<Value = BiPoly> {
        prop::collection::vec(((0u32..9, 0u32..9), any::<i64>(), 0u32..4), 0..40).prop_map(|ts| {
            BiPoly::from_terms(
                ts.into_iter()
                    .map(|(e, c, k)| (e, BigInt::from(c) * BigInt::from(c).pow(k))),
            )
        })
    }

    fn arb_rational() -> impl Strategy<Value = BigRational> {
        (-20i64..20, 1i64..12).prop_map(|(n, d)| q(n, d))
    }

    fn canonical(p: &BiPoly) -> bool {
        p.terms().all(|(_, c)| !c.is_zero())
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!(canonical(&(&a * &b)) && canonical(&(&a - &b)) && canonical(&(&a + &c)));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn kronecker_agrees_with_schoolbook(a in arb_wide_poly(), b in arb_wide_poly()) {
            let k = a.mul_kronecker(&b);
            prop_assert!(canonical(&k));
            prop_assert_eq!(k, a.mul_schoolbook(&b));
        }

        #[test]
        fn division_inverts_multiplication(qp in arb_poly(), k in 1u32..5) {
            let a = &qp * &BiPoly::x_minus_one().pow(k);
            prop_assert_eq!(a.div_exact_xminus1(k).unwrap(), qp);
        }

        #[test]
        fn evaluation_is_multiplicative(a in arb_poly(), b in arb_poly(), x in arb_rational(), y in arb_rational()) {
            let lhs = (&a * &b).eval_exact(&x, &y);
            prop_assert_eq!(lhs, a.eval_exact(&x, &y) * b.eval_exact(&x, &y));
        }

        #[test]
        fn json_roundtrip(a in arb_wide_poly()) {
            let s = serde_json::to_string(&a).unwrap();
            prop_assert_eq!(serde_json::from_str::<BiPoly>(&s).unwrap(), a);
        }
    }
}
