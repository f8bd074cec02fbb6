//! Exact Laurent series in `t = q^(1/2)` over big rationals.
//!
//! Every exponent is stored as an integer count of halves of a power of `q`
//! (equivalently, a power of `t`). A series optionally carries a truncation
//! bound `trunc`: coefficients at exponents `>= trunc` are unknown and never
//! stored. Arithmetic propagates truncation pessimistically so that a result
//! never claims more precision than its inputs justify.
//!
//! The q-gadgets used throughout the crate live here too: q-Pochhammer
//! symbols, q-integers, q-factorials and the superfactorial `F_q`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exponent of `q` measured in halves: `q^e` has `twice() == 2e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HalfExp(pub i64);

impl HalfExp {
    /// The integer power `q^e`.
    pub const fn int(e: i64) -> Self {
        HalfExp(2 * e)
    }

    pub const fn from_twice(twice: i64) -> Self {
        HalfExp(twice)
    }

    pub const fn twice(self) -> i64 {
        self.0
    }

    pub const fn is_integral(self) -> bool {
        self.0 % 2 == 0
    }

    /// Returns `Some(e)` when this is the integer exponent `e`.
    pub fn as_int(self) -> Option<i64> {
        self.is_integral().then_some(self.0 / 2)
    }
}

impl Add for HalfExp {
    type Output = HalfExp;
    fn add(self, rhs: HalfExp) -> HalfExp {
        HalfExp(self.0 + rhs.0)
    }
}

impl Neg for HalfExp {
    type Output = HalfExp;
    fn neg(self) -> HalfExp {
        HalfExp(-self.0)
    }
}

impl fmt::Display for HalfExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integral() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Exact Laurent polynomial (or truncated Laurent series) in `t = q^(1/2)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentSeries {
    terms: BTreeMap<i64, BigRational>,
    trunc: Option<i64>,
}

impl LaurentSeries {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * t^twice`.
    pub fn monomial(c: BigRational, twice: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(twice, c);
        }
        LaurentSeries { terms, trunc: None }
    }

    /// `q^e` for an exponent on the half grid.
    pub fn q_pow(e: HalfExp) -> Self {
        Self::monomial(BigRational::one(), e.twice())
    }

    /// `q^e` for an integer exponent.
    pub fn q_int_pow(e: i64) -> Self {
        Self::monomial(BigRational::one(), 2 * e)
    }

    /// `1 + c * t^twice`, the building block of every product formula here.
    pub fn binomial(c: i64, twice: i64) -> Self {
        Self::one() + Self::monomial(rat(c), twice)
    }

    /// Builds a series from `(twice_exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, BigRational)>,
    {
        let mut map: BTreeMap<i64, BigRational> = BTreeMap::new();
        for (e, c) in terms {
            *map.entry(e).or_insert_with(BigRational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        LaurentSeries { terms: map, trunc: None }
    }

    /// Integer coefficients listed from exponent `q^0` upward on the integer grid.
    pub fn from_q_coeffs(coeffs: &[i64]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(i, &c)| (2 * i as i64, rat(c))))
    }

    pub fn trunc(&self) -> Option<i64> {
        self.trunc
    }

    pub fn is_exact(&self) -> bool {
        self.trunc.is_none()
    }

    /// Drops everything at or above `t^twice` and records the bound.
    pub fn truncate(mut self, twice: i64) -> Self {
        let bound = self.trunc.map_or(twice, |t| t.min(twice));
        self.terms.retain(|&e, _| e < bound);
        self.trunc = Some(bound);
        self
    }

    /// Forgets the truncation bound. Only meaningful when the caller knows the
    /// stored terms are the full value.
    pub fn into_exact(mut self) -> Self {
        self.trunc = None;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest stored exponent (in halves).
    pub fn valuation(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Highest stored exponent (in halves).
    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn coeff(&self, twice: i64) -> BigRational {
        self.terms.get(&twice).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    /// True when every stored exponent is an integer power of `q`.
    pub fn is_integral_grid(&self) -> bool {
        self.terms.keys().all(|e| e % 2 == 0)
    }

    /// True when every coefficient is an integer.
    pub fn has_integer_coeffs(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Multiplies by `t^twice`.
    pub fn shift(&self, twice: i64) -> Self {
        LaurentSeries {
            terms: self.terms.iter().map(|(e, c)| (e + twice, c.clone())).collect(),
            trunc: self.trunc.map(|t| t + twice),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentSeries {
            terms: self.terms.iter().map(|(&e, v)| (e, v * c)).collect(),
            trunc: self.trunc,
        }
    }

    /// Substitutes `t -> t^factor` (factor > 0).
    pub fn stretch(&self, factor: i64) -> Self {
        assert!(factor > 0, "stretch factor must be positive");
        LaurentSeries {
            terms: self.terms.iter().map(|(&e, c)| (e * factor, c.clone())).collect(),
            trunc: self.trunc.map(|t| t * factor),
        }
    }

    /// Inverse of [`stretch`](Self::stretch); fails if some exponent is not a
    /// multiple of `factor`.
    pub fn unstretch(&self, factor: i64) -> Result<Self> {
        assert!(factor > 0, "stretch factor must be positive");
        if self.terms.keys().any(|e| e % factor != 0) {
            return Err(Error::OffGrid);
        }
        Ok(LaurentSeries {
            terms: self.terms.iter().map(|(&e, c)| (e / factor, c.clone())).collect(),
            // Unknown region starts at the first multiple of `factor` at or above trunc.
            trunc: self.trunc.map(|t| t.div_euclid(factor) + i64::from(t.rem_euclid(factor) != 0)),
        })
    }

    /// Smallest exponent that is either stored or unknown; `None` for exact zero.
    fn order_bound(&self) -> Option<i64> {
        self.valuation().or(self.trunc)
    }

    /// Product, additionally cut off at `t^limit` when given.
    pub fn mul_trunc(&self, other: &Self, limit: Option<i64>) -> Self {
        let mut bound = limit;
        let mut tighten = |b: i64| bound = Some(bound.map_or(b, |x: i64| x.min(b)));
        if let Some(ta) = self.trunc {
            match other.order_bound() {
                Some(vb) => tighten(ta + vb),
                None => return Self::zero(),
            }
        }
        if let Some(tb) = other.trunc {
            match self.order_bound() {
                Some(va) => tighten(tb + va),
                None => return Self::zero(),
            }
        }
        if self.is_zero() || other.is_zero() {
            return LaurentSeries { terms: BTreeMap::new(), trunc: bound };
        }
        let lo = self.valuation().unwrap() + other.valuation().unwrap();
        let mut hi = self.degree().unwrap() + other.degree().unwrap();
        if let Some(b) = bound {
            hi = hi.min(b - 1);
        }
        if hi < lo {
            return LaurentSeries { terms: BTreeMap::new(), trunc: bound };
        }
        let span = (hi - lo + 1) as usize;
        let mut acc: Vec<BigRational> = vec![BigRational::zero(); span];
        for (&ea, ca) in &self.terms {
            for (&eb, cb) in &other.terms {
                let e = ea + eb;
                if e > hi {
                    break;
                }
                acc[(e - lo) as usize] += ca * cb;
            }
        }
        let terms = acc
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (lo + i as i64, c))
            .collect();
        LaurentSeries { terms, trunc: bound }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Sum of coefficients, i.e. the value at `q = 1`.
    pub fn eval_at_one(&self) -> Result<BigRational> {
        if self.trunc.is_some() {
            return Err(Error::Truncated);
        }
        Ok(self.terms.values().fold(BigRational::zero(), |acc, c| acc + c))
    }

    /// Equality of the two series below `t^twice` (and below both truncations).
    pub fn eq_mod(&self, other: &Self, twice: i64) -> bool {
        let diff = (self - other).truncate(twice);
        diff.is_zero()
    }

    /// Multiplicative inverse modulo `t^trunc`.
    ///
    /// The monomial `t^v` is factored out and the unit part is inverted by the
    /// usual recursion `w_j = -(1/u_0) sum_{i>=1} u_i w_{j-i}`.
    pub fn series_inv(&self, trunc: i64) -> Result<Self> {
        let v = self.valuation().ok_or(Error::ZeroDivision)?;
        // Coefficients of the unit part u(t) = t^{-v} self(t) are known below `known`.
        let known = self.trunc.map(|t| t - v);
        let mut prec = trunc + v;
        if let Some(k) = known {
            prec = prec.min(k);
        }
        let result_trunc = prec - v;
        if prec <= 0 {
            return Ok(LaurentSeries { terms: BTreeMap::new(), trunc: Some(result_trunc) });
        }
        let prec = prec as usize;
        let unit: Vec<(usize, &BigRational)> = self
            .terms
            .iter()
            .map(|(&e, c)| ((e - v) as usize, c))
            .take_while(|(i, _)| *i < prec)
            .collect();
        let inv0 = unit[0].1.recip();
        let mut w: Vec<BigRational> = Vec::with_capacity(prec);
        w.push(inv0.clone());
        for j in 1..prec {
            let mut s = BigRational::zero();
            for &(i, ui) in unit.iter().skip(1) {
                if i > j {
                    break;
                }
                if !w[j - i].is_zero() {
                    s += ui * &w[j - i];
                }
            }
            w.push(-(s * &inv0));
        }
        let terms = w
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (j as i64 - v, c))
            .collect();
        Ok(LaurentSeries { terms, trunc: Some(result_trunc) })
    }

    /// `self / other` as a series modulo `t^trunc`.
    pub fn series_div(&self, other: &Self, trunc: i64) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::ZeroDivision);
        }
        let Some(va) = self.order_bound() else {
            return Ok(Self::zero().truncate(trunc));
        };
        // Inverse terms at or above trunc - va cannot reach below trunc.
        let inv = other.series_inv(trunc - va)?;
        Ok(self.mul_trunc(&inv, Some(trunc)))
    }

    /// Exact division of Laurent polynomials; errors if the remainder is nonzero.
    pub fn div_exact(&self, other: &Self) -> Result<Self> {
        if self.trunc.is_some() || other.trunc.is_some() {
            return Err(Error::Truncated);
        }
        let vb = other.valuation().ok_or(Error::ZeroDivision)?;
        let Some(va) = self.valuation() else {
            return Ok(Self::zero());
        };
        let num = dense_from(self, va);
        let den = dense_from(other, vb);
        if num.len() < den.len() {
            return Err(Error::InexactDivision);
        }
        let quot = dense_div_exact(num, &den)?;
        let shift = va - vb;
        Ok(LaurentSeries {
            terms: quot
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i as i64 + shift, c))
                .collect(),
            trunc: None,
        })
    }

    /// `self / (1 - c t^e)` modulo `t^trunc`, for `e > 0`. Runs the geometric
    /// recursion `b_k = a_k + c b_{k-e}` instead of a general inversion.
    pub fn div_one_minus(&self, c: &BigRational, e: i64, trunc: i64) -> Result<Self> {
        if e <= 0 {
            return Err(Error::NonConvergent(format!("1 - q^({e}/2) is not invertible as a power series")));
        }
        let bound = self.trunc.map_or(trunc, |t| t.min(trunc));
        let Some(v) = self.valuation().filter(|&v| v < bound) else {
            return Ok(Self::zero().truncate(bound));
        };
        let len = (bound - v) as usize;
        let mut b: Vec<BigRational> = vec![BigRational::zero(); len];
        for (&k, a) in self.terms.range(v..bound) {
            b[(k - v) as usize] = a.clone();
        }
        let step = e as usize;
        for k in step..len {
            if !b[k - step].is_zero() {
                let add = &b[k - step] * c;
                b[k] += add;
            }
        }
        Ok(LaurentSeries {
            terms: b
                .into_iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (v + i as i64, x))
                .collect(),
            trunc: Some(bound),
        })
    }

    /// The coefficients as exact integers, if they all are.
    pub fn integer_terms(&self) -> Option<Vec<(i64, BigInt)>> {
        self.terms
            .iter()
            .map(|(&e, c)| c.is_integer().then(|| (e, c.to_integer())))
            .collect()
    }
}

/// Dense coefficient vector of `t^{-shift} a`, lowest degree first.
fn dense_from(a: &LaurentSeries, shift: i64) -> Vec<BigRational> {
    let deg = a.degree().unwrap_or(shift);
    let mut v = vec![BigRational::zero(); (deg - shift + 1) as usize];
    for (&e, c) in &a.terms {
        v[(e - shift) as usize] = c.clone();
    }
    v
}

/// Long division from the top degree. `den[0]` and `num[0]` are nonzero.
fn dense_div_exact(mut num: Vec<BigRational>, den: &[BigRational]) -> Result<Vec<BigRational>> {
    let dn = den.len() - 1;
    let qlen = num.len() - dn;
    let lead_inv = den[dn].recip();
    let mut quot = vec![BigRational::zero(); qlen];
    for k in (0..qlen).rev() {
        let c = &num[k + dn] * &lead_inv;
        if c.is_zero() {
            continue;
        }
        for (i, d) in den.iter().enumerate() {
            if !d.is_zero() {
                num[k + i] -= &c * d;
            }
        }
        quot[k] = c;
    }
    if num.iter().any(|c| !c.is_zero()) {
        return Err(Error::InexactDivision);
    }
    Ok(quot)
}

fn add_impl(a: &LaurentSeries, b: &LaurentSeries, negate_b: bool) -> LaurentSeries {
    let trunc = match (a.trunc, b.trunc) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    };
    let mut terms = a.terms.clone();
    for (&e, c) in &b.terms {
        let slot = terms.entry(e).or_insert_with(BigRational::zero);
        if negate_b {
            *slot -= c;
        } else {
            *slot += c;
        }
    }
    terms.retain(|&e, c| !c.is_zero() && trunc.is_none_or(|t| e < t));
    LaurentSeries { terms, trunc }
}

impl Add for &LaurentSeries {
    type Output = LaurentSeries;
    fn add(self, rhs: &LaurentSeries) -> LaurentSeries {
        add_impl(self, rhs, false)
    }
}

impl Sub for &LaurentSeries {
    type Output = LaurentSeries;
    fn sub(self, rhs: &LaurentSeries) -> LaurentSeries {
        add_impl(self, rhs, true)
    }
}

impl Mul for &LaurentSeries {
    type Output = LaurentSeries;
    fn mul(self, rhs: &LaurentSeries) -> LaurentSeries {
        self.mul_trunc(rhs, None)
    }
}

impl Neg for &LaurentSeries {
    type Output = LaurentSeries;
    fn neg(self) -> LaurentSeries {
        LaurentSeries {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
            trunc: self.trunc,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentSeries {
            type Output = LaurentSeries;
            fn $m(self, rhs: LaurentSeries) -> LaurentSeries {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentSeries> for LaurentSeries {
            type Output = LaurentSeries;
            fn $m(self, rhs: &LaurentSeries) -> LaurentSeries {
                (&self).$m(rhs)
            }
        }
        impl $tr<LaurentSeries> for &LaurentSeries {
            type Output = LaurentSeries;
            fn $m(self, rhs: LaurentSeries) -> LaurentSeries {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentSeries {
    type Output = LaurentSeries;
    fn neg(self) -> LaurentSeries {
        -&self
    }
}

impl std::iter::Sum for LaurentSeries {
    fn sum<I: Iterator<Item = LaurentSeries>>(iter: I) -> Self {
        iter.fold(LaurentSeries::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for LaurentSeries {
    fn product<I: Iterator<Item = LaurentSeries>>(iter: I) -> Self {
        iter.fold(LaurentSeries::one(), |a, b| a * b)
    }
}

fn fmt_q_power(f: &mut fmt::Formatter<'_>, twice: i64) -> fmt::Result {
    match twice {
        0 => Ok(()),
        2 => write!(f, "q"),
        e if e % 2 == 0 => write!(f, "q^{}", e / 2),
        e => write!(f, "q^({}/2)", e),
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (&e, c) in &self.terms {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            if e == 0 || !mag.is_one() {
                write!(f, "{}", mag)?;
            }
            fmt_q_power(f, e)?;
        }
        if let Some(t) = self.trunc {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "O(")?;
            if t == 0 {
                write!(f, "1")?;
            } else {
                fmt_q_power(f, t)?;
            }
            write!(f, ")")?;
        } else if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `"p/q"` with a positive denominator.
pub fn rational_to_string(c: &BigRational) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Invalid(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

#[derive(Serialize, Deserialize)]
struct TruncatedRepr {
    terms: Vec<(i64, String)>,
    trunc_twice: Option<i64>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum SeriesRepr {
    Exact(Vec<(i64, String)>),
    Truncated(TruncatedRepr),
}

impl Serialize for LaurentSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<(i64, String)> =
            self.terms.iter().map(|(&e, c)| (e, rational_to_string(c))).collect();
        match self.trunc {
            None => terms.serialize(serializer),
            Some(t) => TruncatedRepr { terms, trunc_twice: Some(t) }.serialize(serializer),
        }
    }
}

impl<'de> Deserialize<'de> for LaurentSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let (terms, trunc) = match SeriesRepr::deserialize(deserializer)? {
            SeriesRepr::Exact(t) => (t, None),
            SeriesRepr::Truncated(r) => (r.terms, r.trunc_twice),
        };
        let mut parsed = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            parsed.push((e, parse_rational(&c).map_err(D::Error::custom)?));
        }
        let s = LaurentSeries::from_terms(parsed);
        Ok(match trunc {
            Some(t) => s.truncate(t),
            None => s,
        })
    }
}

// ---------------------------------------------------------------------------
// q-gadgets
// ---------------------------------------------------------------------------

/// `(x; q)_s = prod_{i=0}^{s-1} (1 - q^i x)`.
pub fn pochhammer(x: &LaurentSeries, s: u32) -> LaurentSeries {
    let mut acc = LaurentSeries::one();
    for i in 0..s {
        let factor = LaurentSeries::one() - x.shift(2 * i as i64);
        acc = &acc * &factor;
    }
    acc
}

/// `(q^a; q)_s` for a monomial base, via binomial factors.
pub fn pochhammer_q_pow(a: HalfExp, s: u32) -> LaurentSeries {
    (0..s as i64)
        .map(|i| LaurentSeries::binomial(-1, a.twice() + 2 * i))
        .product()
}

/// `(q; q)_h`.
pub fn qq_pochhammer(h: u32) -> LaurentSeries {
    pochhammer_q_pow(HalfExp::int(1), h)
}

/// `[x]_q = (1 - q^x)/(1 - q)` as an exact polynomial. Only integer `x >= 0`
/// give polynomials; half-integers are rational functions of `t` and must go
/// through [`q_int_series`].
pub fn q_int(x: HalfExp) -> Result<LaurentSeries> {
    let e = x.as_int().filter(|&e| e >= 0).ok_or(Error::NonDivisible { twice: x.twice() })?;
    Ok(LaurentSeries::from_terms((0..e).map(|i| (2 * i, BigRational::one()))))
}

/// `[x]_q = (1 - t^{2x}) / (1 - t^2)` expanded modulo `t^trunc`, for any `x > 0`
/// on the half grid.
pub fn q_int_series(x: HalfExp, trunc: i64) -> Result<LaurentSeries> {
    if x.twice() <= 0 {
        return Err(Error::NonDivisible { twice: x.twice() });
    }
    if let Ok(p) = q_int(x) {
        return Ok(p.truncate(trunc));
    }
    let num = LaurentSeries::binomial(-1, x.twice());
    num.series_div(&LaurentSeries::binomial(-1, 2), trunc)
}

/// `[n]_q! = prod_{i=1}^n [i]_q`.
pub fn q_factorial(n: u32) -> LaurentSeries {
    (1..=n as i64).map(|i| q_int(HalfExp::int(i)).expect("positive integer")).product()
}

/// `F_q(l) = prod_{i=1}^{l-1} [i]_q!`.
pub fn f_q(l: u32) -> LaurentSeries {
    (1..l).map(q_factorial).product()
}

/// `n!` as a rational.
pub fn factorial(n: u32) -> BigRational {
    BigRational::from_integer((1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i)))
}

pub fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    let mut r: i64 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(coeffs: &[i64]) -> LaurentSeries {
        LaurentSeries::from_q_coeffs(coeffs)
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(q(&[1, -1]) * q(&[1, 1]), q(&[1, 0, -1]));
    }

    #[test]
    fn half_powers_multiply_to_q() {
        let t = LaurentSeries::q_pow(HalfExp(1));
        assert_eq!(&t * &t, LaurentSeries::q_int_pow(1));
    }

    #[test]
    fn truncated_product() {
        let a = q(&[1, 1]).truncate(6);
        let p = &a * &a;
        assert_eq!(p.trunc(), Some(6));
        assert!(p.eq_mod(&q(&[1, 2, 1]), 6));
        let a2 = q(&[1, 1]).truncate(4);
        let p2 = &a2 * &a2;
        assert_eq!(p2, q(&[1, 2]).truncate(4));
    }

    #[test]
    fn product_trunc_uses_valuation() {
        let a = q(&[0, 1]).truncate(6); // q + O(q^3)
        let b = q(&[0, 0, 1]).truncate(8); // q^2 + O(q^4)
        let p = &a * &b;
        // min(6 + 4, 8 + 2) = 10
        assert_eq!(p.trunc(), Some(10));
        assert_eq!(p.coeff(6), rat(1));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(q(&[1, -1]).series_inv(8).unwrap(), q(&[1, 1, 1, 1]).truncate(8));
        let inv_q = LaurentSeries::q_int_pow(1).series_inv(6).unwrap();
        assert!(inv_q.eq_mod(&LaurentSeries::q_int_pow(-1), 6));
        let p = q(&[1, -1]) * q(&[1, 0, -1]);
        assert_eq!(p.series_inv(8).unwrap(), q(&[1, 1, 2, 2]).truncate(8));
        assert_eq!(LaurentSeries::zero().series_inv(4), Err(Error::ZeroDivision));
        assert_eq!(LaurentSeries::zero().truncate(4).series_inv(4), Err(Error::ZeroDivision));
    }

    #[test]
    fn inverse_respects_input_truncation() {
        // (1 - q + O(q^2))^{-1} is only known modulo q^2.
        let a = q(&[1, -1]).truncate(4);
        let inv = a.series_inv(20).unwrap();
        assert_eq!(inv.trunc(), Some(4));
    }

    #[test]
    fn pochhammer_examples() {
        let x = LaurentSeries::q_int_pow(1);
        assert_eq!(pochhammer(&x, 2), q(&[1, -1, -1, 1]));
        assert_eq!(pochhammer(&q(&[3, 7]), 0), LaurentSeries::one());
        assert_eq!(pochhammer(&LaurentSeries::q_int_pow(4), 1), q(&[1, 0, 0, 0, -1]));
        assert_eq!(pochhammer_q_pow(HalfExp::int(1), 2), pochhammer(&x, 2));
    }

    #[test]
    fn q_integers() {
        assert_eq!(q_int(HalfExp::int(3)).unwrap(), q(&[1, 1, 1]));
        assert_eq!(q_factorial(3), q(&[1, 2, 2, 1]));
        assert_eq!(q_int(HalfExp(3)), Err(Error::NonDivisible { twice: 3 }));
        assert_eq!(q_int(HalfExp::int(0)).unwrap(), LaurentSeries::zero());
        assert_eq!(f_q(0), LaurentSeries::one());
        assert_eq!(f_q(3), q(&[1, 1])); // [1]! [2]!
    }

    #[test]
    fn half_integer_q_int_is_a_series() {
        // [3/2]_q = (1 - t^3)/(1 - t^2) = 1 + t^2 - t^3 + t^4 - t^5 + ...
        let s = q_int_series(HalfExp(3), 8).unwrap();
        let expect = LaurentSeries::from_terms(vec![(0, rat(1)), (2, rat(1)), (3, rat(-1)), (4, rat(1)), (5, rat(-1)), (6, rat(1)), (7, rat(-1))]);
        assert!(s.eq_mod(&expect, 8));
        assert_eq!(s.trunc(), Some(8));
        let back = &s * &LaurentSeries::binomial(-1, 2);
        assert!(back.eq_mod(&LaurentSeries::binomial(-1, 3), 8));
    }

    #[test]
    fn eval_at_one_examples() {
        assert_eq!(q(&[1, 2, 2, 1]).eval_at_one().unwrap(), rat(6));
        let s = LaurentSeries::q_int_pow(-1) - LaurentSeries::q_int_pow(1);
        assert_eq!(s.eval_at_one().unwrap(), rat(0));
        assert_eq!(q(&[1]).truncate(4).eval_at_one(), Err(Error::Truncated));
    }

    #[test]
    fn exact_division() {
        let a = q(&[1, 0, -1]);
        assert_eq!(a.div_exact(&q(&[1, -1])).unwrap(), q(&[1, 1]));
        assert_eq!(q(&[1, 1, 1]).div_exact(&q(&[1, 1])), Err(Error::InexactDivision));
        let lp = LaurentSeries::q_int_pow(-2) * q(&[1, 0, -1]);
        let d = LaurentSeries::q_int_pow(3) * q(&[1, 1]);
        assert_eq!(lp.div_exact(&d).unwrap(), LaurentSeries::q_int_pow(-5) * q(&[1, -1]));
    }

    #[test]
    fn json_shape() {
        let s = q(&[1, -1]);
        assert_eq!(serde_json::to_string(&s).unwrap(), r#"[[0,"1/1"],[2,"-1/1"]]"#);
        let t = s.clone().truncate(2);
        assert_eq!(serde_json::to_string(&t).unwrap(), r#"{"terms":[[0,"1/1"]],"trunc_twice":2}"#);
        let back: LaurentSeries = serde_json::from_str(r#"[[1,"3/2"],[4,"2"]]"#).unwrap();
        assert_eq!(back.coeff(1), BigRational::new(3.into(), 2.into()));
        assert_eq!(back.coeff(4), rat(2));
    }

    #[test]
    fn display() {
        let s = q(&[1, 2, 0, -1]);
        assert_eq!(s.to_string(), "1 + 2q - q^3");
        assert_eq!(LaurentSeries::q_pow(HalfExp(-1)).to_string(), "q^(-1/2)");
        assert_eq!(q(&[1, 1]).truncate(4).to_string(), "1 + q + O(q^2)");
        assert_eq!(LaurentSeries::zero().to_string(), "0");
    }

    #[test]
    fn stretch_roundtrip() {
        let s = LaurentSeries::from_terms(vec![(-1, rat(2)), (3, rat(1))]).truncate(5);
        let st = s.stretch(2);
        assert_eq!(st.trunc(), Some(10));
        assert_eq!(st.unstretch(2).unwrap(), s);
        assert_eq!(LaurentSeries::q_pow(HalfExp(1)).unstretch(2), Err(Error::OffGrid));
    }
}
