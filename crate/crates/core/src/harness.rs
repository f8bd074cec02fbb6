//! Verifiers for the q-Selberg family of identities and the parameter-grid
//! runner.
//!
//! Each verifier evaluates the two sides through different modules and
//! compares them as truncated series. Closed-form right-hand sides are built
//! with [`QProduct`], which keeps them factored until the final expansion.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::characters::{cauchy_sides, CauchyIdentity, SignedPointList};
use crate::error::{Error, Result};
use crate::jackson::{bruteforce_trunc, partition_sum_trunc, IntegrandSpec};
use crate::params;
use crate::partitions::{enum_partitions, Composition, Partition};
use crate::qexact::{binom, factorial, rat, HalfExp, LaurentSeries};
use crate::report::{ExponentUnit, VerifyReport};
use crate::schur::{principal_spec_mod, schur_at, GeomPoints};
use crate::youngbooks::{build_poset, maj_gf_trunc, ppartition_gf, DEFAULT_GUARD};

/// `coeff * t^mono * prod (1 + sign t^e) / prod (1 - t^d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QProduct {
    coeff: BigRational,
    mono: i64,
    num: Vec<(i64, i8)>,
    den: Vec<i64>,
}

impl Default for QProduct {
    fn default() -> Self {
        QProduct { coeff: BigRational::one(), mono: 0, num: Vec::new(), den: Vec::new() }
    }
}

impl QProduct {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn scalar(mut self, c: BigRational) -> Self {
        self.coeff *= c;
        self
    }

    /// Multiplies by `q^{twice/2}`.
    pub fn q_pow(mut self, twice: i64) -> Self {
        self.mono += twice;
        self
    }

    /// Multiplies by `1 + sign q^{twice/2}`.
    pub fn binomial(mut self, sign: i8, twice: i64) -> Self {
        match twice {
            0 if sign < 0 => self.coeff = BigRational::zero(),
            0 => self.coeff *= rat(2),
            _ => self.num.push((twice, sign)),
        }
        self
    }

    /// Multiplies by `[x]_q = (1 - q^x) / (1 - q)`, `x = twice / 2 >= 0`.
    pub fn q_int(mut self, twice: i64) -> Self {
        assert!(twice >= 0, "q-integer of a negative argument");
        if twice == 0 {
            self.coeff = BigRational::zero();
        } else {
            self.num.push((twice, -1));
            self.den.push(2);
        }
        self
    }

    /// Divides by `[x]_q`.
    pub fn inv_q_int(mut self, twice: i64) -> Self {
        assert!(twice > 0, "division by [0]_q");
        self.num.push((2, -1));
        self.den.push(twice);
        self
    }

    pub fn q_factorial(self, n: i64) -> Self {
        (1..=n).fold(self, |p, k| p.q_int(2 * k))
    }

    pub fn inv_q_factorial(self, n: i64) -> Self {
        (1..=n).fold(self, |p, k| p.inv_q_int(2 * k))
    }

    /// Multiplies by `F_q(l) = prod_{i=1}^{l-1} [i]_q!`.
    pub fn f_q(self, l: i64) -> Self {
        (1..l).fold(self, |p, i| p.q_factorial(i))
    }

    pub fn inv_f_q(self, l: i64) -> Self {
        (1..l).fold(self, |p, i| p.inv_q_factorial(i))
    }

    /// Multiplies by `(q;q)_h`.
    pub fn qq(mut self, h: i64) -> Self {
        self.num.extend((1..=h).map(|i| (2 * i, -1)));
        self
    }

    pub fn inv_qq(mut self, h: i64) -> Self {
        self.den.extend((1..=h).map(|i| 2 * i));
        self
    }

    pub fn times(mut self, other: QProduct) -> Self {
        self.coeff *= other.coeff;
        self.mono += other.mono;
        self.num.extend(other.num);
        self.den.extend(other.den);
        self
    }

    /// Cancels matching `1 - t^e` factors between numerator and denominator.
    fn cancel(&mut self) {
        self.den.sort_unstable();
        let mut keep = Vec::with_capacity(self.num.len());
        for &(e, sign) in &self.num {
            if sign < 0 {
                if let Ok(pos) = self.den.binary_search(&e) {
                    self.den.remove(pos);
                    continue;
                }
            }
            keep.push((e, sign));
        }
        self.num = keep;
    }

    /// The expansion modulo `t^trunc`.
    pub fn expand(&self, trunc: i64) -> Result<LaurentSeries> {
        let mut c = self.clone();
        c.cancel();
        if c.coeff.is_zero() {
            return Ok(LaurentSeries::zero().truncate(trunc));
        }
        let rel = trunc - c.mono;
        if rel <= 0 {
            return Ok(LaurentSeries::zero().truncate(trunc));
        }
        let mut acc = LaurentSeries::constant(c.coeff.clone()).truncate(rel);
        for &(e, sign) in &c.num {
            if e < rel {
                acc = acc.mul_trunc(&LaurentSeries::binomial(sign as i64, e), Some(rel));
            }
        }
        for &d in &c.den {
            acc = acc.div_one_minus(&BigRational::one(), d, rel)?;
        }
        Ok(acc.shift(c.mono))
    }
}

fn c2(n: usize) -> i64 {
    binom(n as i64, 2)
}

fn c3(n: usize) -> i64 {
    binom(n as i64, 3)
}

/// Truncation in half-steps for "modulo q^{k+1}".
pub fn trunc_for(k: u32) -> i64 {
    2 * (k as i64 + 1)
}

fn timed(start: Instant, report: VerifyReport) -> VerifyReport {
    report.with_elapsed(start.elapsed().as_millis() as u64)
}

fn check_pages(r: &Composition, s: &Composition) -> Result<()> {
    if r.len() != s.len() || r.is_empty() {
        return Err(Error::BadShape(format!("r={r} and s={s} must be nonempty with equal lengths")));
    }
    Ok(())
}

/// The q-Young-book identity: the partition-sum integral against the major
/// index generating function.
pub fn verify_qko(n: usize, r: &Composition, s: &Composition, k: u32, guard: usize) -> Result<VerifyReport> {
    let start = Instant::now();
    check_pages(r, s)?;
    let trunc = trunc_for(k);
    let f = IntegrandSpec::qko(n, r, s)?;
    let lhs = partition_sum_trunc(&f, trunc)?.scale(&(BigRational::one() / factorial(n as u32)));

    let poset = build_poset(n, r, s)?;
    let big_n = poset.size() as i64;
    let maj = maj_gf_trunc(&poset, guard, k as usize)?;
    let m = r.len();
    let mut pref = QProduct::one()
        .q_pow(2 * ((r.total() as i64 + 1) * c2(n) + m as i64 * c3(n)))
        .inv_q_factorial(big_n);
    for (&rk, &sk) in r.parts().iter().zip(s.parts()) {
        pref = pref.f_q(n as i64 + rk as i64 + sk as i64).inv_f_q(rk as i64).inv_f_q(sk as i64);
    }
    let rhs = pref.expand(trunc)?.mul_trunc(&maj, Some(trunc));
    let report = VerifyReport::compare("qko", params! {"n" => n, "r" => r, "s" => s, "K" => k, "N" => big_n}, trunc, lhs, rhs);
    Ok(timed(start, report))
}

/// `sum_λ q^{w|λ|} prod_k s_λ(1, ..., q^{n+s_k-1})` with principal
/// specializations in product form, modulo `t^trunc`.
fn principal_sum(n: usize, weight: i64, svals: &[u32], trunc: i64) -> Result<LaurentSeries> {
    let mut sum = LaurentSeries::zero().truncate(trunc);
    if weight <= 0 {
        return Err(Error::NonConvergent(format!("weight {weight} per box")));
    }
    let max = ((trunc - 1) / (2 * weight)).max(0) as u32;
    for lambda in enum_partitions(max, n) {
        let w = 2 * weight * lambda.size() as i64;
        let rel = trunc - w;
        let mut term = LaurentSeries::one().truncate(rel);
        for &sk in svals {
            term = term.mul_trunc(&principal_spec_mod(&lambda, n, sk, rel)?, Some(rel));
        }
        sum = sum + term.shift(w);
    }
    Ok(sum)
}

/// The Schur-function form of the q-Selberg integral, with the integral
/// summed over the full lattice.
pub fn verify_schur_form(n: usize, r: &Composition, s: &Composition, k: u32) -> Result<VerifyReport> {
    let start = Instant::now();
    check_pages(r, s)?;
    let trunc = trunc_for(k);
    let f = IntegrandSpec::qko(n, r, s)?;
    let lhs = bruteforce_trunc(&f, trunc)?.scale(&(BigRational::one() / factorial(n as u32)));

    let m = r.len();
    let mut pref = QProduct::one().q_pow(2 * ((r.total() as i64 + 1) * c2(n) + m as i64 * c3(n)));
    for _ in 0..n {
        pref = pref.binomial(-1, 2);
    }
    for &sk in s.parts() {
        for h in sk as i64..(n as i64 + sk as i64) {
            pref = pref.qq(h);
        }
    }
    let sum = principal_sum(n, 1 + r.total() as i64, s.parts(), trunc)?;
    let rhs = pref.expand(trunc)?.mul_trunc(&sum, Some(trunc));
    let report = VerifyReport::compare("schur-form", params! {"n" => n, "r" => r, "s" => s, "K" => k}, trunc, lhs, rhs);
    Ok(timed(start, report))
}

/// The single-integrand q-Selberg formula with `|Δ|^m`.
pub fn verify_qselberg_single(n: usize, r: u32, s: u32, m: u32, k: u32) -> Result<VerifyReport> {
    let start = Instant::now();
    if m == 0 {
        return Err(Error::Invalid("m must be at least 1".into()));
    }
    let trunc = trunc_for(k);
    let f = IntegrandSpec::single(n, r, s, m);
    let lhs = bruteforce_trunc(&f, trunc)?.scale(&(BigRational::one() / factorial(n as u32)));

    let mut pref = QProduct::one().q_pow(2 * ((r as i64 + 1) * c2(n) + m as i64 * c3(n)));
    for _ in 0..n {
        pref = pref.binomial(-1, 2);
    }
    for h in s as i64..(n as i64 + s as i64) {
        pref = pref.qq(h);
    }
    for _ in 1..m {
        for h in 1..n as i64 {
            pref = pref.qq(h);
        }
    }
    let mut svals = vec![s];
    svals.extend(std::iter::repeat_n(0, m as usize - 1));
    let sum = principal_sum(n, r as i64 + 1, &svals, trunc)?;
    let rhs = pref.expand(trunc)?.mul_trunc(&sum, Some(trunc));
    let report =
        VerifyReport::compare("qselberg", params! {"n" => n, "r" => r, "s" => s, "m" => m, "K" => k}, trunc, lhs, rhs);
    Ok(timed(start, report))
}

/// P-partitions of the staircase poset against the Schur-function product
/// formula. The denominator runs over `h = n + s_k, ..., n + r_k + s_k - 1`.
pub fn verify_ppar(n: usize, r: &Composition, s: &Composition, k: u32) -> Result<VerifyReport> {
    let start = Instant::now();
    check_pages(r, s)?;
    let trunc = trunc_for(k);
    let poset = build_poset(n, r, s)?;
    let lhs = ppartition_gf(&poset, k, None)?;

    let mut pref = QProduct::one();
    for (&rk, &sk) in r.parts().iter().zip(s.parts()) {
        let (rk, sk) = (rk as i64, sk as i64);
        for h in 1..rk {
            pref = pref.qq(h);
        }
        for h in (n as i64 + sk)..(n as i64 + rk + sk) {
            pref = pref.inv_qq(h);
        }
    }
    let weight = 1 + r.total() as i64;
    let pts: Vec<GeomPoints> = s.parts().iter().map(|&sk| GeomPoints::consecutive(0, n + sk as usize)).collect();
    let mut sum = LaurentSeries::zero().truncate(trunc);
    for lambda in enum_partitions(((trunc - 1) / (2 * weight)) as u32, n) {
        let mut term = LaurentSeries::q_int_pow(weight * lambda.size() as i64);
        for p in &pts {
            term = term * schur_at(&lambda, p)?;
        }
        sum = sum + term.truncate(trunc);
    }
    let rhs = pref.expand(trunc)?.mul_trunc(&sum, Some(trunc));
    let report = VerifyReport::compare("ppar", params! {"n" => n, "r" => r, "s" => s, "K" => k}, trunc, lhs, rhs);
    Ok(timed(start, report))
}

/// Profile-restricted P-partitions of `P_{l,r,0}`.
pub fn verify_ppar_profile(l: usize, r: u32, mu: &Partition, k: u32) -> Result<VerifyReport> {
    let start = Instant::now();
    let trunc = trunc_for(k);
    let poset = build_poset(l, &Composition::new(vec![r]), &Composition::new(vec![0]))?;
    let lhs = ppartition_gf(&poset, k, Some(mu))?;

    let mut pref = QProduct::one();
    for h in 1..r as i64 {
        pref = pref.qq(h);
    }
    for h in l as i64..(l as i64 + r as i64) {
        pref = pref.inv_qq(h);
    }
    let s_mu = schur_at(mu, &GeomPoints::consecutive(r as i64 + 1, l))?;
    let rhs = pref.expand(trunc)?.mul_trunc(&s_mu, Some(trunc));
    let report =
        VerifyReport::compare("ppar-profile", params! {"l" => l, "r" => r, "mu" => mu, "K" => k}, trunc, lhs, rhs);
    Ok(timed(start, report))
}

/// The three closed evaluations: `x^r |Δ|`, `x^r (1 - q x) |Δ|` and
/// `x^r (q x;q)_s |Δ|^2`.
pub fn verify_eval(which: u8, n: usize, r: u32, s: u32, k: u32) -> Result<VerifyReport> {
    let start = Instant::now();
    let trunc = trunc_for(k);
    let (ri, si, ni) = (r as i64, s as i64, n as i64);
    let (f, rhs) = match which {
        1 => {
            let mut p = QProduct::one().scalar(factorial(n as u32)).q_pow(2 * ((ri + 1) * c2(n) + c3(n)));
            for j in 1..ni {
                p = p.q_factorial(j);
            }
            for i in 1..=ni {
                p = p.inv_q_int(2 * (ri + i));
            }
            for i in 1..=ni {
                for j in i + 1..=ni {
                    p = p.inv_q_int(2 * (2 * ri + i + j));
                }
            }
            (IntegrandSpec::single(n, r, 0, 1), p)
        }
        2 => {
            let mut p = QProduct::one().scalar(factorial(n as u32)).q_pow(2 * ((ri + 1) * c2(n) + c3(n)));
            for j in 1..=ni {
                p = p.q_factorial(j);
            }
            p = p.q_int(2 * ((ni + 1) * ri + binom(ni + 2, 2)));
            for i in 1..=ni + 1 {
                p = p.inv_q_int(2 * (ri + i));
            }
            for i in 1..=ni + 1 {
                for j in i + 1..=ni + 1 {
                    p = p.inv_q_int(2 * (2 * ri + i + j));
                }
            }
            (IntegrandSpec::single(n, r, 1, 1), p)
        }
        3 => {
            let mut p = QProduct::one().scalar(factorial(n as u32)).q_pow(2 * ((ri + 1) * c2(n) + 2 * c3(n)));
            for j in 1..ni {
                p = p.q_factorial(j);
            }
            for j in 0..ni {
                p = p.q_factorial(si + j);
            }
            for i in 1..=ni + si {
                for j in 1..=ni {
                    p = p.inv_q_int(2 * (ri + i + j - 1));
                }
            }
            (IntegrandSpec::single(n, r, s, 2), p)
        }
        _ => return Err(Error::Invalid(format!("evaluation {which} does not exist"))),
    };
    let lhs = bruteforce_trunc(&f, trunc)?;
    let id = format!("eval{which}");
    let ps = if which == 3 { params! {"n" => n, "r" => r, "s" => s, "K" => k} } else { params! {"n" => n, "r" => r, "K" => k} };
    let report = VerifyReport::compare(&id, ps, trunc, lhs, rhs.expand(trunc)?);
    Ok(timed(start, report))
}

/// Right-hand side of a variant identity.
pub fn variant_rhs(which: u8, n: usize, r: u32, s: u32) -> Result<QProduct> {
    let (ni, ri, si) = (n as i64, r as i64, s as i64);
    let mut p = QProduct::one().scalar(factorial(n as u32)).q_pow(2 * ((ri + 1) * c2(n) + 2 * c3(n)));
    for j in 1..ni {
        p = p.q_factorial(j);
    }
    let den_rows = match which {
        1 => 2 * ni + si - 1,
        2 | 3 => 2 * ni + si,
        4 => 2 * ni + si + 1,
        _ => return Err(Error::Invalid(format!("variant {which} does not exist"))),
    };
    match which {
        1 => {
            for k in 1..=ni {
                p = p.q_factorial(si + 2 * k - 2);
            }
            for i in 1..=ni {
                for j in i + 1..=ni {
                    p = p.q_int(2 * (2 * ni + 2 * ri + si + i + j - 2));
                }
            }
        }
        2 => {
            for k in 1..=ni {
                // (1 + q^{s/2+k-1/2}) and [n+r+s/2+k-1/2]_q
                p = p.q_factorial(si + 2 * k - 2).binomial(1, si + 2 * k - 1).q_int(2 * (ni + ri + k) + si - 1);
            }
            for i in 1..=ni {
                for j in i + 1..=ni {
                    p = p.q_int(2 * (2 * ni + 2 * ri + si + i + j - 1));
                }
            }
        }
        3 => {
            for k in 1..=ni {
                // [s/2+k-1/2]_q and (1 + q^{n+r+s/2+k-1/2})
                p = p.q_factorial(si + 2 * k - 2).q_int(si + 2 * k - 1).binomial(1, 2 * (ni + ri + k) + si - 1);
            }
            for i in 1..=ni {
                for j in i + 1..=ni {
                    p = p.q_int(2 * (2 * ni + 2 * ri + si + i + j - 1));
                }
            }
        }
        _ => {
            for k in 1..=ni {
                p = p.q_factorial(si + 2 * k - 1);
            }
            for i in 1..=ni {
                for j in i..=ni {
                    p = p.q_int(2 * (2 * ni + 2 * ri + si + i + j));
                }
            }
        }
    }
    for i in 1..=den_rows {
        for j in 1..=ni {
            p = p.inv_q_int(2 * (ri + i + j - 1));
        }
    }
    Ok(p)
}

/// The four variants, compared modulo `t^{2k+1}`.
pub fn verify_variant(which: u8, n: usize, r: u32, s: u32, k: u32) -> Result<VerifyReport> {
    let start = Instant::now();
    let trunc = 2 * k as i64 + 1;
    let f = IntegrandSpec::variant(which, n, r, s)?;
    let lhs = bruteforce_trunc(&f, trunc)?;
    let rhs = variant_rhs(which, n, r, s)?.expand(trunc)?;
    let id = format!("variant{which}");
    let report = VerifyReport::compare(&id, params! {"n" => n, "r" => r, "s" => s, "K" => k}, trunc, lhs, rhs);
    Ok(timed(start, report))
}

/// Exponent `c` of the cross factor `1 - q^c x_i y_j` in the two-block
/// integrand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CrossExponent {
    /// `c = l + 1`, the exponent produced by the generalized Schur function.
    #[default]
    Shifted,
    /// `c = l`.
    Plain,
}

impl CrossExponent {
    pub fn twice(self, l: u32) -> i64 {
        match self {
            CrossExponent::Shifted => 2 * (l as i64 + 1),
            CrossExponent::Plain => 2 * l as i64,
        }
    }
}

pub fn rational_rhs(n: usize, m: usize, l: u32, r: u32, s: u32) -> QProduct {
    let (ni, mi, li, ri, si) = (n as i64, m as i64, l as i64, r as i64, s as i64);
    let big_n = ni + mi + li;
    let mut p = QProduct::one()
        .scalar(factorial(n as u32) * factorial(m as u32))
        .q_pow(2 * ((ri + 1) * c2(n) + (si + 1) * c2(m) + 2 * c3(n) + 2 * c3(m)));
    for k in 1..big_n {
        p = p.q_factorial(k);
    }
    for k in 1..ni {
        p = p.q_factorial(k);
    }
    for k in 1..mi {
        p = p.q_factorial(k);
    }
    for k in 1..li {
        p = p.inv_q_factorial(k);
    }
    for i in 1..=ni {
        for j in 1..=mi {
            p = p.q_int(2 * (big_n + ri + si + i + j - 1));
        }
    }
    for k in 1..=big_n {
        for i in 1..=ni {
            p = p.inv_q_int(2 * (ri + i + k - 1));
        }
        for j in 1..=mi {
            p = p.inv_q_int(2 * (si + j + k - 1));
        }
    }
    p
}

/// The two-block integral (partition-sum form) against its product formula.
pub fn verify_rational(n: usize, m: usize, l: u32, r: u32, s: u32, k: u32, cross: CrossExponent) -> Result<VerifyReport> {
    let start = Instant::now();
    if n + m + l as usize == 0 {
        return Err(Error::Invalid("n + m + l must be positive".into()));
    }
    let trunc = trunc_for(k);
    let g = IntegrandSpec::rational(n, m, l, r, s, cross.twice(l));
    let lhs = partition_sum_trunc(&g, trunc)?;
    let rhs = rational_rhs(n, m, l, r, s).expand(trunc)?;
    let mut ps = params! {"n" => n, "m" => m, "l" => l, "r" => r, "s" => s, "K" => k};
    if cross == CrossExponent::Plain {
        ps.insert("cross".into(), serde_json::json!("plain"));
    }
    Ok(timed(start, VerifyReport::compare("rational", ps, trunc, lhs, rhs)))
}

/// Where the x points of a Cauchy-type check sit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PointStyle {
    /// `x_i = q^{N-i+1/2}`, `u_j = q^{N+j-1/2}`.
    #[default]
    Half,
    /// `x_i = q^{N-i+1}`, `u_j = q^{N+j}`.
    Int,
}

impl fmt::Display for PointStyle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PointStyle::Half => "half",
            PointStyle::Int => "int",
        })
    }
}

/// A Cauchy-type identity at staircase specializations. The rational
/// identity always uses `x = (1, q, ..., q^{N-1})`, `u_i = q^i`,
/// `v_j = q^{N+j-1}`.
pub fn verify_cauchy_classical(
    which: CauchyIdentity,
    big_n: usize,
    n: usize,
    m: usize,
    k: u32,
    style: PointStyle,
) -> Result<VerifyReport> {
    let start = Instant::now();
    let bn = big_n as i64;
    let (xs, us, vs) = if which == CauchyIdentity::Rational {
        (
            (0..bn).map(HalfExp::int).collect::<Vec<_>>(),
            (1..=n as i64).map(HalfExp::int).collect::<Vec<_>>(),
            (1..=m as i64).map(|j| HalfExp::int(bn + j - 1)).collect::<Vec<_>>(),
        )
    } else {
        if m != 0 {
            return Err(Error::Invalid(format!("{} takes no second block", which.id())));
        }
        let off = if style == PointStyle::Half { -1 } else { 0 };
        (
            (1..=bn).map(|i| HalfExp::from_twice(2 * (bn - i + 1) + off)).collect(),
            (1..=n as i64).map(|j| HalfExp::from_twice(2 * (bn + j) + off)).collect(),
            Vec::new(),
        )
    };
    let sides = cauchy_sides(which, &SignedPointList::new(xs), &us, &vs, k)?;
    let mut ps = params! {"N" => big_n, "n" => n, "K" => k};
    if which == CauchyIdentity::Rational {
        ps.insert("m".into(), serde_json::json!(m));
    } else {
        ps.insert("points".into(), serde_json::json!(style.to_string()));
    }
    let report = match (sides.lhs.unstretch(2), sides.rhs.unstretch(2)) {
        (Ok(l), Ok(r)) => VerifyReport::compare(which.id(), ps, sides.trunc / 2, l, r),
        _ => VerifyReport::compare(which.id(), ps, sides.trunc, sides.lhs, sides.rhs).with_unit(ExponentUnit::QuarterQ),
    };
    Ok(timed(start, report))
}

/// One concrete verification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "identity", rename_all = "kebab-case")]
pub enum Check {
    Qko { n: usize, r: Composition, s: Composition, k: u32 },
    SchurForm { n: usize, r: Composition, s: Composition, k: u32 },
    Qselberg { n: usize, r: u32, s: u32, m: u32, k: u32 },
    Ppar { n: usize, r: Composition, s: Composition, k: u32 },
    PparProfile { l: usize, r: u32, mu: Partition, k: u32 },
    Eval { which: u8, n: usize, r: u32, s: u32, k: u32 },
    Variant { which: u8, n: usize, r: u32, s: u32, k: u32 },
    Rational { n: usize, m: usize, l: u32, r: u32, s: u32, k: u32, #[serde(default)] cross: CrossExponent },
    Cauchy { which: CauchyIdentity, big_n: usize, n: usize, m: usize, k: u32, #[serde(default)] style: PointStyle },
}

impl Check {
    pub fn run(&self, guard: usize) -> Result<VerifyReport> {
        match self {
            Check::Qko { n, r, s, k } => verify_qko(*n, r, s, *k, guard),
            Check::SchurForm { n, r, s, k } => verify_schur_form(*n, r, s, *k),
            Check::Qselberg { n, r, s, m, k } => verify_qselberg_single(*n, *r, *s, *m, *k),
            Check::Ppar { n, r, s, k } => verify_ppar(*n, r, s, *k),
            Check::PparProfile { l, r, mu, k } => verify_ppar_profile(*l, *r, mu, *k),
            Check::Eval { which, n, r, s, k } => verify_eval(*which, *n, *r, *s, *k),
            Check::Variant { which, n, r, s, k } => verify_variant(*which, *n, *r, *s, *k),
            Check::Rational { n, m, l, r, s, k, cross } => verify_rational(*n, *m, *l, *r, *s, *k, *cross),
            Check::Cauchy { which, big_n, n, m, k, style } => verify_cauchy_classical(*which, *big_n, *n, *m, *k, *style),
        }
    }

    /// The same check at a different truncation order.
    pub fn with_k(&self, new_k: u32) -> Check {
        let mut c = self.clone();
        match &mut c {
            Check::Qko { k, .. }
            | Check::SchurForm { k, .. }
            | Check::Qselberg { k, .. }
            | Check::Ppar { k, .. }
            | Check::PparProfile { k, .. }
            | Check::Eval { k, .. }
            | Check::Variant { k, .. }
            | Check::Rational { k, .. }
            | Check::Cauchy { k, .. } => *k = new_k,
        }
        c
    }
}

/// Identity names accepted by the grid runner and the CLI.
pub const IDENTITIES: [&str; 20] = [
    "qko",
    "schur-form",
    "qselberg",
    "ppar",
    "ppar-profile",
    "eval1",
    "eval2",
    "eval3",
    "variant1",
    "variant2",
    "variant3",
    "variant4",
    "rational",
    "cauchy-c",
    "cauchy-b",
    "cauchy-bs",
    "cauchy-d",
    "cauchy-ds",
    "cauchy-rat",
    "all",
];

fn default_ns() -> Vec<usize> {
    vec![1, 2]
}

fn default_entries() -> Vec<u32> {
    vec![0, 1]
}

fn default_k() -> u32 {
    10
}

fn default_styles() -> Vec<PointStyle> {
    vec![PointStyle::Half]
}

/// A rectangular family of checks. `m` is the number of pages for the
/// staircase identities, the power of `|Δ|` for `qselberg`, and the size of
/// the second block for `rational` and `cauchy-rat`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridBlock {
    pub identities: Vec<String>,
    #[serde(default = "default_ns")]
    pub n: Vec<usize>,
    #[serde(default = "default_ns")]
    pub m: Vec<usize>,
    #[serde(default = "default_entries")]
    pub r: Vec<u32>,
    #[serde(default = "default_entries")]
    pub s: Vec<u32>,
    #[serde(default = "default_entries")]
    pub l: Vec<u32>,
    #[serde(rename = "K", default = "default_k")]
    pub k: u32,
    /// Skip staircase shapes with more cells than this.
    #[serde(default)]
    pub max_cells: Option<usize>,
    /// Largest `|μ|` for `ppar-profile`.
    #[serde(default)]
    pub max_profile: u32,
    /// Values of `N` for the Cauchy-type identities.
    #[serde(default)]
    pub big_n: Vec<usize>,
    #[serde(default = "default_styles")]
    pub styles: Vec<PointStyle>,
}

/// A list of blocks; a single bare block is accepted as well.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "GridSpecRepr")]
pub struct GridSpec {
    pub blocks: Vec<GridBlock>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum GridSpecRepr {
    Blocks { blocks: Vec<GridBlock> },
    Single(GridBlock),
}

impl From<GridSpecRepr> for GridSpec {
    fn from(r: GridSpecRepr) -> Self {
        match r {
            GridSpecRepr::Blocks { blocks } => GridSpec { blocks },
            GridSpecRepr::Single(b) => GridSpec { blocks: vec![b] },
        }
    }
}

fn staircase_shapes(b: &GridBlock) -> Vec<(usize, Composition, Composition)> {
    let mut out = Vec::new();
    for &n in &b.n {
        for &m in &b.m {
            for r in Composition::all_with_entries(m, &b.r) {
                for s in Composition::all_with_entries(m, &b.s) {
                    let size = build_poset(n, &r, &s).map(|p| p.size()).unwrap_or(usize::MAX);
                    if b.max_cells.is_none_or(|c| size <= c) {
                        out.push((n, r.clone(), s.clone()));
                    }
                }
            }
        }
    }
    out
}

impl GridBlock {
    pub fn expand(&self) -> Result<Vec<Check>> {
        let mut out = Vec::new();
        let k = self.k;
        let names: Vec<&str> = if self.identities.iter().any(|i| i == "all") {
            IDENTITIES[..IDENTITIES.len() - 1].to_vec()
        } else {
            self.identities.iter().map(String::as_str).collect()
        };
        for id in names {
            match id {
                "qko" | "schur-form" | "ppar" => {
                    for (n, r, s) in staircase_shapes(self) {
                        out.push(match id {
                            "qko" => Check::Qko { n, r, s, k },
                            "schur-form" => Check::SchurForm { n, r, s, k },
                            _ => Check::Ppar { n, r, s, k },
                        });
                    }
                }
                "qselberg" => {
                    for &n in &self.n {
                        for &m in &self.m {
                            for &r in &self.r {
                                for &s in &self.s {
                                    out.push(Check::Qselberg { n, r, s, m: m as u32, k });
                                }
                            }
                        }
                    }
                }
                "ppar-profile" => {
                    for &l in &self.n {
                        for &r in &self.r {
                            for mu in enum_partitions(self.max_profile, l) {
                                out.push(Check::PparProfile { l, r, mu, k });
                            }
                        }
                    }
                }
                "eval1" | "eval2" | "eval3" => {
                    let which = id.as_bytes()[4] - b'0';
                    let svals: &[u32] = if which == 3 { &self.s } else { &[0] };
                    for &n in &self.n {
                        for &r in &self.r {
                            for &s in svals {
                                out.push(Check::Eval { which, n, r, s, k });
                            }
                        }
                    }
                }
                "variant1" | "variant2" | "variant3" | "variant4" => {
                    let which = id.as_bytes()[7] - b'0';
                    for &n in &self.n {
                        for &r in &self.r {
                            for &s in &self.s {
                                out.push(Check::Variant { which, n, r, s, k });
                            }
                        }
                    }
                }
                "rational" => {
                    for &n in &self.n {
                        for &m in &self.m {
                            for &l in &self.l {
                                for &r in &self.r {
                                    for &s in &self.s {
                                        if n + m + l as usize > 0 {
                                            out.push(Check::Rational { n, m, l, r, s, k, cross: CrossExponent::Shifted });
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
                other => {
                    let which = CauchyIdentity::from_id(other)
                        .ok_or_else(|| Error::Invalid(format!("unknown identity {other:?}")))?;
                    for &big_n in &self.big_n {
                        for &n in self.n.iter().filter(|&&n| n <= big_n) {
                            if which == CauchyIdentity::Rational {
                                for &m in self.m.iter().filter(|&&m| n + m <= big_n) {
                                    out.push(Check::Cauchy { which, big_n, n, m, k, style: PointStyle::Half });
                                }
                            } else {
                                for &style in &self.styles {
                                    out.push(Check::Cauchy { which, big_n, n, m: 0, k, style });
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

impl GridSpec {
    pub fn expand(&self) -> Result<Vec<Check>> {
        let mut out = Vec::new();
        for b in &self.blocks {
            out.extend(b.expand()?);
        }
        Ok(out)
    }
}

/// Outcome of a grid run, in the order the checks were listed.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GridOutcome {
    pub reports: Vec<VerifyReport>,
    /// Checks that raised an error instead of producing a report.
    pub errors: Vec<GridError>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GridError {
    pub check: Check,
    pub error: String,
}

impl GridOutcome {
    pub fn all_pass(&self) -> bool {
        self.errors.is_empty() && self.reports.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &VerifyReport> {
        self.reports.iter().filter(|r| !r.pass)
    }
}

/// Runs the checks in parallel; the output order matches the input order.
pub fn run_checks(checks: &[Check], guard: usize) -> GridOutcome {
    let results: Vec<Result<VerifyReport>> = checks.par_iter().map(|c| c.run(guard)).collect();
    let mut reports = Vec::new();
    let mut errors = Vec::new();
    for (c, r) in checks.iter().zip(results) {
        match r {
            Ok(rep) => reports.push(rep),
            Err(e) => errors.push(GridError { check: c.clone(), error: e.to_string() }),
        }
    }
    GridOutcome { reports, errors }
}

/// Runs a grid; reports are ordered by identity, then by parameters.
pub fn run_grid(spec: &GridSpec, guard: usize) -> Result<GridOutcome> {
    let mut out = run_checks(&spec.expand()?, guard);
    out.reports.sort_by_cached_key(|r| (r.identity.clone(), serde_json::to_string(&r.params).unwrap_or_default()));
    Ok(out)
}

/// Pass/fail counts per identity.
pub fn tally(outcome: &GridOutcome) -> BTreeMap<String, (usize, usize)> {
    let mut t: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    for r in &outcome.reports {
        let e = t.entry(r.identity.clone()).or_default();
        if r.pass {
            e.0 += 1;
        } else {
            e.1 += 1;
        }
    }
    t
}

/// The default grid shipped with the command-line tool.
pub const DEFAULT_GRID: &str = include_str!("../grids/default.json");

pub fn default_grid() -> GridSpec {
    serde_json::from_str(DEFAULT_GRID).expect("bundled grid parses")
}

/// The default guard on staircase size for enumeration-backed checks.
pub const GUARD: usize = DEFAULT_GUARD;

#[cfg(test)]
mod tests {
    use super::*;

    fn comp(v: &[u32]) -> Composition {
        Composition::new(v.to_vec())
    }

    #[test]
    fn product_expansion() {
        // [3]_q / [1]_q = 1 + q + q^2; [3/2]_q is a genuine series.
        let p = QProduct::one().q_int(6).inv_q_int(2);
        assert_eq!(p.expand(10).unwrap(), LaurentSeries::from_q_coeffs(&[1, 1, 1]).truncate(10));
        let h = QProduct::one().q_int(3);
        assert_eq!(h.expand(6).unwrap(), crate::qexact::q_int_series(HalfExp(3), 6).unwrap());
        assert!(QProduct::one().q_int(0).expand(4).unwrap().is_zero());
    }

    #[test]
    fn qko_examples() {
        assert!(verify_qko(1, &comp(&[0]), &comp(&[0]), 10, GUARD).unwrap().pass);
        assert!(verify_qko(2, &comp(&[1]), &comp(&[1]), 20, GUARD).unwrap().pass);
    }

    #[test]
    fn schur_form_examples() {
        assert!(verify_qselberg_single(1, 0, 0, 1, 8).unwrap().pass);
        assert!(verify_qselberg_single(2, 1, 1, 1, 15).unwrap().pass);
        let a = verify_qselberg_single(2, 0, 0, 2, 15).unwrap();
        assert!(a.pass);
        let b = verify_qko(2, &comp(&[0, 0]), &comp(&[0, 0]), 15, GUARD).unwrap();
        assert_eq!(a.lhs, b.lhs);
        assert!(verify_schur_form(2, &comp(&[1, 0]), &comp(&[0, 2]), 12).unwrap().pass);
    }

    #[test]
    fn ppar_examples() {
        assert!(verify_ppar(2, &comp(&[1]), &comp(&[1]), 12).unwrap().pass);
        assert!(verify_ppar_profile(2, 1, &Partition::new(vec![1]).unwrap(), 10).unwrap().pass);
        let empty = verify_ppar_profile(2, 0, &Partition::empty(), 6).unwrap();
        assert!(empty.pass);
        assert_eq!(empty.rhs, LaurentSeries::one().truncate(14));
    }

    #[test]
    fn eval_examples() {
        for r in 0..3 {
            assert!(verify_eval(1, 1, r, 0, 10).unwrap().pass);
        }
        assert!(verify_eval(1, 2, 0, 0, 20).unwrap().pass);
        for (n, r) in [(1, 0), (2, 1), (3, 0)] {
            assert!(verify_eval(2, n, r, 0, 12).unwrap().pass, "n={n} r={r}");
        }
        assert!(verify_eval(3, 2, 1, 1, 20).unwrap().pass);
    }

    #[test]
    fn eval_bracket_readings() {
        // ∫ (1 - q x) d_q x = 1/[2]_q, which needs [C(n+2,2)] rather than [C(n+1,2)].
        let lhs = verify_eval(2, 1, 0, 0, 10).unwrap().lhs;
        let wrong = QProduct::one().q_int(2).inv_q_int(2).inv_q_int(4).inv_q_int(6).expand(22).unwrap();
        assert_ne!(lhs, wrong);
        // ∫ (q x;q)_2 d_q x = 1/[3]_q, which needs the factor [s]_q!.
        let lhs = verify_eval(3, 1, 0, 2, 10).unwrap().lhs;
        let wrong = QProduct::one().inv_q_int(2).inv_q_int(4).inv_q_int(6).expand(22).unwrap();
        assert_ne!(lhs, wrong);
        assert_eq!(lhs, QProduct::one().inv_q_int(6).expand(22).unwrap());
    }

    #[test]
    fn variant_examples() {
        for which in 1..=4 {
            assert!(verify_variant(which, 1, 0, 1, 12).unwrap().pass, "variant{which}");
        }
        assert!(verify_variant(2, 1, 0, 0, 12).unwrap().pass);
    }

    #[test]
    fn rational_examples() {
        assert!(verify_rational(1, 1, 1, 0, 0, 12, CrossExponent::Shifted).unwrap().pass);
        // With 1 - q^l x y the two sides already differ at n = m = 1, l = 0.
        assert!(!verify_rational(1, 1, 0, 0, 0, 12, CrossExponent::Plain).unwrap().pass);
    }

    #[test]
    fn cauchy_examples() {
        assert!(verify_cauchy_classical(CauchyIdentity::C, 1, 1, 0, 10, PointStyle::Half).unwrap().pass);
        assert!(verify_cauchy_classical(CauchyIdentity::B, 2, 1, 0, 10, PointStyle::Half).unwrap().pass);
        let ds = verify_cauchy_classical(CauchyIdentity::Dspin, 1, 1, 0, 10, PointStyle::Half).unwrap();
        assert!(ds.pass);
        assert_eq!(ds.unit, ExponentUnit::QuarterQ);
        let d = verify_cauchy_classical(CauchyIdentity::D, 2, 2, 0, 10, PointStyle::Int).unwrap();
        assert!(d.pass);
        assert_eq!(d.unit, ExponentUnit::HalfQ);
    }

    #[test]
    fn grid_expansion_and_order() {
        let spec: GridSpec = serde_json::from_str(
            r#"{"blocks":[{"identities":["qko","eval1"],"n":[1,2],"m":[1],"r":[0,1],"s":[0],"K":6}]}"#,
        )
        .unwrap();
        let checks = spec.expand().unwrap();
        assert_eq!(checks.len(), 4 + 4);
        let out = run_checks(&checks, GUARD);
        assert!(out.all_pass());
        assert_eq!(out.reports[0].identity, "qko");
        assert_eq!(out.reports[7].identity, "eval1");
        let bare: GridSpec = serde_json::from_str(r#"{"identities":["eval1"],"n":[1],"r":[0],"K":4}"#).unwrap();
        assert_eq!(bare.expand().unwrap().len(), 1);
        let bad: std::result::Result<GridSpec, _> = serde_json::from_str(r#"{"blocks":[{"identities":["qko"],"bogus":1}]}"#);
        assert!(bad.is_err());
    }

    #[test]
    fn bundled_grid_parses() {
        assert!(!default_grid().expand().unwrap().is_empty());
    }
}
