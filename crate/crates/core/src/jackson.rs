//! Jackson integrals over `[0,1]^n` as truncated power series.
//!
//! An integrand is a product of declarative factors. At a point whose
//! coordinates are integer q-powers every factor becomes a monomial times
//! binomials `1 ± t^e` with `e > 0`, so the value is known in factored form and
//! its valuation is read off before anything is expanded.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::{enum_partitions, frame_exponents, Composition};
use crate::qexact::{factorial, LaurentSeries};

/// Which group of variables a factor acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Block {
    X,
    Y,
}

/// One factor of an integrand. Exponents of explicit q-powers are counted in
/// halves (`twice`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Factor {
    /// `prod_i x_i^exp`
    Power { block: Block, exp: u32 },
    /// `prod_i (q x_i; q)_s`
    Poch { block: Block, s: u32 },
    /// `prod_i (1 + sign q^{twice/2} x_i)`
    Linear { block: Block, sign: i8, twice: i64 },
    /// `prod_{i<j} (1 + sign q^{twice/2} x_i x_j)`, over `i <= j` when `diagonal`
    Pair { block: Block, sign: i8, twice: i64, diagonal: bool },
    /// `prod_{i,j} (1 + sign q^{twice/2} x_i y_j)`
    Cross { sign: i8, twice: i64 },
    /// `prod_{i<j} |x_j - x_i|^power`
    AbsVandermonde { block: Block, power: u32 },
}

/// The integrand families the verifiers use.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    Qko { n: usize, r: Composition, s: Composition },
    Single { n: usize, r: u32, s: u32, m: u32 },
    Variant { which: u8, n: usize, r: u32, s: u32 },
    Rational { n: usize, m: usize, l: u32, r: u32, s: u32, cross_twice: i64 },
    Custom,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegrandSpec {
    pub family: Family,
    /// Number of x variables.
    pub n: usize,
    /// Number of y variables.
    pub m: usize,
    pub factors: Vec<Factor>,
    pub declared_symmetric: bool,
    pub declared_vanishing: bool,
}

impl IntegrandSpec {
    /// `prod_k (prod_i x_i^{r_k} (q x_i; q)_{s_k} prod_{i<j} |x_j - x_i|)`.
    pub fn qko(n: usize, r: &Composition, s: &Composition) -> Result<Self> {
        if r.len() != s.len() {
            return Err(Error::BadShape(format!("r has {} parts, s has {}", r.len(), s.len())));
        }
        let mut factors = Vec::new();
        for (&rk, &sk) in r.parts().iter().zip(s.parts()) {
            factors.push(Factor::Power { block: Block::X, exp: rk });
            factors.push(Factor::Poch { block: Block::X, s: sk });
            factors.push(Factor::AbsVandermonde { block: Block::X, power: 1 });
        }
        Ok(IntegrandSpec {
            family: Family::Qko { n, r: r.clone(), s: s.clone() },
            n,
            m: 0,
            factors,
            declared_symmetric: true,
            declared_vanishing: true,
        })
    }

    /// `prod_i x_i^r (q x_i; q)_s prod_{i<j} |x_j - x_i|^m`.
    pub fn single(n: usize, r: u32, s: u32, m: u32) -> Self {
        IntegrandSpec {
            family: Family::Single { n, r, s, m },
            n,
            m: 0,
            factors: vec![
                Factor::Power { block: Block::X, exp: r },
                Factor::Poch { block: Block::X, s },
                Factor::AbsVandermonde { block: Block::X, power: m },
            ],
            declared_symmetric: true,
            declared_vanishing: m > 0,
        }
    }

    /// The four integrands with pair factors `1 - q^{s+1} x_i x_j`; variants 2
    /// and 3 add `1 ± q^{(s+1)/2} x_i`, variant 4 includes `i = j`.
    pub fn variant(which: u8, n: usize, r: u32, s: u32) -> Result<Self> {
        if !(1..=4).contains(&which) {
            return Err(Error::Invalid(format!("variant {which} does not exist")));
        }
        let pair_twice = 2 * (s as i64 + 1);
        let mut factors = vec![
            Factor::Power { block: Block::X, exp: r },
            Factor::Poch { block: Block::X, s },
            Factor::Pair { block: Block::X, sign: -1, twice: pair_twice, diagonal: which == 4 },
            Factor::AbsVandermonde { block: Block::X, power: 2 },
        ];
        match which {
            2 => factors.push(Factor::Linear { block: Block::X, sign: 1, twice: s as i64 + 1 }),
            3 => factors.push(Factor::Linear { block: Block::X, sign: -1, twice: s as i64 + 1 }),
            _ => {}
        }
        Ok(IntegrandSpec {
            family: Family::Variant { which, n, r, s },
            n,
            m: 0,
            factors,
            declared_symmetric: true,
            declared_vanishing: true,
        })
    }

    /// The two-block integrand
    /// `prod x_i^r (q x_i;q)_l prod y_j^s (q y_j;q)_l prod (1 - q^{c} x_i y_j) Δ(x)^2 Δ(y)^2`
    /// with `c = cross_twice / 2`.
    /// The cross factor is dropped when a block is empty.
    pub fn rational(n: usize, m: usize, l: u32, r: u32, s: u32, cross_twice: i64) -> Self {
        let mut factors = vec![
            Factor::Power { block: Block::X, exp: r },
            Factor::Poch { block: Block::X, s: l },
            Factor::Power { block: Block::Y, exp: s },
            Factor::Poch { block: Block::Y, s: l },
            Factor::Cross { sign: -1, twice: cross_twice },
            Factor::AbsVandermonde { block: Block::X, power: 2 },
            Factor::AbsVandermonde { block: Block::Y, power: 2 },
        ];
        if n == 0 || m == 0 {
            factors.retain(|f| !matches!(f, Factor::Cross { .. }));
        }
        IntegrandSpec {
            family: Family::Rational { n, m, l, r, s, cross_twice },
            n,
            m,
            factors,
            declared_symmetric: true,
            declared_vanishing: true,
        }
    }

    pub fn custom(n: usize, m: usize, factors: Vec<Factor>, symmetric: bool, vanishing: bool) -> Result<Self> {
        let spec = IntegrandSpec {
            family: Family::Custom,
            n,
            m,
            factors,
            declared_symmetric: symmetric,
            declared_vanishing: vanishing,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Explicit q-powers must be nonnegative so that every value at a
    /// q-power point has valuation at least 0.
    pub fn validate(&self) -> Result<()> {
        for f in &self.factors {
            let (sign, twice) = match *f {
                Factor::Linear { sign, twice, .. } | Factor::Pair { sign, twice, .. } | Factor::Cross { sign, twice } => {
                    (sign, twice)
                }
                _ => continue,
            };
            if twice < 0 {
                return Err(Error::Invalid(format!("factor {f:?} has a negative q-power")));
            }
            if sign != 1 && sign != -1 {
                return Err(Error::Invalid(format!("factor {f:?} needs sign ±1")));
            }
        }
        if self.m == 0 && self.factors.iter().any(|f| matches!(f, Factor::Cross { .. })) {
            return Err(Error::Invalid("cross factor without y variables".into()));
        }
        Ok(())
    }

    pub fn dims(&self) -> usize {
        self.n + self.m
    }

    /// The integrand at `x_i = q^{kx[i]}`, `y_j = q^{ky[j]}`.
    pub fn eval_at(&self, kx: &[u32], ky: &[u32]) -> Result<LaurentSeries> {
        if kx.len() != self.n || ky.len() != self.m {
            return Err(Error::Invalid(format!("expected {} + {} coordinates", self.n, self.m)));
        }
        match self.factored(kx, ky) {
            None => Ok(LaurentSeries::zero()),
            Some(term) => Ok(term.expand_exact()),
        }
    }

    /// Monomial and binomials at a lattice point, or `None` when a factor
    /// vanishes there.
    fn factored(&self, kx: &[u32], ky: &[u32]) -> Option<Factored> {
        let mut t = Factored { coeff: 1, mono: 0, binoms: Vec::new() };
        let pick = |b: Block| if b == Block::X { kx } else { ky };
        for f in &self.factors {
            match *f {
                Factor::Power { block, exp } => {
                    t.mono += 2 * exp as i64 * pick(block).iter().map(|&k| k as i64).sum::<i64>();
                }
                Factor::Poch { block, s } => {
                    for &k in pick(block) {
                        for j in 1..=s as i64 {
                            t.binoms.push((2 * (k as i64 + j), -1));
                        }
                    }
                }
                Factor::Linear { block, sign, twice } => {
                    for &k in pick(block) {
                        t.push(twice + 2 * k as i64, sign)?;
                    }
                }
                Factor::Pair { block, sign, twice, diagonal } => {
                    let ks = pick(block);
                    for i in 0..ks.len() {
                        for j in (if diagonal { i } else { i + 1 })..ks.len() {
                            t.push(twice + 2 * (ks[i] + ks[j]) as i64, sign)?;
                        }
                    }
                }
                Factor::Cross { sign, twice } => {
                    for &a in kx {
                        for &b in ky {
                            t.push(twice + 2 * (a + b) as i64, sign)?;
                        }
                    }
                }
                Factor::AbsVandermonde { block, power } => {
                    if power == 0 {
                        continue;
                    }
                    let ks = pick(block);
                    for i in 0..ks.len() {
                        for j in i + 1..ks.len() {
                            let (a, b) = (ks[i] as i64, ks[j] as i64);
                            if a == b {
                                return None;
                            }
                            t.mono += 2 * power as i64 * a.min(b);
                            for _ in 0..power {
                                t.binoms.push((2 * (a - b).abs(), -1));
                            }
                        }
                    }
                }
            }
        }
        Some(t)
    }

    /// Spot checks of the symmetry and vanishing declarations at random
    /// lattice points.
    pub fn check_contracts(&self, seed: u64, trials: usize) -> Result<()> {
        let mut rng = StdRng::seed_from_u64(seed);
        for _ in 0..trials {
            let kx: Vec<u32> = (0..self.n).map(|_| rng.gen_range(0..6)).collect();
            let ky: Vec<u32> = (0..self.m).map(|_| rng.gen_range(0..6)).collect();
            let base = self.eval_at(&kx, &ky)?;
            if self.declared_symmetric {
                let (mut px, mut py) = (kx.clone(), ky.clone());
                px.shuffle(&mut rng);
                py.shuffle(&mut rng);
                if self.eval_at(&px, &py)? != base {
                    return Err(Error::ContractViolation(format!("not symmetric at x={kx:?} y={ky:?}")));
                }
            }
            if self.declared_vanishing {
                for (block, len) in [(Block::X, self.n), (Block::Y, self.m)] {
                    if len < 2 {
                        continue;
                    }
                    let (mut dx, mut dy) = (kx.clone(), ky.clone());
                    let v = if block == Block::X { &mut dx } else { &mut dy };
                    let i = rng.gen_range(0..len);
                    let j = (i + rng.gen_range(1..len)) % len;
                    v[j] = v[i];
                    if !self.eval_at(&dx, &dy)?.is_zero() {
                        return Err(Error::ContractViolation(format!("no zero at x={dx:?} y={dy:?}")));
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for IntegrandSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.family {
            Family::Qko { n, r, s } => write!(f, "qko(n={n}, r={r}, s={s})"),
            Family::Single { n, r, s, m } => write!(f, "single(n={n}, r={r}, s={s}, m={m})"),
            Family::Variant { which, n, r, s } => write!(f, "variant{which}(n={n}, r={r}, s={s})"),
            Family::Rational { n, m, l, r, s, cross_twice } => {
                write!(f, "rational(n={n}, m={m}, l={l}, r={r}, s={s}, cross=q^({cross_twice}/2))")
            }
            Family::Custom => write!(f, "custom(n={}, m={}, {} factors)", self.n, self.m, self.factors.len()),
        }
    }
}

/// `coeff * t^mono * prod (1 + sign t^e)` with every `e > 0`.
#[derive(Clone, Debug)]
struct Factored {
    coeff: i128,
    mono: i64,
    binoms: Vec<(i64, i8)>,
}

impl Factored {
    fn push(&mut self, e: i64, sign: i8) -> Option<()> {
        if e == 0 {
            if sign == -1 {
                return None;
            }
            self.coeff *= 2;
        } else {
            self.binoms.push((e, sign));
        }
        Some(())
    }

    fn expand_exact(&self) -> LaurentSeries {
        let len = self.binoms.iter().map(|b| b.0 as usize).sum::<usize>() + 1;
        let mut acc = Accumulator::new(self.mono + len as i64);
        acc.add(self, 0).expect("exact expansion of a single term fits");
        acc.into_series(None)
    }
}

/// Dense integer coefficients of `t^0 .. t^{trunc-1}`.
struct Accumulator {
    coeffs: Vec<i128>,
    scratch: Vec<i128>,
}

impl Accumulator {
    fn new(trunc: i64) -> Self {
        let len = trunc.max(0) as usize;
        Accumulator { coeffs: vec![0; len], scratch: Vec::with_capacity(len) }
    }

    fn trunc(&self) -> i64 {
        self.coeffs.len() as i64
    }

    /// Adds `t^weight` times the expanded term.
    fn add(&mut self, term: &Factored, weight: i64) -> Result<()> {
        let start = term.mono + weight;
        if start >= self.trunc() || term.coeff == 0 {
            return Ok(());
        }
        let len = (self.trunc() - start) as usize;
        let p = &mut self.scratch;
        p.clear();
        p.resize(len, 0);
        p[0] = term.coeff;
        let mut top = 0usize;
        for &(e, sign) in &term.binoms {
            let e = e as usize;
            if e >= len {
                continue;
            }
            let new_top = (top + e).min(len - 1);
            for i in (e..=new_top).rev() {
                let v = p[i - e];
                if v != 0 {
                    p[i] = if sign > 0 { p[i].checked_add(v) } else { p[i].checked_sub(v) }.ok_or(Error::Overflow)?;
                }
            }
            top = new_top;
        }
        for (i, &v) in p.iter().enumerate().take(top + 1) {
            if v != 0 {
                let slot = &mut self.coeffs[start as usize + i];
                *slot = slot.checked_add(v).ok_or(Error::Overflow)?;
            }
        }
        Ok(())
    }

    fn into_series(self, trunc: Option<i64>) -> LaurentSeries {
        let s = LaurentSeries::from_terms(
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| (i as i64, BigRational::from_integer(BigInt::from(c)))),
        );
        match trunc {
            Some(t) => s.truncate(t),
            None => s,
        }
    }
}

/// `(1 - q)^d` modulo `t^trunc`.
fn one_minus_q_pow(d: usize, trunc: i64) -> LaurentSeries {
    LaurentSeries::binomial(-1, 2).pow(d as u32).truncate(trunc)
}

/// Visits every `k ∈ N^d` with `2 * sum(k) < trunc`.
fn for_each_lattice_point(d: usize, trunc: i64, f: &mut dyn FnMut(&[u32]) -> Result<()>) -> Result<()> {
    let budget = if trunc <= 0 { return Ok(()) } else { ((trunc - 1) / 2) as u32 };
    fn rec(k: &mut Vec<u32>, d: usize, left: u32, f: &mut dyn FnMut(&[u32]) -> Result<()>) -> Result<()> {
        if k.len() == d {
            return f(k);
        }
        for v in 0..=left {
            k.push(v);
            rec(k, d, left - v, f)?;
            k.pop();
        }
        Ok(())
    }
    rec(&mut Vec::with_capacity(d), d, budget, f)
}

/// `(1-q)^d sum_{k} f(q^k) q^{|k|}` modulo `t^trunc`, over the full lattice.
pub fn bruteforce_trunc(f: &IntegrandSpec, trunc: i64) -> Result<LaurentSeries> {
    f.validate()?;
    let mut acc = Accumulator::new(trunc);
    let n = f.n;
    for_each_lattice_point(f.dims(), trunc, &mut |k| {
        if let Some(term) = f.factored(&k[..n], &k[n..]) {
            let weight = 2 * k.iter().map(|&v| v as i64).sum::<i64>();
            acc.add(&term, weight)?;
        }
        Ok(())
    })?;
    let sum = acc.into_series(Some(trunc));
    Ok(sum.mul_trunc(&one_minus_q_pow(f.dims(), trunc), Some(trunc)))
}

/// The Jackson integral by lattice summation, modulo `q^{k+1}`.
pub fn jackson_bruteforce(f: &IntegrandSpec, k: u32) -> Result<LaurentSeries> {
    bruteforce_trunc(f, 2 * (k as i64 + 1))
}

fn binom2(n: usize) -> i64 {
    (n * n.saturating_sub(1) / 2) as i64
}

/// The partition-sum form
/// `n! m! (1-q)^{n+m} sum_{λ,μ} q^{|λ|+|μ|+C(n,2)+C(m,2)} f(frame(λ), frame(μ))`
/// modulo `t^trunc`.
pub fn partition_sum_trunc(f: &IntegrandSpec, trunc: i64) -> Result<LaurentSeries> {
    f.validate()?;
    if !f.declared_symmetric || !f.declared_vanishing {
        return Err(Error::ContractViolation(format!("{f} is not declared symmetric and vanishing")));
    }
    f.check_contracts(0x5eed ^ (f.n as u64) << 8 ^ f.m as u64, 8)?;
    let (n, m) = (f.n, f.m);
    let base = binom2(n) + binom2(m);
    let mut acc = Accumulator::new(trunc);
    let budget = if 2 * base >= trunc { return Ok(LaurentSeries::zero().truncate(trunc)) } else { ((trunc - 1) / 2 - base) as u32 };
    let mus: Vec<_> = enum_partitions(budget, m).collect();
    for lambda in enum_partitions(budget, n) {
        let kx: Vec<u32> = frame_exponents(&lambda, n)?.into_iter().map(|v| v as u32).collect();
        for mu in mus.iter().take_while(|mu| mu.size() + lambda.size() <= budget) {
            let ky: Vec<u32> = frame_exponents(mu, m)?.into_iter().map(|v| v as u32).collect();
            if let Some(term) = f.factored(&kx, &ky) {
                let weight = 2 * (lambda.size() as i64 + mu.size() as i64 + base);
                acc.add(&term, weight)?;
            }
        }
    }
    let sum = acc.into_series(Some(trunc));
    let scale = factorial(n as u32) * factorial(m as u32);
    Ok(sum.mul_trunc(&one_minus_q_pow(n + m, trunc), Some(trunc)).scale(&scale))
}

/// One-block partition sum modulo `q^{k+1}`.
pub fn jackson_partition_sum(f: &IntegrandSpec, k: u32) -> Result<LaurentSeries> {
    if f.m != 0 {
        return Err(Error::Invalid(format!("{f} has y variables; use the two-block sum")));
    }
    partition_sum_trunc(f, 2 * (k as i64 + 1))
}

/// Two-block partition sum modulo `q^{k+1}`.
pub fn jackson_two_block(g: &IntegrandSpec, k: u32) -> Result<LaurentSeries> {
    partition_sum_trunc(g, 2 * (k as i64 + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qexact::{q_int, rat};

    fn power(n: usize, r: u32) -> IntegrandSpec {
        IntegrandSpec::custom(n, 0, vec![Factor::Power { block: Block::X, exp: r }], true, false).unwrap()
    }

    #[test]
    fn one_dimensional_power() {
        let got = jackson_bruteforce(&power(1, 1), 5).unwrap();
        assert_eq!(got, LaurentSeries::from_q_coeffs(&[1, -1, 1, -1, 1, -1]).truncate(12));
        for r in 0..4 {
            let want = LaurentSeries::one().series_div(&q_int(crate::HalfExp::int(r as i64 + 1)).unwrap(), 22).unwrap();
            assert_eq!(jackson_bruteforce(&power(1, r), 10).unwrap(), want);
        }
    }

    #[test]
    fn partition_sum_matches_bruteforce() {
        for f in [
            IntegrandSpec::single(2, 0, 0, 1),
            IntegrandSpec::single(2, 1, 2, 2),
            IntegrandSpec::single(3, 0, 1, 1),
            IntegrandSpec::variant(2, 2, 1, 0).unwrap(),
            IntegrandSpec::variant(4, 2, 0, 1).unwrap(),
            IntegrandSpec::qko(2, &Composition::new(vec![1, 0]), &Composition::new(vec![0, 1])).unwrap(),
        ] {
            let a = jackson_bruteforce(&f, 12).unwrap();
            let b = jackson_partition_sum(&f, 12).unwrap();
            assert_eq!(a, b, "{f}");
        }
    }

    #[test]
    fn single_variable_qko_hand_sum() {
        // (1-q) sum_k q^{2k} (q^{k+1};q)_1 for r = s = 1.
        let f = IntegrandSpec::qko(1, &Composition::new(vec![1]), &Composition::new(vec![1])).unwrap();
        let mut want = LaurentSeries::zero();
        for k in 0..8i64 {
            want = want + (LaurentSeries::q_int_pow(2 * k) - LaurentSeries::q_int_pow(3 * k + 1));
        }
        let want = (want * LaurentSeries::from_q_coeffs(&[1, -1])).truncate(14);
        assert_eq!(jackson_partition_sum(&f, 6).unwrap(), want);
        assert_eq!(jackson_bruteforce(&f, 6).unwrap(), want);
    }

    #[test]
    fn two_block_products() {
        // n = m = 1 with g = x^r y^s factorizes.
        let g = IntegrandSpec::custom(
            1,
            1,
            vec![Factor::Power { block: Block::X, exp: 1 }, Factor::Power { block: Block::Y, exp: 2 }],
            true,
            true,
        )
        .unwrap();
        let k = 9;
        let want = jackson_bruteforce(&power(1, 1), k).unwrap().mul_trunc(&jackson_bruteforce(&power(1, 2), k).unwrap(), None);
        assert_eq!(jackson_two_block(&g, k).unwrap(), want);
        let rat_g = IntegrandSpec::rational(1, 1, 1, 0, 0, 4);
        assert_eq!(jackson_two_block(&rat_g, 8).unwrap(), jackson_bruteforce(&rat_g, 8).unwrap());
    }

    #[test]
    fn degenerate_two_block() {
        let f = IntegrandSpec::single(2, 1, 1, 1);
        assert_eq!(jackson_two_block(&f, 10).unwrap(), jackson_partition_sum(&f, 10).unwrap());
    }

    #[test]
    fn vanishing_integrals_start_at_binomial() {
        let f = IntegrandSpec::single(3, 0, 0, 1);
        let v = jackson_bruteforce(&f, 10).unwrap().valuation().unwrap();
        assert!(v >= 2 * 3);
        // k = (2,1,0): weight q^3 and min-exponent q^1 from |q^2 - q^1|.
        assert_eq!(v, 2 * 4);
    }

    #[test]
    fn abs_convention() {
        // |q^3 - q^1| = q (1 - q^2), lowest term positive either way round.
        let f = IntegrandSpec::single(2, 0, 0, 1);
        let a = f.eval_at(&[3, 1], &[]).unwrap();
        assert_eq!(a, LaurentSeries::from_terms([(2, rat(1)), (6, rat(-1))]));
        assert_eq!(f.eval_at(&[1, 3], &[]).unwrap(), a);
        assert!(f.eval_at(&[2, 2], &[]).unwrap().is_zero());
    }

    #[test]
    fn half_integer_linear_factor() {
        // 1 + q^{1/2} x at x = 1.
        let f = IntegrandSpec::custom(1, 0, vec![Factor::Linear { block: Block::X, sign: 1, twice: 1 }], true, false).unwrap();
        assert_eq!(f.eval_at(&[0], &[]).unwrap(), LaurentSeries::binomial(1, 1));
        let g = IntegrandSpec::custom(1, 0, vec![Factor::Linear { block: Block::X, sign: -1, twice: 0 }], true, false).unwrap();
        assert!(g.eval_at(&[0], &[]).unwrap().is_zero());
    }

    #[test]
    fn contracts() {
        let bad = IntegrandSpec::custom(2, 0, vec![Factor::Power { block: Block::X, exp: 1 }], true, true).unwrap();
        assert!(matches!(jackson_partition_sum(&bad, 4), Err(Error::ContractViolation(_))));
        let undeclared = power(2, 1);
        assert!(matches!(jackson_partition_sum(&undeclared, 4), Err(Error::ContractViolation(_))));
        let neg = IntegrandSpec::custom(1, 0, vec![Factor::Linear { block: Block::X, sign: 1, twice: -1 }], true, false);
        assert!(neg.is_err());
    }
}
