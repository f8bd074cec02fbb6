//! Classical-group characters and rational GL characters at q-power points.
//!
//! Each character is a ratio of two alternants. With points `x_i = q^{e_i}` on
//! the half grid and exponents `a_j` that may themselves be half-integers, the
//! entries `x_i^{±a_j}` live on a quarter grid, so determinants are taken in
//! `z = q^(1/4)`. The quotient is exact; [`char_at`] then maps it back to the
//! `q^(1/2)` grid when possible.

use std::fmt;

use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::partitions::{enum_partitions, Partition};
use crate::qexact::{rat, HalfExp, LaurentSeries};
use crate::schur::{schur_at, GeomPoints};

/// Which family of character.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CharKind {
    C,
    B,
    D,
    Bspin,
    Dspin,
    GlRational,
}

/// A character together with its highest-weight data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Character {
    /// Symplectic `s^C_<λ>`.
    C(Partition),
    /// Odd orthogonal `s^B_[λ]`.
    B(Partition),
    /// Even orthogonal `s^D_[λ]`.
    D(Partition),
    /// Spinor `s^B_[λ+1/2]`.
    Bspin(Partition),
    /// Spinor `s^D_[λ+1/2]`.
    Dspin(Partition),
    /// Rational `s_Λ(λ,μ)` with `Λ = (λ_1, ..., 0, ..., -μ_2, -μ_1)`.
    GlRational(Partition, Partition),
}

impl Character {
    pub fn kind(&self) -> CharKind {
        match self {
            Character::C(_) => CharKind::C,
            Character::B(_) => CharKind::B,
            Character::D(_) => CharKind::D,
            Character::Bspin(_) => CharKind::Bspin,
            Character::Dspin(_) => CharKind::Dspin,
            Character::GlRational(..) => CharKind::GlRational,
        }
    }

    pub fn with_kind(kind: CharKind, lambda: Partition) -> Self {
        match kind {
            CharKind::C => Character::C(lambda),
            CharKind::B => Character::B(lambda),
            CharKind::D => Character::D(lambda),
            CharKind::Bspin => Character::Bspin(lambda),
            CharKind::Dspin => Character::Dspin(lambda),
            CharKind::GlRational => Character::GlRational(lambda, Partition::empty()),
        }
    }
}

/// Points `x_i = q^{exps[i]}`; the characters also use the reciprocals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedPointList {
    exps: Vec<HalfExp>,
}

impl SignedPointList {
    pub fn new(exps: Vec<HalfExp>) -> Self {
        SignedPointList { exps }
    }

    pub fn from_ints(exps: &[i64]) -> Self {
        Self::new(exps.iter().map(|&e| HalfExp::int(e)).collect())
    }

    pub fn exps(&self) -> &[HalfExp] {
        &self.exps
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    /// Replaces the point `i` by its reciprocal.
    pub fn invert(&self, i: usize) -> Self {
        let mut exps = self.exps.clone();
        exps[i] = -exps[i];
        SignedPointList { exps }
    }
}

impl fmt::Display for SignedPointList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.exps.iter().map(|e| format!("q^{e}")).collect();
        write!(f, "({})", v.join(","))
    }
}

/// `z^{k} + sign z^{-k}` in quarter units.
fn alt_entry(k: i64, sign: i64) -> LaurentSeries {
    LaurentSeries::from_terms([(k, BigRational::one()), (-k, rat(sign))])
}

/// Alternant `det(x_i^{a_j} + sign x_i^{-a_j})` where `a_twice[j] = 2 a_j`.
/// With `sign = 0` the entries are the plain monomials `x_i^{a_j}`.
fn alternant(pts: &SignedPointList, a_twice: &[i64], sign: i64) -> Result<LaurentSeries> {
    let m: Vec<Vec<LaurentSeries>> = pts
        .exps
        .iter()
        .map(|e| {
            a_twice
                .iter()
                .map(|&a| {
                    let k = a * e.twice();
                    if sign == 0 {
                        LaurentSeries::monomial(BigRational::one(), k)
                    } else {
                        alt_entry(k, sign)
                    }
                })
                .collect()
        })
        .collect();
    linalg::det(&m)
}

/// Numerator and denominator alternants in quarter units.
fn alternant_pair(ch: &Character, pts: &SignedPointList) -> Result<(LaurentSeries, LaurentSeries)> {
    let n = pts.len();
    let rho = |j: usize| (n - 1 - j) as i64;
    let padded = |l: &Partition| l.padded(n);
    let twice = |v: Vec<i64>| v.into_iter().map(|x| 2 * x).collect::<Vec<_>>();
    let half = BigRational::new(1.into(), 2.into());
    Ok(match ch {
        Character::C(l) => {
            let l = padded(l)?;
            let num = twice((0..n).map(|j| l[j] as i64 + rho(j) + 1).collect());
            let den = twice((0..n).map(|j| rho(j) + 1).collect());
            (alternant(pts, &num, -1)?, alternant(pts, &den, -1)?)
        }
        Character::B(l) => {
            let l = padded(l)?;
            let num: Vec<i64> = (0..n).map(|j| 2 * (l[j] as i64 + rho(j)) + 1).collect();
            let den: Vec<i64> = (0..n).map(|j| 2 * rho(j) + 1).collect();
            (alternant(pts, &num, -1)?, alternant(pts, &den, -1)?)
        }
        Character::D(l) => {
            let l = padded(l)?;
            let num = twice((0..n).map(|j| l[j] as i64 + rho(j)).collect());
            let den_exps = twice((0..n).map(rho).collect());
            let mut den = alternant(pts, &den_exps, 1)?;
            if n > 0 && l[n - 1] > 0 {
                den = den.scale(&half);
            }
            (alternant(pts, &num, 1)?, den)
        }
        Character::Bspin(l) => {
            let l = padded(l)?;
            let num = twice((0..n).map(|j| l[j] as i64 + rho(j) + 1).collect());
            let den: Vec<i64> = (0..n).map(|j| 2 * rho(j) + 1).collect();
            (alternant(pts, &num, -1)?, alternant(pts, &den, -1)?)
        }
        Character::Dspin(l) => {
            let l = padded(l)?;
            let num: Vec<i64> = (0..n).map(|j| 2 * (l[j] as i64 + rho(j)) + 1).collect();
            let den_exps = twice((0..n).map(rho).collect());
            let den = alternant(pts, &den_exps, 1)?.scale(&half);
            (alternant(pts, &num, 1)?, den)
        }
        Character::GlRational(l, mu) => {
            if l.len() + mu.len() > n {
                return Err(Error::LengthExceeded { len: l.len() + mu.len(), max: n });
            }
            let big_lambda = rational_weight(l, mu, n);
            let num = twice((0..n).map(|j| big_lambda[j] + rho(j)).collect());
            let den = twice((0..n).map(rho).collect());
            (alternant(pts, &num, 0)?, alternant(pts, &den, 0)?)
        }
    })
}

/// `Λ(λ, μ) = (λ_1, ..., λ_{l(λ)}, 0, ..., 0, -μ_{l(μ)}, ..., -μ_1)` of length `n`.
pub fn rational_weight(lambda: &Partition, mu: &Partition, n: usize) -> Vec<i64> {
    let mut w = vec![0i64; n];
    for (i, &p) in lambda.parts().iter().enumerate() {
        w[i] = p as i64;
    }
    for (i, &p) in mu.parts().iter().enumerate() {
        w[n - 1 - i] = -(p as i64);
    }
    w
}

/// The character value as a Laurent polynomial in `z = q^(1/4)`.
pub fn char_at_quarter(ch: &Character, pts: &SignedPointList) -> Result<LaurentSeries> {
    let (num, den) = alternant_pair(ch, pts)?;
    if den.is_zero() {
        return Err(Error::DegenerateDenominator);
    }
    num.div_exact(&den)
}

/// The character value on the `q^(1/2)` grid; `OffGrid` when the value has
/// genuine quarter powers (spinor characters at half-integer points).
pub fn char_at(ch: &Character, pts: &SignedPointList) -> Result<LaurentSeries> {
    char_at_quarter(ch, pts)?.unstretch(2)
}

/// The five Cauchy-type identities for classical characters and the one for
/// rational GL characters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CauchyIdentity {
    C,
    B,
    Bspin,
    D,
    Dspin,
    Rational,
}

impl CauchyIdentity {
    pub const ALL: [CauchyIdentity; 6] = [
        CauchyIdentity::C,
        CauchyIdentity::B,
        CauchyIdentity::Bspin,
        CauchyIdentity::D,
        CauchyIdentity::Dspin,
        CauchyIdentity::Rational,
    ];

    pub fn id(self) -> &'static str {
        match self {
            CauchyIdentity::C => "cauchy-c",
            CauchyIdentity::B => "cauchy-b",
            CauchyIdentity::Bspin => "cauchy-bs",
            CauchyIdentity::D => "cauchy-d",
            CauchyIdentity::Dspin => "cauchy-ds",
            CauchyIdentity::Rational => "cauchy-rat",
        }
    }

    pub fn from_id(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.id() == s || c.id().trim_start_matches("cauchy-") == s)
    }

    fn kind(self) -> CharKind {
        match self {
            CauchyIdentity::C => CharKind::C,
            CauchyIdentity::B => CharKind::B,
            CauchyIdentity::Bspin => CharKind::Bspin,
            CauchyIdentity::D => CharKind::D,
            CauchyIdentity::Dspin => CharKind::Dspin,
            CauchyIdentity::Rational => CharKind::GlRational,
        }
    }
}

/// Both sides of a Cauchy-type identity in quarter units, modulo `z^trunc`.
#[derive(Clone, Debug)]
pub struct CauchySides {
    pub lhs: LaurentSeries,
    pub rhs: LaurentSeries,
    pub trunc: i64,
    /// Number of (λ, μ) terms summed on the left.
    pub terms: usize,
}

fn quarter(e: HalfExp) -> i64 {
    2 * e.twice()
}

/// `x^{1/2} + x^{-1/2}` for `x = q^e`, in quarter units.
fn spinor_factor(e: HalfExp) -> LaurentSeries {
    alt_entry(e.twice(), 1)
}

/// Evaluates both sides of a Cauchy-type identity with `x` points `xs`,
/// `u_j = q^{us[j]}` (and `v_j = q^{vs[j]}` for the rational identity), each
/// modulo `q^{k+1}`.
///
/// The left side sums over `λ ∈ Par_n` (and `μ ∈ Par_m`); a term's valuation
/// is bounded below by a linear function of `|λ|`, which decides where the sum
/// may stop.
pub fn cauchy_sides(
    which: CauchyIdentity,
    xs: &SignedPointList,
    us: &[HalfExp],
    vs: &[HalfExp],
    k: u32,
) -> Result<CauchySides> {
    let big_n = xs.len();
    let n = us.len();
    let m = vs.len();
    let trunc = 4 * (k as i64 + 1);
    let xq: Vec<i64> = xs.exps.iter().map(|&e| quarter(e)).collect();
    let uq: Vec<i64> = us.iter().map(|&e| quarter(e)).collect();
    let vq: Vec<i64> = vs.iter().map(|&e| quarter(e)).collect();
    let nonconv = |what: &str| Error::NonConvergent(what.to_string());

    if which == CauchyIdentity::Rational {
        if big_n < n + m {
            return Err(Error::Invalid(format!("rational identity needs N >= n + m, got {big_n} < {}", n + m)));
        }
    } else {
        if big_n < n {
            return Err(Error::Invalid(format!("need N >= n, got {big_n} < {n}")));
        }
        if !vs.is_empty() {
            return Err(Error::Invalid("v points only apply to the rational identity".into()));
        }
    }

    // Right-hand side.
    let mut denom_exps: Vec<i64> = Vec::new();
    let mut numer = LaurentSeries::one();
    let pair_products = |exps: &[i64], diagonal: bool| -> LaurentSeries {
        let mut acc = LaurentSeries::one();
        for i in 0..exps.len() {
            for j in i..exps.len() {
                if j > i || diagonal {
                    acc = acc * LaurentSeries::binomial(-1, exps[i] + exps[j]);
                }
            }
        }
        acc
    };
    match which {
        CauchyIdentity::Rational => {
            for &x in &xq {
                denom_exps.extend(uq.iter().map(|u| u + x));
                denom_exps.extend(vq.iter().map(|v| v - x));
            }
            for &u in &uq {
                for &v in &vq {
                    numer = numer * LaurentSeries::binomial(-1, u + v);
                }
            }
        }
        _ => {
            for &x in &xq {
                for &u in &uq {
                    denom_exps.push(u + x);
                    denom_exps.push(u - x);
                }
            }
            numer = pair_products(&uq, which == CauchyIdentity::D);
            match which {
                CauchyIdentity::B => {
                    for &u in &uq {
                        numer = numer * LaurentSeries::binomial(1, u);
                    }
                }
                CauchyIdentity::Dspin => {
                    for &u in &uq {
                        numer = numer * LaurentSeries::binomial(-1, u);
                    }
                }
                _ => {}
            }
            if matches!(which, CauchyIdentity::Bspin | CauchyIdentity::Dspin) {
                for &e in xs.exps() {
                    numer = numer * spinor_factor(e);
                }
            }
        }
    }
    if denom_exps.iter().any(|&e| e <= 0) {
        return Err(nonconv("a denominator factor 1 - x u has no positive valuation"));
    }
    let mut rhs = numer.truncate(trunc);
    for e in denom_exps {
        rhs = rhs.div_one_minus(&BigRational::one(), e, trunc)?;
    }

    // Left-hand side. Valuation bounds (quarter units) per unit of |λ| and |μ|.
    let (slope_l, slope_m, offset) = match which {
        CauchyIdentity::Rational => {
            let min_x = xq.iter().copied().min().unwrap_or(0);
            let max_x = xq.iter().copied().max().unwrap_or(0);
            let sl = uq.iter().copied().min().map_or(i64::MAX, |u| u + min_x);
            let sm = vq.iter().copied().min().map_or(i64::MAX, |v| v - max_x);
            (sl, sm, 0)
        }
        _ => {
            let max_abs = xq.iter().map(|x| x.abs()).max().unwrap_or(0);
            let sl = uq.iter().copied().min().map_or(i64::MAX, |u| u - max_abs);
            let off = if matches!(which, CauchyIdentity::Bspin | CauchyIdentity::Dspin) {
                xq.iter().map(|x| x.abs()).sum::<i64>() / 2
            } else {
                0
            };
            (sl, i64::MAX, off)
        }
    };
    if slope_l <= 0 || slope_m <= 0 {
        return Err(nonconv("character sum does not converge at these points"));
    }
    let max_size = |slope: i64| -> u32 {
        if slope == i64::MAX {
            0
        } else {
            ((trunc - 1 + offset) / slope).max(0) as u32
        }
    };
    let u_pts = GeomPoints::new(us.to_vec())?;
    let v_pts = GeomPoints::new(vs.to_vec())?;
    let mut lhs = LaurentSeries::zero().truncate(trunc);
    let mut terms = 0usize;
    for lambda in enum_partitions(max_size(slope_l), n) {
        let s_u = schur_at(&lambda, &u_pts)?.stretch(2);
        let budget_l = slope_l.saturating_mul(lambda.size() as i64) - offset;
        for mu in enum_partitions(max_size(slope_m), m) {
            let bound = budget_l + slope_m.saturating_mul(mu.size() as i64);
            if bound >= trunc {
                continue;
            }
            let ch = match which {
                CauchyIdentity::Rational => Character::GlRational(lambda.clone(), mu.clone()),
                _ => Character::with_kind(which.kind(), lambda.clone()),
            };
            let mut term = char_at_quarter(&ch, xs)? * &s_u;
            if m > 0 {
                term = term * schur_at(&mu, &v_pts)?.stretch(2);
            }
            if term.valuation().is_some_and(|v| v < bound) {
                return Err(Error::Invalid(format!("valuation bound violated at λ={lambda} μ={mu}")));
            }
            lhs = lhs + term;
            terms += 1;
        }
    }
    Ok(CauchySides { lhs, rhs, trunc, terms })
}

/// Weyl denominator of type C as a product, in quarter units:
/// `prod_i (x_i - x_i^{-1}) prod_{i<j} (x_i + x_i^{-1} - x_j - x_j^{-1})`.
pub fn weyl_denominator_c(pts: &SignedPointList) -> LaurentSeries {
    let n = pts.len();
    let xq: Vec<i64> = pts.exps.iter().map(|&e| quarter(e)).collect();
    let mut acc = LaurentSeries::one();
    for i in 0..n {
        acc = acc * alt_entry(xq[i], -1);
    }
    for i in 0..n {
        for j in i + 1..n {
            acc = acc * (alt_entry(xq[i], 1) - alt_entry(xq[j], 1));
        }
    }
    acc
}

/// `prod_{i=1}^N (x_i^{1/2} + x_i^{-1/2})` in quarter units.
pub fn spinor_product(pts: &SignedPointList) -> LaurentSeries {
    pts.exps.iter().map(|&e| spinor_factor(e)).product()
}

/// True when the value is zero (used for degeneracy probes).
pub fn is_degenerate(kind: CharKind, pts: &SignedPointList) -> bool {
    let ch = Character::with_kind(kind, Partition::empty());
    matches!(alternant_pair(&ch, pts), Ok((_, den)) if den.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qexact::rat;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn trivial_symplectic() {
        let pts = SignedPointList::new(vec![HalfExp(1)]);
        assert_eq!(char_at(&Character::C(p(&[])), &pts).unwrap(), LaurentSeries::one());
    }

    #[test]
    fn symplectic_vector() {
        let pts = SignedPointList::from_ints(&[1]);
        let got = char_at(&Character::C(p(&[1])), &pts).unwrap();
        assert_eq!(got, LaurentSeries::q_int_pow(1) + LaurentSeries::q_int_pow(-1));
    }

    #[test]
    fn spinor_trivial() {
        let pts = SignedPointList::from_ints(&[1]);
        let got = char_at(&Character::Bspin(p(&[])), &pts).unwrap();
        assert_eq!(got, LaurentSeries::q_pow(HalfExp(1)) + LaurentSeries::q_pow(HalfExp(-1)));
        // At a half-integer point the value has quarter powers.
        let half = SignedPointList::new(vec![HalfExp(1)]);
        assert_eq!(char_at(&Character::Bspin(p(&[])), &half), Err(Error::OffGrid));
        let z = char_at_quarter(&Character::Bspin(p(&[])), &half).unwrap();
        assert_eq!(z, LaurentSeries::from_terms([(1, rat(1)), (-1, rat(1))]));
    }

    #[test]
    fn orthogonal_vectors() {
        // SO(3) vector at x: x + 1 + 1/x. SO(4) vector at (x, y): x + 1/x + y + 1/y.
        let x = SignedPointList::from_ints(&[2]);
        let got = char_at(&Character::B(p(&[1])), &x).unwrap();
        assert_eq!(got, LaurentSeries::from_terms([(4, rat(1)), (0, rat(1)), (-4, rat(1))]));
        let xy = SignedPointList::from_ints(&[2, 1]);
        let got = char_at(&Character::D(p(&[1])), &xy).unwrap();
        assert_eq!(got, LaurentSeries::from_terms([(4, rat(1)), (-4, rat(1)), (2, rat(1)), (-2, rat(1))]));
        // λ_N > 0: s^D_[(1,1)] on two variables is the exterior square of the
        // vector representation, x y + 1/(x y) + x/y + y/x + 2, at x = q^2, y = q.
        let got = char_at(&Character::D(p(&[1, 1])), &xy).unwrap();
        let want =
            LaurentSeries::from_terms([(6, rat(1)), (-6, rat(1)), (2, rat(1)), (-2, rat(1)), (0, rat(2))]);
        assert_eq!(got, want);
    }

    #[test]
    fn rational_with_empty_mu_is_schur() {
        let pts = SignedPointList::from_ints(&[0, 1, 3]);
        let gp = GeomPoints::from_ints(&[0, 1, 3]).unwrap();
        for lambda in enum_partitions(4, 3) {
            let ch = Character::GlRational(lambda.clone(), Partition::empty());
            assert_eq!(char_at(&ch, &pts).unwrap(), schur_at(&lambda, &gp).unwrap());
        }
    }

    #[test]
    fn rational_dual_vector() {
        // Λ = (0, -1) on two variables is x^{-1} + y^{-1}.
        let pts = SignedPointList::from_ints(&[1, 2]);
        let ch = Character::GlRational(Partition::empty(), p(&[1]));
        let got = char_at(&ch, &pts).unwrap();
        assert_eq!(got, LaurentSeries::q_int_pow(-1) + LaurentSeries::q_int_pow(-2));
        let too_long = Character::GlRational(p(&[1, 1]), p(&[1]));
        assert!(matches!(char_at(&too_long, &pts), Err(Error::LengthExceeded { .. })));
    }

    #[test]
    fn degenerate_points() {
        // x = 1 kills the type B and C denominators.
        let pts = SignedPointList::from_ints(&[0]);
        assert_eq!(char_at(&Character::C(p(&[1])), &pts), Err(Error::DegenerateDenominator));
        assert!(is_degenerate(CharKind::B, &pts));
        assert!(!is_degenerate(CharKind::D, &pts));
    }

    #[test]
    fn denominator_matches_weyl_product() {
        for exps in [vec![3, 1], vec![5, 3, 1], vec![4, 2, 1]] {
            let pts = SignedPointList::new(exps.iter().map(|&e| HalfExp(e)).collect());
            let (_, den) = alternant_pair(&Character::C(Partition::empty()), &pts).unwrap();
            assert_eq!(den, weyl_denominator_c(&pts), "points {exps:?}");
        }
    }

    #[test]
    fn c_cauchy_small() {
        let xs = SignedPointList::new(vec![HalfExp(1)]);
        let sides = cauchy_sides(CauchyIdentity::C, &xs, &[HalfExp::int(2)], &[], 6).unwrap();
        assert!(sides.lhs.eq_mod(&sides.rhs, sides.trunc));
        // 1 / ((1 - q^{5/2})(1 - q^{3/2})) in quarter units.
        let want = crate::schur::inverse_binomial_product(&[10, 6], sides.trunc).unwrap();
        assert_eq!(sides.rhs, want);
    }

    #[test]
    fn d_cauchy_degenerate_n0() {
        let xs = SignedPointList::from_ints(&[1, 0]);
        let sides = cauchy_sides(CauchyIdentity::D, &xs, &[], &[], 5).unwrap();
        assert_eq!(sides.terms, 1);
        assert_eq!(sides.lhs, LaurentSeries::one().truncate(sides.trunc));
        assert_eq!(sides.rhs, LaurentSeries::one().truncate(sides.trunc));
    }

    #[test]
    fn rational_cauchy_example() {
        let xs = SignedPointList::from_ints(&[1, 2]);
        let sides =
            cauchy_sides(CauchyIdentity::Rational, &xs, &[HalfExp::int(3)], &[HalfExp::int(3)], 8).unwrap();
        assert!(sides.lhs.eq_mod(&sides.rhs, sides.trunc));
    }

    #[test]
    fn nonconvergent_points_rejected() {
        let xs = SignedPointList::from_ints(&[3]);
        let err = cauchy_sides(CauchyIdentity::C, &xs, &[HalfExp::int(2)], &[], 4).unwrap_err();
        assert!(matches!(err, Error::NonConvergent(_)));
    }
}
