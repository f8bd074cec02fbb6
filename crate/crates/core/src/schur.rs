//! Schur polynomials evaluated at geometric points `q^{a_1}, ..., q^{a_N}`.
//!
//! The main route is the bialternant: a determinant of monomials divided
//! exactly by the Vandermonde product. An independent semistandard-tableau
//! enumeration serves as an oracle on small shapes, and the principal
//! specialization `s_λ(1, q, ..., q^{n+s-1})` also has a closed product form.

use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::partitions::Partition;
use crate::qexact::{binom, pochhammer_q_pow, qq_pochhammer, HalfExp, LaurentSeries};

/// Specialization points `x_i = q^{exps[i]}`, pairwise distinct.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeomPoints {
    exps: Vec<HalfExp>,
}

impl GeomPoints {
    pub fn new(exps: Vec<HalfExp>) -> Result<Self> {
        for (i, a) in exps.iter().enumerate() {
            if exps[..i].contains(a) {
                return Err(Error::Invalid(format!("repeated point q^{a}")));
            }
        }
        Ok(GeomPoints { exps })
    }

    /// `(q^{start}, q^{start+1}, ..., q^{start+count-1})`.
    pub fn consecutive(start: i64, count: usize) -> Self {
        GeomPoints { exps: (0..count as i64).map(|i| HalfExp::int(start + i)).collect() }
    }

    pub fn from_ints(exps: &[i64]) -> Result<Self> {
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

    /// Every point multiplied by `q^c`.
    pub fn scaled(&self, c: HalfExp) -> Self {
        GeomPoints { exps: self.exps.iter().map(|&a| a + c).collect() }
    }
}

/// `s_λ(q^{a_1}, ..., q^{a_N})` by the bialternant formula.
pub fn schur_at(lambda: &Partition, pts: &GeomPoints) -> Result<LaurentSeries> {
    let n = pts.len();
    let parts = lambda.padded(n)?;
    if n == 0 {
        return Ok(LaurentSeries::one());
    }
    let numer: Vec<Vec<LaurentSeries>> = pts
        .exps
        .iter()
        .map(|a| {
            (0..n)
                .map(|j| LaurentSeries::q_pow(HalfExp(a.twice() * (parts[j] as i64 + (n - 1 - j) as i64))))
                .collect()
        })
        .collect();
    let num = linalg::det(&numer)?;
    let mut vandermonde = LaurentSeries::one();
    for i in 0..n {
        for j in i + 1..n {
            vandermonde = vandermonde * (LaurentSeries::q_pow(pts.exps[i]) - LaurentSeries::q_pow(pts.exps[j]));
        }
    }
    num.div_exact(&vandermonde)
}

/// Size limits for the tableau oracle.
pub const SSYT_MAX_SIZE: u32 = 8;
pub const SSYT_MAX_POINTS: usize = 6;

/// Sum over semistandard tableaux of shape λ with entries in `1..=N` of
/// `prod q^{a_entry}`.
pub fn schur_ssyt_oracle(lambda: &Partition, pts: &GeomPoints) -> Result<LaurentSeries> {
    let n = pts.len();
    if lambda.size() > SSYT_MAX_SIZE || n > SSYT_MAX_POINTS {
        return Err(Error::TooLarge(format!(
            "tableau oracle limited to |λ| <= {SSYT_MAX_SIZE}, N <= {SSYT_MAX_POINTS}"
        )));
    }
    if lambda.len() > n {
        // No column-strict filling exists; the polynomial vanishes.
        return Ok(LaurentSeries::zero());
    }
    let shape = lambda.parts();
    let cells: Vec<(usize, usize)> = shape
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len as usize).map(move |c| (r, c)))
        .collect();
    let mut grid: Vec<Vec<usize>> = shape.iter().map(|&l| vec![0; l as usize]).collect();
    let mut weights: Vec<i64> = Vec::new();
    fill_ssyt(&cells, 0, &mut grid, n, 0, pts, &mut weights);
    Ok(LaurentSeries::from_terms(weights.into_iter().map(|w| (w, BigRational::one()))))
}

fn fill_ssyt(
    cells: &[(usize, usize)],
    idx: usize,
    grid: &mut [Vec<usize>],
    n: usize,
    weight: i64,
    pts: &GeomPoints,
    out: &mut Vec<i64>,
) {
    if idx == cells.len() {
        out.push(weight);
        return;
    }
    let (r, c) = cells[idx];
    let lo_row = if c > 0 { grid[r][c - 1] } else { 0 };
    let lo_col = if r > 0 { grid[r - 1][c] + 1 } else { 0 };
    for v in lo_row.max(lo_col)..n {
        grid[r][c] = v;
        fill_ssyt(cells, idx + 1, grid, n, weight + pts.exps[v].twice(), pts, out);
    }
}

/// `s_λ(1, q, ..., q^{n+s-1})` by the closed product
/// `q^{-C(n,3)} / prod_{h=s}^{n+s-1} (q;q)_h * prod_i (q^{λ_i+n-i+1};q)_s * prod_{i<j} (q^{k_j} - q^{k_i})`
/// with `k_i = λ_i + n - i`. The division is exact.
pub fn principal_spec(lambda: &Partition, n: usize, s: u32) -> Result<LaurentSeries> {
    let (numer, denom) = principal_spec_parts(lambda, n, s)?;
    numer.div_exact(&denom)
}

/// [`principal_spec`] expanded modulo `t^trunc` by series division, which is
/// much cheaper when only low-order terms matter.
pub fn principal_spec_mod(lambda: &Partition, n: usize, s: u32, trunc: i64) -> Result<LaurentSeries> {
    let (numer, denom) = principal_spec_parts(lambda, n, s)?;
    numer.series_div(&denom, trunc)
}

fn principal_spec_parts(lambda: &Partition, n: usize, s: u32) -> Result<(LaurentSeries, LaurentSeries)> {
    let parts = lambda.padded(n)?;
    let k: Vec<i64> = (0..n).map(|i| parts[i] as i64 + (n - 1 - i) as i64).collect();
    let mut numer = LaurentSeries::q_int_pow(-binom(n as i64, 3));
    for &ki in &k {
        numer = numer * pochhammer_q_pow(HalfExp::int(ki + 1), s);
    }
    for i in 0..n {
        for j in i + 1..n {
            numer = numer * (LaurentSeries::q_int_pow(k[j]) - LaurentSeries::q_int_pow(k[i]));
        }
    }
    let denom: LaurentSeries = (s..n as u32 + s).map(qq_pochhammer).product();
    Ok((numer, denom))
}

fn require_positive(exps: impl IntoIterator<Item = i64>) -> Result<Vec<i64>> {
    let v: Vec<i64> = exps.into_iter().collect();
    if let Some(bad) = v.iter().find(|&&e| e <= 0) {
        return Err(Error::NonConvergent(format!("factor 1 - q^({bad}/2) has no positive valuation")));
    }
    Ok(v)
}

/// `1 / prod_i (1 - c t^{e_i})` modulo `t^trunc`; every `e_i` must be positive.
pub fn inverse_binomial_product(exps: &[i64], trunc: i64) -> Result<LaurentSeries> {
    let mut acc = LaurentSeries::one().truncate(trunc);
    for &e in exps {
        acc = acc.div_one_minus(&BigRational::one(), e, trunc)?;
    }
    Ok(acc)
}

/// Right-hand side of the Schur–Littlewood identity,
/// `1 / (prod_i (1 - x_i) prod_{i<j} (1 - x_i x_j))`, modulo `t^trunc`.
pub fn littlewood_rhs(pts: &GeomPoints, trunc: i64) -> Result<LaurentSeries> {
    let a: Vec<i64> = pts.exps.iter().map(|e| e.twice()).collect();
    let mut exps = a.clone();
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            exps.push(a[i] + a[j]);
        }
    }
    inverse_binomial_product(&require_positive(exps)?, trunc)
}

/// Right-hand side of the Cauchy identity, `1 / prod_{i,j} (1 - x_i y_j)`,
/// modulo `t^trunc`.
pub fn cauchy_rhs(xs: &GeomPoints, ys: &GeomPoints, trunc: i64) -> Result<LaurentSeries> {
    let exps = xs
        .exps
        .iter()
        .flat_map(|a| ys.exps.iter().map(move |b| a.twice() + b.twice()));
    inverse_binomial_product(&require_positive(exps)?, trunc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::enum_partitions;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn q(coeffs: &[i64]) -> LaurentSeries {
        LaurentSeries::from_q_coeffs(coeffs)
    }

    #[test]
    fn bialternant_examples() {
        let pts3 = GeomPoints::consecutive(0, 3);
        assert_eq!(schur_at(&p(&[]), &pts3).unwrap(), LaurentSeries::one());
        assert_eq!(schur_at(&p(&[1]), &GeomPoints::consecutive(0, 2)).unwrap(), q(&[1, 1]));
        assert_eq!(schur_at(&p(&[2, 1]), &pts3).unwrap(), q(&[0, 1, 2, 2, 2, 1]));
        assert_eq!(
            schur_at(&p(&[1, 1, 1, 1]), &pts3),
            Err(Error::LengthExceeded { len: 4, max: 3 })
        );
    }

    #[test]
    fn oracle_examples() {
        let pts3 = GeomPoints::consecutive(0, 3);
        let pts2 = GeomPoints::consecutive(0, 2);
        assert_eq!(schur_ssyt_oracle(&p(&[1]), &pts3).unwrap(), q(&[1, 1, 1]));
        assert_eq!(schur_ssyt_oracle(&p(&[1, 1]), &pts2).unwrap(), q(&[0, 1]));
        assert_eq!(schur_ssyt_oracle(&p(&[2]), &pts2).unwrap(), q(&[1, 1, 1]));
        assert_eq!(schur_ssyt_oracle(&p(&[2, 1]), &pts3).unwrap(), q(&[0, 1, 2, 2, 2, 1]));
        assert!(matches!(schur_ssyt_oracle(&p(&[9]), &pts2), Err(Error::TooLarge(_))));
    }

    #[test]
    fn bialternant_matches_tableaux() {
        let point_sets = [
            GeomPoints::consecutive(0, 1),
            GeomPoints::consecutive(0, 2),
            GeomPoints::consecutive(0, 3),
            GeomPoints::consecutive(0, 4),
            GeomPoints::from_ints(&[2, 5, 7]).unwrap(),
            GeomPoints::new(vec![HalfExp(1), HalfExp(4), HalfExp(-3)]).unwrap(),
        ];
        for pts in &point_sets {
            for lambda in enum_partitions(6, pts.len()) {
                assert_eq!(
                    schur_at(&lambda, pts).unwrap(),
                    schur_ssyt_oracle(&lambda, pts).unwrap(),
                    "λ={lambda} pts={pts:?}"
                );
            }
        }
    }

    #[test]
    fn principal_examples() {
        assert_eq!(principal_spec(&p(&[1]), 2, 1).unwrap(), q(&[1, 1, 1]));
        assert_eq!(principal_spec(&p(&[]), 3, 2).unwrap(), LaurentSeries::one());
        assert_eq!(principal_spec(&p(&[2, 1]), 3, 0).unwrap(), q(&[0, 1, 2, 2, 2, 1]));
        let m = principal_spec_mod(&p(&[2, 1]), 3, 0, 8).unwrap();
        assert!(m.eq_mod(&q(&[0, 1, 2, 2]), 8));
    }

    #[test]
    fn littlewood_and_cauchy_examples() {
        let one_pt = GeomPoints::from_ints(&[1]).unwrap();
        assert!(littlewood_rhs(&one_pt, 6).unwrap().eq_mod(&q(&[1, 1, 1]), 6));
        assert!(cauchy_rhs(&one_pt, &one_pt, 8).unwrap().eq_mod(&q(&[1, 0, 1, 0]), 8));
        let two = GeomPoints::from_ints(&[1, 2]).unwrap();
        let lw = littlewood_rhs(&two, 8).unwrap();
        assert_eq!(lw, q(&[1, 1, 2, 3]).truncate(8));
        let zero_pt = GeomPoints::from_ints(&[0]).unwrap();
        assert!(matches!(littlewood_rhs(&zero_pt, 6), Err(Error::NonConvergent(_))));
    }
}
