//! Determinants over exact Laurent polynomials.

use crate::error::Result;
use crate::qexact::LaurentSeries;

/// Largest size for which the Leibniz expansion is used.
pub const LEIBNIZ_MAX: usize = 6;

/// Determinant of a square matrix of exact Laurent polynomials.
pub fn det(m: &[Vec<LaurentSeries>]) -> Result<LaurentSeries> {
    if m.len() <= LEIBNIZ_MAX {
        Ok(det_leibniz(m))
    } else {
        det_bareiss(m)
    }
}

/// Sum over permutations, generated by Heap's algorithm with sign tracking.
pub fn det_leibniz(m: &[Vec<LaurentSeries>]) -> LaurentSeries {
    let n = m.len();
    if n == 0 {
        return LaurentSeries::one();
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    let mut sign = 1i32;
    let mut acc = LaurentSeries::zero();
    let term = |perm: &[usize]| -> LaurentSeries {
        let mut t = LaurentSeries::one();
        for (i, &j) in perm.iter().enumerate() {
            if m[i][j].is_zero() {
                return LaurentSeries::zero();
            }
            t = &t * &m[i][j];
        }
        t
    };
    acc = acc + term(&perm);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            sign = -sign;
            let t = term(&perm);
            acc = if sign > 0 { acc + t } else { acc - t };
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    acc
}

/// Fraction-free elimination; every division is exact.
pub fn det_bareiss(m: &[Vec<LaurentSeries>]) -> Result<LaurentSeries> {
    let n = m.len();
    if n == 0 {
        return Ok(LaurentSeries::one());
    }
    let mut a: Vec<Vec<LaurentSeries>> = m.to_vec();
    let mut negate = false;
    let mut prev = LaurentSeries::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(LaurentSeries::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev)?;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { -d } else { d })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qexact::rat;

    fn c(v: i64) -> LaurentSeries {
        LaurentSeries::constant(rat(v))
    }

    #[test]
    fn integer_matrices() {
        let m = vec![vec![c(2), c(1), c(0)], vec![c(1), c(3), c(1)], vec![c(0), c(1), c(4)]];
        assert_eq!(det_leibniz(&m), c(18));
        assert_eq!(det_bareiss(&m).unwrap(), c(18));
        let sing = vec![vec![c(1), c(2)], vec![c(2), c(4)]];
        assert_eq!(det_leibniz(&sing), c(0));
        assert_eq!(det_bareiss(&sing).unwrap(), c(0));
    }

    #[test]
    fn needs_pivot() {
        let m = vec![vec![c(0), c(1)], vec![c(1), c(0)]];
        assert_eq!(det_bareiss(&m).unwrap(), c(-1));
    }

    #[test]
    fn vandermonde_in_q() {
        // det(x_i^{N-j}) = prod_{i<j} (x_i - x_j) at x = (q^3, q, 1), N up to 8.
        for n in 1..=8usize {
            let xs: Vec<i64> = (0..n as i64).map(|i| 2 * i * i + 1).collect();
            let m: Vec<Vec<LaurentSeries>> = xs
                .iter()
                .map(|&x| (0..n).map(|j| LaurentSeries::q_int_pow(x * (n - 1 - j) as i64)).collect())
                .collect();
            let mut prod = LaurentSeries::one();
            for i in 0..n {
                for j in i + 1..n {
                    prod = prod * (LaurentSeries::q_int_pow(xs[i]) - LaurentSeries::q_int_pow(xs[j]));
                }
            }
            assert_eq!(det_bareiss(&m).unwrap(), prod, "bareiss n={n}");
            if n <= LEIBNIZ_MAX {
                assert_eq!(det_leibniz(&m), prod, "leibniz n={n}");
            }
        }
    }
}
