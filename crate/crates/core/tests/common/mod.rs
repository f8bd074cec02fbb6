#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use qselberg::characters::CauchyIdentity;
use qselberg::harness::{Check, CrossExponent, PointStyle, GUARD};
use qselberg::partitions::{enum_partitions, partitions_of};
use qselberg::qexact::rat;
use qselberg::schur::{inverse_binomial_product, schur_at, GeomPoints};
use qselberg::{Composition, HalfExp, LaurentSeries, Partition};

pub fn series() -> impl Strategy<Value = LaurentSeries> {
    prop::collection::vec((-6i64..14, -4i64..5), 0..6)
        .prop_map(|terms| LaurentSeries::from_terms(terms.into_iter().map(|(e, c)| (e, rat(c)))))
}

pub fn unit_series() -> impl Strategy<Value = LaurentSeries> {
    (series(), -4i64..6, prop_oneof![Just(1i64), Just(-1), Just(2), Just(-3)]).prop_map(|(s, v, c)| {
        let tail = s.shift(v + 7);
        LaurentSeries::monomial(rat(c), v) + tail
    })
}

pub fn ring_axioms(a: &LaurentSeries, b: &LaurentSeries, c: &LaurentSeries) -> Result<(), TestCaseError> {
    prop_assert_eq!(a + b, b + a);
    prop_assert_eq!(a * b, b * a);
    prop_assert_eq!((a + b) + c, a + (b + c));
    prop_assert_eq!((a * b) * c, a * (b * c));
    prop_assert_eq!(a * (b + c), a * b + a * c);
    prop_assert_eq!(a + LaurentSeries::zero(), a.clone());
    prop_assert_eq!(a * LaurentSeries::one(), a.clone());
    prop_assert!((a + &(-a)).is_zero());
    Ok(())
}

pub fn inverse_roundtrip(a: &LaurentSeries, trunc: i64) -> Result<(), TestCaseError> {
    let inv = a.series_inv(trunc).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert!(a.mul_trunc(&inv, None).eq_mod(&LaurentSeries::one(), trunc));
    let quotient = LaurentSeries::one().series_div(a, trunc).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert!(quotient.eq_mod(&inv, trunc));
    Ok(())
}

/// The number of partitions of `k` into at most `n` parts is the coefficient
/// of `q^k` in `prod_{i<=n} 1/(1 - q^i)`.
pub fn partition_counts(n: usize, max: u32) -> Result<(), TestCaseError> {
    let exps: Vec<i64> = (1..=n as i64).map(|i| 2 * i).collect();
    let gf = inverse_binomial_product(&exps, 2 * max as i64 + 2).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let mut counts = vec![0i64; max as usize + 1];
    for p in enum_partitions(max, n) {
        prop_assert!(p.len() <= n);
        counts[p.size() as usize] += 1;
    }
    for k in 0..=max {
        prop_assert_eq!(rat(counts[k as usize]), gf.coeff(2 * k as i64));
        prop_assert_eq!(partitions_of(k, n).count() as i64, counts[k as usize]);
    }
    Ok(())
}

pub fn small_partition(max_len: usize, max_size: u32) -> impl Strategy<Value = Partition> {
    prop::collection::vec(0u32..=max_size, 0..=max_len).prop_filter_map("size", move |v| {
        let p = Partition::new(v).ok()?;
        (p.size() <= max_size).then_some(p)
    })
}

pub fn schur_homogeneity(lambda: &Partition, exps: &[i64], shift: i64) -> Result<(), TestCaseError> {
    let pts = GeomPoints::new(exps.iter().map(|&e| HalfExp(e)).collect()).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let base = schur_at(lambda, &pts).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let scaled = schur_at(lambda, &pts.scaled(HalfExp(shift))).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(scaled, base.shift(shift * lambda.size() as i64));
    Ok(())
}

pub fn distinct_exps() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::btree_set(-3i64..8, 1..4).prop_map(|s| s.into_iter().collect())
}

fn comp(entries: u32, m: usize) -> impl Strategy<Value = Composition> {
    prop::collection::vec(0..=entries, m).prop_map(Composition::new)
}

/// Small instances of every verifier.
pub fn small_check() -> impl Strategy<Value = Check> {
    let staircase = (1usize..=2, 1usize..=2).prop_flat_map(|(n, m)| (Just(n), comp(1, m), comp(1, m)));
    prop_oneof![
        staircase.clone().prop_map(|(n, r, s)| Check::Qko { n, r, s, k: 0 }),
        staircase.clone().prop_map(|(n, r, s)| Check::SchurForm { n, r, s, k: 0 }),
        staircase.prop_map(|(n, r, s)| Check::Ppar { n, r, s, k: 0 }),
        (1usize..=2, 0u32..=2, 0u32..=2, 1u32..=2).prop_map(|(n, r, s, m)| Check::Qselberg { n, r, s, m, k: 0 }),
        (1usize..=2, 0u32..=2, small_partition(2, 2))
            .prop_filter("length", |(l, _, mu)| mu.len() <= *l)
            .prop_map(|(l, r, mu)| Check::PparProfile { l, r, mu, k: 0 }),
        (1u8..=3, 1usize..=2, 0u32..=2, 0u32..=2).prop_map(|(which, n, r, s)| Check::Eval { which, n, r, s, k: 0 }),
        (1u8..=4, 1usize..=2, 0u32..=1, 0u32..=2).prop_map(|(which, n, r, s)| Check::Variant { which, n, r, s, k: 0 }),
        (0usize..=1, 1usize..=2, 0u32..=1, 0u32..=1, 0u32..=1)
            .prop_map(|(n, m, l, r, s)| Check::Rational { n, m, l, r, s, k: 0, cross: CrossExponent::Shifted }),
        (prop::sample::select(CauchyIdentity::ALL.to_vec()), 1usize..=2, 1usize..=2, prop::bool::ANY)
            .prop_filter("N >= n", |(w, big_n, n, _)| {
                if *w == CauchyIdentity::Rational { big_n >= &(n + 1) } else { big_n >= n }
            })
            .prop_map(|(which, big_n, n, half)| Check::Cauchy {
                which,
                big_n,
                n,
                m: usize::from(which == CauchyIdentity::Rational),
                k: 0,
                style: if half { PointStyle::Half } else { PointStyle::Int },
            }),
    ]
}

/// A verifier passing at order `k` passes at every lower order, and the
/// lower-order sides are truncations of the higher-order ones.
pub fn truncation_monotone(check: &Check, k: u32, lower: u32) -> Result<(), TestCaseError> {
    let hi = check.with_k(k).run(GUARD).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let lo = check.with_k(lower).run(GUARD).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert!(hi.pass, "{}", hi.summary());
    prop_assert!(lo.pass, "{}", lo.summary());
    prop_assert!(lo.trunc_twice <= hi.trunc_twice);
    prop_assert_eq!(&lo.lhs, &hi.lhs.clone().truncate(lo.trunc_twice));
    prop_assert_eq!(&lo.rhs, &hi.rhs.clone().truncate(lo.trunc_twice));
    Ok(())
}
