mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #[test]
    fn laurent_ring_axioms(a in series(), b in series(), c in series()) {
        ring_axioms(&a, &b, &c)?;
    }

    #[test]
    fn inverse_is_inverse(a in unit_series(), t in 1i64..40) {
        inverse_roundtrip(&a, t)?;
    }

    #[test]
    fn partitions_match_generating_function(n in 1usize..=5, max in 0u32..=18) {
        partition_counts(n, max)?;
    }

    #[test]
    fn schur_is_homogeneous(
        (lambda, exps) in (small_partition(3, 5), distinct_exps()).prop_filter("length", |(l, e)| l.len() <= e.len()),
        shift in -3i64..6,
    ) {
        schur_homogeneity(&lambda, &exps, shift)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]
    #[test]
    fn verifiers_are_truncation_monotone(check in small_check(), k in 4u32..12, d in 0u32..4) {
        truncation_monotone(&check, k, k - d - 1)?;
    }
}
