mod common;

use common::*;
use proptest::prelude::*;
use ssforge::oracle;
use ssforge::Window;

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn kernel_cokernel_dual_stay_in_catalog((n, m, g) in module_and_multiplier()) {
        catalog_closure(n, m, g).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn rule_table_matches_truncation((n, m, g) in module_and_multiplier()) {
        truncation_exact(n, m, g, oracle::truncation_depth()).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn double_dual_is_identity(
        (n, id) in (1u32..=3).prop_flat_map(|n| (Just(n), proptest::sample::select(torsion_presets_for(n)))),
        s in -20i64..20, w in 1i64..24, f in -12i64..12, h in 1i64..16,
    ) {
        dualize_involution(n, id, Window { stems: (s, s + w), filts: (f, f + h), ys: (0, 1) })
            .map_err(TestCaseError::fail)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 96, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn einf_is_window_safe((n, id, w) in preset_and_window(3), g in (0i64..12, 0i64..12, 0i64..8, 0i64..8)) {
        window_safety(n, id, w, g).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn differentials_have_correct_degree((n, id, w) in preset_and_window(3)) {
        degree_audit(n, id, w).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn d_squared_vanishes((n, id, w) in preset_and_window(3)) {
        d_squared_zero(n, id, w).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn fixed_points_are_periodic(n in 1u32..=3, start in -40i64..40) {
        periodicity(n, start).map_err(TestCaseError::fail)?;
    }
}
