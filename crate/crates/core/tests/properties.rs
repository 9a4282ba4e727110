//! Engine soundness against brute-force linear algebra, degree by degree.

mod common;

use proptest::prelude::*;

fn check(r: common::Check) -> Result<(), TestCaseError> {
    r.map_err(TestCaseError::fail)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn colon_intersection_saturation_match_oracle(seed in any::<u64>()) {
        check(common::colon_intersection_saturation(seed))?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 40, ..ProptestConfig::default() })]

    #[test]
    fn groebner_basis_is_idempotent(seed in any::<u64>()) {
        check(common::groebner_idempotent(seed))?;
    }

    #[test]
    fn syzygies_annihilate_generators(seed in any::<u64>()) {
        check(common::syzygies_annihilate(seed))?;
    }

    #[test]
    fn resolutions_are_complexes_with_right_euler_characteristic(seed in any::<u64>()) {
        check(common::resolution_consistent(seed))?;
    }

    #[test]
    fn module_actions_commute(seed in any::<u64>()) {
        check(common::actions_commute(seed))?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 10, ..ProptestConfig::default() })]

    #[test]
    fn gorenstein_hilbert_functions_are_symmetric(seed in any::<u64>()) {
        check(common::gorenstein_symmetry(seed))?;
    }
}
