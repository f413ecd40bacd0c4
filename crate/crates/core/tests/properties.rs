mod support;

use proptest::prelude::*;

use classpower::criteria::{render_text, scan_group, ScanOptions, ScanSummary};
use support::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn class_equation_and_inverse_classes(ag in any_group()) {
        support::class_equation_and_inverse_classes(&ag)?;
    }

    #[test]
    fn mass_conservation(ag in any_group()) {
        support::mass_conservation(&ag)?;
    }

    #[test]
    fn structure_constant_symmetries(ag in any_group()) {
        support::structure_constant_symmetries(&ag)?;
    }

    #[test]
    fn no_nontrivial_class_squares_to_itself(ag in any_group()) {
        support::no_nontrivial_class_squares_to_itself(&ag)?;
    }

    #[test]
    fn union_with_inverse_classes_are_not_real(ag in any_group()) {
        support::union_with_inverse_classes_are_not_real(&ag)?;
    }

    #[test]
    fn closed_commutator_sets_give_single_class_coprime_powers(ag in any_group()) {
        support::closed_commutator_sets_give_single_class_coprime_powers(&ag)?;
    }

    #[test]
    fn single_class_products_give_normal_solvable_subgroups(ag in any_group()) {
        support::single_class_products_give_normal_solvable_subgroups(&ag)?;
    }

    #[test]
    fn theorem1_conditions_agree(ag in any_group()) {
        support::theorem1_conditions_agree(&ag)?;
    }

    #[test]
    fn table_powers_match_element_powers(ag in any_group()) {
        support::table_powers_match_element_powers(&ag)?;
    }

    #[test]
    fn class_matrices_commute(ag in any_group()) {
        support::class_matrices_commute(&ag)?;
    }

    #[test]
    fn central_characters_are_simultaneous_eigenvalues(ag in any_group()) {
        support::central_characters_are_simultaneous_eigenvalues(&ag)?;
    }

    #[test]
    fn quotients_and_series(ag in any_group()) {
        support::quotients_and_series(&ag)?;
    }

    #[test]
    fn largest_normal_pi_prime_subgroups(ag in any_group()) {
        support::largest_normal_pi_prime_subgroups(&ag)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_groups_scan_clean(g in random_group()) {
        let ag = analyzed(g);
        let reports = scan_group(&ag, &ScanOptions { max_n: 4, ..ScanOptions::default() }).unwrap();
        prop_assert!(ScanSummary::of(&reports).is_clean(), "{}", render_text(&reports));
    }
}
