//! Invariants shared by the property tests and the acceptance gate.

#![allow(dead_code)]

use std::sync::OnceLock;

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use classpower::algebra::classify_support;
use classpower::arith::gcd;
use classpower::catalogue::build_catalogue;
use classpower::chartable::{central_character_residual, class_matrices, DixonOptions};
use classpower::criteria::{lemma_l1_check, theorem1_equivalence_check, AnalyzedGroup};
use classpower::{FiniteGroup, Perm};

pub const MAX_N: u32 = 6;

pub type Invariant = fn(&AnalyzedGroup) -> Result<(), TestCaseError>;

pub fn catalogue_groups() -> &'static [AnalyzedGroup] {
    static GROUPS: OnceLock<Vec<AnalyzedGroup>> = OnceLock::new();
    GROUPS.get_or_init(|| {
        build_catalogue()
            .iter()
            .map(|e| AnalyzedGroup::new(e.build().unwrap(), DixonOptions::default()).unwrap())
            .collect()
    })
}

fn perm_strategy(degree: usize) -> impl Strategy<Value = Perm> {
    Just((0..degree).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|images| Perm::from_images(images).unwrap())
}

/// Subgroups of `S_d`, `d ≤ 6`, generated by one to three random permutations.
pub fn random_group() -> impl Strategy<Value = FiniteGroup> {
    (2usize..=6)
        .prop_flat_map(|d| prop::collection::vec(perm_strategy(d), 1..=3))
        .prop_map(|gens| {
            FiniteGroup::enumerate(&gens, 720)
                .unwrap()
                .with_name("random")
        })
}

pub fn analyzed(g: FiniteGroup) -> AnalyzedGroup {
    AnalyzedGroup::new(g, DixonOptions::default()).unwrap()
}

/// Catalogue group by index or a random permutation group.
pub fn any_group() -> impl Strategy<Value = AnalyzedGroup> {
    let n = build_catalogue().len();
    prop_oneof![
        (0..n).prop_map(|i| catalogue_groups()[i].clone()),
        random_group().prop_map(analyzed),
    ]
}

pub fn class_equation_and_inverse_classes(ag: &AnalyzedGroup) -> Result<(), TestCaseError> {
    let (g, dec) = (&ag.group, &ag.classes);
    for i in 0..dec.len() {
        prop_assert_eq!(dec.size(i) * g.centralizer_order(dec.rep(i)), g.order());
    }
    for e in 0..g.order() {
        prop_assert_eq!(dec.class_of(g.inv(e)), dec.inverse_class(dec.class_of(e)));
    }
    Ok(())
}

pub fn mass_conservation(ag: &AnalyzedGroup) -> Result<(), TestCaseError> {
    let dec = &ag.classes;
    for i in 0..dec.len() {
        for j in 0..dec.len() {
            let mass = ag.sc.product_of_classes(i, j).total_mass(dec);
            prop_assert_eq!(mass, num_bigint::BigUint::from(dec.size(i) * dec.size(j)));
        }
        let powers = ag.sc.powers(i, MAX_N);
        for (r, ms) in powers.iter().enumerate() {
            let expected = num_bigint::BigUint::from(dec.size(i)).pow(r as u32 + 1);
            prop_assert_eq!(ms.total_mass(dec), expected);
        }
    }
    Ok(())
}

pub fn structure_constant_symmetries(ag: &AnalyzedGroup) -> Result<(), TestCaseError> {
    let dec = &ag.classes;
    let k = dec.len();
    let inv = |i| dec.inverse_class(i);
    for i in 0..k {
        for j in 0..k {
            for l in 0..k {
                let c = ag.sc.get(i, j, l);
                prop_assert_eq!(c, ag.sc.get(inv(i), inv(j), inv(l)));
                prop_assert_eq!(
                    c as usize * dec.size(l),
                    ag.sc.get(i, inv(l), inv(j)) as usize * dec.size(j)
                );
            }
        }
    }
    Ok(())
}

pub fn no_nontrivial_class_squares_to_itself(ag: &AnalyzedGroup) -> Result<(), TestCaseError> {
    for i in 1..ag.classes.len() {
        prop_assert_ne!(ag.sc.power(i, 2).support(), vec![i]);
    }
    Ok(())
}

pub fn union_with_inverse_classes_are_not_real(ag: &AnalyzedGroup) -> Result<(), TestCaseError> {
    let dec = &ag.classes;
    for i in 1..dec.len() {
        for (r, ms) in ag.sc.powers(i, MAX_N).iter().enumerate().skip(1) {
            let shape = classify_support(dec, i, ms);
            if shape.is_union_with_inverse() {
                prop_assert_ne!(dec.inverse_class(i), i, "class {} n={}", i, r + 1);
            }
        }
    }
    Ok(())
}

pub fn closed_commutator_sets_give_single_class_coprime_powers(
    ag: &AnalyzedGroup,
) -> Result<(), TestCaseError> {
    let (g, dec) = (&ag.group, &ag.classes);
    for i in 1..dec.len() {
        let cs = g.commutator_structures(dec.rep(i)).unwrap();
        if !cs.set_is_subgroup {
            continue;
        }
        let o = dec.element_order(i);
        for n in 2..=MAX_N {
            if gcd(n as u64, o) == 1 {
                let shape = classify_support(dec, i, &ag.sc.power(i, n));
                prop_assert!(
                    shape.is_single_class(),
                    "class {} n={}: {}",
                    i,
                    n,
                    shape.label()
                );
            }
        }
    }
    Ok(())
}

pub fn single_class_products_give_normal_solvable_subgroups(
    ag: &AnalyzedGroup,
) -> Result<(), TestCaseError> {
    let k = ag.classes.len();
    for a in 0..k {
        for b in 0..k {
            if let Some(c) = lemma_l1_check(ag, a, b).unwrap() {
                prop_assert!(c.holds, "{} {}: {}", a, b, c.details);
            }
        }
    }
    Ok(())
}

pub fn theorem1_conditions_agree(ag: &AnalyzedGroup) -> Result<(), TestCaseError> {
    for x in 0..ag.classes.len() {
        for n in 2..=MAX_N {
            let t = theorem1_equivalence_check(ag, x, n).unwrap();
            prop_assert!(t.consistent(), "class {} n={}: {:?}", x, n, t);
        }
    }
    Ok(())
}

pub fn table_powers_match_element_powers(ag: &AnalyzedGroup) -> Result<(), TestCaseError> {
    let (g, dec) = (&ag.group, &ag.classes);
    for l in 0..dec.len() {
        for n in 1..=2 * MAX_N as u64 {
            prop_assert_eq!(
                ag.table.class_of_power(l, n).unwrap(),
                dec.power_class(g, l, n)
            );
        }
    }
    let maps: Vec<&Vec<usize>> = ag.table.power_maps.values().collect();
    for p in &maps {
        for q in &maps {
            for l in 0..dec.len() {
                prop_assert_eq!(p[q[l]], q[p[l]]);
            }
        }
    }
    Ok(())
}

pub fn class_matrices_commute(ag: &AnalyzedGroup) -> Result<(), TestCaseError> {
    let ms = class_matrices(&ag.sc);
    for a in &ms {
        for b in &ms {
            prop_assert_eq!(a * b, b * a);
        }
    }
    Ok(())
}

pub fn central_characters_are_simultaneous_eigenvalues(
    ag: &AnalyzedGroup,
) -> Result<(), TestCaseError> {
    prop_assert!(central_character_residual(&ag.table, &ag.sc) < 10.0 * ag.table.tolerance);
    prop_assert!(ag.table.row_orthogonality_residual() < ag.table.tolerance);
    prop_assert!(ag.table.column_orthogonality_residual() < ag.table.tolerance);
    Ok(())
}

pub fn quotients_and_series(ag: &AnalyzedGroup) -> Result<(), TestCaseError> {
    let (g, dec) = (&ag.group, &ag.classes);
    let whole = g.whole_group();
    let solvable = g.is_solvable_set(&whole).unwrap();
    for i in 0..dec.len() {
        let n = g.normal_closure([dec.rep(i)]);
        let q = g.quotient(&n).unwrap();
        prop_assert_eq!(q.order() * n.count_ones(..), g.order());
        if solvable {
            prop_assert!(q.is_solvable_set(&q.whole_group()).unwrap());
        }
    }
    for series in [
        g.derived_series_sets(&whole).unwrap(),
        g.lower_central_series_sets(&whole).unwrap().0,
    ] {
        for pair in series.windows(2) {
            prop_assert!(g.is_invariant(&pair[1]));
            prop_assert!(pair[1].is_subset(&pair[0]));
            prop_assert!(pair[1].count_ones(..) < pair[0].count_ones(..));
        }
    }
    Ok(())
}

pub fn largest_normal_pi_prime_subgroups(ag: &AnalyzedGroup) -> Result<(), TestCaseError> {
    let (g, dec) = (&ag.group, &ag.classes);
    let primes = g.prime_divisors();
    let mut choices: Vec<Vec<u64>> = primes.iter().map(|&p| vec![p]).collect();
    choices.push(primes.clone());
    for pi in choices {
        let o = g.largest_normal_pi_prime(dec, &pi).unwrap();
        prop_assert!(o.is_normal);
        prop_assert!(pi.iter().all(|&p| !(o.order as u64).is_multiple_of(p)));
        for class in dec.classes() {
            let closure = g.normal_closure([class.rep]);
            if pi
                .iter()
                .all(|&p| !(closure.count_ones(..) as u64).is_multiple_of(p))
            {
                prop_assert!(o.contains(class.rep));
            }
        }
    }
    Ok(())
}

pub const INVARIANTS: &[(&str, Invariant)] = &[
    (
        "class_equation_and_inverse_classes",
        class_equation_and_inverse_classes,
    ),
    ("mass_conservation", mass_conservation),
    (
        "structure_constant_symmetries",
        structure_constant_symmetries,
    ),
    (
        "no_nontrivial_class_squares_to_itself",
        no_nontrivial_class_squares_to_itself,
    ),
    (
        "union_with_inverse_classes_are_not_real",
        union_with_inverse_classes_are_not_real,
    ),
    (
        "closed_commutator_sets_give_single_class_coprime_powers",
        closed_commutator_sets_give_single_class_coprime_powers,
    ),
    (
        "single_class_products_give_normal_solvable_subgroups",
        single_class_products_give_normal_solvable_subgroups,
    ),
    ("theorem1_conditions_agree", theorem1_conditions_agree),
    (
        "table_powers_match_element_powers",
        table_powers_match_element_powers,
    ),
    ("class_matrices_commute", class_matrices_commute),
    (
        "central_characters_are_simultaneous_eigenvalues",
        central_characters_are_simultaneous_eigenvalues,
    ),
    ("quotients_and_series", quotients_and_series),
    (
        "largest_normal_pi_prime_subgroups",
        largest_normal_pi_prime_subgroups,
    ),
];
