//! Structural conclusions verified directly on the group for each shape.

use fixedbitset::FixedBitSet;

use super::character::bcor_check;
use super::scan::AnalyzedGroup;
use super::Conclusion;
use crate::arith;
use crate::chartable::CharacterTable;
use crate::error::CriteriaError;

fn is_power_of_two(n: u64) -> bool {
    n.is_power_of_two()
}

fn describe_set(set: &FixedBitSet) -> String {
    format!("{} elements", set.count_ones(..))
}

/// The three verdicts of the single-class equivalence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Theorem1 {
    /// `K^n` is one class (support of the exact power).
    pub a: bool,
    /// `C(x) = C(x^n)` and `x⁻¹K` is a normal subgroup (element sets).
    pub b: bool,
    /// Centralizer orders from the table agree and `|χ(x)| ∈ {0, χ(1)}`.
    pub c: bool,
}

impl Theorem1 {
    pub fn consistent(&self) -> bool {
        self.a == self.b && self.b == self.c
    }
}

/// Character side of the equivalence, usable on a bare table.
pub(crate) fn theorem1_c(table: &CharacterTable, x: usize, n: u32) -> Result<bool, CriteriaError> {
    let xn = table.class_of_power(x, n as u64)?;
    let centralizer = |l: usize| -> f64 { table.values.iter().map(|row| row[l].norm_sqr()).sum() };
    let (cx, cxn) = (centralizer(x), centralizer(xn));
    let same_centralizer = (cx - cxn).abs() <= 1e-6 * cx.max(1.0);
    let tol = table.tolerance;
    let rows_ok = table.values.iter().all(|row| {
        let v = row[x].norm();
        let deg = row[0].re;
        v <= tol * (1.0 + deg) || (v - deg).abs() <= tol * (1.0 + deg)
    });
    Ok(same_centralizer && rows_ok)
}

pub fn theorem1_equivalence_check(
    ag: &AnalyzedGroup,
    x: usize,
    n: u32,
) -> Result<Theorem1, CriteriaError> {
    let g = &ag.group;
    let a = ag.sc.power(x, n).support().len() == 1;
    let rep = ag.classes.rep(x);
    let xn = g.pow(rep, n as u64);
    let shifted = g.set_of(
        ag.classes
            .class(x)
            .members
            .iter()
            .map(|&k| g.mul(g.inv(rep), k)),
    );
    let b = g.centralizer_order(rep) == g.centralizer_order(xn)
        && g.is_subgroup(&shifted)
        && g.is_invariant(&shifted);
    let c = theorem1_c(&ag.table, x, n)?;
    Ok(Theorem1 { a, b, c })
}

/// Conclusions for `K^n` a single class: solvability of `⟨K⟩` and the
/// power chain, plus the periodicity and real-class refinements when they
/// apply.
pub fn theorem_a_verify(
    ag: &AnalyzedGroup,
    x: usize,
    n: u32,
    max_n: u32,
) -> Result<Vec<Conclusion>, CriteriaError> {
    let classes = &ag.classes;
    let o = classes.element_order(x);
    let size = classes.size(x);
    let reach = (max_n as u64).max(o + 1) as u32;
    let powers = ag.sc.powers(x, reach);
    let support = |r: u32| powers[r as usize - 1].support();
    let generated = ag.generated(x)?;
    let solvable = generated.is_solvable();
    let mut out = vec![Conclusion::new(
        "theorem_a.solvable",
        solvable,
        format!(
            "|<K>| = {}, derived length {:?}",
            generated.order, generated.derived_length
        ),
    )];

    let bad_sizes: Vec<u32> = (1..=max_n)
        .filter(|&r| powers[r as usize - 1].support_elements(classes) != size)
        .collect();
    out.push(Conclusion::new(
        "corollary_c1.constant_size",
        bad_sizes.is_empty(),
        format!("|K| = {size}, sizes differ at r = {bad_sizes:?}"),
    ));
    let after = support(o as u32 + 1);
    out.push(Conclusion::new(
        "corollary_c1.power_o_plus_1",
        after == [x],
        format!("o(x) = {o}, support {after:?}"),
    ));
    let before = support(o as u32 - 1);
    out.push(Conclusion::new(
        "corollary_c1.power_o_minus_1",
        before == [classes.inverse_class(x)],
        format!(
            "support {before:?}, inverse class {}",
            classes.inverse_class(x)
        ),
    ));
    let coprime_fail: Vec<u32> = (1..=max_n)
        .filter(|&m| arith::gcd(m as u64, o) == 1 && support(m).len() != 1)
        .collect();
    out.push(Conclusion::new(
        "corollary_c1.coprime_powers",
        coprime_fail.is_empty(),
        format!("failing m = {coprime_fail:?}"),
    ));
    if arith::is_prime(o) {
        out.push(Conclusion::new(
            "theorem_nocfsg.prime_order",
            solvable,
            format!("o(x) = {o}"),
        ));
    }
    if is_power_of_two(o) {
        out.push(Conclusion::new(
            "theorem_nocfsg.two_element",
            solvable,
            format!("o(x) = {o}"),
        ));
    }

    let d = support(n)[0];
    if d == x {
        out.extend(corollary_c2(ag, x, n, max_n, &powers));
    }
    if classes.inverse_class(d) == d {
        out.extend(nocfsgr_verify(ag, x, n, max_n)?);
    }
    Ok(out)
}

/// `K^n = K`: powers repeat with period `n − 1` and `K^{n−1} = [x, G]` is
/// normal; the primes of `o(x)` divide `n − 1`.
fn corollary_c2(
    ag: &AnalyzedGroup,
    x: usize,
    n: u32,
    max_n: u32,
    powers: &[crate::algebra::ClassMultiset],
) -> Vec<Conclusion> {
    let g = &ag.group;
    let support = |r: u32| powers[r as usize - 1].support();
    let mut mismatches = Vec::new();
    for k in 1.. {
        let base = k * (n - 1);
        if base + 1 > max_n {
            break;
        }
        for r in 1..=max_n - base {
            if support(base + r) != support(r) {
                mismatches.push(base + r);
            }
        }
    }
    let period = Conclusion::new(
        "corollary_c2.periodicity",
        mismatches.is_empty(),
        format!("period n - 1 = {}, mismatches at {mismatches:?}", n - 1),
    );
    let below = ag.classes.element_set(support(n - 1));
    let commutators = g.commutator_set(ag.classes.rep(x));
    let normal = g.is_subgroup(&below) && g.is_invariant(&below);
    let comm = Conclusion::new(
        "corollary_c2.commutator_set",
        below == commutators && normal,
        format!(
            "K^(n-1): {}, [x,G]: {}",
            describe_set(&below),
            describe_set(&commutators)
        ),
    );
    let o = ag.classes.element_order(x);
    let divides = arith::prime_divisors(o)
        .into_iter()
        .all(|p| (n as u64 - 1).is_multiple_of(p));
    let primes = Conclusion::new(
        "corollary_c2.prime_divisors",
        divides,
        format!("o(x) = {o}, n - 1 = {}", n - 1),
    );
    vec![period, comm, primes]
}

/// `K^n = D` with `D` real.
///
/// The odd-size case is only checked for nontrivial `D`: for `D = {1}` the
/// exponent condition fails already in the group of order 2.
pub fn nocfsgr_verify(
    ag: &AnalyzedGroup,
    x: usize,
    n: u32,
    max_n: u32,
) -> Result<Vec<Conclusion>, CriteriaError> {
    let classes = &ag.classes;
    let g = &ag.group;
    let d = classes.power_class(g, x, n as u64);
    let o = classes.element_order(x);
    let generated = ag.generated(x)?;
    let mut out = vec![Conclusion::new(
        "theorem_nocfsgr.solvable",
        generated.is_solvable(),
        format!("|<K>| = {}", generated.order),
    )];
    let cube = ag.sc.power(d, 3).support();
    out.push(Conclusion::new(
        "theorem_nocfsgr.d_cubed",
        cube == [d],
        format!("D = {d}, support of D^3 {cube:?}"),
    ));
    let od = classes.element_order(d);
    out.push(Conclusion::new(
        "theorem_nocfsgr.two_elements",
        is_power_of_two(od),
        format!("o(d) = {od}"),
    ));
    if n.is_power_of_two() && d != 0 {
        let a = n.trailing_zeros();
        let size = classes.size(x);
        out.push(Conclusion::new(
            "theorem_nocfsgr.case_a",
            size % 2 == 1 && o == 1u64 << (a + 1),
            format!("n = 2^{a}, |K| = {size}, o(x) = {o}"),
        ));
    }
    if d == x {
        out.push(Conclusion::new(
            "theorem_nocfsgr.case_b_two_element",
            is_power_of_two(o),
            format!("o(x) = {o}"),
        ));
        let powers = ag.sc.powers(x, max_n.max(2));
        let odd_fail: Vec<u32> = (1..=max_n)
            .step_by(2)
            .filter(|&m| powers[m as usize - 1].support() != [x])
            .collect();
        out.push(Conclusion::new(
            "theorem_nocfsgr.case_b_odd_powers",
            odd_fail.is_empty(),
            format!("failing m = {odd_fail:?}"),
        ));
        let square = classes.element_set(powers[1].support());
        let commutators = g.commutator_set(classes.rep(x));
        out.push(Conclusion::new(
            "theorem_nocfsgr.case_b_square",
            square == commutators && g.is_subgroup(&square) && g.is_invariant(&square),
            format!(
                "K^2: {}, [x,G]: {}",
                describe_set(&square),
                describe_set(&commutators)
            ),
        ));
    }
    Ok(out)
}

/// `K^n = {1} ∪ D`: `KK⁻¹ = {1} ∪ D` with `⟨K⟩` solvable, plus the
/// character identity for every irreducible.
pub fn theorem_b_verify(
    ag: &AnalyzedGroup,
    x: usize,
    d: usize,
) -> Result<Vec<Conclusion>, CriteriaError> {
    let kk = ag
        .sc
        .product_of_classes(x, ag.classes.inverse_class(x))
        .support();
    let generated = ag.generated(x)?;
    let identity = bcor_check(&ag.table, x, d);
    Ok(vec![
        Conclusion::new(
            "theorem_b.kk_inverse",
            kk == [0, d],
            format!("support of KK^-1 {kk:?}, D = {d}"),
        ),
        Conclusion::new(
            "theorem_b.solvable",
            generated.is_solvable(),
            format!("|<K>| = {}", generated.order),
        ),
        Conclusion::new(
            "theorem_b.character_identity",
            identity.holds,
            match identity.witness {
                Some(w) => format!("row {} residual {:e}", w.row, w.residual),
                None => format!("max residual {:e}", identity.max_residual),
            },
        ),
    ])
}

/// `K^n = D ∪ D⁻¹` with `D` the class of `x^n`.
pub fn theorem_c_verify(
    ag: &AnalyzedGroup,
    x: usize,
    n: u32,
) -> Result<Vec<Conclusion>, CriteriaError> {
    let classes = &ag.classes;
    let d = classes.power_class(&ag.group, x, n as u64);
    let (k, dsize) = (classes.size(x), classes.size(d));
    let generated = ag.generated(x)?;
    let mut out = vec![Conclusion::new(
        "theorem_c.size",
        2 * dsize == k || dsize == k,
        format!("|K| = {k}, |D| = {dsize}"),
    )];
    if 2 * dsize == k {
        out.push(Conclusion::new(
            "theorem_c.solvable",
            generated.is_solvable(),
            format!("|<K>| = {}", generated.order),
        ));
    }
    out.push(Conclusion::new(
        "theorem_c.non_real",
        classes.inverse_class(x) != x,
        format!("K^-1 = class {}", classes.inverse_class(x)),
    ));
    out.push(Conclusion::new(
        "conjecture_3.solvable",
        generated.is_solvable(),
        format!(
            "|<K>| = {}, derived length {:?}",
            generated.order, generated.derived_length
        ),
    ));
    Ok(out)
}

/// `K² = K ∪ K⁻¹`: `⟨K⟩` is solvable and `x` has prime-power order; the set
/// identities use `S = KK⁻¹ \ ({1} ∪ K ∪ K⁻¹)`.
pub fn theorem_d_verify(ag: &AnalyzedGroup, x: usize) -> Result<Vec<Conclusion>, CriteriaError> {
    let g = &ag.group;
    let classes = &ag.classes;
    let k = classes.element_set([x]);
    let kinv = classes.element_set([classes.inverse_class(x)]);
    let kk = g.product_set(&k, &kinv);
    let mut small = classes.element_set([0]);
    small.union_with(&k);
    small.union_with(&kinv);
    let mut s = kk.clone();
    s.difference_with(&small);
    let generated = ag.generated(x)?;
    let gen_set = g.set_of(generated.members.iter().copied());
    let rep = classes.rep(x);

    let mut out = vec![
        Conclusion::new(
            "theorem_d.solvable",
            generated.is_solvable(),
            format!("|<K>| = {}", generated.order),
        ),
        Conclusion::new(
            "theorem_d.prime_power_order",
            g.is_prime_power_element(rep),
            format!("o(x) = {}", classes.element_order(x)),
        ),
    ];
    let mut whole = small.clone();
    whole.union_with(&s);
    out.push(Conclusion::new(
        "theorem_d.generated_subgroup",
        gen_set == whole && gen_set == kk,
        format!(
            "|<K>| = {}, |KK^-1| = {}, |S| = {}",
            generated.order,
            kk.count_ones(..),
            s.count_ones(..)
        ),
    ));
    if s.count_ones(..) > 0 {
        let ks = g.product_set(&k, &s);
        out.push(Conclusion::new(
            "theorem_d.ks_equals_k",
            ks == k,
            describe_set(&ks),
        ));
        let closure = g.closure(s.ones());
        let mut with_one = s.clone();
        with_one.insert(0);
        out.push(Conclusion::new(
            "theorem_d.s_closed",
            closure == with_one,
            format!(
                "|<S>| = {}, |S| + 1 = {}",
                closure.count_ones(..),
                with_one.count_ones(..)
            ),
        ));
    } else {
        let orders: Vec<u64> = gen_set.ones().skip(1).map(|e| g.element_order(e)).collect();
        let elementary = generated.is_abelian()
            && orders
                .first()
                .is_some_and(|&p| arith::is_prime(p) && orders.iter().all(|&q| q == p));
        out.push(Conclusion::new(
            "theorem_d.elementary_abelian",
            elementary,
            format!("|<K>| = {}", generated.order),
        ));
    }
    Ok(out)
}

/// For `KL = D` a single class with `|D| = |K|` and all three nontrivial,
/// `⟨LL⁻¹⟩` is a proper normal solvable subgroup. `None` when the
/// hypothesis does not apply.
pub fn lemma_l1_check(
    ag: &AnalyzedGroup,
    k: usize,
    l: usize,
) -> Result<Option<Conclusion>, CriteriaError> {
    let support = ag.sc.product_of_classes(k, l).support();
    let [d] = support[..] else { return Ok(None) };
    if k == 0 || l == 0 || d == 0 || ag.classes.size(d) != ag.classes.size(k) {
        return Ok(None);
    }
    let g = &ag.group;
    let lset = ag.classes.element_set([l]);
    let linv = g.inverse_set(&lset);
    let n = g.closure(g.product_set(&lset, &linv).ones());
    let info = g.subgroup_info(&n)?;
    Ok(Some(Conclusion::new(
        "lemma_l1.normal_solvable",
        info.order < g.order() && info.is_normal && info.is_solvable(),
        format!("K = {k}, L = {l}, D = {d}, |<LL^-1>| = {}", info.order),
    )))
}

/// If every class of π-elements has a single-class power `K^n` for some
/// `2 ≤ n ≤ max_n`, then `G / O_π'(G)` is nilpotent.
///
/// `single_class_hits[i]` lists the exponents found for class `i`.
pub fn corollary_c3_verify(
    ag: &AnalyzedGroup,
    pi: &[u64],
    single_class_hits: &[Vec<u32>],
) -> Result<Conclusion, CriteriaError> {
    let name = format!("corollary_c3.pi={pi:?}");
    let classes = &ag.classes;
    let missing: Vec<usize> = (1..classes.len())
        .filter(|&i| {
            arith::prime_divisors(classes.element_order(i))
                .iter()
                .all(|p| pi.contains(p))
        })
        .filter(|&i| single_class_hits[i].is_empty())
        .collect();
    if !missing.is_empty() {
        return Ok(Conclusion::new(
            &name,
            true,
            format!("hypothesis not met: classes {missing:?} have no single-class power"),
        ));
    }
    let o = ag.group.largest_normal_pi_prime(classes, pi)?;
    let set = ag.group.set_of(o.members.iter().copied());
    let quotient = ag.group.quotient(&set)?;
    let (_, nilpotent) = quotient.lower_central_series_sets(&quotient.whole_group())?;
    Ok(Conclusion::new(
        &name,
        nilpotent,
        format!("|O_pi'| = {}, |G/O_pi'| = {}", o.order, quotient.order()),
    ))
}
