//! Acceptance gate: one PASS/FAIL line per criterion.

mod support;

use std::process::ExitCode;
use std::time::Instant;

use fixedbitset::FixedBitSet;
use proptest::prelude::ProptestConfig;
use proptest::test_runner::{RngAlgorithm, TestCaseError, TestRng, TestRunner};

use classpower::catalogue::{build_catalogue, find_entry, m11_table};
use classpower::chartable::{central_character_residual, compute_character_table, DixonOptions};
use classpower::criteria::{
    alpha_multiplicities, char1_check, eq3_check, prod_is_class_check, scan_group, scan_table,
    AnalyzedGroup, CriterionReport, ScanOptions,
};
use classpower::{CharacterTable, FiniteGroup};

const ALPHA_RESIDUAL: f64 = 1e-6;
const TABLE_RESIDUAL: f64 = 1e-8;

type Criterion<'a> = Box<dyn Fn() -> Outcome + 'a>;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(failures: Vec<String>, summary: String) -> Outcome {
    Outcome {
        passed: failures.is_empty(),
        detail: if failures.is_empty() {
            summary
        } else {
            format!(
                "{summary}; {} failures, first: {}",
                failures.len(),
                failures[0]
            )
        },
    }
}

fn max_n_for(order: usize) -> u32 {
    if order <= 60 {
        8
    } else {
        6
    }
}

fn catalogue() -> Vec<AnalyzedGroup> {
    build_catalogue()
        .iter()
        .map(|e| {
            AnalyzedGroup::new(e.build().expect(&e.name), DixonOptions::default()).expect(&e.name)
        })
        .collect()
}

fn scans(groups: &[AnalyzedGroup]) -> Vec<Vec<CriterionReport>> {
    groups
        .iter()
        .map(|ag| {
            let options = ScanOptions {
                max_n: max_n_for(ag.group.order()),
                ..ScanOptions::default()
            };
            scan_group(ag, &options).unwrap_or_else(|_| panic!("{}", ag.name()))
        })
        .collect()
}

// Set-level oracle, independent of the class algebra.

struct SetOracle<'a> {
    ag: &'a AnalyzedGroup,
}

impl SetOracle<'_> {
    fn g(&self) -> &FiniteGroup {
        &self.ag.group
    }

    fn class(&self, i: usize) -> FixedBitSet {
        self.g()
            .set_of(self.ag.classes.class(i).members.iter().copied())
    }

    fn power(&self, k: &FixedBitSet, n: u32) -> FixedBitSet {
        let mut acc = k.clone();
        for _ in 1..n {
            acc = self.g().product_set(&acc, k);
        }
        acc
    }

    /// Classes whose union is exactly `set`.
    fn classes_of(&self, set: &FixedBitSet) -> Vec<usize> {
        let dec = &self.ag.classes;
        let mut ids: Vec<usize> = set.ones().map(|e| dec.class_of(e)).collect();
        ids.sort_unstable();
        ids.dedup();
        ids
    }

    /// Classes with the given element order and size.
    fn select(&self, order: u64, size: usize) -> Vec<usize> {
        let dec = &self.ag.classes;
        (0..dec.len())
            .filter(|&i| dec.element_order(i) == order && dec.size(i) == size)
            .collect()
    }

    fn class_containing(&self, images: &[usize]) -> usize {
        let p = classpower::Perm::from_images(images.to_vec()).unwrap();
        self.ag.classes.class_of(self.g().index_of(&p).unwrap())
    }

    fn generated(&self, k: &FixedBitSet) -> classpower::SubgroupInfo {
        self.g().subgroup_closure(k.ones()).unwrap()
    }
}

fn analyzed_entry(name: &str) -> AnalyzedGroup {
    let entry = find_entry(name).unwrap();
    AnalyzedGroup::new(entry.build().unwrap(), DixonOptions::default()).unwrap()
}

fn criterion_1() -> Outcome {
    let mut failures = Vec::new();
    let mut check = |label: &str, ok: bool, detail: String| {
        if !ok {
            failures.push(format!("{label}: {detail}"));
        }
    };

    // (i) Z3:Z4, K = b^G of order 4 and size 3
    let ag = analyzed_entry("Z3:Z4");
    let o = SetOracle { ag: &ag };
    let ks = o.select(4, 3);
    check("Z3:Z4 classes", !ks.is_empty(), format!("{ks:?}"));
    for &k in &ks {
        let cube = o.classes_of(&o.power(&o.class(k), 3));
        let ok = cube.len() == 1 && cube[0] != k && ag.classes.size(cube[0]) == 3;
        check("Z3:Z4 K^3", ok, format!("class {k}: {cube:?}"));
    }

    // (ii) A4, K = (0 1 2)^G
    let ag = analyzed_entry("A4");
    let o = SetOracle { ag: &ag };
    let k = o.class_containing(&[1, 2, 0, 3]);
    let v4 = o.class_containing(&[1, 0, 3, 2]);
    let cube = o.classes_of(&o.power(&o.class(k), 3));
    check(
        "A4 K^3",
        ag.classes.size(k) == 4 && cube == vec![0, v4],
        format!("|K| = {}, classes {cube:?}", ag.classes.size(k)),
    );

    // (iii) order-126 group, order-21 class of size 6
    let ag = analyzed_entry("(Z7:Z9):Z2");
    let o = SetOracle { ag: &ag };
    let ks = o.select(21, 6);
    check("order-126 classes", !ks.is_empty(), format!("{ks:?}"));
    for &k in &ks {
        let kset = o.class(k);
        let cube = o.classes_of(&o.power(&kset, 3));
        let gen = o.generated(&kset);
        let ok = cube.len() == 2
            && cube[0] == 0
            && ag.classes.size(cube[1]) == 6
            && ag.classes.element_order(cube[1]) == 7
            && gen.order == 21
            && gen.is_abelian();
        check(
            "order-126 K^3",
            ok,
            format!("class {k}: {cube:?}, |<K>| = {}", gen.order),
        );
    }

    // (iv) SL(2,3), order-6 class of size 4
    let ag = analyzed_entry("SL(2,3)");
    let o = SetOracle { ag: &ag };
    let ks = o.select(6, 4);
    check("SL(2,3) classes", !ks.is_empty(), format!("{ks:?}"));
    for &k in &ks {
        let kset = o.class(k);
        let kk = o.classes_of(&ag.group.product_set(&kset, &ag.group.inverse_set(&kset)));
        check(
            "SL(2,3) KK^-1",
            kk.len() == 2 && kk[0] == 0 && ag.classes.size(kk[1]) == 6,
            format!("class {k}: {kk:?}"),
        );
        for n in 2..=12 {
            let p = o.classes_of(&o.power(&kset, n));
            check(
                "SL(2,3) K^n",
                !(p.len() == 2 && p[0] == 0),
                format!("class {k} n={n}: {p:?}"),
            );
        }
    }

    // (v) M16, (vi) Z2x(Z7:Z3), (vii) AGammaL(1,8): K^2 = D ∪ D^-1
    for (name, order, size, d_size, self_inverse) in [
        ("M16", 8, 2, 1, false),
        ("Z2x(Z7:Z3)", 14, 3, 3, false),
        ("AGammaL(1,8)", 7, 24, 24, true),
    ] {
        let ag = analyzed_entry(name);
        let o = SetOracle { ag: &ag };
        let ks = o.select(order, size);
        check(
            name,
            !ks.is_empty(),
            format!("no class of order {order} and size {size}"),
        );
        for &k in &ks {
            let kset = o.class(k);
            let sq = o.classes_of(&o.power(&kset, 2));
            let ok = sq.len() == 2
                && ag.classes.inverse_class(sq[0]) == sq[1]
                && ag.classes.size(sq[0]) == d_size
                && (!self_inverse || sq.contains(&k));
            check(name, ok, format!("class {k}: K^2 classes {sq:?}"));
            if self_inverse {
                let gen = o.generated(&kset);
                check(name, gen.order == 56, format!("|<K>| = {}", gen.order));
            }
        }
    }
    outcome(
        failures,
        "seven worked examples reproduced by set-level brute force".into(),
    )
}

fn criterion_2(reports: &[Vec<CriterionReport>]) -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for r in reports.iter().flatten().filter(|r| !r.is_group_level()) {
        for name in ["char1", "char2", "char3"] {
            let Some(v) = r.verdict(name) else {
                failures.push(format!(
                    "{} class {} n={}: {name} missing",
                    r.group, r.class_id, r.n
                ));
                continue;
            };
            checked += 1;
            if v.expected.is_none() || !v.agrees() {
                failures.push(format!(
                    "{} class {} n={}: {name} = {} vs shape {}",
                    r.group,
                    r.class_id,
                    r.n,
                    v.holds,
                    r.oracle_shape.as_ref().map_or("?", |s| s.label())
                ));
            }
        }
        if !r.agreement {
            failures.push(format!(
                "{} class {} n={}: report disagrees",
                r.group, r.class_id, r.n
            ));
        }
    }
    outcome(
        failures,
        format!("{checked} verdicts agree with the oracle"),
    )
}

fn criterion_3(groups: &[AnalyzedGroup]) -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0usize;
    let mut worst = 0.0f64;
    let mut compare =
        |ag: &AnalyzedGroup, xs: &[usize], l: usize, exact: f64| match alpha_multiplicities(
            &ag.table, xs, l,
        ) {
            Ok(a) => {
                checked += 1;
                worst = worst.max(a.residual);
                if a.value != exact || a.residual >= ALPHA_RESIDUAL {
                    failures.push(format!(
                        "{} {xs:?} -> {l}: {} vs {exact}",
                        ag.name(),
                        a.value
                    ));
                }
            }
            Err(e) => failures.push(format!("{} {xs:?} -> {l}: {e}", ag.name())),
        };
    for ag in groups {
        let k = ag.classes.len();
        for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    compare(ag, &[i, j], l, ag.sc.get(i, j, l) as f64);
                }
            }
            for n in 2..=4u32 {
                let ms = ag.sc.power(i, n);
                let xs = vec![i; n as usize];
                for l in 0..k {
                    let exact = ms.multiplicity(l).to_string().parse::<f64>().unwrap();
                    compare(ag, &xs, l, exact);
                }
            }
        }
    }
    outcome(
        failures,
        format!("{checked} multiplicities, worst residual {worst:.1e}"),
    )
}

fn criterion_4(groups: &[AnalyzedGroup], reports: &[Vec<CriterionReport>]) -> Outcome {
    let mut failures = Vec::new();
    let mut hits = 0;
    let mut conclusions = 0;
    let has = |r: &CriterionReport, prefix: &str| {
        r.conclusions.iter().any(|c| c.name.starts_with(prefix))
    };
    for (ag, r) in groups
        .iter()
        .zip(reports)
        .flat_map(|(ag, rs)| rs.iter().map(move |r| (ag, r)))
    {
        for c in r.conclusions.iter().filter(|c| !c.holds) {
            failures.push(format!(
                "{} class {} n={}: {} ({})",
                r.group, r.class_id, r.n, c.name, c.details
            ));
        }
        conclusions += r.conclusions.len();
        let Some(shape) = r.oracle_shape.as_ref().filter(|s| s.is_hit()) else {
            continue;
        };
        hits += 1;
        let mut required: Vec<&str> = Vec::new();
        if shape.is_single_class() {
            required.extend(["theorem_a.", "corollary_c1."]);
            let d = shape.support[0];
            if d == r.class_id {
                required.push("corollary_c2.");
            }
            if ag.classes.inverse_class(d) == d {
                required.push("theorem_nocfsgr.");
            }
        } else if shape.is_trivial_plus_class() {
            required.extend([
                "theorem_b.kk_inverse",
                "theorem_b.solvable",
                "theorem_b.character_identity",
            ]);
        } else {
            required.extend(["theorem_c.", "conjecture_3.solvable"]);
            if shape.label() == "SelfPlusInverse" && r.n == 2 {
                required.push("theorem_d.");
            }
        }
        for prefix in required {
            if !has(r, prefix) {
                failures.push(format!(
                    "{} class {} n={}: no {prefix} conclusion",
                    r.group, r.class_id, r.n
                ));
            }
        }
    }
    outcome(
        failures,
        format!("{hits} hits, {conclusions} conclusions verified"),
    )
}

fn nontrivial_tuples(k: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(start: usize, k: usize, len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for i in start..k {
            cur.push(i);
            rec(i, k, len, cur, out);
            cur.pop();
        }
    }
    rec(1, k, len, &mut cur, &mut out);
    out
}

fn criterion_5(groups: &[AnalyzedGroup]) -> Outcome {
    let mut failures = Vec::new();
    let options = ScanOptions {
        max_n: 6,
        ..ScanOptions::default()
    };
    let a5 = groups
        .iter()
        .find(|ag| ag.name() == "A5")
        .expect("A5 in catalogue");
    for r in scan_group(a5, &options).unwrap() {
        if r.is_hit() || r.is_finding() {
            failures.push(format!("A5 class {} n={}: hit or finding", r.class_id, r.n));
        }
    }
    let m11: CharacterTable = m11_table().unwrap();
    if m11.k() != 10 {
        failures.push(format!("M11 has {} classes", m11.k()));
    }
    for r in scan_table(&m11, &options).unwrap() {
        if r.is_hit() || r.is_finding() {
            failures.push(format!(
                "M11 class {} n={}: hit or finding",
                r.class_id, r.n
            ));
        }
    }
    let mut witnesses = 0;
    for x in 1..m11.k() {
        for n in 2..=6 {
            for (name, check) in [
                ("eq1", char1_check(&m11, x, n)),
                ("eq3", eq3_check(&m11, x, n)),
            ] {
                match check {
                    Ok(c) if !c.holds && c.witness.is_some() => witnesses += 1,
                    Ok(_) => failures.push(format!("M11 class {x} n={n}: {name} holds")),
                    Err(e) => failures.push(format!("M11 class {x} n={n}: {e}")),
                }
            }
        }
    }
    let mut tuples = 0;
    for len in 2..=6 {
        for xs in nontrivial_tuples(m11.k(), len) {
            for d in 0..m11.k() {
                tuples += 1;
                match prod_is_class_check(&m11, &xs, d) {
                    Ok(c) if !c.holds && c.witness.is_some() => {}
                    Ok(_) => failures.push(format!("M11 {xs:?} -> {d}: product is a class")),
                    Err(e) => failures.push(format!("M11 {xs:?} -> {d}: {e}")),
                }
            }
        }
    }
    outcome(
        failures,
        format!("A5 and M11 hit-free for n in [2, 6]; {witnesses} M11 witnesses, {tuples} class tuples refuted"),
    )
}

fn criterion_6(groups: &[AnalyzedGroup]) -> Outcome {
    let mut failures = Vec::new();
    for ag in groups {
        let t = &ag.table;
        let name = ag.name();
        let row = t.row_orthogonality_residual();
        let col = t.column_orthogonality_residual();
        if row >= TABLE_RESIDUAL || col >= TABLE_RESIDUAL {
            failures.push(format!("{name}: orthogonality {row:.1e} / {col:.1e}"));
        }
        let degrees = t.degrees();
        if degrees.iter().any(|d| d.fract() != 0.0 || *d < 1.0) {
            failures.push(format!("{name}: degrees {degrees:?}"));
        }
        let sum: f64 = degrees.iter().map(|d| d * d).sum();
        if sum != ag.group.order() as f64 {
            failures.push(format!("{name}: sum of squared degrees {sum}"));
        }
        let central = central_character_residual(t, &ag.sc);
        if central >= 10.0 * t.tolerance {
            failures.push(format!("{name}: central characters off by {central:.1e}"));
        }
        let again =
            compute_character_table(&ag.group, &ag.classes, &ag.sc, DixonOptions::default())
                .unwrap();
        if again != *t {
            failures.push(format!("{name}: recomputation differs"));
        }
    }
    outcome(
        failures,
        format!("{} tables validated and reproducible", groups.len()),
    )
}

/// Every invariant on every catalogue group, then on seeded random
/// permutation groups.
fn criterion_7() -> Outcome {
    const RANDOM_CASES: u32 = 32;
    let mut failures = Vec::new();
    let mut runs = 0;
    for ag in support::catalogue_groups() {
        for (name, invariant) in support::INVARIANTS {
            runs += 1;
            if let Err(e) = invariant(ag) {
                failures.push(format!("{} {name}: {e}", ag.name()));
            }
        }
    }
    let config = ProptestConfig {
        cases: RANDOM_CASES,
        failure_persistence: None,
        ..ProptestConfig::default()
    };
    let mut runner =
        TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    let result = runner.run(&support::random_group(), |g| {
        let ag = support::analyzed(g);
        for (name, invariant) in support::INVARIANTS {
            invariant(&ag).map_err(|e| TestCaseError::fail(format!("{name}: {e}")))?;
        }
        Ok(())
    });
    runs += RANDOM_CASES as usize * support::INVARIANTS.len();
    if let Err(e) = result {
        failures.push(format!("random group: {e}"));
    }
    outcome(failures, format!("{runs} invariant checks"))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let groups = catalogue();
    let reports = scans(&groups);
    let setup = start.elapsed();

    let criteria: Vec<(&str, Criterion)> = vec![
        ("1 worked examples", Box::new(criterion_1)),
        (
            "2 oracle equivalence sweep",
            Box::new(|| criterion_2(&reports)),
        ),
        (
            "3 multiplicity reconstruction",
            Box::new(|| criterion_3(&groups)),
        ),
        (
            "4 structural conclusions",
            Box::new(|| criterion_4(&groups, &reports)),
        ),
        ("5 simple-group controls", Box::new(|| criterion_5(&groups))),
        (
            "6 character-table engine",
            Box::new(|| criterion_6(&groups)),
        ),
        ("7 property suite", Box::new(criterion_7)),
    ];
    println!("catalogue built and scanned in {:.2?}", setup);
    let mut all = true;
    for (name, run) in criteria {
        let t = Instant::now();
        let o = run();
        all &= o.passed;
        println!(
            "{} criterion {name}: {} ({:.2?})",
            if o.passed { "PASS" } else { "FAIL" },
            o.detail,
            t.elapsed()
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
