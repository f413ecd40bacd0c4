//! Character-table criteria: single-class powers, the trivial-plus-class and
//! class-plus-inverse characterizations, and class multiplicities.

use num_complex::Complex64;
use serde::Serialize;

use super::{IDENTITY_TOLERANCE, INTEGRALITY_TOLERANCE};
use crate::chartable::CharacterTable;
use crate::error::CriteriaError;

/// First failing character and its residual.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Witness {
    pub row: usize,
    pub residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RowCheck {
    pub holds: bool,
    pub max_residual: f64,
    pub witness: Option<Witness>,
}

/// Runs `residual_and_bound` on every row; the check holds when each
/// residual is within its bound.
fn check_rows(
    table: &CharacterTable,
    residual_and_bound: impl Fn(usize) -> (f64, f64),
) -> RowCheck {
    let mut max_residual: f64 = 0.0;
    let mut witness = None;
    for row in 0..table.values.len() {
        let (residual, bound) = residual_and_bound(row);
        max_residual = max_residual.max(residual);
        // NaN residuals fail
        let within = residual <= bound;
        if witness.is_none() && !within {
            witness = Some(Witness { row, residual });
        }
    }
    RowCheck {
        holds: witness.is_none(),
        max_residual,
        witness,
    }
}

fn check_arity(n: u32) -> Result<(), CriteriaError> {
    if n < 2 {
        return Err(CriteriaError::Invalid(format!("n = {n}, need n ≥ 2")));
    }
    Ok(())
}

/// `χ(x)^n = χ(1)^{n−1} χ(x^n)` for every irreducible χ.
pub fn char1_check(table: &CharacterTable, x: usize, n: u32) -> Result<RowCheck, CriteriaError> {
    check_arity(n)?;
    let d = table.class_of_power(x, n as u64)?;
    let e = n as i32;
    Ok(check_rows(table, |r| {
        let deg = table.degree(r);
        let lhs = table.value(r, x).powi(e);
        let rhs = table.value(r, d) * deg.powi(e - 1);
        (
            (lhs - rhs).norm(),
            table.tolerance * (1.0 + deg.powi(e - 1)),
        )
    }))
}

/// `χ(x_1)⋯χ(x_r) = χ(1)^{r−1} χ(d)` for every irreducible χ.
pub fn prod_is_class_check(
    table: &CharacterTable,
    xs: &[usize],
    d: usize,
) -> Result<RowCheck, CriteriaError> {
    if xs.len() < 2 {
        return Err(CriteriaError::Invalid("need at least two classes".into()));
    }
    let e = xs.len() as i32;
    Ok(check_rows(table, |r| {
        let deg = table.degree(r);
        let lhs: Complex64 = xs.iter().map(|&x| table.value(r, x)).product();
        let rhs = table.value(r, d) * deg.powi(e - 1);
        (
            (lhs - rhs).norm(),
            table.tolerance * (1.0 + deg.powi(e - 1)),
        )
    }))
}

/// A class multiplicity recovered from the table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Alpha {
    /// Nearest integer.
    pub value: f64,
    pub residual: f64,
}

/// `(∏|K_i| / |G|) Σ_χ ∏χ(x_i) · target(χ) / χ(1)^{r−1}`, rounded.
fn alpha_with(
    table: &CharacterTable,
    xs: &[usize],
    target: impl Fn(usize) -> Complex64,
) -> Result<Alpha, CriteriaError> {
    let r = xs.len() as i32;
    let scale: f64 = xs
        .iter()
        .map(|&x| table.class_sizes[x] as f64)
        .product::<f64>()
        / table.order as f64;
    let sum: Complex64 = (0..table.values.len())
        .map(|row| {
            let prod: Complex64 = xs.iter().map(|&x| table.value(row, x)).product();
            prod * target(row) / table.degree(row).powi(r - 1)
        })
        .sum();
    let raw = sum * scale;
    let value = raw.re.round();
    let residual = (raw - value).norm();
    if residual > INTEGRALITY_TOLERANCE * value.abs().max(1.0) || value < 0.0 {
        return Err(CriteriaError::NonIntegral {
            value: raw.re,
            residual,
        });
    }
    Ok(Alpha {
        value: value.abs(),
        residual,
    })
}

/// Multiplicity of the class sum of `j` in `∏ K̂_i`.
pub fn alpha_multiplicities(
    table: &CharacterTable,
    xs: &[usize],
    j: usize,
) -> Result<Alpha, CriteriaError> {
    if xs.is_empty() {
        return Err(CriteriaError::Invalid("empty class list".into()));
    }
    alpha_with(table, xs, |row| table.value(row, j).conj())
}

fn size_power(table: &CharacterTable, x: usize, n: u32) -> f64 {
    (table.class_sizes[x] as f64).powi(n as i32)
}

/// Exact below 2^53, relative above.
fn mass_matches(expected: f64, found: f64) -> bool {
    if expected < 9_007_199_254_740_992.0 {
        expected == found
    } else {
        (expected - found).abs() <= INTEGRALITY_TOLERANCE * expected
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Char2Outcome {
    pub holds: bool,
    pub m1: f64,
    pub m2: f64,
    pub mass_ok: bool,
    pub rows: RowCheck,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Char3Outcome {
    pub holds: bool,
    /// Class of `x^n`.
    pub d: usize,
    pub d_is_real: bool,
    pub m1: f64,
    pub m2: f64,
    pub mass_ok: bool,
    pub rows: RowCheck,
    pub summed: RowCheck,
}

/// `K^n = {1} ∪ D` test: multiplicities of the trivial class and of `D`,
/// the per-character identity and the mass identity.
pub fn char2_check(
    table: &CharacterTable,
    x: usize,
    d: usize,
    n: u32,
) -> Result<Char2Outcome, CriteriaError> {
    check_arity(n)?;
    if d == 0 {
        return Err(CriteriaError::Invalid(
            "D must be a nontrivial class".into(),
        ));
    }
    let xs = vec![x; n as usize];
    let m1 = alpha_with(table, &xs, |row| Complex64::new(table.degree(row), 0.0))?.value;
    let m2 = alpha_multiplicities(table, &xs, d)?.value;
    let kn = size_power(table, x, n);
    let dsize = table.class_sizes[d] as f64;
    let e = n as i32;
    let rows = check_rows(table, |r| {
        let deg = table.degree(r);
        let lhs = table.value(r, x).powi(e) * kn;
        let rhs = (table.value(r, d) * (m2 * dsize) + m1 * deg) * deg.powi(e - 1);
        (
            (lhs - rhs).norm(),
            table.tolerance * kn * (1.0 + deg.powi(e - 1)),
        )
    });
    let mass_ok = mass_matches(kn, m1 + m2 * dsize);
    Ok(Char2Outcome {
        holds: m1 >= 1.0 && m2 >= 1.0 && rows.holds && mass_ok,
        m1,
        m2,
        mass_ok,
        rows,
    })
}

/// `χ(x)^n + χ(x⁻¹)^n = χ(1)^{n−1}(χ(x^n) + χ(x^{−n}))` for every χ.
pub fn eq3_check(table: &CharacterTable, x: usize, n: u32) -> Result<RowCheck, CriteriaError> {
    check_arity(n)?;
    let d = table.class_of_power(x, n as u64)?;
    let e = n as i32;
    Ok(check_rows(table, |r| {
        let deg = table.degree(r);
        let v = table.value(r, x);
        let w = table.value(r, d);
        let lhs = v.powi(e) + v.conj().powi(e);
        let rhs = (w + w.conj()) * deg.powi(e - 1);
        (
            (lhs - rhs).norm(),
            2.0 * table.tolerance * (1.0 + deg.powi(e - 1)),
        )
    }))
}

/// `K^n = D ∪ D⁻¹` test with `D` the class of `x^n`.
///
/// When `D` is real both multiplicities count `D`, so the mass identity
/// `|K|^n = (m1 + m2)|D|` cannot hold.
pub fn char3_check(
    table: &CharacterTable,
    x: usize,
    n: u32,
) -> Result<Char3Outcome, CriteriaError> {
    check_arity(n)?;
    let d = table.class_of_power(x, n as u64)?;
    let xs = vec![x; n as usize];
    let m1 = alpha_multiplicities(table, &xs, d)?.value;
    let m2 = alpha_with(table, &xs, |row| table.value(row, d))?.value;
    let kn = size_power(table, x, n);
    let dsize = table.class_sizes[d] as f64;
    let e = n as i32;
    let rows = check_rows(table, |r| {
        let deg = table.degree(r);
        let w = table.value(r, d);
        let lhs = table.value(r, x).powi(e) * kn;
        let rhs = (w * m1 + w.conj() * m2) * (dsize * deg.powi(e - 1));
        (
            (lhs - rhs).norm(),
            table.tolerance * kn * (1.0 + deg.powi(e - 1)),
        )
    });
    let mass_ok = mass_matches(kn, (m1 + m2) * dsize);
    let summed = eq3_check(table, x, n)?;
    Ok(Char3Outcome {
        holds: m1 >= 1.0 && m2 >= 1.0 && rows.holds && mass_ok && summed.holds,
        d,
        d_is_real: table.inverse_class(d) == d,
        m1,
        m2,
        mass_ok,
        rows,
        summed,
    })
}

/// `|K||χ(x)|² = χ(1)² + (|K| − 1)χ(1)χ(d)` for every χ, with an absolute
/// residual threshold.
pub fn bcor_check(table: &CharacterTable, x: usize, d: usize) -> RowCheck {
    let k = table.class_sizes[x] as f64;
    check_rows(table, |r| {
        let deg = table.degree(r);
        let lhs = k * table.value(r, x).norm_sqr();
        let rhs = table.value(r, d) * ((k - 1.0) * deg) + deg * deg;
        ((rhs - lhs).norm(), IDENTITY_TOLERANCE)
    })
}
