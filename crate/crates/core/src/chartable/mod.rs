//! Ordinary character tables: computed from class matrices or imported
//! from JSON, validated by the orthogonality relations.

mod dixon;
mod json;

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::arith;
use crate::error::TableError;

pub use dixon::{
    central_character_residual, class_matrices, compute_character_table, DixonOptions, DEFAULT_SEED,
};
pub use json::TableFile;

/// Tolerance used for tables computed from a group.
pub const COMPUTED_TOLERANCE: f64 = 1e-8;
/// Tolerance used for imported tables.
pub const IMPORTED_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct CharacterTable {
    pub name: String,
    /// Free-form provenance note carried through import and export.
    pub header: Option<String>,
    pub order: u64,
    pub class_sizes: Vec<u64>,
    pub element_orders: Vec<u64>,
    pub power_maps: BTreeMap<u64, Vec<usize>>,
    /// `values[χ][class]`, column 0 the identity class.
    pub values: Vec<Vec<Complex64>>,
    pub tolerance: f64,
}

impl CharacterTable {
    /// Number of classes.
    pub fn k(&self) -> usize {
        self.class_sizes.len()
    }

    pub fn degree(&self, row: usize) -> f64 {
        self.values[row][0].re
    }

    pub fn degrees(&self) -> Vec<f64> {
        (0..self.values.len()).map(|r| self.degree(r)).collect()
    }

    pub fn value(&self, row: usize, class: usize) -> Complex64 {
        self.values[row][class]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Complex64]> {
        self.values.iter().map(Vec::as_slice)
    }

    pub fn inverse_class(&self, class: usize) -> usize {
        // χ(x⁻¹) = conj χ(x) and columns of a character table are distinct
        (0..self.k())
            .min_by(|&a, &b| {
                let da = self.column_distance_conj(class, a);
                let db = self.column_distance_conj(class, b);
                da.total_cmp(&db)
            })
            .expect("table has classes")
    }

    fn column_distance_conj(&self, class: usize, other: usize) -> f64 {
        self.values
            .iter()
            .map(|row| (row[class].conj() - row[other]).norm())
            .fold(0.0, f64::max)
    }

    /// Largest deviation in `(1/|G|) Σ_l |K_l| χ_r(l) conj χ_s(l) = δ_rs`.
    pub fn row_orthogonality_residual(&self) -> f64 {
        let g = self.order as f64;
        let mut worst: f64 = 0.0;
        for (r, a) in self.values.iter().enumerate() {
            for (s, b) in self.values.iter().enumerate().skip(r) {
                let inner: Complex64 = (0..self.k())
                    .map(|l| a[l] * b[l].conj() * self.class_sizes[l] as f64)
                    .sum::<Complex64>()
                    / g;
                let expect = if r == s { 1.0 } else { 0.0 };
                worst = worst.max((inner - expect).norm());
            }
        }
        worst
    }

    /// Largest deviation in the column relations, scaled to the unitary form
    /// `Σ_r χ_r(l) conj χ_r(m) · sqrt(|K_l||K_m|)/|G| = δ_lm`.
    pub fn column_orthogonality_residual(&self) -> f64 {
        let g = self.order as f64;
        let mut worst: f64 = 0.0;
        for l in 0..self.k() {
            for m in l..self.k() {
                let inner: Complex64 = self.values.iter().map(|row| row[l] * row[m].conj()).sum();
                let scale = ((self.class_sizes[l] * self.class_sizes[m]) as f64).sqrt() / g;
                let expect = if l == m { 1.0 } else { 0.0 };
                worst = worst.max((inner * scale - expect).norm());
            }
        }
        worst
    }

    /// Checks every structural invariant, naming the first one violated.
    pub fn validate(&self) -> Result<(), TableError> {
        let fail = |what: &str| Err(TableError::ValidationFailed(what.to_string()));
        let k = self.k();
        if k == 0 || self.element_orders.len() != k || self.values.len() != k {
            return fail("shape: class and character counts disagree");
        }
        if self.values.iter().any(|row| row.len() != k) {
            return fail("shape: ragged irreducibles");
        }
        if self.class_sizes[0] != 1 || self.element_orders[0] != 1 {
            return fail("column 0 is not the identity class");
        }
        if self.class_sizes.iter().sum::<u64>() != self.order
            || self
                .class_sizes
                .iter()
                .any(|&s| s == 0 || !self.order.is_multiple_of(s))
        {
            return fail("class sizes do not partition the group");
        }
        let tol = self.tolerance;
        for row in &self.values {
            let d = row[0];
            if d.im.abs() > tol || d.re < 1.0 - tol || (d.re - d.re.round()).abs() > tol {
                return fail("degrees: not a positive integer");
            }
        }
        let sum_sq: f64 = self.degrees().iter().map(|d| d * d).sum();
        if (sum_sq - self.order as f64).abs() > tol * self.order as f64 {
            return fail("degrees: sum of squares differs from the group order");
        }
        if self.row_orthogonality_residual() > tol {
            return fail("row orthogonality");
        }
        if self.column_orthogonality_residual() > tol {
            return fail("column orthogonality");
        }
        for (&p, map) in &self.power_maps {
            if !arith::is_prime(p) || map.len() != k || map.iter().any(|&c| c >= k) {
                return fail("power map: malformed");
            }
            if map[0] != 0 {
                return fail("power map: identity class not fixed");
            }
            for (l, &img) in map.iter().enumerate() {
                let o = self.element_orders[l];
                if self.element_orders[img] != o / arith::gcd(o, p) {
                    return fail("power map: inconsistent with element orders");
                }
            }
        }
        Ok(())
    }

    /// Class of `x^n` for `x` in class `l`, by composing prime power maps.
    ///
    /// The exponent is first reduced modulo the element order of the
    /// current class, so only primes of the reduced exponent need maps.
    pub fn class_of_power(&self, l: usize, n: u64) -> Result<usize, TableError> {
        let mut class = l;
        let reduced = n % self.element_orders[class];
        if reduced == 0 {
            return Ok(0);
        }
        for (p, a) in arith::factorize(reduced) {
            let map = self
                .power_maps
                .get(&p)
                .ok_or(TableError::MissingPowerMap(p))?;
            for _ in 0..a {
                class = map[class];
            }
        }
        Ok(class)
    }

    /// True iff every nontrivial irreducible is faithful and the group is
    /// nonabelian, i.e. the table belongs to a nonabelian simple group.
    pub fn is_nonabelian_simple(&self) -> bool {
        let tol = self.tolerance;
        let nonabelian = self.values.iter().any(|row| row[0].re > 1.0 + tol);
        let faithful = |row: &Vec<Complex64>| (1..self.k()).all(|l| (row[l] - row[0]).norm() > tol);
        let trivial = |row: &Vec<Complex64>| row.iter().all(|v| (v - 1.0).norm() <= tol);
        nonabelian && self.values.iter().filter(|row| !trivial(row)).all(faithful)
    }

    /// Matches `self` against `other` up to a permutation of rows.
    ///
    /// Returns the first row of `self` without a partner.
    pub fn matches_up_to_row_permutation(
        &self,
        other: &CharacterTable,
        tol: f64,
    ) -> Result<(), String> {
        if self.k() != other.k() || self.order != other.order {
            return Err("different group order or class count".into());
        }
        if self.class_sizes != other.class_sizes || self.element_orders != other.element_orders {
            return Err("class sizes or element orders differ".into());
        }
        let mut used = vec![false; other.k()];
        for (r, row) in self.values.iter().enumerate() {
            let partner = (0..other.k()).find(|&s| {
                !used[s]
                    && row
                        .iter()
                        .zip(&other.values[s])
                        .all(|(a, b)| (a - b).norm() <= tol)
            });
            match partner {
                Some(s) => used[s] = true,
                None => return Err(format!("row {r} has no matching irreducible")),
            }
        }
        Ok(())
    }
}
