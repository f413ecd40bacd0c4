//! Burnside–Dixon: irreducible characters from simultaneous eigenvectors of
//! the class matrices.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector, Schur, SVD};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CharacterTable, COMPUTED_TOLERANCE};
use crate::algebra::StructureConstants;
use crate::arith;
use crate::classes::ClassDecomposition;
use crate::error::TableError;
use crate::group::FiniteGroup;

pub const DEFAULT_SEED: u64 = 0xC1A55;

/// Primes at or below this bound always get a power map, in addition to
/// the primes dividing the group order.
const POWER_MAP_PRIME_BOUND: u64 = 16;

#[derive(Debug, Clone, Copy)]
pub struct DixonOptions {
    pub seed: u64,
    pub tolerance: f64,
    pub class_limit: usize,
    pub max_retries: usize,
}

impl Default for DixonOptions {
    fn default() -> Self {
        DixonOptions {
            seed: DEFAULT_SEED,
            tolerance: COMPUTED_TOLERANCE,
            class_limit: 64,
            max_retries: 20,
        }
    }
}

/// `M_i` with `(M_i)[l][j] = c[i][j][l]`.
///
/// A central character `ω` satisfies `ω · M_i = ω_i ω` as a row vector.
pub fn class_matrices(sc: &StructureConstants) -> Vec<DMatrix<u64>> {
    let k = sc.k();
    (0..k)
        .map(|i| DMatrix::from_fn(k, k, |l, j| sc.get(i, j, l)))
        .collect()
}

pub fn compute_character_table(
    group: &FiniteGroup,
    classes: &ClassDecomposition,
    sc: &StructureConstants,
    options: DixonOptions,
) -> Result<CharacterTable, TableError> {
    let k = classes.len();
    if k > options.class_limit {
        return Err(TableError::TooManyClasses {
            classes: k,
            limit: options.class_limit,
        });
    }
    let sizes: Vec<f64> = classes.sizes().iter().map(|&s| s as f64).collect();
    let order = group.order() as f64;
    // transposes: central characters are right eigenvectors of M_iᵀ
    let transposed: Vec<DMatrix<f64>> = class_matrices(sc)
        .into_iter()
        .map(|m| m.map(|v| v as f64).transpose())
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut omegas = None;
    for _ in 0..options.max_retries {
        let mut combo = DMatrix::<f64>::zeros(k, k);
        for m in &transposed {
            let t: f64 = rng.random_range(-1.0..1.0);
            combo += m * t;
        }
        if let Some(vectors) = simple_eigenvectors(&combo) {
            omegas = Some(vectors);
            break;
        }
    }
    let omegas = omegas.ok_or(TableError::DegenerateSpectrum(options.max_retries))?;

    let mut values = Vec::with_capacity(k);
    for mut omega in omegas {
        refine(&mut omega, sc);
        let norm: f64 = (0..k).map(|l| omega[l].norm_sqr() / sizes[l]).sum();
        let raw_degree = (order / norm).sqrt();
        let degree = raw_degree.round();
        if (raw_degree - degree).abs() > options.tolerance * raw_degree.max(1.0) || degree < 1.0 {
            return Err(TableError::ValidationFailed(format!(
                "degrees: {raw_degree} is not an integer"
            )));
        }
        let row: Vec<Complex64> = (0..k).map(|l| snap(omega[l] * degree / sizes[l])).collect();
        values.push(row);
    }
    canonicalize_rows(&mut values);

    let mut primes: Vec<u64> = (2..=POWER_MAP_PRIME_BOUND)
        .filter(|&p| arith::is_prime(p))
        .chain(arith::prime_divisors(group.order() as u64))
        .collect();
    primes.sort_unstable();
    primes.dedup();
    let power_maps: BTreeMap<u64, Vec<usize>> = primes
        .into_iter()
        .map(|p| {
            let map = (0..k).map(|l| classes.power_class(group, l, p)).collect();
            (p, map)
        })
        .collect();

    let table = CharacterTable {
        name: group.name().to_string(),
        header: None,
        order: group.order() as u64,
        class_sizes: classes.sizes().iter().map(|&s| s as u64).collect(),
        element_orders: classes.element_orders().to_vec(),
        power_maps,
        values,
        tolerance: options.tolerance,
    };
    table.validate()?;
    Ok(table)
}

/// Largest `|Σ_l c[i][j][l] ω_l − ω_i ω_j|` over all rows and class pairs,
/// where `ω_l = |K_l| χ(l) / χ(1)`.
pub fn central_character_residual(table: &CharacterTable, sc: &StructureConstants) -> f64 {
    let k = table.k();
    let mut worst = 0.0f64;
    for row in 0..k {
        let omega: Vec<Complex64> = (0..k)
            .map(|l| table.value(row, l) * table.class_sizes[l] as f64 / table.degree(row))
            .collect();
        for i in 0..k {
            for j in 0..k {
                let lhs: Complex64 = (0..k).map(|l| omega[l] * sc.get(i, j, l) as f64).sum();
                worst = worst.max((lhs - omega[i] * omega[j]).norm());
            }
        }
    }
    worst
}

/// Eigenvectors of `a`, normalized to first coordinate 1, when all
/// eigenvalues are well separated; `None` otherwise.
fn simple_eigenvectors(a: &DMatrix<f64>) -> Option<Vec<DVector<Complex64>>> {
    let k = a.nrows();
    let ac: DMatrix<Complex64> = a.map(|v| Complex64::new(v, 0.0));
    let eigenvalues = Schur::try_new(ac.clone(), 1e-15, 10_000)?.eigenvalues()?;
    let scale = 1.0 + eigenvalues.iter().map(|l| l.norm()).fold(0.0, f64::max);
    for i in 0..k {
        for j in i + 1..k {
            if (eigenvalues[i] - eigenvalues[j]).norm() < 1e-6 * scale {
                return None;
            }
        }
    }
    let mut vectors = Vec::with_capacity(k);
    for &lambda in eigenvalues.iter() {
        let shifted = &ac - DMatrix::<Complex64>::identity(k, k) * lambda;
        let svd = SVD::try_new(shifted, false, true, 1e-15, 10_000)?;
        let v_t = svd.v_t?;
        let (idx, _) = svd
            .singular_values
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))?;
        let v: DVector<Complex64> = v_t.row(idx).transpose().map(|z| z.conj());
        if v[0].norm() < 1e-12 {
            return None;
        }
        let v0 = v[0];
        vectors.push(v.map(|z| z / v0));
    }
    Some(vectors)
}

/// Gauss-Newton on `ω_i ω_j = Σ_l c[i][j][l] ω_l` with `ω_0 = 1` fixed.
///
/// The eigensolver leaves errors near 1e-13, which high class powers
/// amplify by `|K|^n`; a few steps bring them to rounding level.
fn refine(omega: &mut DVector<Complex64>, sc: &StructureConstants) {
    const STEPS: usize = 3;
    let k = omega.len();
    if k < 2 {
        return;
    }
    let zero = Complex64::new(0.0, 0.0);
    for _ in 0..STEPS {
        let mut jac = DMatrix::<Complex64>::zeros(k * k, k - 1);
        let mut residual = DVector::<Complex64>::zeros(k * k);
        for i in 0..k {
            for j in 0..k {
                let row = i * k + j;
                let mut f = omega[i] * omega[j];
                for l in 0..k {
                    let c = sc.get(i, j, l) as f64;
                    if c != 0.0 {
                        f -= omega[l] * c;
                        if l > 0 {
                            jac[(row, l - 1)] -= Complex64::new(c, 0.0);
                        }
                    }
                }
                if i > 0 {
                    jac[(row, i - 1)] += omega[j];
                }
                if j > 0 {
                    jac[(row, j - 1)] += omega[i];
                }
                residual[row] = f;
            }
        }
        if residual.iter().all(|z| *z == zero) {
            return;
        }
        let adjoint = jac.adjoint();
        let Some(step) = (&adjoint * &jac).lu().solve(&(&adjoint * residual)) else {
            return;
        };
        for l in 1..k {
            omega[l] -= step[l - 1];
        }
    }
}

/// Rounds components lying within 1e-10 of an integer; clears signed zeros.
fn snap(z: Complex64) -> Complex64 {
    let fix = |x: f64| {
        let r = x.round();
        let y = if (x - r).abs() < 1e-10 { r } else { x };
        if y == 0.0 {
            0.0
        } else {
            y
        }
    };
    Complex64::new(fix(z.re), fix(z.im))
}

/// Sorts irreducibles by degree, then lexicographically by rounded real
/// parts, then by rounded imaginary parts.
fn canonicalize_rows(values: &mut [Vec<Complex64>]) {
    let key = |row: &Vec<Complex64>| {
        let q = |x: f64| (x * 1e6).round() as i64;
        let re: Vec<i64> = row.iter().map(|z| q(z.re)).collect();
        let im: Vec<i64> = row.iter().map(|z| q(z.im)).collect();
        (re[0], re, im)
    };
    values.sort_by_key(key);
}
