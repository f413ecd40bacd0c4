//! Exact arithmetic with class sums.
//!
//! A product of class sums is a nonnegative integer combination of class
//! sums. Multiplicities are counted at one representative of each output
//! class and powers are accumulated in arbitrary precision.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::classes::ClassDecomposition;
use crate::group::FiniteGroup;

/// Default largest power examined by scans.
pub const DEFAULT_MAX_N: u32 = 8;

/// Class id → multiplicity of that class sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassMultiset {
    multiplicities: Vec<BigUint>,
}

impl ClassMultiset {
    pub fn zero(k: usize) -> Self {
        ClassMultiset {
            multiplicities: vec![BigUint::zero(); k],
        }
    }

    /// The class sum of class `i`.
    pub fn class_sum(k: usize, i: usize) -> Self {
        let mut ms = Self::zero(k);
        ms.multiplicities[i] = BigUint::one();
        ms
    }

    pub fn from_counts(counts: impl IntoIterator<Item = u64>) -> Self {
        ClassMultiset {
            multiplicities: counts.into_iter().map(BigUint::from).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.multiplicities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.multiplicities.iter().all(Zero::is_zero)
    }

    pub fn multiplicity(&self, l: usize) -> &BigUint {
        &self.multiplicities[l]
    }

    pub fn multiplicity_u64(&self, l: usize) -> Option<u64> {
        self.multiplicities[l].to_u64()
    }

    /// Classes with nonzero multiplicity, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&l| !self.multiplicities[l].is_zero())
            .collect()
    }

    /// `Σ_l multiplicity(l) · |class l|`.
    pub fn total_mass(&self, classes: &ClassDecomposition) -> BigUint {
        self.multiplicities
            .iter()
            .enumerate()
            .map(|(l, m)| m * BigUint::from(classes.size(l)))
            .sum()
    }

    /// Number of group elements in the support.
    pub fn support_elements(&self, classes: &ClassDecomposition) -> usize {
        self.support().iter().map(|&l| classes.size(l)).sum()
    }

    pub fn to_map(&self) -> BTreeMap<usize, BigUint> {
        self.support()
            .into_iter()
            .map(|l| (l, self.multiplicities[l].clone()))
            .collect()
    }
}

impl Serialize for ClassMultiset {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let support = self.support();
        let mut map = serializer.serialize_map(Some(support.len()))?;
        for l in support {
            let m = &self.multiplicities[l];
            match m.to_u64() {
                Some(v) => map.serialize_entry(&l.to_string(), &v)?,
                None => map.serialize_entry(&l.to_string(), &m.to_string())?,
            }
        }
        map.end()
    }
}

/// Multiplicity of `K̂_l` in `K̂_i · K̂_j`, by counting pairs
/// `(a, b) ∈ K_i × K_j` with `ab` equal to the representative of `K_l`.
pub fn class_product(
    group: &FiniteGroup,
    classes: &ClassDecomposition,
    i: usize,
    j: usize,
) -> ClassMultiset {
    let counts = (0..classes.len()).map(|l| {
        let d = classes.rep(l);
        classes
            .class(i)
            .members
            .iter()
            .filter(|&&a| classes.class_of(group.mul(group.inv(a), d)) == j)
            .count() as u64
    });
    ClassMultiset::from_counts(counts)
}

/// The full table `c[i][j][l]` of class multiplication coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureConstants {
    k: usize,
    sizes: Vec<usize>,
    c: Vec<u64>,
}

impl StructureConstants {
    pub fn compute(group: &FiniteGroup, classes: &ClassDecomposition) -> Self {
        let k = classes.len();
        let n = group.order();
        // c[i][j][l] = #{ a ∈ K_i : a⁻¹ d_l ∈ K_j }
        let slices: Vec<Vec<u64>> = (0..k)
            .into_par_iter()
            .map(|l| {
                let d = classes.rep(l);
                let mut counts = vec![0u64; k * k];
                for a in 0..n {
                    let b = group.mul(group.inv(a), d);
                    counts[classes.class_of(a) * k + classes.class_of(b)] += 1;
                }
                counts
            })
            .collect();
        let mut c = vec![0u64; k * k * k];
        for (l, counts) in slices.into_iter().enumerate() {
            for ij in 0..k * k {
                c[ij * k + l] = counts[ij];
            }
        }
        StructureConstants {
            k,
            sizes: classes.sizes(),
            c,
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, l: usize) -> u64 {
        self.c[(i * self.k + j) * self.k + l]
    }

    pub fn product_of_classes(&self, i: usize, j: usize) -> ClassMultiset {
        ClassMultiset::from_counts((0..self.k).map(|l| self.get(i, j, l)))
    }

    /// `ms · K̂_i`.
    pub fn multiply(&self, ms: &ClassMultiset, i: usize) -> ClassMultiset {
        let mut out = ClassMultiset::zero(self.k);
        for j in ms.support() {
            let m = ms.multiplicity(j);
            for l in 0..self.k {
                let c = self.get(j, i, l);
                if c != 0 {
                    out.multiplicities[l] += m * c;
                }
            }
        }
        out
    }

    /// `K̂_i^n` for `n ≥ 1`.
    pub fn power(&self, i: usize, n: u32) -> ClassMultiset {
        assert!(n >= 1, "class powers start at n = 1");
        let mut ms = ClassMultiset::class_sum(self.k, i);
        for _ in 1..n {
            ms = self.multiply(&ms, i);
        }
        ms
    }

    /// `K̂_i^1, …, K̂_i^max_n`, index `r - 1` holding the r-th power.
    pub fn powers(&self, i: usize, max_n: u32) -> Vec<ClassMultiset> {
        let mut out = Vec::with_capacity(max_n as usize);
        let mut ms = ClassMultiset::class_sum(self.k, i);
        for _ in 0..max_n {
            let next = self.multiply(&ms, i);
            out.push(std::mem::replace(&mut ms, next));
        }
        out
    }

    /// Product of an arbitrary list of classes.
    pub fn product_of_list(&self, list: &[usize]) -> ClassMultiset {
        let Some((&first, rest)) = list.split_first() else {
            return ClassMultiset::class_sum(self.k, 0);
        };
        rest.iter()
            .fold(ClassMultiset::class_sum(self.k, first), |ms, &i| {
                self.multiply(&ms, i)
            })
    }
}

pub fn class_power(sc: &StructureConstants, i: usize, n: u32) -> ClassMultiset {
    sc.power(i, n)
}

/// Which of the studied shapes a class power has.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ShapeTag {
    /// The power is the single class `d`.
    SingleClass {
        d: usize,
    },
    /// `{1} ∪ D`.
    TrivialPlusClass {
        d: usize,
    },
    /// `D ∪ D⁻¹` with `D ≠ D⁻¹` and `D` not the base class.
    ClassPlusInverse {
        d: usize,
        d_inv: usize,
    },
    /// `K ∪ K⁻¹` with `K ≠ K⁻¹`.
    SelfPlusInverse,
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SupportShape {
    pub tag: ShapeTag,
    pub support: Vec<usize>,
}

impl SupportShape {
    pub fn is_single_class(&self) -> bool {
        matches!(self.tag, ShapeTag::SingleClass { .. })
    }

    pub fn is_trivial_plus_class(&self) -> bool {
        matches!(self.tag, ShapeTag::TrivialPlusClass { .. })
    }

    pub fn is_union_with_inverse(&self) -> bool {
        matches!(
            self.tag,
            ShapeTag::ClassPlusInverse { .. } | ShapeTag::SelfPlusInverse
        )
    }

    pub fn is_hit(&self) -> bool {
        !matches!(self.tag, ShapeTag::Other)
    }

    pub fn label(&self) -> &'static str {
        match self.tag {
            ShapeTag::SingleClass { .. } => "SingleClass",
            ShapeTag::TrivialPlusClass { .. } => "TrivialPlusClass",
            ShapeTag::ClassPlusInverse { .. } => "ClassPlusInverse",
            ShapeTag::SelfPlusInverse => "SelfPlusInverse",
            ShapeTag::Other => "Other",
        }
    }
}

/// Classifies the support of a power of class `base`.
pub fn classify_support(
    classes: &ClassDecomposition,
    base: usize,
    ms: &ClassMultiset,
) -> SupportShape {
    let support = ms.support();
    let tag = match *support.as_slice() {
        [d] => ShapeTag::SingleClass { d },
        [0, d] => ShapeTag::TrivialPlusClass { d },
        [a, b] if classes.inverse_class(a) == b && a != b => {
            if base == a || base == b {
                ShapeTag::SelfPlusInverse
            } else {
                ShapeTag::ClassPlusInverse { d: a, d_inv: b }
            }
        }
        _ => ShapeTag::Other,
    };
    SupportShape { tag, support }
}

pub fn is_real_class(classes: &ClassDecomposition, i: usize) -> bool {
    classes.inverse_class(i) == i
}
