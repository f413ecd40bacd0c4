//! Named groups with facts that are checked every time they are built.

use serde::{Deserialize, Serialize};

use crate::algebra::{classify_support, StructureConstants};
use crate::chartable::{compute_character_table, CharacterTable, DixonOptions, IMPORTED_TOLERANCE};
use crate::classes::ClassDecomposition;
use crate::error::{GroupError, TableError};
use crate::group::{FiniteGroup, DEFAULT_CAP};
use crate::group_file::GroupSource;
use crate::perm::Perm;
use crate::presentation::Presentation;

/// The M11 character table shipped with the crate.
pub const M11_TABLE_JSON: &str = include_str!("../../../fixtures/M11.json");

pub fn m11_table() -> Result<CharacterTable, TableError> {
    CharacterTable::from_json(M11_TABLE_JSON, Some(IMPORTED_TOLERANCE))
}

/// Classes with the given element order and size; a fact about a selector
/// must hold for every matching class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSelector {
    pub element_order: u64,
    pub size: usize,
}

fn sel(element_order: u64, size: usize) -> ClassSelector {
    ClassSelector {
        element_order,
        size,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "fact", rename_all = "snake_case")]
pub enum Fact {
    Order {
        value: usize,
    },
    ClassCount {
        value: usize,
    },
    ClassSizes {
        value: Vec<usize>,
    },
    Solvable {
        value: bool,
    },
    Nilpotent {
        value: bool,
    },
    DerivedLength {
        value: usize,
    },
    /// Sorted degrees of the computed character table.
    Degrees {
        value: Vec<u64>,
    },
    ClassExists {
        class: ClassSelector,
    },
    CentralizerOrder {
        class: ClassSelector,
        value: usize,
    },
    /// Orders of the p-parts of a representative, ascending.
    PartOrders {
        class: ClassSelector,
        value: Vec<u64>,
    },
    /// Shape label of `K^n`, with optional data on the companion class `D`.
    PowerShape {
        class: ClassSelector,
        n: u32,
        shape: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        d_size: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        d_order: Option<u64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        d_is_base: Option<bool>,
    },
    /// No `n ∈ [2, max_n]` gives the shape.
    NoPowerShape {
        class: ClassSelector,
        shape: String,
        max_n: u32,
    },
    /// No nontrivial class has a power of any studied shape for `n ∈ [2, max_n]`.
    NoHits {
        max_n: u32,
    },
    /// `KK⁻¹ = {1} ∪ D` with `|D| = d_size`.
    KkInverseTrivialPlus {
        class: ClassSelector,
        d_size: usize,
    },
    GeneratedSubgroup {
        class: ClassSelector,
        order: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        abelian: Option<bool>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        solvable: Option<bool>,
    },
    /// `|O_π'(G)|`.
    NormalPiPrimeOrder {
        pi: Vec<u64>,
        value: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatalogueEntry {
    pub name: String,
    pub source: GroupSource,
    pub order: usize,
    pub expected_facts: Vec<Fact>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactResult {
    pub fact: Fact,
    pub holds: bool,
    pub details: String,
}

impl CatalogueEntry {
    fn new(source: GroupSource, order: usize, facts: Vec<Fact>) -> Self {
        CatalogueEntry {
            name: source.name().to_string(),
            source,
            order,
            expected_facts: facts,
        }
    }

    /// Realizes the group and checks its declared order.
    pub fn build(&self) -> Result<FiniteGroup, GroupError> {
        let group = self.source.build(DEFAULT_CAP.max(self.order))?;
        if group.order() != self.order {
            return Err(GroupError::OrderMismatch {
                declared: self.order,
                actual: group.order(),
            });
        }
        Ok(group)
    }

    pub fn check_facts(&self, group: &FiniteGroup) -> Result<Vec<FactResult>, GroupError> {
        let ctx = FactContext::new(group);
        self.expected_facts
            .iter()
            .map(|f| {
                let (holds, details) = ctx.check(f)?;
                Ok(FactResult {
                    fact: f.clone(),
                    holds,
                    details,
                })
            })
            .collect()
    }
}

struct FactContext<'a> {
    group: &'a FiniteGroup,
    classes: ClassDecomposition,
    sc: StructureConstants,
}

impl<'a> FactContext<'a> {
    fn new(group: &'a FiniteGroup) -> Self {
        let classes = ClassDecomposition::new(group);
        let sc = StructureConstants::compute(group, &classes);
        FactContext { group, classes, sc }
    }

    fn select(&self, s: &ClassSelector) -> Vec<usize> {
        (0..self.classes.len())
            .filter(|&i| {
                self.classes.element_order(i) == s.element_order && self.classes.size(i) == s.size
            })
            .collect()
    }

    fn for_each_class(
        &self,
        s: &ClassSelector,
        mut f: impl FnMut(usize) -> Result<(bool, String), GroupError>,
    ) -> Result<(bool, String), GroupError> {
        let ids = self.select(s);
        if ids.is_empty() {
            return Ok((
                false,
                format!("no class of order {} and size {}", s.element_order, s.size),
            ));
        }
        let mut details = Vec::new();
        let mut all = true;
        for i in ids {
            let (ok, d) = f(i)?;
            all &= ok;
            details.push(format!("class {i}: {d}"));
        }
        Ok((all, details.join("; ")))
    }

    fn check(&self, fact: &Fact) -> Result<(bool, String), GroupError> {
        let g = self.group;
        let classes = &self.classes;
        Ok(match fact {
            Fact::Order { value } => (g.order() == *value, format!("order {}", g.order())),
            Fact::ClassCount { value } => (
                classes.len() == *value,
                format!("{} classes", classes.len()),
            ),
            Fact::ClassSizes { value } => (
                &classes.sizes() == value,
                format!("sizes {:?}", classes.sizes()),
            ),
            Fact::Solvable { value } => {
                let s = g.is_solvable_set(&g.whole_group())?;
                (s == *value, format!("solvable = {s}"))
            }
            Fact::Nilpotent { value } => {
                let (_, nil) = g.lower_central_series_sets(&g.whole_group())?;
                (nil == *value, format!("nilpotent = {nil}"))
            }
            Fact::DerivedLength { value } => {
                let len = g.subgroup_info(&g.whole_group())?.derived_length;
                (len == Some(*value), format!("derived length {len:?}"))
            }
            Fact::Degrees { value } => {
                let table = compute_character_table(g, classes, &self.sc, DixonOptions::default())
                    .map_err(|e| GroupError::Input(e.to_string()))?;
                let mut degrees: Vec<u64> =
                    table.degrees().iter().map(|d| d.round() as u64).collect();
                degrees.sort_unstable();
                (&degrees == value, format!("degrees {degrees:?}"))
            }
            Fact::ClassExists { class } => {
                self.for_each_class(class, |_| Ok((true, "present".into())))?
            }
            Fact::CentralizerOrder { class, value } => self.for_each_class(class, |i| {
                let c = g.centralizer_order(classes.rep(i));
                Ok((c == *value, format!("|C(x)| = {c}")))
            })?,
            Fact::PartOrders { class, value } => self.for_each_class(class, |i| {
                let orders: Vec<u64> = g
                    .p_parts(classes.rep(i))
                    .iter()
                    .map(|&(_, e)| g.element_order(e))
                    .collect();
                Ok((&orders == value, format!("part orders {orders:?}")))
            })?,
            Fact::PowerShape {
                class,
                n,
                shape,
                d_size,
                d_order,
                d_is_base,
            } => self.for_each_class(class, |i| {
                let s = classify_support(classes, i, &self.sc.power(i, *n));
                let d = if s.is_trivial_plus_class() {
                    *s.support.last().expect("nonempty support")
                } else {
                    classes.power_class(g, i, *n as u64)
                };
                let ok = s.label() == shape
                    && d_size.is_none_or(|v| classes.size(d) == v)
                    && d_order.is_none_or(|v| classes.element_order(d) == v)
                    && d_is_base.is_none_or(|v| (d == i) == v);
                Ok((
                    ok,
                    format!(
                        "{} support {:?}, D = class {d} (size {}, order {})",
                        s.label(),
                        s.support,
                        classes.size(d),
                        classes.element_order(d)
                    ),
                ))
            })?,
            Fact::NoPowerShape {
                class,
                shape,
                max_n,
            } => self.for_each_class(class, |i| {
                let powers = self.sc.powers(i, *max_n);
                let found: Vec<u32> = (2..=*max_n)
                    .filter(|&n| {
                        classify_support(classes, i, &powers[n as usize - 1]).label() == shape
                    })
                    .collect();
                Ok((found.is_empty(), format!("{shape} at n = {found:?}")))
            })?,
            Fact::NoHits { max_n } => {
                let mut hits = Vec::new();
                for i in 1..classes.len() {
                    let powers = self.sc.powers(i, *max_n);
                    for n in 2..=*max_n {
                        let s = classify_support(classes, i, &powers[n as usize - 1]);
                        if s.is_hit() {
                            hits.push(format!("class {i} n={n} {}", s.label()));
                        }
                    }
                }
                (hits.is_empty(), format!("hits: {hits:?}"))
            }
            Fact::KkInverseTrivialPlus { class, d_size } => self.for_each_class(class, |i| {
                let support = self
                    .sc
                    .product_of_classes(i, classes.inverse_class(i))
                    .support();
                let ok =
                    support.len() == 2 && support[0] == 0 && classes.size(support[1]) == *d_size;
                Ok((ok, format!("support of KK^-1 {support:?}")))
            })?,
            Fact::GeneratedSubgroup {
                class,
                order,
                abelian,
                solvable,
            } => self.for_each_class(class, |i| {
                let info = g.subgroup_closure(classes.class(i).members.iter().copied())?;
                let ok = info.order == *order
                    && abelian.is_none_or(|a| info.is_abelian() == a)
                    && solvable.is_none_or(|s| info.is_solvable() == s);
                Ok((
                    ok,
                    format!(
                        "|<K>| = {}, abelian {}, solvable {}",
                        info.order,
                        info.is_abelian(),
                        info.is_solvable()
                    ),
                ))
            })?,
            Fact::NormalPiPrimeOrder { pi, value } => {
                let o = g.largest_normal_pi_prime(classes, pi)?;
                (o.order == *value, format!("|O_pi'| = {}", o.order))
            }
        })
    }
}

fn perms(degree: usize, gens: &[&[&[usize]]]) -> Vec<Perm> {
    gens.iter()
        .map(|cycles| Perm::from_cycles(degree, cycles).expect("catalogue permutation"))
        .collect()
}

fn cyclic(n: usize) -> CatalogueEntry {
    let generator = if n == 1 {
        Perm::identity(1)
    } else {
        let cycle: Vec<usize> = (0..n).collect();
        Perm::from_cycles(n, &[&cycle]).expect("cycle")
    };
    let mut facts = vec![Fact::Order { value: n }, Fact::ClassCount { value: n }];
    if n == 4 {
        // K = {g}, K² = {g²}: a real class of a 2-element
        facts.push(Fact::PowerShape {
            class: sel(4, 1),
            n: 2,
            shape: "SingleClass".into(),
            d_size: Some(1),
            d_order: Some(2),
            d_is_base: Some(false),
        });
    }
    CatalogueEntry::new(
        GroupSource::from_perms(&format!("Z{n}"), &[generator]),
        n,
        facts,
    )
}

/// `SL(2,3)` acting on the eight nonzero vectors of `F_3²`.
fn sl23_generators() -> Vec<Perm> {
    let vectors: Vec<(usize, usize)> = (0..3)
        .flat_map(|a| (0..3).map(move |b| (a, b)))
        .filter(|&v| v != (0, 0))
        .collect();
    let index = |v: (usize, usize)| vectors.iter().position(|&w| w == v).expect("nonzero");
    let act = |m: [[usize; 2]; 2]| {
        let images = vectors
            .iter()
            .map(|&(a, b)| {
                index((
                    (m[0][0] * a + m[0][1] * b) % 3,
                    (m[1][0] * a + m[1][1] * b) % 3,
                ))
            })
            .collect();
        Perm::from_images(images).expect("invertible matrix")
    };
    vec![act([[1, 1], [0, 1]]), act([[1, 0], [1, 1]])]
}

/// Multiplication in `GF(8) = F_2[t]/(t³ + t + 1)`, elements as bit masks.
fn gf8_mul(a: usize, b: usize) -> usize {
    let mut product = 0;
    for bit in 0..3 {
        if b >> bit & 1 == 1 {
            product ^= a << bit;
        }
    }
    for bit in (3..5).rev() {
        if product >> bit & 1 == 1 {
            product ^= 0b1011 << (bit - 3);
        }
    }
    product
}

/// `AΓL(1,8)`: the affine maps of the eight field elements together with
/// the Frobenius map.
fn agammal18_generators() -> Vec<Perm> {
    let map =
        |f: &dyn Fn(usize) -> usize| Perm::from_images((0..8).map(f).collect()).expect("bijection");
    vec![
        map(&|x| x ^ 1),
        map(&|x| gf8_mul(x, 2)),
        map(&|x| gf8_mul(x, x)),
    ]
}

fn presented(name: &str, gens: &[&str], relators: &[&str], order: usize) -> GroupSource {
    GroupSource::Presented {
        name: name.to_string(),
        presentation: Presentation::new(gens, relators, order),
    }
}

/// Every group entry, in a fixed order.
pub fn build_catalogue() -> Vec<CatalogueEntry> {
    let mut entries: Vec<CatalogueEntry> = (1..=12).map(cyclic).collect();
    entries.push(CatalogueEntry::new(
        GroupSource::from_perms("2^3", &perms(6, &[&[&[0, 1]], &[&[2, 3]], &[&[4, 5]]])),
        8,
        vec![
            Fact::ClassCount { value: 8 },
            Fact::Nilpotent { value: true },
        ],
    ));
    entries.push(CatalogueEntry::new(
        GroupSource::from_perms("S3", &perms(3, &[&[&[0, 1, 2]], &[&[0, 1]]])),
        6,
        vec![
            Fact::ClassSizes {
                value: vec![1, 2, 3],
            },
            Fact::Degrees {
                value: vec![1, 1, 2],
            },
            Fact::Nilpotent { value: false },
            Fact::PowerShape {
                class: sel(2, 3),
                n: 2,
                shape: "TrivialPlusClass".into(),
                d_size: None,
                d_order: None,
                d_is_base: None,
            },
        ],
    ));
    entries.push(CatalogueEntry::new(
        GroupSource::from_perms("D8", &perms(4, &[&[&[0, 1, 2, 3]], &[&[0, 2]]])),
        8,
        vec![
            Fact::ClassCount { value: 5 },
            Fact::Nilpotent { value: true },
        ],
    ));
    entries.push(CatalogueEntry::new(
        presented("Q8", &["i", "j"], &["i^4", "i^2 j^-2", "j' i j i"], 8),
        8,
        vec![
            Fact::ClassCount { value: 5 },
            Fact::Nilpotent { value: true },
            Fact::PowerShape {
                class: sel(4, 2),
                n: 2,
                shape: "TrivialPlusClass".into(),
                d_size: Some(1),
                d_order: Some(2),
                d_is_base: None,
            },
        ],
    ));
    entries.push(CatalogueEntry::new(
        GroupSource::from_perms("A4", &perms(4, &[&[&[0, 1, 2]], &[&[0, 1], &[2, 3]]])),
        12,
        vec![
            Fact::ClassSizes {
                value: vec![1, 3, 4, 4],
            },
            Fact::CentralizerOrder {
                class: sel(3, 4),
                value: 3,
            },
            Fact::PowerShape {
                class: sel(3, 4),
                n: 3,
                shape: "TrivialPlusClass".into(),
                d_size: Some(3),
                d_order: Some(2),
                d_is_base: None,
            },
            Fact::NormalPiPrimeOrder {
                pi: vec![3],
                value: 4,
            },
        ],
    ));
    entries.push(CatalogueEntry::new(
        GroupSource::from_perms("S4", &perms(4, &[&[&[0, 1, 2, 3]], &[&[0, 1]]])),
        24,
        vec![
            Fact::ClassCount { value: 5 },
            Fact::Degrees {
                value: vec![1, 1, 2, 3, 3],
            },
            Fact::Solvable { value: true },
        ],
    ));
    entries.push(CatalogueEntry::new(
        GroupSource::from_perms("SL(2,3)", &sl23_generators()),
        24,
        vec![
            Fact::ClassCount { value: 7 },
            Fact::Degrees {
                value: vec![1, 1, 1, 2, 2, 2, 3],
            },
            Fact::DerivedLength { value: 3 },
            Fact::KkInverseTrivialPlus {
                class: sel(6, 4),
                d_size: 6,
            },
            Fact::NoPowerShape {
                class: sel(6, 4),
                shape: "TrivialPlusClass".into(),
                max_n: 12,
            },
        ],
    ));
    entries.push(CatalogueEntry::new(
        presented("M16", &["a", "x"], &["a^8", "x^2", "x a x' a^-5"], 16),
        16,
        vec![
            Fact::Nilpotent { value: true },
            Fact::CentralizerOrder {
                class: sel(8, 2),
                value: 8,
            },
            Fact::PowerShape {
                class: sel(8, 2),
                n: 2,
                shape: "ClassPlusInverse".into(),
                d_size: Some(1),
                d_order: Some(4),
                d_is_base: Some(false),
            },
            Fact::GeneratedSubgroup {
                class: sel(8, 2),
                order: 8,
                abelian: Some(true),
                solvable: Some(true),
            },
        ],
    ));
    entries.push(CatalogueEntry::new(
        presented("Z3:Z4", &["a", "b"], &["a^3", "b^4", "b' a b a"], 12),
        12,
        vec![Fact::PowerShape {
            class: sel(4, 3),
            n: 3,
            shape: "SingleClass".into(),
            d_size: Some(3),
            d_order: None,
            d_is_base: Some(false),
        }],
    ));
    entries.push(CatalogueEntry::new(
        GroupSource::from_perms(
            "Z2x(Z7:Z3)",
            &perms(
                9,
                &[
                    &[&[0, 1, 2, 3, 4, 5, 6]],
                    &[&[1, 2, 4], &[3, 6, 5]],
                    &[&[7, 8]],
                ],
            ),
        ),
        42,
        vec![
            Fact::PowerShape {
                class: sel(14, 3),
                n: 2,
                shape: "ClassPlusInverse".into(),
                d_size: Some(3),
                d_order: Some(7),
                d_is_base: Some(false),
            },
            Fact::PartOrders {
                class: sel(14, 3),
                value: vec![2, 7],
            },
            Fact::NormalPiPrimeOrder {
                pi: vec![3],
                value: 14,
            },
        ],
    ));
    entries.push(CatalogueEntry::new(
        presented(
            "(Z7:Z9):Z2",
            &["a", "b", "c"],
            &["a^7", "b^9", "c^2", "b' a b a^-2", "c' a c a", "c' b' c b"],
            126,
        ),
        126,
        vec![
            Fact::PowerShape {
                class: sel(21, 6),
                n: 3,
                shape: "TrivialPlusClass".into(),
                d_size: Some(6),
                d_order: Some(7),
                d_is_base: None,
            },
            Fact::GeneratedSubgroup {
                class: sel(21, 6),
                order: 21,
                abelian: Some(true),
                solvable: Some(true),
            },
            Fact::PartOrders {
                class: sel(21, 6),
                value: vec![3, 7],
            },
        ],
    ));
    entries.push(CatalogueEntry::new(
        GroupSource::from_perms("AGammaL(1,8)", &agammal18_generators()),
        168,
        vec![
            Fact::ClassExists { class: sel(7, 24) },
            Fact::PowerShape {
                class: sel(7, 24),
                n: 2,
                shape: "SelfPlusInverse".into(),
                d_size: None,
                d_order: None,
                d_is_base: None,
            },
            Fact::GeneratedSubgroup {
                class: sel(7, 24),
                order: 56,
                abelian: Some(false),
                solvable: Some(true),
            },
        ],
    ));
    entries.push(CatalogueEntry::new(
        GroupSource::from_perms("A5", &perms(5, &[&[&[0, 1, 2, 3, 4]], &[&[0, 1, 2]]])),
        60,
        vec![
            Fact::ClassSizes {
                value: vec![1, 12, 12, 15, 20],
            },
            Fact::Solvable { value: false },
            Fact::NoHits { max_n: 6 },
        ],
    ));
    entries
}

pub fn find_entry(name: &str) -> Option<CatalogueEntry> {
    build_catalogue().into_iter().find(|e| e.name == name)
}
