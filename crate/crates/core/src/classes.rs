use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::group::FiniteGroup;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjugacyClass {
    /// Smallest element index in the class.
    pub rep: usize,
    pub members: Vec<usize>,
    pub size: usize,
}

/// Partition of a group into conjugacy classes.
///
/// Class 0 is the identity; the rest are ordered by size, then by smallest
/// member index.
#[derive(Debug, Clone, Serialize)]
pub struct ClassDecomposition {
    group_order: usize,
    classes: Vec<ConjugacyClass>,
    class_of: Vec<usize>,
    inverse_class: Vec<usize>,
    element_orders: Vec<u64>,
}

impl ClassDecomposition {
    pub fn new(group: &FiniteGroup) -> Self {
        let n = group.order();
        let mut assigned = vec![false; n];
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        for x in 0..n {
            if assigned[x] {
                continue;
            }
            assigned[x] = true;
            let mut orbit = vec![x];
            let mut k = 0;
            while k < orbit.len() {
                let y = orbit[k];
                for &g in group.generators() {
                    let z = group.conj(y, g);
                    if !assigned[z] {
                        assigned[z] = true;
                        orbit.push(z);
                    }
                }
                k += 1;
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        // x ascends, so orbits are already sorted by smallest member
        orbits[1..].sort_by_key(|o| o.len());

        let mut class_of = vec![0; n];
        let classes: Vec<ConjugacyClass> = orbits
            .into_iter()
            .enumerate()
            .map(|(id, members)| {
                for &m in &members {
                    class_of[m] = id;
                }
                ConjugacyClass {
                    rep: members[0],
                    size: members.len(),
                    members,
                }
            })
            .collect();
        let inverse_class = classes.iter().map(|c| class_of[group.inv(c.rep)]).collect();
        let element_orders = classes.iter().map(|c| group.element_order(c.rep)).collect();
        ClassDecomposition {
            group_order: n,
            classes,
            class_of,
            inverse_class,
            element_orders,
        }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn class(&self, id: usize) -> &ConjugacyClass {
        &self.classes[id]
    }

    pub fn size(&self, id: usize) -> usize {
        self.classes[id].size
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.size).collect()
    }

    pub fn rep(&self, id: usize) -> usize {
        self.classes[id].rep
    }

    pub fn class_of(&self, element: usize) -> usize {
        self.class_of[element]
    }

    pub fn inverse_class(&self, id: usize) -> usize {
        self.inverse_class[id]
    }

    pub fn element_order(&self, id: usize) -> u64 {
        self.element_orders[id]
    }

    pub fn element_orders(&self) -> &[u64] {
        &self.element_orders
    }

    /// Class of `x^n` for `x` in class `id`.
    pub fn power_class(&self, group: &FiniteGroup, id: usize, n: u64) -> usize {
        self.class_of[group.pow(self.rep(id), n)]
    }

    /// Union of the given classes as an element set.
    pub fn element_set(&self, ids: impl IntoIterator<Item = usize>) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(self.group_order);
        for id in ids {
            set.extend(self.classes[id].members.iter().copied());
        }
        set
    }

    /// Class ids whose members all lie in `set`, assuming `set` is a union
    /// of classes.
    pub fn classes_in(&self, set: &FixedBitSet) -> Vec<usize> {
        (0..self.len())
            .filter(|&id| set.contains(self.rep(id)))
            .collect()
    }
}
