//! Subgroups given as element sets, with their series and quotients.

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::arith;
use crate::classes::ClassDecomposition;
use crate::error::GroupError;
use crate::group::FiniteGroup;
use crate::perm::Perm;

/// Upper bound on the number of series steps before giving up.
pub const SERIES_BOUND: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubgroupInfo {
    pub members: Vec<usize>,
    pub order: usize,
    pub is_normal: bool,
    /// `None` when the derived series stabilizes above the trivial subgroup.
    pub derived_length: Option<usize>,
    pub is_nilpotent: bool,
}

impl SubgroupInfo {
    pub fn is_solvable(&self) -> bool {
        self.derived_length.is_some()
    }

    pub fn is_abelian(&self) -> bool {
        self.derived_length.is_some_and(|d| d <= 1)
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }
}

/// The set `[x, G] = { x⁻¹ x^g }` next to the subgroup it generates.
#[derive(Debug, Clone)]
pub struct CommutatorStructures {
    pub commutator_set: FixedBitSet,
    pub commutator_subgroup: SubgroupInfo,
    pub set_is_subgroup: bool,
}

impl FiniteGroup {
    pub fn subgroup_info(&self, set: &FixedBitSet) -> Result<SubgroupInfo, GroupError> {
        debug_assert!(self.is_subgroup(set));
        let derived = self.derived_series_sets(set)?;
        let terminal = derived.last().expect("series is nonempty");
        let derived_length = (terminal.count_ones(..) == 1).then(|| derived.len() - 1);
        let (_, is_nilpotent) = self.lower_central_series_sets(set)?;
        Ok(SubgroupInfo {
            members: set.ones().collect(),
            order: set.count_ones(..),
            is_normal: self.is_invariant(set),
            derived_length,
            is_nilpotent,
        })
    }

    pub fn whole_group(&self) -> FixedBitSet {
        let mut set = self.empty_set();
        set.insert_range(..);
        set
    }

    pub fn centralizer(&self, i: usize) -> Result<SubgroupInfo, GroupError> {
        self.subgroup_info(&self.centralizer_set(i))
    }

    pub fn subgroup_closure(
        &self,
        seed: impl IntoIterator<Item = usize>,
    ) -> Result<SubgroupInfo, GroupError> {
        self.subgroup_info(&self.closure(seed))
    }

    /// Subgroup generated by all `G`-conjugates of the seed.
    pub fn normal_closure(&self, seed: impl IntoIterator<Item = usize>) -> FixedBitSet {
        let mut set = self.closure(seed);
        loop {
            let conjugates: Vec<usize> = set
                .ones()
                .flat_map(|h| self.generators().iter().map(move |&g| (h, g)))
                .map(|(h, g)| self.conj(h, g))
                .filter(|&c| !set.contains(c))
                .collect();
            if conjugates.is_empty() {
                return set;
            }
            set = self.closure(set.ones().chain(conjugates));
        }
    }

    pub fn commutator_set(&self, x: usize) -> FixedBitSet {
        self.set_of((0..self.order()).map(|g| self.commutator(x, g)))
    }

    pub fn commutator_structures(&self, x: usize) -> Result<CommutatorStructures, GroupError> {
        let commutator_set = self.commutator_set(x);
        let closed = self.closure(commutator_set.ones());
        let set_is_subgroup = closed == commutator_set;
        Ok(CommutatorStructures {
            commutator_subgroup: self.subgroup_info(&closed)?,
            commutator_set,
            set_is_subgroup,
        })
    }

    /// `[A, B]`, the subgroup generated by all `[a, b]`.
    pub fn commutator_subgroup(&self, a: &FixedBitSet, b: &FixedBitSet) -> FixedBitSet {
        let bs: Vec<usize> = b.ones().collect();
        let mut comms = self.empty_set();
        for x in a.ones() {
            for &y in &bs {
                comms.insert(self.commutator(x, y));
            }
        }
        self.closure(comms.ones())
    }

    /// `H ⊇ H' ⊇ H'' ⊇ …` up to and including the first repeated term.
    pub fn derived_series_sets(&self, h: &FixedBitSet) -> Result<Vec<FixedBitSet>, GroupError> {
        let mut series = vec![h.clone()];
        for _ in 0..SERIES_BOUND {
            let cur = series.last().unwrap();
            let next = self.commutator_subgroup(cur, cur);
            if &next == cur {
                return Ok(series);
            }
            series.push(next);
        }
        Err(GroupError::IterationBound(SERIES_BOUND))
    }

    /// Lower central series of `h` and whether it reaches the trivial group.
    pub fn lower_central_series_sets(
        &self,
        h: &FixedBitSet,
    ) -> Result<(Vec<FixedBitSet>, bool), GroupError> {
        let mut series = vec![h.clone()];
        for _ in 0..SERIES_BOUND {
            let cur = series.last().unwrap();
            let next = self.commutator_subgroup(cur, h);
            if &next == cur {
                let nilpotent = cur.count_ones(..) == 1;
                return Ok((series, nilpotent));
            }
            series.push(next);
        }
        Err(GroupError::IterationBound(SERIES_BOUND))
    }

    pub fn derived_series(&self, h: &FixedBitSet) -> Result<Vec<SubgroupInfo>, GroupError> {
        self.derived_series_sets(h)?
            .iter()
            .map(|s| self.subgroup_info(s))
            .collect()
    }

    pub fn lower_central_series(
        &self,
        h: &FixedBitSet,
    ) -> Result<(Vec<SubgroupInfo>, bool), GroupError> {
        let (sets, nilpotent) = self.lower_central_series_sets(h)?;
        let infos = sets
            .iter()
            .map(|s| self.subgroup_info(s))
            .collect::<Result<_, _>>()?;
        Ok((infos, nilpotent))
    }

    pub fn is_solvable_set(&self, h: &FixedBitSet) -> Result<bool, GroupError> {
        let series = self.derived_series_sets(h)?;
        Ok(series.last().unwrap().count_ones(..) == 1)
    }

    /// `O_π'(G)`: the join of the normal closures of classes whose normal
    /// closure has order coprime to every prime in `pi`.
    pub fn largest_normal_pi_prime(
        &self,
        classes: &ClassDecomposition,
        pi: &[u64],
    ) -> Result<SubgroupInfo, GroupError> {
        let coprime = |n: usize| pi.iter().all(|&p| !(n as u64).is_multiple_of(p));
        let mut join = self.empty_set();
        join.insert(0);
        for class in classes.classes() {
            if !coprime(self.element_order(class.rep) as usize) {
                continue;
            }
            let closure = self.normal_closure([class.rep]);
            if coprime(closure.count_ones(..)) {
                join.union_with(&closure);
            }
        }
        let join = self.closure(join.ones());
        self.subgroup_info(&join)
    }

    /// `G/N`, realized by the action of `G` on the cosets of `N`.
    pub fn quotient(&self, n: &FixedBitSet) -> Result<FiniteGroup, GroupError> {
        if !n.contains(0) || !self.is_subgroup(n) || !self.is_invariant(n) {
            return Err(GroupError::NotNormal);
        }
        let mut coset_of = vec![usize::MAX; self.order()];
        let mut reps = Vec::new();
        for g in 0..self.order() {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(g);
            for m in n.ones() {
                coset_of[self.mul(g, m)] = id;
            }
        }
        let degree = reps.len();
        let mut gens: Vec<Perm> = self
            .generators()
            .iter()
            .map(|&s| {
                let images = reps.iter().map(|&r| coset_of[self.mul(r, s)]).collect();
                Perm::from_images(images)
            })
            .collect::<Result<_, _>>()?;
        if gens.is_empty() {
            gens.push(Perm::identity(degree));
        }
        Ok(
            FiniteGroup::enumerate(&gens, self.order())?.with_name(format!(
                "{}/N{}",
                self.name(),
                n.count_ones(..)
            )),
        )
    }

    /// Prime divisors of `|G|`.
    pub fn prime_divisors(&self) -> Vec<u64> {
        arith::prime_divisors(self.order() as u64)
    }
}
