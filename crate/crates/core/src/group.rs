//! Fully enumerated permutation groups with index-based arithmetic.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::error::GroupError;
use crate::perm::Perm;

/// Default bound on the number of elements a group may have.
pub const DEFAULT_CAP: usize = 5040;

/// A finite group given by its full element list.
///
/// Element 0 is the identity; the remaining elements appear in breadth-first
/// discovery order from the sorted generator list, so indices are stable
/// across runs. Multiplication and inversion are table lookups.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    name: String,
    degree: usize,
    elements: Vec<Perm>,
    generators: Vec<usize>,
    mult: Vec<u32>,
    inv: Vec<u32>,
    orders: Vec<u32>,
}

impl FiniteGroup {
    /// Closes `generators` under composition.
    pub fn enumerate(generators: &[Perm], cap: usize) -> Result<Self, GroupError> {
        let degree = generators.first().ok_or(GroupError::NoGenerators)?.degree();
        if let Some(bad) = generators.iter().find(|g| g.degree() != degree) {
            return Err(GroupError::DegreeMismatch {
                expected: degree,
                found: bad.degree(),
            });
        }
        let mut gens: Vec<Perm> = generators
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect();
        gens.sort();
        gens.dedup();

        let identity = Perm::identity(degree);
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<Perm, usize> = HashMap::from([(identity, 0)]);
        // right[e][s] = index of elements[e] * gens[s]
        let mut right: Vec<Vec<u32>> = Vec::new();
        // parent[j] = (p, s) with elements[j] = elements[p] * gens[s]
        let mut parent: Vec<(usize, usize)> = vec![(0, 0)];

        let mut pos = 0;
        while pos < elements.len() {
            let mut row = Vec::with_capacity(gens.len());
            for (s, g) in gens.iter().enumerate() {
                let prod = elements[pos].then(g);
                let idx = match index.get(&prod) {
                    Some(&idx) => idx,
                    None => {
                        let idx = elements.len();
                        if idx >= cap {
                            return Err(GroupError::CapExceeded { cap });
                        }
                        index.insert(prod.clone(), idx);
                        elements.push(prod);
                        parent.push((pos, s));
                        idx
                    }
                };
                row.push(idx as u32);
            }
            right.push(row);
            pos += 1;
        }

        let n = elements.len();
        let mut mult = vec![0u32; n * n];
        for i in 0..n {
            let base = i * n;
            mult[base] = i as u32;
            for j in 1..n {
                let (p, s) = parent[j];
                let via = mult[base + p] as usize;
                mult[base + j] = right[via][s];
            }
        }
        let mut inv = vec![0u32; n];
        for i in 0..n {
            let row = &mult[i * n..(i + 1) * n];
            inv[i] = row
                .iter()
                .position(|&x| x == 0)
                .expect("group has inverses") as u32;
        }
        let generators = gens.iter().map(|g| index[g]).collect();

        let mut group = FiniteGroup {
            name: String::new(),
            degree,
            elements,
            generators,
            mult,
            inv,
            orders: Vec::new(),
        };
        group.orders = (0..n).map(|i| group.compute_order(i)).collect();
        Ok(group)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    /// Element indices of the (sorted, deduplicated) generators.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn generator_perms(&self) -> Vec<Perm> {
        self.generators
            .iter()
            .map(|&g| self.elements[g].clone())
            .collect()
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.elements.iter().position(|e| e == p)
    }

    #[inline]
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.mult[i * self.elements.len() + j] as usize
    }

    #[inline]
    pub fn inv(&self, i: usize) -> usize {
        self.inv[i] as usize
    }

    /// `g⁻¹ x g`.
    #[inline]
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// `x⁻¹ g⁻¹ x g`.
    #[inline]
    pub fn commutator(&self, x: usize, g: usize) -> usize {
        self.mul(self.inv(x), self.conj(x, g))
    }

    pub fn pow(&self, i: usize, n: u64) -> usize {
        let o = self.orders.get(i).map(|&o| o as u64);
        let mut e = match o {
            Some(o) => n % o,
            None => n,
        };
        let mut base = i;
        let mut acc = 0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn compute_order(&self, i: usize) -> u32 {
        let mut m = 1;
        let mut cur = i;
        while cur != 0 {
            cur = self.mul(cur, i);
            m += 1;
        }
        m
    }

    /// Smallest `m ≥ 1` with `i^m = 1`.
    pub fn element_order(&self, i: usize) -> u64 {
        self.orders[i] as u64
    }

    pub fn commutes(&self, i: usize, j: usize) -> bool {
        self.mul(i, j) == self.mul(j, i)
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        g.iter().all(|&a| g.iter().all(|&b| self.commutes(a, b)))
    }

    /// Elements commuting with `i`, as a bit set.
    pub fn centralizer_set(&self, i: usize) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(self.order());
        for j in 0..self.order() {
            if self.commutes(i, j) {
                set.insert(j);
            }
        }
        set
    }

    pub fn centralizer_order(&self, i: usize) -> usize {
        (0..self.order()).filter(|&j| self.commutes(i, j)).count()
    }

    pub fn empty_set(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.order())
    }

    pub fn set_of(&self, members: impl IntoIterator<Item = usize>) -> FixedBitSet {
        let mut set = self.empty_set();
        set.extend(members);
        set
    }

    /// Subgroup generated by `seed`, as a bit set.
    pub fn closure(&self, seed: impl IntoIterator<Item = usize>) -> FixedBitSet {
        let mut gens: Vec<usize> = seed.into_iter().filter(|&s| s != 0).collect();
        gens.sort_unstable();
        gens.dedup();
        let mut set = self.empty_set();
        set.insert(0);
        let mut queue = vec![0usize];
        while let Some(e) = queue.pop() {
            for &s in &gens {
                let p = self.mul(e, s);
                if !set.put(p) {
                    queue.push(p);
                }
            }
        }
        set
    }

    /// True iff the set contains the identity and is closed under products.
    pub fn is_subgroup(&self, set: &FixedBitSet) -> bool {
        if !set.contains(0) {
            return false;
        }
        let members: Vec<usize> = set.ones().collect();
        members
            .iter()
            .all(|&a| members.iter().all(|&b| set.contains(self.mul(a, b))))
    }

    /// True iff the set is closed under conjugation by `G`.
    pub fn is_invariant(&self, set: &FixedBitSet) -> bool {
        set.ones().all(|h| {
            self.generators
                .iter()
                .all(|&g| set.contains(self.conj(h, g)))
        })
    }

    /// Elementwise product set `AB`.
    pub fn product_set(&self, a: &FixedBitSet, b: &FixedBitSet) -> FixedBitSet {
        let mut out = self.empty_set();
        let bs: Vec<usize> = b.ones().collect();
        for x in a.ones() {
            for &y in &bs {
                out.insert(self.mul(x, y));
            }
        }
        out
    }

    pub fn inverse_set(&self, a: &FixedBitSet) -> FixedBitSet {
        self.set_of(a.ones().map(|x| self.inv(x)))
    }

    /// Splits `x` into commuting prime-power parts whose product is `x`.
    ///
    /// Returns `(p, index of the p-part)` per prime dividing `o(x)`, in
    /// ascending prime order; the identity yields an empty list.
    pub fn p_parts(&self, x: usize) -> Vec<(u64, usize)> {
        let o = self.element_order(x);
        crate::arith::factorize(o)
            .into_iter()
            .map(|(p, a)| {
                let q = p.pow(a);
                let cofactor = o / q;
                // e ≡ 1 (mod q), e ≡ 0 (mod cofactor)
                let u = crate::arith::mod_inverse(cofactor % q, q).expect("coprime parts");
                let e = (cofactor * u) % o;
                (p, self.pow(x, e))
            })
            .collect()
    }

    /// True iff the order of `x` is a power of a single prime (or 1).
    pub fn is_prime_power_element(&self, x: usize) -> bool {
        crate::arith::factorize(self.element_order(x)).len() <= 1
    }
}
