//! Generic finite-group engine: closure from generators, conjugacy-class
//! enumeration and the k / k_p / k_{p'} class report.
//!
//! Elements are abstract; an oracle supplies identity, multiplication,
//! inversion and an injective totally ordered key. All outputs are sorted by
//! key, so everything downstream is deterministic and diffable.

use std::collections::HashMap;
use std::collections::VecDeque;
use thiserror::Error;

use crate::numtheory::factorize;

pub const DEFAULT_ELEMENT_CAP: usize = 2_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("group closure exceeded the element cap of {0}")]
    CapExceeded(usize),
    #[error("duplicate canonical key {0:#x} in element list")]
    DuplicateKey(u128),
}

/// Multiplication oracle for one family of group elements.
///
/// `canonical_key` must be injective on every group the oracle is used with;
/// class representatives and element orderings are defined through it.
pub trait GroupOracle {
    type Element: Clone + Eq + std::hash::Hash;

    fn identity(&self) -> Self::Element;
    fn multiply(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;
    fn invert(&self, g: &Self::Element) -> Self::Element;
    fn canonical_key(&self, g: &Self::Element) -> u128;
}

/// A fully enumerated finite group: element list in canonical-key order plus
/// the generating set used for conjugacy orbits.
pub struct FiniteGroup<O: GroupOracle> {
    pub oracle: O,
    elements: Vec<O::Element>,
    keys: Vec<u128>,
    generators: Vec<O::Element>,
}

impl<O: GroupOracle> FiniteGroup<O> {
    /// Closure of `generators` under multiplication (which, the carrier being
    /// finite, is the generated subgroup). Deterministic: the element list is
    /// sorted by canonical key.
    pub fn generate(
        oracle: O,
        generators: Vec<O::Element>,
        cap: usize,
    ) -> Result<Self, GroupError> {
        let mut seen: HashMap<u128, O::Element> = HashMap::new();
        let id = oracle.identity();
        seen.insert(oracle.canonical_key(&id), id.clone());
        let mut queue: VecDeque<O::Element> = VecDeque::new();
        queue.push_back(id);
        while let Some(x) = queue.pop_front() {
            for g in &generators {
                let y = oracle.multiply(&x, g);
                let k = oracle.canonical_key(&y);
                if !seen.contains_key(&k) {
                    if seen.len() >= cap {
                        return Err(GroupError::CapExceeded(cap));
                    }
                    seen.insert(k, y.clone());
                    queue.push_back(y);
                }
            }
        }
        let mut pairs: Vec<(u128, O::Element)> = seen.into_iter().collect();
        pairs.sort_unstable_by_key(|&(k, _)| k);
        let keys = pairs.iter().map(|&(k, _)| k).collect();
        let elements = pairs.into_iter().map(|(_, e)| e).collect();
        Ok(FiniteGroup {
            oracle,
            elements,
            keys,
            generators,
        })
    }

    /// Wrap an explicit element list (already known to be a subgroup).
    /// `generators` must generate the listed set; conjugacy enumeration
    /// conjugates by generators only.
    pub fn from_elements(
        oracle: O,
        elements: Vec<O::Element>,
        generators: Vec<O::Element>,
    ) -> Result<Self, GroupError> {
        let mut pairs: Vec<(u128, O::Element)> = elements
            .into_iter()
            .map(|e| (oracle.canonical_key(&e), e))
            .collect();
        pairs.sort_unstable_by_key(|&(k, _)| k);
        for w in pairs.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(GroupError::DuplicateKey(w[0].0));
            }
        }
        let keys = pairs.iter().map(|&(k, _)| k).collect();
        let elements = pairs.into_iter().map(|(_, e)| e).collect();
        Ok(FiniteGroup {
            oracle,
            elements,
            keys,
            generators,
        })
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn elements(&self) -> &[O::Element] {
        &self.elements
    }

    pub fn generators(&self) -> &[O::Element] {
        &self.generators
    }

    pub fn index_of(&self, g: &O::Element) -> Option<usize> {
        let k = self.oracle.canonical_key(g);
        self.keys.binary_search(&k).ok()
    }

    pub fn contains(&self, g: &O::Element) -> bool {
        self.index_of(g).is_some()
    }

    /// Conjugacy classes as index lists. Classes are seeded from the
    /// key-minimal unassigned element and closed under conjugation by the
    /// generators only; class list is ordered by representative key and the
    /// representative is the key-minimal member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<u32>> {
        let n = self.elements.len();
        let inv_gens: Vec<(O::Element, O::Element)> = self
            .generators
            .iter()
            .map(|g| (g.clone(), self.oracle.invert(g)))
            .collect();
        let mut assigned = vec![false; n];
        let mut classes: Vec<Vec<u32>> = Vec::new();
        for seed in 0..n {
            if assigned[seed] {
                continue;
            }
            // seed is key-minimal among unassigned, hence class-minimal
            let mut members = vec![seed as u32];
            assigned[seed] = true;
            let mut frontier = vec![seed];
            while let Some(i) = frontier.pop() {
                let x = &self.elements[i];
                for (g, ginv) in &inv_gens {
                    let y = self
                        .oracle
                        .multiply(ginv, &self.oracle.multiply(x, g));
                    let j = self
                        .index_of(&y)
                        .expect("conjugate fell outside the enumerated group");
                    if !assigned[j] {
                        assigned[j] = true;
                        members.push(j as u32);
                        frontier.push(j);
                    }
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        classes
    }

    pub fn pow(&self, g: &O::Element, mut e: u64) -> O::Element {
        let mut acc = self.oracle.identity();
        let mut b = g.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.oracle.multiply(&acc, &b);
            }
            b = self.oracle.multiply(&b, &b);
            e >>= 1;
        }
        acc
    }

    /// Order of g, using the group order to avoid a linear scan.
    pub fn element_order_in(&self, g: &O::Element) -> u64 {
        let id = self.oracle.identity();
        let n = self.order();
        debug_assert!(self.oracle.canonical_key(&self.pow(g, n)) == self.oracle.canonical_key(&id));
        let mut t = n;
        for (p, e) in factorize(n).factors {
            for _ in 0..e {
                if t % p == 0 && self.pow(g, t / p) == id {
                    t /= p;
                } else {
                    break;
                }
            }
        }
        t
    }
}

/// Order of g by direct iteration, with no ambient group at hand.
pub fn element_order<O: GroupOracle>(g: &O::Element, oracle: &O) -> u64 {
    let id = oracle.identity();
    let mut x = g.clone();
    let mut t = 1u64;
    while x != id {
        x = oracle.multiply(&x, g);
        t += 1;
    }
    t
}

/// Class-count report relative to a prime p.
///
/// Conventions: k_p counts classes of elements of p-power order including
/// the identity class; k_{p'} counts classes of elements of order coprime to
/// p, again including the identity. Elements of mixed order contribute to k
/// only, so k_p + k_{p'} = k + 1 exactly when no mixed orders occur.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyReport {
    pub order: u64,
    pub p: u64,
    pub k: u64,
    pub k_p: u64,
    pub k_p_prime: u64,
    pub mixed_classes: u64,
    /// class sizes as a sorted multiset
    pub class_sizes: Vec<u64>,
    /// element order of each class representative, in class (rep-key) order
    pub representative_orders: Vec<u64>,
}

pub fn class_report<O: GroupOracle>(group: &FiniteGroup<O>, p: u64) -> ConjugacyReport {
    assert!(crate::numtheory::is_prime(p), "class_report needs a prime");
    let classes = group.conjugacy_classes();
    let mut class_sizes: Vec<u64> = classes.iter().map(|c| c.len() as u64).collect();
    let mut representative_orders = Vec::with_capacity(classes.len());
    let (mut k_p, mut k_pp, mut mixed) = (0u64, 0u64, 0u64);
    for class in &classes {
        let rep = &group.elements()[class[0] as usize];
        let t = group.element_order_in(rep);
        representative_orders.push(t);
        let mut t_stripped = t;
        while t_stripped % p == 0 {
            t_stripped /= p;
        }
        if t_stripped == 1 {
            k_p += 1; // p-power order, identity included
        }
        if t % p != 0 {
            k_pp += 1; // p-regular, identity included
        }
        if t_stripped != 1 && t % p == 0 {
            mixed += 1;
        }
    }
    class_sizes.sort_unstable();
    ConjugacyReport {
        order: group.order(),
        p,
        k: classes.len() as u64,
        k_p,
        k_p_prime: k_pp,
        mixed_classes: mixed,
        class_sizes,
        representative_orders,
    }
}

/// Reference all-pairs conjugacy enumeration, O(|G|^2). Kept simple on
/// purpose: it is the oracle the orbit algorithm is validated against.
pub fn conjugacy_classes_naive<O: GroupOracle>(group: &FiniteGroup<O>) -> Vec<Vec<u32>> {
    let n = group.elements().len();
    let mut assigned = vec![false; n];
    let mut classes = Vec::new();
    for i in 0..n {
        if assigned[i] {
            continue;
        }
        let mut members = Vec::new();
        let x = &group.elements()[i];
        for g in group.elements() {
            let ginv = group.oracle.invert(g);
            let y = group.oracle.multiply(&ginv, &group.oracle.multiply(x, g));
            let j = group.index_of(&y).expect("conjugate outside group");
            if !assigned[j] {
                assigned[j] = true;
                members.push(j as u32);
            }
        }
        members.sort_unstable();
        classes.push(members);
    }
    classes
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Additive Z/n, the cheapest concrete oracle for engine tests.
    struct ZnOracle {
        n: u64,
    }

    impl GroupOracle for ZnOracle {
        type Element = u64;
        fn identity(&self) -> u64 {
            0
        }
        fn multiply(&self, a: &u64, b: &u64) -> u64 {
            (a + b) % self.n
        }
        fn invert(&self, g: &u64) -> u64 {
            (self.n - g) % self.n
        }
        fn canonical_key(&self, g: &u64) -> u128 {
            *g as u128
        }
    }

    #[test]
    fn cyclic_closure() {
        let g = FiniteGroup::generate(ZnOracle { n: 6 }, vec![1], 100).unwrap();
        assert_eq!(g.order(), 6);
        let classes = g.conjugacy_classes();
        assert_eq!(classes.len(), 6);
        assert!(classes.iter().all(|c| c.len() == 1));
    }

    #[test]
    fn trivial_group() {
        let g = FiniteGroup::generate(ZnOracle { n: 1 }, vec![0], 10).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn cap_exceeded() {
        let r = FiniteGroup::generate(ZnOracle { n: 100 }, vec![1], 10);
        assert_eq!(r.err(), Some(GroupError::CapExceeded(10)));
    }

    #[test]
    fn element_order_naive_matches_fast() {
        let g = FiniteGroup::generate(ZnOracle { n: 60 }, vec![1], 100).unwrap();
        for x in [0u64, 1, 2, 5, 12, 45] {
            assert_eq!(element_order(&x, &g.oracle), g.element_order_in(&x));
        }
    }

    #[test]
    fn report_on_cyclic_group() {
        let g = FiniteGroup::generate(ZnOracle { n: 5 }, vec![1], 100).unwrap();
        let r = class_report(&g, 5);
        assert_eq!((r.k, r.k_p, r.k_p_prime), (5, 5, 1));
        assert_eq!(r.class_sizes, vec![1, 1, 1, 1, 1]);
    }
}
