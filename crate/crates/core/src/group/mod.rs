//! Finite groups given by multiplication tables.
//!
//! Elements are indices `0..order` and element `0` is always the identity.
//! Groups are immutable once built and can be shared freely between threads.

mod hom;
mod pair;
mod perm;

pub use hom::GroupHom;
pub use pair::{left_cosets, CosetTable, GroupPair, Subgroup, TransversalKind};
pub use perm::{compose, identity_perm, invert_perm, parse_permutation, Perm};

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};

/// Default cap on the order of groups generated from permutations.
pub const DEFAULT_ORDER_CAP: usize = 5000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mult: Vec<usize>,
    inv: Vec<usize>,
    perms: Option<Vec<Perm>>,
}

impl FiniteGroup {
    /// Validates a square multiplication table and computes inverses.
    pub fn from_table(table: &[Vec<usize>]) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::MalformedTable { row: 0, reason: "table is empty".into() });
        }
        let mut mult = Vec::with_capacity(n * n);
        for (r, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::MalformedTable {
                    row: r,
                    reason: format!("expected {} entries, found {}", n, row.len()),
                });
            }
            for &x in row {
                if x >= n {
                    return Err(Error::MalformedTable {
                        row: r,
                        reason: format!("entry {x} out of range 0..{n}"),
                    });
                }
            }
            mult.extend_from_slice(row);
        }
        Self::from_flat(n, mult, None)
    }

    fn from_flat(n: usize, mult: Vec<usize>, perms: Option<Vec<Perm>>) -> Result<Self> {
        for g in 0..n {
            if mult[g] != g || mult[g * n] != g {
                return Err(Error::NoIdentity { element: g });
            }
        }
        let mut inv = vec![usize::MAX; n];
        for g in 0..n {
            let row = &mult[g * n..(g + 1) * n];
            match row.iter().position(|&x| x == 0) {
                Some(h) if mult[h * n + g] == 0 => inv[g] = h,
                _ => return Err(Error::NoInverse { element: g }),
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = mult[a * n + b];
                for c in 0..n {
                    if mult[ab * n + c] != mult[a * n + mult[b * n + c]] {
                        return Err(Error::NotAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(Self { order: n, mult, inv, perms })
    }

    /// Closure of a set of permutations of `{0..degree-1}` under composition.
    ///
    /// Element 0 is the identity; the remaining elements appear in breadth-first
    /// order, multiplying each discovered element on the right by the generators
    /// in the order given.
    pub fn from_permutations(degree: usize, gens: &[Perm], cap: usize) -> Result<Self> {
        for g in gens {
            perm::check_permutation(g, degree)?;
        }
        let id = identity_perm(degree);
        let mut elements = vec![id.clone()];
        let mut index: HashMap<Perm, usize> = HashMap::new();
        index.insert(id, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = compose(&elements[x], g);
                if !index.contains_key(&y) {
                    if elements.len() >= cap {
                        return Err(Error::OrderLimitExceeded { cap });
                    }
                    index.insert(y.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(y);
                }
            }
        }
        let n = elements.len();
        let mut mult = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                mult[a * n + b] = index[&compose(&elements[a], &elements[b])];
            }
        }
        Self::from_flat(n, mult, Some(elements))
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let mult = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        let inv = (0..n).map(|g| (n - g) % n).collect();
        Self { order: n, mult, inv, perms: None }
    }

    pub fn symmetric(degree: usize) -> Self {
        let mut gens = Vec::new();
        if degree >= 2 {
            let mut t = identity_perm(degree);
            t.swap(0, 1);
            gens.push(t);
            let c: Perm = (0..degree).map(|i| (i + 1) % degree).collect();
            gens.push(c);
        }
        Self::from_permutations(degree, &gens, usize::MAX).expect("symmetric group")
    }

    /// Direct product with element `(g, h)` stored at index `g * |H| + h`.
    pub fn direct_product(a: &Self, b: &Self) -> Self {
        let (na, nb) = (a.order, b.order);
        let n = na * nb;
        let mut mult = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                let g = a.mul(x / nb, y / nb);
                let h = b.mul(x % nb, y % nb);
                mult[x * n + y] = g * nb + h;
            }
        }
        let inv = (0..n).map(|x| a.inv(x / nb) * nb + b.inv(x % nb)).collect();
        Self { order: n, mult, inv, perms: None }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn table_row(&self, a: usize) -> &[usize] {
        &self.mult[a * self.order..(a + 1) * self.order]
    }

    pub fn permutations(&self) -> Option<&[Perm]> {
        self.perms.as_deref()
    }

    /// Index of a permutation, when the group was generated from permutations.
    pub fn find_permutation(&self, p: &[usize]) -> Option<usize> {
        self.perms.as_ref()?.iter().position(|q| q.as_slice() == p)
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut k = 1;
        let mut x = g;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Sorted closure of `gens` (always contains the identity).
    pub fn generate(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order).filter(|&x| seen[x]).collect()
    }

    /// Greedy generating sequence: walk the elements in index order and keep
    /// every element not already in the span of the ones kept so far.
    pub fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![false; self.order];
        span[0] = true;
        for g in 1..self.order {
            if !span[g] {
                gens.push(g);
                for x in self.generate(&gens) {
                    span[x] = true;
                }
            }
        }
        gens
    }

    pub fn check_element(&self, g: usize) -> Result<()> {
        if g < self.order {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange { element: g, order: self.order })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_and_c2_tables() {
        let g = FiniteGroup::from_table(&[vec![0]]).unwrap();
        assert_eq!(g.order(), 1);
        let c2 = FiniteGroup::from_table(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(c2.order(), 2);
        assert_eq!(c2.inv(1), 1);
    }

    #[test]
    fn table_errors_name_the_violation() {
        assert!(matches!(
            FiniteGroup::from_table(&[vec![1, 0], vec![0, 1]]),
            Err(Error::NoIdentity { element: 0 })
        ));
        assert!(matches!(
            FiniteGroup::from_table(&[vec![0, 1], vec![1, 1]]),
            Err(Error::NoInverse { element: 1 })
        ));
        // identity row/column fine, but 1*1 = 2, 1*2 = 1, 2*2 = 1 breaks associativity
        let t = vec![vec![0, 1, 2], vec![1, 2, 1], vec![2, 1, 1]];
        assert!(matches!(
            FiniteGroup::from_table(&t),
            Err(Error::NotAssociative { .. }) | Err(Error::NoInverse { .. })
        ));
        let t = vec![vec![0, 1, 2], vec![1, 0, 2], vec![2, 2, 0]];
        assert!(matches!(FiniteGroup::from_table(&t), Err(Error::NotAssociative { .. })));
        assert!(matches!(
            FiniteGroup::from_table(&[vec![0, 1], vec![1]]),
            Err(Error::MalformedTable { row: 1, .. })
        ));
        assert!(matches!(
            FiniteGroup::from_table(&[vec![0, 5], vec![1, 0]]),
            Err(Error::MalformedTable { row: 0, .. })
        ));
    }

    #[test]
    fn permutation_closure_of_s3() {
        let g = FiniteGroup::from_permutations(3, &[vec![1, 0, 2], vec![1, 2, 0]], 5000).unwrap();
        assert_eq!(g.order(), 6);
        let involutions = g.elements().filter(|&x| g.element_order(x) == 2).count();
        assert_eq!(involutions, 3);
        assert!(!g.is_abelian());
        // rebuilding from the table gives the same group
        let table: Vec<Vec<usize>> = g.elements().map(|a| g.table_row(a).to_vec()).collect();
        assert_eq!(FiniteGroup::from_table(&table).unwrap().order(), 6);
    }

    #[test]
    fn permutation_closure_small_cases() {
        assert_eq!(FiniteGroup::from_permutations(3, &[], 5000).unwrap().order(), 1);
        assert_eq!(FiniteGroup::from_permutations(2, &[vec![1, 0]], 5000).unwrap().order(), 2);
        let c4 = FiniteGroup::from_permutations(4, &[vec![1, 2, 3, 0]], 5000).unwrap();
        let mut orders: Vec<usize> = c4.elements().map(|x| c4.element_order(x)).collect();
        orders.sort();
        assert_eq!(orders, vec![1, 2, 4, 4]);
    }

    #[test]
    fn permutation_errors() {
        assert!(matches!(
            FiniteGroup::from_permutations(3, &[vec![0, 0, 1]], 5000),
            Err(Error::NotAPermutation(_))
        ));
        assert!(matches!(
            FiniteGroup::from_permutations(5, &[vec![1, 0, 2, 3, 4], vec![1, 2, 3, 4, 0]], 50),
            Err(Error::OrderLimitExceeded { cap: 50 })
        ));
    }

    #[test]
    fn sym5_and_products() {
        assert_eq!(FiniteGroup::symmetric(5).order(), 120);
        let v4 = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2));
        assert_eq!(v4.order(), 4);
        assert!(v4.elements().skip(1).all(|x| v4.element_order(x) == 2));
        assert_eq!(v4.greedy_generators(), vec![1, 2]);
        assert_eq!(FiniteGroup::cyclic(6).greedy_generators(), vec![1]);
    }

    #[test]
    fn associativity_exhaustive_for_catalog_groups() {
        for g in [
            FiniteGroup::cyclic(12),
            FiniteGroup::symmetric(4),
            FiniteGroup::direct_product(&FiniteGroup::symmetric(3), &FiniteGroup::cyclic(2)),
        ] {
            let n = g.order();
            assert!(n <= 60);
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                    }
                }
            }
        }
    }
}
