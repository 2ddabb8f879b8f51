//! Finite abelian coefficient groups with a group action.

use std::collections::VecDeque;
use std::ops::Deref;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupPair};

/// `∏_j ℤ/m_j` with every `m_j ≥ 2`; the empty list is the zero group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    invariants: Vec<i64>,
}

impl AbelianGroup {
    pub fn new(invariants: Vec<i64>) -> Result<Self> {
        if let Some(&m) = invariants.iter().find(|&&m| m < 2) {
            return Err(Error::InvalidModule(format!("invariant factor {m} is not >= 2")));
        }
        Ok(Self { invariants })
    }

    pub fn zero() -> Self {
        Self { invariants: Vec::new() }
    }

    pub fn invariants(&self) -> &[i64] {
        &self.invariants
    }

    pub fn rank(&self) -> usize {
        self.invariants.len()
    }

    pub fn order(&self) -> u128 {
        self.invariants.iter().map(|&m| m as u128).product()
    }

    pub fn exponent(&self) -> i64 {
        self.invariants.iter().fold(1, |e, &m| num_integer::lcm(e, m))
    }

    pub fn zero_elt(&self) -> ModuleElt {
        ModuleElt(vec![0; self.rank()])
    }

    pub fn reduce_in_place(&self, a: &mut [i64]) {
        for (x, &m) in a.iter_mut().zip(&self.invariants) {
            *x = x.rem_euclid(m);
        }
    }

    pub fn elt(&self, coords: &[i64]) -> ModuleElt {
        let mut v = coords.to_vec();
        self.reduce_in_place(&mut v);
        ModuleElt(v)
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> ModuleElt {
        let v: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.elt(&v)
    }

    pub fn sub(&self, a: &[i64], b: &[i64]) -> ModuleElt {
        let v: Vec<i64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        self.elt(&v)
    }

    pub fn neg(&self, a: &[i64]) -> ModuleElt {
        let v: Vec<i64> = a.iter().map(|x| -x).collect();
        self.elt(&v)
    }

    /// Mixed-radix index of an element (coordinate 0 most significant).
    pub fn encode(&self, a: &[i64]) -> usize {
        a.iter().zip(&self.invariants).fold(0usize, |acc, (&x, &m)| {
            acc * m as usize + x.rem_euclid(m) as usize
        })
    }

    pub fn decode(&self, mut code: usize) -> ModuleElt {
        let mut v = vec![0; self.rank()];
        for j in (0..self.rank()).rev() {
            let m = self.invariants[j] as usize;
            v[j] = (code % m) as i64;
            code /= m;
        }
        ModuleElt(v)
    }

    pub fn elements(&self) -> impl Iterator<Item = ModuleElt> + '_ {
        (0..self.order() as usize).map(move |k| self.decode(k))
    }
}

/// A reduced coordinate vector of a module element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModuleElt(pub Vec<i64>);

impl Deref for ModuleElt {
    type Target = [i64];
    fn deref(&self) -> &[i64] {
        &self.0
    }
}

/// A finite abelian group with a left action of a finite group by automorphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GModule {
    base: AbelianGroup,
    group: Arc<FiniteGroup>,
    /// Row-major `rank × rank` matrix per group element; entry `(r, c)` is
    /// the coefficient of input coordinate `c` in output coordinate `r`.
    action: Vec<Vec<i64>>,
}

impl GModule {
    /// Validates one action matrix per group element.
    pub fn new(base: AbelianGroup, group: Arc<FiniteGroup>, matrices: Vec<Vec<i64>>) -> Result<Self> {
        let r = base.rank();
        let n = group.order();
        if matrices.len() != n {
            return Err(Error::InvalidModule(format!(
                "expected {n} action matrices, found {}",
                matrices.len()
            )));
        }
        let mut action = Vec::with_capacity(n);
        for (g, m) in matrices.into_iter().enumerate() {
            if m.len() != r * r {
                return Err(Error::InvalidModule(format!(
                    "action matrix of element {g} has {} entries, expected {}",
                    m.len(),
                    r * r
                )));
            }
            action.push(reduce_matrix(&base, m));
        }
        let module = Self { base, group, action };
        module.validate()?;
        Ok(module)
    }

    pub fn trivial(base: AbelianGroup, group: Arc<FiniteGroup>) -> Self {
        let r = base.rank();
        let id = identity_matrix(r);
        let action = vec![id; group.order()];
        Self { base, group, action }
    }

    /// Extends matrices given on a generating set to the whole group.
    pub fn from_generator_actions(
        base: AbelianGroup,
        group: Arc<FiniteGroup>,
        gens: &[usize],
        matrices: &[Vec<i64>],
    ) -> Result<Self> {
        let r = base.rank();
        if gens.len() != matrices.len() {
            return Err(Error::InvalidModule("generator/matrix count mismatch".into()));
        }
        for (m, &g) in matrices.iter().zip(gens) {
            group.check_element(g)?;
            if m.len() != r * r {
                return Err(Error::InvalidModule(format!(
                    "action matrix of element {g} has {} entries, expected {}",
                    m.len(),
                    r * r
                )));
            }
        }
        let n = group.order();
        let mut action: Vec<Option<Vec<i64>>> = vec![None; n];
        action[0] = Some(identity_matrix(r));
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (&g, m) in gens.iter().zip(matrices) {
                let y = group.mul(x, g);
                if action[y].is_none() {
                    let prod = mat_mul(action[x].as_ref().unwrap(), m, r);
                    action[y] = Some(reduce_matrix(&base, prod));
                    queue.push_back(y);
                }
            }
        }
        let action = action
            .into_iter()
            .enumerate()
            .map(|(g, m)| {
                m.ok_or_else(|| {
                    Error::InvalidModule(format!("element {g} is not generated by the acting elements"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(base, group, action)
    }

    fn validate(&self) -> Result<()> {
        let r = self.base.rank();
        let inv = self.base.invariants();
        for (g, m) in self.action.iter().enumerate() {
            for c in 0..r {
                for row in 0..r {
                    if (inv[c] * m[row * r + c]) % inv[row] != 0 {
                        return Err(Error::InvalidModule(format!(
                            "action matrix of element {g} is not well defined on coordinate {c}"
                        )));
                    }
                }
            }
        }
        let id = identity_matrix(r);
        if !self.same_map(&self.action[0], &id) {
            return Err(Error::InvalidModule("identity does not act trivially".into()));
        }
        for g in self.group.elements() {
            let prod = mat_mul(&self.action[g], &self.action[self.group.inv(g)], r);
            if !self.same_map(&prod, &id) {
                return Err(Error::NotInvertible { g });
            }
        }
        for g in self.group.elements() {
            for h in self.group.elements() {
                let prod = mat_mul(&self.action[g], &self.action[h], r);
                if !self.same_map(&prod, &self.action[self.group.mul(g, h)]) {
                    return Err(Error::NotAnAction { g, h });
                }
            }
        }
        Ok(())
    }

    fn same_map(&self, a: &[i64], b: &[i64]) -> bool {
        let r = self.base.rank();
        let inv = self.base.invariants();
        (0..r * r).all(|k| (a[k] - b[k]).rem_euclid(inv[k / r]) == 0)
    }

    pub fn base(&self) -> &AbelianGroup {
        &self.base
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.base.rank()
    }

    pub fn invariants(&self) -> &[i64] {
        self.base.invariants()
    }

    pub fn matrix(&self, g: usize) -> &[i64] {
        &self.action[g]
    }

    pub fn is_trivial_action(&self) -> bool {
        let id = identity_matrix(self.rank());
        self.action.iter().all(|m| self.same_map(m, &id))
    }

    /// Writes `g·a` into `out` (both of length `rank`).
    #[inline]
    pub fn act_into(&self, g: usize, a: &[i64], out: &mut [i64]) {
        let r = self.rank();
        let m = &self.action[g];
        for (row, o) in out.iter_mut().enumerate() {
            let mut acc = 0i64;
            for c in 0..r {
                acc += m[row * r + c] * a[c];
            }
            *o = acc.rem_euclid(self.base.invariants[row]);
        }
    }

    pub fn act(&self, g: usize, a: &[i64]) -> ModuleElt {
        let mut out = vec![0; self.rank()];
        self.act_into(g, a, &mut out);
        ModuleElt(out)
    }

    /// Restriction of scalars along the inclusion of a subgroup given as its own group.
    pub fn restrict(&self, sub_group: Arc<FiniteGroup>, embedding: &[usize]) -> Result<Self> {
        let matrices = embedding.iter().map(|&g| self.action[g].clone()).collect();
        Self::new(self.base.clone(), sub_group, matrices)
    }

    /// Lookup tables over element codes, for exhaustive searches.
    pub fn tables(&self) -> ModuleTables {
        let size = self.base.order() as usize;
        let elts: Vec<ModuleElt> = self.base.elements().collect();
        let mut add = vec![0u32; size * size];
        let mut neg = vec![0u32; size];
        for a in 0..size {
            neg[a] = self.base.encode(&self.base.neg(&elts[a])) as u32;
            for b in 0..size {
                add[a * size + b] = self.base.encode(&self.base.add(&elts[a], &elts[b])) as u32;
            }
        }
        let n = self.group.order();
        let mut act = vec![0u32; n * size];
        for g in 0..n {
            for a in 0..size {
                act[g * size + a] = self.base.encode(&self.act(g, &elts[a])) as u32;
            }
        }
        ModuleTables { size, add, neg, act }
    }
}

/// Element-code arithmetic for a small module.
#[derive(Clone, Debug)]
pub struct ModuleTables {
    pub size: usize,
    add: Vec<u32>,
    neg: Vec<u32>,
    act: Vec<u32>,
}

impl ModuleTables {
    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.size + b as usize]
    }
    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }
    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }
    #[inline]
    pub fn act(&self, g: usize, a: u32) -> u32 {
        self.act[g * self.size + a as usize]
    }
}

/// An element of `Hom(ℤ[G/𝒮], A)`: one module element per global coset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeripheralValue(pub Vec<i64>);

impl PeripheralValue {
    pub fn zero(pair: &GroupPair, module: &GModule) -> Self {
        Self(vec![0; pair.coset_count() * module.rank()])
    }

    pub fn at(&self, rank: usize, coset: usize) -> &[i64] {
        &self.0[coset * rank..(coset + 1) * rank]
    }
}

/// `(g·v)(c) = g·v(g⁻¹c)`.
pub fn diagonal_act(pair: &GroupPair, module: &GModule, g: usize, v: &PeripheralValue) -> PeripheralValue {
    let mut out = vec![0; v.0.len()];
    diagonal_act_into(pair, module, g, &v.0, &mut out);
    PeripheralValue(out)
}

pub(crate) fn diagonal_act_into(pair: &GroupPair, module: &GModule, g: usize, v: &[i64], out: &mut [i64]) {
    let r = module.rank();
    let gi = pair.group().inv(g);
    for c in 0..pair.coset_count() {
        let src = pair.translate(gi, c);
        module.act_into(g, &v[src * r..(src + 1) * r], &mut out[c * r..(c + 1) * r]);
    }
}

fn identity_matrix(r: usize) -> Vec<i64> {
    let mut m = vec![0; r * r];
    for k in 0..r {
        m[k * r + k] = 1;
    }
    m
}

fn mat_mul(a: &[i64], b: &[i64], r: usize) -> Vec<i64> {
    let mut out = vec![0; r * r];
    for i in 0..r {
        for k in 0..r {
            let x = a[i * r + k];
            if x != 0 {
                for j in 0..r {
                    out[i * r + j] += x * b[k * r + j];
                }
            }
        }
    }
    out
}

fn reduce_matrix(base: &AbelianGroup, mut m: Vec<i64>) -> Vec<i64> {
    let r = base.rank();
    for (k, x) in m.iter_mut().enumerate() {
        *x = x.rem_euclid(base.invariants()[k / r]);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Subgroup;

    fn c2() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(2))
    }

    #[test]
    fn f2_trivial_and_negation() {
        let f2 = GModule::new(AbelianGroup::new(vec![2]).unwrap(), c2(), vec![vec![1], vec![1]]).unwrap();
        assert!(f2.is_trivial_action());
        assert_eq!(f2.act(1, &[1]).0, vec![1]);
        let neg = GModule::new(AbelianGroup::new(vec![3]).unwrap(), c2(), vec![vec![1], vec![2]]).unwrap();
        assert_eq!(neg.act(1, &[1]).0, vec![2]);
        for a in 0..3 {
            assert_eq!(neg.act(1, &neg.act(1, &[a])).0, vec![a]);
        }
    }

    #[test]
    fn zero_matrix_is_not_invertible() {
        let r = GModule::new(AbelianGroup::new(vec![2]).unwrap(), c2(), vec![vec![1], vec![0]]);
        assert_eq!(r.unwrap_err(), Error::NotInvertible { g: 1 });
    }

    #[test]
    fn not_an_action() {
        // C3 acting on Z/3 with the generator acting by -1 fails g*g*g = 1
        let c3 = Arc::new(FiniteGroup::cyclic(3));
        let r = GModule::new(AbelianGroup::new(vec![3]).unwrap(), c3, vec![vec![1], vec![2], vec![2]]);
        assert!(matches!(r, Err(Error::NotAnAction { .. })));
    }

    #[test]
    fn generator_actions_extend() {
        let c4 = Arc::new(FiniteGroup::cyclic(4));
        let m = GModule::from_generator_actions(AbelianGroup::new(vec![3]).unwrap(), c4, &[1], &[vec![2]])
            .unwrap();
        assert_eq!(m.matrix(2), &[1]);
        assert_eq!(m.matrix(3), &[2]);
        assert!(AbelianGroup::new(vec![1]).is_err());
    }

    #[test]
    fn encode_decode_and_tables() {
        let a = AbelianGroup::new(vec![2, 4]).unwrap();
        assert_eq!(a.order(), 8);
        for k in 0..8 {
            assert_eq!(a.encode(&a.decode(k)), k);
        }
        let m = GModule::trivial(a, c2());
        let t = m.tables();
        assert_eq!(t.add(t.neg(5), 5), 0);
    }

    #[test]
    fn diagonal_action_on_c2_mod_trivial() {
        let g = FiniteGroup::cyclic(2);
        let pair = GroupPair::new(Arc::new(g.clone()), vec![Subgroup::trivial(&g)]).unwrap();
        let f2 = GModule::trivial(AbelianGroup::new(vec![2]).unwrap(), pair.group_arc().clone());
        let v = PeripheralValue(vec![1, 0]);
        assert_eq!(diagonal_act(&pair, &f2, 1, &v).0, vec![0, 1]);
        assert_eq!(diagonal_act(&pair, &f2, 0, &v), v);

        let whole = GroupPair::new(Arc::new(g.clone()), vec![Subgroup::whole(&g)]).unwrap();
        let neg = GModule::new(
            AbelianGroup::new(vec![3]).unwrap(),
            whole.group_arc().clone(),
            vec![vec![1], vec![2]],
        )
        .unwrap();
        let v = PeripheralValue(vec![1]);
        assert_eq!(diagonal_act(&whole, &neg, 1, &v).0, neg.act(1, &[1]).0);
    }
}
