use std::sync::Arc;

use super::FiniteGroup;
use crate::error::{Error, Result};

/// A subgroup, stored as the sorted list of its element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    elements: Vec<usize>,
    position: Vec<Option<usize>>,
}

impl Subgroup {
    pub fn new(group: &FiniteGroup, elements: &[usize]) -> Result<Self> {
        let n = group.order();
        let mut position = vec![None; n];
        let mut sorted = elements.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        for &x in &sorted {
            group.check_element(x)?;
        }
        for (k, &x) in sorted.iter().enumerate() {
            position[x] = Some(k);
        }
        if position[0].is_none() {
            return Err(Error::NotASubgroup("does not contain the identity".into()));
        }
        for &a in &sorted {
            if position[group.inv(a)].is_none() {
                return Err(Error::NotASubgroup(format!("not closed under inverse at {a}")));
            }
            for &b in &sorted {
                if position[group.mul(a, b)].is_none() {
                    return Err(Error::NotASubgroup(format!("{a}*{b} is not in the set")));
                }
            }
        }
        Ok(Self { elements: sorted, position })
    }

    pub fn generated(group: &FiniteGroup, gens: &[usize]) -> Result<Self> {
        for &g in gens {
            group.check_element(g)?;
        }
        Self::new(group, &group.generate(gens))
    }

    pub fn whole(group: &FiniteGroup) -> Self {
        Self::new(group, &group.elements().collect::<Vec<_>>()).expect("whole group")
    }

    pub fn trivial(group: &FiniteGroup) -> Self {
        Self::new(group, &[0]).expect("trivial subgroup")
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.position.get(g).is_some_and(|p| p.is_some())
    }

    /// Position of `g` in the sorted element list.
    pub fn position(&self, g: usize) -> Option<usize> {
        self.position.get(g).copied().flatten()
    }

    /// The subgroup as a group in its own right, with element `k` of the
    /// result corresponding to `self.elements()[k]` (so 0 stays the identity).
    pub fn as_group(&self, parent: &FiniteGroup) -> FiniteGroup {
        let table: Vec<Vec<usize>> = self
            .elements
            .iter()
            .map(|&a| {
                self.elements.iter().map(|&b| self.position(parent.mul(a, b)).unwrap()).collect()
            })
            .collect();
        FiniteGroup::from_table(&table).expect("subgroup table")
    }
}

/// Which element represents each left coset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TransversalKind {
    /// Smallest element index in each coset.
    #[default]
    Min,
    /// Largest element index, except that the coset `S` itself keeps the identity.
    Max,
}

impl TransversalKind {
    pub fn other(self) -> Self {
        match self {
            Self::Min => Self::Max,
            Self::Max => Self::Min,
        }
    }
}

/// Left cosets `gS`, numbered by their smallest element (so `S` is coset 0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    cosets: Vec<Vec<usize>>,
    coset_of: Vec<usize>,
}

impl CosetTable {
    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    pub fn coset_of(&self, g: usize) -> usize {
        self.coset_of[g]
    }

    pub fn members(&self, c: usize) -> &[usize] {
        &self.cosets[c]
    }

    /// Canonical (minimum-index) representative of the coset containing `g`.
    pub fn rep(&self, g: usize) -> usize {
        self.cosets[self.coset_of[g]][0]
    }

    pub fn transversal(&self, kind: TransversalKind) -> Vec<usize> {
        match kind {
            TransversalKind::Min => self.cosets.iter().map(|c| c[0]).collect(),
            TransversalKind::Max => self
                .cosets
                .iter()
                .enumerate()
                .map(|(k, c)| if k == 0 { 0 } else { *c.last().unwrap() })
                .collect(),
        }
    }
}

pub fn left_cosets(group: &FiniteGroup, sub: &Subgroup) -> Result<CosetTable> {
    // re-validate: a Subgroup built for a different parent must be rejected
    if sub.position.len() != group.order() {
        return Err(Error::NotASubgroup("subgroup belongs to a different group".into()));
    }
    Subgroup::new(group, sub.elements())?;
    let n = group.order();
    let mut coset_of = vec![usize::MAX; n];
    let mut cosets = Vec::new();
    for g in 0..n {
        if coset_of[g] != usize::MAX {
            continue;
        }
        let mut members: Vec<usize> = sub.elements().iter().map(|&s| group.mul(g, s)).collect();
        members.sort_unstable();
        for &x in &members {
            coset_of[x] = cosets.len();
        }
        cosets.push(members);
    }
    Ok(CosetTable { cosets, coset_of })
}

/// A finite group with a nonempty ordered family of subgroups (repeats allowed).
///
/// Cosets of all members are numbered globally: member `i`, local coset `c`
/// has global index `offset(i) + c`, and global coset 0 is `1·S_0`.
#[derive(Clone, Debug)]
pub struct GroupPair {
    group: Arc<FiniteGroup>,
    family: Vec<Subgroup>,
    cosets: Vec<CosetTable>,
    offsets: Vec<usize>,
    owner: Vec<(usize, usize)>,
    translate: Vec<usize>,
}

impl GroupPair {
    pub fn new(group: Arc<FiniteGroup>, family: Vec<Subgroup>) -> Result<Self> {
        if family.is_empty() {
            return Err(Error::EmptyFamily);
        }
        let cosets = family.iter().map(|s| left_cosets(&group, s)).collect::<Result<Vec<_>>>()?;
        let mut offsets = Vec::with_capacity(cosets.len());
        let mut owner = Vec::new();
        for (i, t) in cosets.iter().enumerate() {
            offsets.push(owner.len());
            owner.extend((0..t.len()).map(|c| (i, c)));
        }
        let total = owner.len();
        let n = group.order();
        let mut translate = vec![0; n * total];
        for g in 0..n {
            for (gc, &(i, c)) in owner.iter().enumerate() {
                let t = &cosets[i];
                let x = group.mul(g, t.members(c)[0]);
                translate[g * total + gc] = offsets[i] + t.coset_of(x);
            }
        }
        Ok(Self { group, family, cosets, offsets, owner, translate })
    }

    pub fn from_generators(group: FiniteGroup, family_gens: &[Vec<usize>]) -> Result<Self> {
        let family = family_gens
            .iter()
            .map(|gens| Subgroup::generated(&group, gens))
            .collect::<Result<Vec<_>>>()?;
        Self::new(Arc::new(group), family)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn family(&self) -> &[Subgroup] {
        &self.family
    }

    pub fn member(&self, i: usize) -> &Subgroup {
        &self.family[i]
    }

    pub fn cosets(&self, i: usize) -> &CosetTable {
        &self.cosets[i]
    }

    /// Total number of cosets over all members.
    pub fn coset_count(&self) -> usize {
        self.owner.len()
    }

    pub fn global_coset(&self, member: usize, local: usize) -> usize {
        self.offsets[member] + local
    }

    /// Global index of the coset `1·S_i`.
    pub fn identity_coset(&self, member: usize) -> usize {
        self.offsets[member]
    }

    /// `(member, local coset)` for a global coset index.
    pub fn coset_owner(&self, global: usize) -> (usize, usize) {
        self.owner[global]
    }

    /// Global index of the coset containing `g` for member `i`.
    pub fn coset_of(&self, member: usize, g: usize) -> usize {
        self.offsets[member] + self.cosets[member].coset_of(g)
    }

    /// Left translation `g · (xS_i)`.
    #[inline]
    pub fn translate(&self, g: usize, global: usize) -> usize {
        self.translate[g * self.owner.len() + global]
    }

    /// Some element of the given global coset (its minimum element).
    pub fn coset_element(&self, global: usize) -> usize {
        let (i, c) = self.owner[global];
        self.cosets[i].members(c)[0]
    }
}
