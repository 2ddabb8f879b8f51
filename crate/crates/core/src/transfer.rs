//! Chain maps between the bar resolutions of a group and of a subgroup.
//!
//! `C_•(S)` is the subcomplex of `C_•(G)` spanned by symbols `h_0[h_1,…,h_n]`
//! with every entry in `S`, so the inclusion `I` is the identity on
//! representations. `J`, `L`, `M` and `N` are built from the contracting
//! homotopy `s(h_0[h_1,…,h_n]) = 1[h_0,h_1,…,h_n]` on a basis of `C_n(G)` as a
//! free `S`-module and extended `S`-equivariantly.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::cochain::{decode_tuple, encode_tuple, tuple_count};
use crate::error::{Error, Result};
use crate::group::{left_cosets, FiniteGroup, Subgroup};

/// Basis index of `h_0[t]` in degree `d`: `h_0·|G|^d + tuple index`.
pub fn basis_index(n: usize, d: usize, h0: usize, tuple: &[usize]) -> usize {
    h0 * tuple_count(n, d) + encode_tuple(n, tuple)
}

/// Inverse of [`basis_index`].
pub fn split_basis(n: usize, d: usize, idx: usize) -> (usize, Vec<usize>) {
    let per = tuple_count(n, d);
    (idx / per, decode_tuple(n, d, idx % per))
}

/// A finite integer combination of bar symbols of one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    degree: usize,
    terms: BTreeMap<usize, i64>,
}

impl Chain {
    pub fn zero(degree: usize) -> Self {
        Self { degree, terms: BTreeMap::new() }
    }

    pub fn basis(degree: usize, idx: usize) -> Self {
        Self { degree, terms: BTreeMap::from([(idx, 1)]) }
    }

    pub fn symbol(n: usize, h0: usize, tuple: &[usize]) -> Self {
        Self::basis(tuple.len(), basis_index(n, tuple.len(), h0, tuple))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero `(basis index, coefficient)` pairs in index order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.terms.iter().map(|(&k, &v)| (k, v))
    }

    pub fn add_term(&mut self, idx: usize, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let e = self.terms.entry(idx).or_insert(0);
        *e += coeff;
        if *e == 0 {
            self.terms.remove(&idx);
        }
    }

    pub fn add_scaled(&mut self, other: &Chain, coeff: i64) {
        assert_eq!(self.degree, other.degree, "adding chains of different degrees");
        for (k, v) in other.terms() {
            self.add_term(k, coeff * v);
        }
    }

    pub fn plus(mut self, other: &Chain) -> Chain {
        self.add_scaled(other, 1);
        self
    }

    pub fn minus(mut self, other: &Chain) -> Chain {
        self.add_scaled(other, -1);
        self
    }

    /// Sum of coefficients (the augmentation, in degree 0).
    pub fn augmentation(&self) -> i64 {
        self.terms.values().sum()
    }
}

/// Bar-resolution operations for one group.
#[derive(Clone, Debug)]
pub struct BarResolution {
    group: Arc<FiniteGroup>,
}

impl BarResolution {
    pub fn new(group: Arc<FiniteGroup>) -> Self {
        Self { group }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    fn n(&self) -> usize {
        self.group.order()
    }

    /// `d(h_0[h_1,…,h_n]) = h_0h_1[h_2,…] + Σ(−1)^i h_0[…,h_ih_{i+1},…] + (−1)^n h_0[h_1,…,h_{n-1}]`.
    pub fn boundary(&self, c: &Chain) -> Chain {
        assert!(c.degree >= 1, "boundary of a degree-0 chain is the augmentation");
        let (g, n, d) = (&self.group, self.n(), c.degree);
        let mut out = Chain::zero(d - 1);
        let mut face = Vec::with_capacity(d - 1);
        for (idx, coeff) in c.terms() {
            let (h0, t) = split_basis(n, d, idx);
            out.add_term(basis_index(n, d - 1, g.mul(h0, t[0]), &t[1..]), coeff);
            for i in 1..d {
                face.clear();
                face.extend_from_slice(&t[..i - 1]);
                face.push(g.mul(t[i - 1], t[i]));
                face.extend_from_slice(&t[i + 1..]);
                let sign = if i % 2 == 1 { -1 } else { 1 };
                out.add_term(basis_index(n, d - 1, h0, &face), sign * coeff);
            }
            let sign = if d % 2 == 1 { -1 } else { 1 };
            out.add_term(basis_index(n, d - 1, h0, &t[..d - 1]), sign * coeff);
        }
        out
    }

    /// `s(h_0[h_1,…,h_n]) = 1[h_0,h_1,…,h_n]`.
    pub fn contract(&self, c: &Chain) -> Chain {
        let n = self.n();
        let mut out = Chain::zero(c.degree + 1);
        for (idx, coeff) in c.terms() {
            let (h0, t) = split_basis(n, c.degree, idx);
            let mut full = Vec::with_capacity(t.len() + 1);
            full.push(h0);
            full.extend_from_slice(&t);
            out.add_term(basis_index(n, c.degree + 1, 0, &full), coeff);
        }
        out
    }

    /// `s_{-1}(k) = k·1[]`.
    pub fn contract_unit(&self, k: i64) -> Chain {
        let mut c = Chain::zero(0);
        c.add_term(0, k);
        c
    }

    /// Left translation `g·(h_0[…]) = (gh_0)[…]`.
    pub fn act(&self, g: usize, c: &Chain) -> Chain {
        let n = self.n();
        let per = tuple_count(n, c.degree);
        let mut out = Chain::zero(c.degree);
        for (idx, coeff) in c.terms() {
            out.add_term(self.group.mul(g, idx / per) * per + idx % per, coeff);
        }
        out
    }

    /// Whether every symbol of the chain has all entries in `sub`.
    pub fn lies_in(&self, sub: &Subgroup, c: &Chain) -> bool {
        let n = self.n();
        c.terms().all(|(idx, _)| {
            let (h0, t) = split_basis(n, c.degree, idx);
            sub.contains(h0) && t.iter().all(|&x| sub.contains(x))
        })
    }
}

/// `I`, `J`, `L` for a subgroup `S ≤ G` and a transversal of `G/S`.
#[derive(Clone, Debug)]
pub struct ChainMapSystem {
    bar: BarResolution,
    sub: Subgroup,
    transversal: Vec<usize>,
    /// Left coset of `h⁻¹` for each `h`.
    coset_of_inverse: Vec<usize>,
    max_degree: usize,
    j: Vec<Vec<Chain>>,
    l: Vec<Vec<Chain>>,
}

/// Default top degree for [`build_system`].
pub const SYSTEM_DEGREE: usize = 3;

/// Builds `J_n`, `L_n` for `0 ≤ n ≤ 3`.
pub fn build_system(group: Arc<FiniteGroup>, sub: &Subgroup, transversal: &[usize]) -> Result<ChainMapSystem> {
    ChainMapSystem::new(group, sub, transversal, SYSTEM_DEGREE)
}

impl ChainMapSystem {
    /// `transversal[c]` represents the left coset `c` (numbered as in
    /// [`left_cosets`]); the coset `S` must be represented by the identity.
    pub fn new(group: Arc<FiniteGroup>, sub: &Subgroup, transversal: &[usize], max_degree: usize) -> Result<Self> {
        let cosets = left_cosets(&group, sub)?;
        if transversal.len() != cosets.len() {
            return Err(Error::BadTransversal(format!(
                "{} representatives for {} cosets",
                transversal.len(),
                cosets.len()
            )));
        }
        for (c, &t) in transversal.iter().enumerate() {
            group.check_element(t).map_err(|e| Error::BadTransversal(e.to_string()))?;
            if cosets.coset_of(t) != c {
                return Err(Error::BadTransversal(format!("{t} does not lie in coset {c}")));
            }
        }
        if transversal[0] != 0 {
            return Err(Error::BadTransversal("the subgroup itself must be represented by the identity".into()));
        }
        let coset_of_inverse = group.elements().map(|h| cosets.coset_of(group.inv(h))).collect();
        let mut sys = Self {
            bar: BarResolution::new(group),
            sub: sub.clone(),
            transversal: transversal.to_vec(),
            coset_of_inverse,
            max_degree,
            j: Vec::new(),
            l: Vec::new(),
        };
        for d in 0..=max_degree {
            let count = sys.index_count();
            let per = tuple_count(sys.n(), d);
            let mut jd = Vec::with_capacity(count * per);
            for k in 0..count {
                for t in 0..per {
                    let chain = sys.build_j(d, k, t);
                    jd.push(chain);
                }
            }
            sys.j.push(jd);
            let mut ld = Vec::with_capacity(count * per);
            for k in 0..count {
                for t in 0..per {
                    let chain = sys.build_l(d, k, t);
                    ld.push(chain);
                }
            }
            sys.l.push(ld);
        }
        Ok(sys)
    }

    pub fn group(&self) -> &FiniteGroup {
        self.bar.group()
    }

    pub fn bar(&self) -> &BarResolution {
        &self.bar
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.sub
    }

    pub fn transversal(&self) -> &[usize] {
        &self.transversal
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    fn n(&self) -> usize {
        self.bar.group().order()
    }

    fn index_count(&self) -> usize {
        self.transversal.len()
    }

    /// `h_0 = s·u_k` with `s ∈ S` and `u_k = t_k⁻¹` for the left transversal `t`.
    pub fn decompose(&self, h0: usize) -> (usize, usize) {
        let g = self.bar.group();
        let k = self.coset_of_inverse[h0];
        (g.mul(h0, self.transversal[k]), k)
    }

    fn right_rep(&self, k: usize) -> usize {
        self.bar.group().inv(self.transversal[k])
    }

    fn build_j(&self, d: usize, k: usize, t: usize) -> Chain {
        let n = self.n();
        let u = self.right_rep(k);
        let tuple = decode_tuple(n, d, t);
        if u == 0 && tuple.iter().all(|&x| self.sub.contains(x)) {
            return Chain::basis(d, basis_index(n, d, 0, &tuple));
        }
        if d == 0 {
            return self.bar.contract_unit(1);
        }
        let b = Chain::basis(d, basis_index(n, d, u, &tuple));
        let jdb = self.apply_j(&self.bar.boundary(&b));
        self.bar.contract(&jdb)
    }

    fn build_l(&self, d: usize, k: usize, t: usize) -> Chain {
        let n = self.n();
        let u = self.right_rep(k);
        let tuple = decode_tuple(n, d, t);
        let b = Chain::basis(d, basis_index(n, d, u, &tuple));
        let mut x = self.apply_j(&b).minus(&b);
        if d > 0 {
            x.add_scaled(&self.apply_l(&self.bar.boundary(&b)), -1);
        }
        self.bar.contract(&x)
    }

    /// Extends a table on the `S`-basis equivariantly.
    fn extend(&self, table: &[Chain], out_degree: usize, c: &Chain) -> Chain {
        let n = self.n();
        let per = tuple_count(n, c.degree);
        let mut out = Chain::zero(out_degree);
        for (idx, coeff) in c.terms() {
            let (s, k) = self.decompose(idx / per);
            let image = &table[k * per + idx % per];
            out.add_scaled(&self.bar.act(s, image), coeff);
        }
        out
    }

    pub fn apply_j(&self, c: &Chain) -> Chain {
        self.extend(&self.j[c.degree], c.degree, c)
    }

    pub fn apply_l(&self, c: &Chain) -> Chain {
        self.extend(&self.l[c.degree], c.degree + 1, c)
    }

    /// `I` is the identity on representations.
    pub fn apply_i(&self, c: &Chain) -> Chain {
        c.clone()
    }

    /// `J` on a single basis symbol.
    pub fn j(&self, h0: usize, tuple: &[usize]) -> Chain {
        self.apply_j(&Chain::symbol(self.n(), h0, tuple))
    }

    /// `L` on a single basis symbol.
    pub fn l(&self, h0: usize, tuple: &[usize]) -> Chain {
        self.apply_l(&Chain::symbol(self.n(), h0, tuple))
    }

    /// Checks, on every basis symbol: `J` lands in `C(S)`, `dJ = Jd`,
    /// `IJ − id = dL + Ld`, and `J`, `L` commute with `S`.
    pub fn verify(&self) -> Result<()> {
        let n = self.n();
        for d in 0..=self.max_degree {
            for idx in 0..tuple_count(n, d + 1) {
                let b = Chain::basis(d, idx);
                let jb = self.apply_j(&b);
                let fail = |what: &str| {
                    let (h0, t) = split_basis(n, d, idx);
                    Err(Error::VerificationFailed(format!("{what} fails on {h0}{t:?} in degree {d}")))
                };
                if !self.bar.lies_in(&self.sub, &jb) {
                    return fail("J ⊆ C(S)");
                }
                if d == 0 {
                    if jb.augmentation() != 1 {
                        return fail("εJ = ε");
                    }
                } else if self.bar.boundary(&jb) != self.apply_j(&self.bar.boundary(&b)) {
                    return fail("dJ = Jd");
                }
                let lb = self.apply_l(&b);
                let mut rhs = self.bar.boundary(&lb);
                if d > 0 {
                    rhs.add_scaled(&self.apply_l(&self.bar.boundary(&b)), 1);
                }
                if self.apply_i(&jb).minus(&b) != rhs {
                    return fail("IJ − id = dL + Ld");
                }
                for &s in self.sub.elements() {
                    let sb = self.bar.act(s, &b);
                    if self.apply_j(&sb) != self.bar.act(s, &jb) {
                        return fail("J(s·x) = s·J(x)");
                    }
                    if self.apply_l(&sb) != self.bar.act(s, &lb) {
                        return fail("L(s·x) = s·L(x)");
                    }
                }
            }
        }
        Ok(())
    }
}

/// `M` and `N` comparing two systems for the same subgroup.
#[derive(Clone, Debug)]
pub struct HomotopyPair {
    max_degree: usize,
    m: Vec<Vec<Chain>>,
    nn: Vec<Vec<Chain>>,
}

/// Default top degree for [`build_difference_homotopies`].
pub const HOMOTOPY_DEGREE: usize = 2;

/// Builds `M_n : C_n(G) → C_{n+1}(S)` and `N_n : C_n(G) → C_{n+2}(G)` for `n ≤ 2` with
/// `J̃ − J = Md + dM` and `L̃ − L = IM − Nd + dN`.
pub fn build_difference_homotopies(sys: &ChainMapSystem, sys2: &ChainMapSystem) -> Result<HomotopyPair> {
    HomotopyPair::new(sys, sys2, HOMOTOPY_DEGREE)
}

impl HomotopyPair {
    pub fn new(sys: &ChainMapSystem, sys2: &ChainMapSystem, max_degree: usize) -> Result<Self> {
        if sys.group() != sys2.group() || sys.sub != sys2.sub {
            return Err(Error::MismatchedSystems);
        }
        if max_degree > sys.max_degree.min(sys2.max_degree) {
            return Err(Error::DegreeUnsupported { degree: max_degree, max: sys.max_degree.min(sys2.max_degree) });
        }
        let n = sys.n();
        let bar = &sys.bar;
        let mut pair = Self { max_degree, m: Vec::new(), nn: Vec::new() };
        for d in 0..=max_degree {
            let per = tuple_count(n, d);
            let mut md = Vec::new();
            for k in 0..sys.index_count() {
                for t in 0..per {
                    let b = Chain::basis(d, basis_index(n, d, sys.right_rep(k), &decode_tuple(n, d, t)));
                    let mut x = sys2.apply_j(&b).minus(&sys.apply_j(&b));
                    if d > 0 {
                        x.add_scaled(&pair.apply_m(sys, &bar.boundary(&b)), -1);
                    }
                    md.push(bar.contract(&x));
                }
            }
            pair.m.push(md);
            let mut nd = Vec::new();
            for k in 0..sys.index_count() {
                for t in 0..per {
                    let b = Chain::basis(d, basis_index(n, d, sys.right_rep(k), &decode_tuple(n, d, t)));
                    let mut x = sys2.apply_l(&b).minus(&sys.apply_l(&b));
                    x.add_scaled(&sys.apply_i(&pair.apply_m(sys, &b)), -1);
                    if d > 0 {
                        x.add_scaled(&pair.apply_n(sys, &bar.boundary(&b)), 1);
                    }
                    nd.push(bar.contract(&x));
                }
            }
            pair.nn.push(nd);
        }
        Ok(pair)
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn apply_m(&self, sys: &ChainMapSystem, c: &Chain) -> Chain {
        sys.extend(&self.m[c.degree], c.degree + 1, c)
    }

    pub fn apply_n(&self, sys: &ChainMapSystem, c: &Chain) -> Chain {
        sys.extend(&self.nn[c.degree], c.degree + 2, c)
    }

    /// Checks both homotopy identities and `M ⊆ C(S)` on every basis symbol.
    pub fn verify(&self, sys: &ChainMapSystem, sys2: &ChainMapSystem) -> Result<()> {
        let n = sys.n();
        let bar = &sys.bar;
        for d in 0..=self.max_degree {
            for idx in 0..tuple_count(n, d + 1) {
                let b = Chain::basis(d, idx);
                let fail = |what: &str| {
                    let (h0, t) = split_basis(n, d, idx);
                    Err(Error::VerificationFailed(format!("{what} fails on {h0}{t:?} in degree {d}")))
                };
                let mb = self.apply_m(sys, &b);
                if !bar.lies_in(&sys.sub, &mb) {
                    return fail("M ⊆ C(S)");
                }
                let mut rhs = bar.boundary(&mb);
                if d > 0 {
                    rhs.add_scaled(&self.apply_m(sys, &bar.boundary(&b)), 1);
                }
                if sys2.apply_j(&b).minus(&sys.apply_j(&b)) != rhs {
                    return fail("J̃ − J = Md + dM");
                }
                let mut rhs = sys.apply_i(&mb).plus(&bar.boundary(&self.apply_n(sys, &b)));
                if d > 0 {
                    rhs.add_scaled(&self.apply_n(sys, &bar.boundary(&b)), -1);
                }
                if sys2.apply_l(&b).minus(&sys.apply_l(&b)) != rhs {
                    return fail("L̃ − L = IM − Nd + dN");
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::TransversalKind;

    fn system(g: &Arc<FiniteGroup>, sub: &Subgroup, kind: TransversalKind, deg: usize) -> ChainMapSystem {
        let t = left_cosets(g, sub).unwrap().transversal(kind);
        ChainMapSystem::new(g.clone(), sub, &t, deg).unwrap()
    }

    #[test]
    fn d_squared_and_contraction() {
        let g = Arc::new(FiniteGroup::symmetric(3));
        let bar = BarResolution::new(g.clone());
        let n = g.order();
        for d in 2..=4 {
            for idx in (0..tuple_count(n, d + 1)).step_by(7) {
                let b = Chain::basis(d, idx);
                assert!(bar.boundary(&bar.boundary(&b)).is_zero());
            }
        }
        for idx in 0..tuple_count(n, 2) {
            assert_eq!(bar.boundary(&Chain::basis(1, idx)).augmentation(), 0);
        }
        // ds + sd = id in positive degrees
        for idx in 0..tuple_count(n, 3) {
            let b = Chain::basis(2, idx);
            let lhs = bar.boundary(&bar.contract(&b)).plus(&bar.contract(&bar.boundary(&b)));
            assert_eq!(lhs, b);
        }
    }

    #[test]
    fn whole_group_gives_identity() {
        let g = Arc::new(FiniteGroup::symmetric(3));
        let sys = system(&g, &Subgroup::whole(&g), TransversalKind::Min, 3);
        sys.verify().unwrap();
        let n = g.order();
        for idx in 0..tuple_count(n, 3) {
            let b = Chain::basis(2, idx);
            assert_eq!(sys.apply_j(&b), b);
            assert!(sys.apply_l(&b).is_zero());
        }
    }

    #[test]
    fn trivial_subgroup_of_c2() {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let sys = system(&g, &Subgroup::trivial(&g), TransversalKind::Min, 3);
        sys.verify().unwrap();
        assert_eq!(sys.j(0, &[]), Chain::symbol(2, 0, &[]));
        assert_eq!(sys.j(1, &[]), Chain::symbol(2, 0, &[]));
        assert!(sys.l(0, &[]).is_zero());
        // L_0(t[]) = s(1[] − t[]) = 1[1] − 1[t]... with s(h[]) = 1[h]
        let want = Chain::symbol(2, 0, &[0]).minus(&Chain::symbol(2, 0, &[1]));
        assert_eq!(sys.l(1, &[]), want);
    }

    #[test]
    fn systems_verify_on_catalog_subgroups() {
        let s3 = Arc::new(FiniteGroup::symmetric(3));
        let t = s3.find_permutation(&[1, 0, 2]).unwrap();
        let r = s3.find_permutation(&[1, 2, 0]).unwrap();
        let v4 = Arc::new(FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2)));
        let c4 = Arc::new(FiniteGroup::cyclic(4));
        let cases = [
            (s3.clone(), Subgroup::generated(&s3, &[t]).unwrap()),
            (s3.clone(), Subgroup::generated(&s3, &[r]).unwrap()),
            (s3.clone(), Subgroup::trivial(&s3)),
            (v4.clone(), Subgroup::generated(&v4, &[1]).unwrap()),
            (c4.clone(), Subgroup::generated(&c4, &[2]).unwrap()),
        ];
        for (g, sub) in &cases {
            let a = system(g, sub, TransversalKind::Min, 2);
            let b = system(g, sub, TransversalKind::Max, 2);
            a.verify().unwrap();
            b.verify().unwrap();
            let h = HomotopyPair::new(&a, &b, 2).unwrap();
            h.verify(&a, &b).unwrap();
            let same = HomotopyPair::new(&a, &a, 2).unwrap();
            same.verify(&a, &a).unwrap();
            for d in 0..=2 {
                for idx in 0..tuple_count(g.order(), d + 1) {
                    assert!(same.apply_m(&a, &Chain::basis(d, idx)).is_zero());
                    assert!(same.apply_n(&a, &Chain::basis(d, idx)).is_zero());
                }
            }
        }
    }

    #[test]
    fn c4_mod_c2_min_vs_max_transversals() {
        let g = Arc::new(FiniteGroup::cyclic(4));
        let sub = Subgroup::generated(&g, &[2]).unwrap();
        let a = system(&g, &sub, TransversalKind::Min, 2);
        let b = system(&g, &sub, TransversalKind::Max, 2);
        assert_ne!(a.transversal(), b.transversal());
        let h = HomotopyPair::new(&a, &b, 2).unwrap();
        h.verify(&a, &b).unwrap();
        let nontrivial = (0..tuple_count(4, 1)).any(|idx| !h.apply_m(&a, &Chain::basis(0, idx)).is_zero());
        assert!(nontrivial);
    }

    #[test]
    fn bad_inputs() {
        let g = Arc::new(FiniteGroup::cyclic(4));
        let sub = Subgroup::generated(&g, &[2]).unwrap();
        assert!(matches!(ChainMapSystem::new(g.clone(), &sub, &[2, 1], 1), Err(Error::BadTransversal(_))));
        assert!(matches!(ChainMapSystem::new(g.clone(), &sub, &[0, 2], 1), Err(Error::BadTransversal(_))));
        assert!(matches!(ChainMapSystem::new(g.clone(), &sub, &[0], 1), Err(Error::BadTransversal(_))));
        let a = system(&g, &sub, TransversalKind::Min, 2);
        let b = system(&g, &Subgroup::trivial(&g), TransversalKind::Min, 2);
        assert!(matches!(HomotopyPair::new(&a, &b, 2), Err(Error::MismatchedSystems)));
    }
}
