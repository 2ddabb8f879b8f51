//! Finite lifting problems relative to a family of subgroups, and the
//! pullback relative extension attached to an abelian kernel.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::cochain::relative_h2;
use crate::error::{Error, Result};
use crate::extension::{
    are_equivalent, default_systems, extension_to_cocycle, trivial_relative_extension, EquivalenceWitness, Extension,
    RelativeExtension, SetSection,
};
use crate::group::{FiniteGroup, GroupHom, GroupPair, TransversalKind};
use crate::module::{AbelianGroup, GModule};
use crate::oracle::invariants_from_torsion;

/// `α: H ↠ Q`, `φ: G → Q` and `σ_i: S_i → H` with `α∘σ_i = φ|S_i`.
#[derive(Clone, Debug)]
pub struct LiftingProblem {
    pair: GroupPair,
    h: Arc<FiniteGroup>,
    q: Arc<FiniteGroup>,
    alpha: GroupHom,
    phi: GroupHom,
    /// `sigma[i][k]` is the image of the `k`-th element of `S_i`.
    sigma: Vec<Vec<usize>>,
}

impl LiftingProblem {
    pub fn new(
        pair: GroupPair,
        h: Arc<FiniteGroup>,
        q: Arc<FiniteGroup>,
        alpha: Vec<usize>,
        phi: Vec<usize>,
        sigma: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let alpha = GroupHom::from_images(&h, &q, alpha)?;
        if !alpha.is_surjective(&q) {
            return Err(Error::InvalidLifting("α is not surjective".into()));
        }
        let phi = GroupHom::from_images(pair.group(), &q, phi)?;
        if sigma.len() != pair.family().len() {
            return Err(Error::InvalidLifting(format!(
                "{} maps σ_i for {} members",
                sigma.len(),
                pair.family().len()
            )));
        }
        for (i, s) in sigma.iter().enumerate() {
            let sub = pair.member(i);
            let elts = sub.elements();
            if s.len() != elts.len() {
                return Err(Error::InvalidLifting(format!("σ_{i} has {} images for {} elements", s.len(), elts.len())));
            }
            for &x in s {
                h.check_element(x)?;
            }
            for (a, &s1) in elts.iter().enumerate() {
                if alpha.apply(s[a]) != phi.apply(s1) {
                    return Err(Error::InvalidLifting(format!("α∘σ_{i} ≠ φ at {s1}")));
                }
                for (b, &s2) in elts.iter().enumerate() {
                    let c = sub.position(pair.group().mul(s1, s2)).expect("subgroup");
                    if h.mul(s[a], s[b]) != s[c] {
                        return Err(Error::InvalidLifting(format!("σ_{i} is not a homomorphism at ({s1}, {s2})")));
                    }
                }
            }
        }
        Ok(Self { pair, h, q, alpha, phi, sigma })
    }

    pub fn pair(&self) -> &GroupPair {
        &self.pair
    }

    pub fn h(&self) -> &FiniteGroup {
        &self.h
    }

    pub fn q(&self) -> &FiniteGroup {
        &self.q
    }

    pub fn alpha(&self) -> &GroupHom {
        &self.alpha
    }

    pub fn phi(&self) -> &GroupHom {
        &self.phi
    }

    pub fn sigma(&self, i: usize, s: usize) -> usize {
        self.sigma[i][self.pair.member(i).position(s).expect("element of the member")]
    }

    /// `K = ker α`, sorted.
    pub fn kernel(&self) -> Vec<usize> {
        self.alpha.kernel()
    }

    pub fn kernel_is_abelian(&self) -> bool {
        let k = self.kernel();
        k.iter().all(|&a| k.iter().all(|&b| self.h.mul(a, b) == self.h.mul(b, a)))
    }
}

/// `φ̄: G → H` and `c_i ∈ K` with `α∘φ̄ = φ` and `c_i φ̄(s) c_i⁻¹ = σ_i(s)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftingSolution {
    pub phibar: Vec<usize>,
    pub conjugators: Vec<usize>,
}

impl LiftingSolution {
    pub fn validate(&self, prob: &LiftingProblem) -> Result<()> {
        let g = prob.pair.group();
        let h = prob.h();
        let bad = |why: String| Error::VerificationFailed(why);
        let phibar = GroupHom::from_images(g, h, self.phibar.clone())?;
        for x in g.elements() {
            if prob.alpha.apply(phibar.apply(x)) != prob.phi.apply(x) {
                return Err(bad(format!("α∘φ̄ ≠ φ at {x}")));
            }
        }
        if self.conjugators.len() != prob.pair.family().len() {
            return Err(bad("wrong number of conjugators".into()));
        }
        for (i, &c) in self.conjugators.iter().enumerate() {
            if prob.alpha.apply(c) != 0 {
                return Err(bad(format!("c_{i} is not in the kernel")));
            }
            for &s in prob.pair.member(i).elements() {
                if h.mul(h.mul(c, phibar.apply(s)), h.inv(c)) != prob.sigma(i, s) {
                    return Err(bad(format!("c_{i}·φ̄({s})·c_{i}⁻¹ ≠ σ_{i}({s})")));
                }
            }
        }
        Ok(())
    }
}

/// Exhaustive search over lifts of `φ` (by generator images in the fibres of
/// `α`), then over conjugators in `K`. Returns the first solution found.
pub fn solve_lifting(prob: &LiftingProblem, cap: u128) -> Result<Option<LiftingSolution>> {
    let g = prob.pair.group();
    let h = prob.h();
    let gens = g.greedy_generators();
    let kernel = prob.kernel();
    let bound = (kernel.len() as u128).saturating_pow(gens.len() as u32);
    if bound > cap {
        return Err(Error::SearchSpaceTooLarge { bound, cap });
    }
    let fibres: Vec<Vec<usize>> =
        gens.iter().map(|&x| h.elements().filter(|&y| prob.alpha.apply(y) == prob.phi.apply(x)).collect()).collect();
    let mut pick = vec![0usize; gens.len()];
    loop {
        let imgs: Vec<usize> = pick.iter().zip(&fibres).map(|(&k, f)| f[k]).collect();
        if let Some(phibar) = GroupHom::extend(g, h, &gens, &imgs)? {
            let conj: Option<Vec<usize>> = (0..prob.pair.family().len())
                .map(|i| {
                    kernel.iter().copied().find(|&c| {
                        prob.pair.member(i).elements().iter().all(|&s| h.mul(h.mul(c, phibar[s]), h.inv(c)) == prob.sigma(i, s))
                    })
                })
                .collect();
            if let Some(conjugators) = conj {
                let sol = LiftingSolution { phibar, conjugators };
                sol.validate(prob)?;
                return Ok(Some(sol));
            }
        }
        let mut j = 0;
        while j < pick.len() {
            pick[j] += 1;
            if pick[j] < fibres[j].len() {
                break;
            }
            pick[j] = 0;
            j += 1;
        }
        if j == pick.len() {
            return Ok(None);
        }
    }
}

/// An abelian subgroup of `H` with chosen coordinates `K ≅ ⊕ℤ/m_j`.
#[derive(Clone, Debug)]
pub struct KernelCoordinates {
    pub base: AbelianGroup,
    pub basis: Vec<usize>,
    coords: HashMap<usize, Vec<i64>>,
    elements: Vec<usize>,
}

impl KernelCoordinates {
    /// Finds a basis with orders equal to the invariant factors.
    pub fn new(h: &FiniteGroup, k: &[usize]) -> Result<Self> {
        if !k.iter().all(|&a| k.iter().all(|&b| h.mul(a, b) == h.mul(b, a))) {
            return Err(Error::KernelNotAbelian);
        }
        let e = k.iter().fold(1i64, |acc, &x| num_integer::lcm(acc, h.element_order(x) as i64));
        let power = |x: usize, m: i64| (0..m).fold(0usize, |acc, _| h.mul(acc, x));
        let inv = invariants_from_torsion(e, |m| k.iter().filter(|&&x| power(x, m) == 0).count());
        let base = AbelianGroup::new(inv.clone())?;
        // basis search, largest factor first
        let order: Vec<usize> = (0..inv.len()).rev().collect();
        let mut basis = vec![0usize; inv.len()];
        fn rec(
            h: &FiniteGroup,
            k: &[usize],
            inv: &[i64],
            order: &[usize],
            depth: usize,
            span: Vec<usize>,
            basis: &mut Vec<usize>,
        ) -> bool {
            if depth == order.len() {
                return span.len() == k.len();
            }
            let j = order[depth];
            for &x in k {
                if h.element_order(x) as i64 != inv[j] {
                    continue;
                }
                let mut next = span.clone();
                let mut p = x;
                for _ in 1..inv[j] {
                    for &y in &span {
                        next.push(h.mul(y, p));
                    }
                    p = h.mul(p, x);
                }
                next.sort_unstable();
                next.dedup();
                if next.len() == span.len() * inv[j] as usize {
                    basis[j] = x;
                    if rec(h, k, inv, order, depth + 1, next, basis) {
                        return true;
                    }
                }
            }
            false
        }
        if !rec(h, k, &inv, &order, 0, vec![0], &mut basis) {
            return Err(Error::VerificationFailed("no basis found for the kernel".into()));
        }
        let elements: Vec<usize> = base
            .elements()
            .map(|c| c.0.iter().zip(&basis).fold(0usize, |acc, (&n, &x)| h.mul(acc, power(x, n))))
            .collect();
        let coords = base.elements().zip(&elements).map(|(c, &x)| (x, c.0)).collect();
        Ok(Self { base, basis, coords, elements })
    }

    pub fn coords(&self, x: usize) -> &[i64] {
        &self.coords[&x]
    }

    pub fn element(&self, a: &[i64]) -> usize {
        self.elements[self.base.encode(a)]
    }
}

/// The pullback `E = {(g,h) : φ(g) = α(h)}` in coordinates `(k, g) ↦ (k·h_g, g)`.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub kernel: KernelCoordinates,
    /// `h_g`: the chosen lift of `φ(g)`, with `h_1 = 1`.
    pub lifts: Vec<usize>,
    pub relative_extension: RelativeExtension,
}

impl Pullback {
    pub fn module(&self) -> &GModule {
        self.relative_extension.module()
    }
}

/// `K` as a `G`-module via `g·k = h k h⁻¹` for any `h` with `α(h) = φ(g)`.
fn kernel_module(prob: &LiftingProblem, kc: &KernelCoordinates) -> Result<GModule> {
    let g = prob.pair.group();
    let h = prob.h();
    let r = kc.base.rank();
    let mut matrices = Vec::with_capacity(g.order());
    for x in g.elements() {
        let fibre: Vec<usize> = h.elements().filter(|&y| prob.alpha.apply(y) == prob.phi.apply(x)).collect();
        let act = |y: usize, k: usize| h.mul(h.mul(y, k), h.inv(y));
        for &y in &fibre[1..] {
            if prob.kernel().iter().any(|&k| act(y, k) != act(fibre[0], k)) {
                return Err(Error::ActionIllDefined);
            }
        }
        let mut m = vec![0i64; r * r];
        for (c, &b) in kc.basis.iter().enumerate() {
            let img = kc.coords(act(fibre[0], b));
            for row in 0..r {
                m[row * r + c] = img[row];
            }
        }
        matrices.push(m);
    }
    GModule::new(kc.base.clone(), prob.pair.group_arc().clone(), matrices)
}

pub fn pullback_relative_extension(prob: &LiftingProblem) -> Result<Pullback> {
    let kernel = prob.kernel();
    let kc = KernelCoordinates::new(prob.h(), &kernel)?;
    let module = kernel_module(prob, &kc)?;
    let g = prob.pair.group();
    let h = prob.h();
    let lifts: Vec<usize> = g
        .elements()
        .map(|x| if x == 0 { 0 } else { h.elements().find(|&y| prob.alpha.apply(y) == prob.phi.apply(x)).unwrap() })
        .collect();
    let zeta = crate::cochain::AbsoluteCochain::from_fn(&module, 2, |t| {
        let y = h.mul(h.mul(lifts[t[0]], lifts[t[1]]), h.inv(lifts[g.mul(t[0], t[1])]));
        kc.coords(y).to_vec()
    });
    let ext = Extension::new(module.clone(), zeta)?;
    let sections = (0..prob.pair.family().len())
        .map(|i| {
            prob.pair.member(i).elements().iter().map(|&s| kc.coords(h.mul(prob.sigma(i, s), h.inv(lifts[s]))).to_vec()).collect()
        })
        .collect();
    let relative_extension = RelativeExtension::new(prob.pair.clone(), ext, sections)?;
    Ok(Pullback { kernel: kc, lifts, relative_extension })
}

/// The trivialization `f(g,h) = (h·φ̄(g)⁻¹, g)`, with conjugators `−c_i`.
pub fn solution_witness(prob: &LiftingProblem, pb: &Pullback, sol: &LiftingSolution) -> EquivalenceWitness {
    let h = prob.h();
    let module = pb.module();
    let base = module.base();
    let upsilon = crate::cochain::AbsoluteCochain::from_fn(module, 1, |t| {
        base.neg(pb.kernel.coords(h.mul(pb.lifts[t[0]], h.inv(sol.phibar[t[0]])))).0
    });
    let conjugators = sol.conjugators.iter().map(|&c| base.neg(pb.kernel.coords(c)).0).collect();
    EquivalenceWitness { upsilon, conjugators }
}

#[derive(Clone, Debug, Serialize)]
pub struct ObstructionVerdict {
    pub solvable: bool,
    pub solution: Option<LiftingSolution>,
    /// Invariants of `K`, when abelian.
    pub kernel_invariants: Option<Vec<i64>>,
    pub h2_invariants: Option<Vec<i64>>,
    /// Coordinates of the pullback class in `H²(G,𝒮;K)`.
    pub class: Option<Vec<i64>>,
    /// Whether the pullback is equivalent to the trivial relative extension.
    pub trivial_by_equivalence: Option<bool>,
    /// Whether the explicit trivialization built from the solution was checked.
    pub witness_checked: bool,
    /// `solvable ⟺ class = 0`; `None` when `K` is not abelian.
    pub holds: Option<bool>,
}

impl ObstructionVerdict {
    pub fn is_zero_class(&self) -> Option<bool> {
        self.class.as_ref().map(|c| c.iter().all(|&x| x == 0))
    }
}

/// Solves the problem by search and compares with the pullback class.
pub fn verify_obstruction_criterion(prob: &LiftingProblem, cap: u128) -> Result<ObstructionVerdict> {
    let solution = solve_lifting(prob, cap)?;
    let solvable = solution.is_some();
    let pb = match pullback_relative_extension(prob) {
        Ok(pb) => pb,
        Err(Error::KernelNotAbelian) => {
            return Ok(ObstructionVerdict {
                solvable,
                solution,
                kernel_invariants: None,
                h2_invariants: None,
                class: None,
                trivial_by_equivalence: None,
                witness_checked: false,
                holds: None,
            })
        }
        Err(e) => return Err(e),
    };
    let pair = prob.pair();
    let module = pb.module();
    let h2 = relative_h2(pair, module)?;
    let systems = default_systems(pair, TransversalKind::Min)?;
    let re = &pb.relative_extension;
    let eta = extension_to_cocycle(re, &SetSection::canonical(re.extension()), &systems)?;
    let class = h2.classify(eta.eta().values())?;
    let trivial = trivial_relative_extension(pair, module)?;
    let by_equivalence = are_equivalent(re, &trivial)?.is_some();
    let mut witness_checked = false;
    if let Some(sol) = &solution {
        solution_witness(prob, &pb, sol).validate(re, &trivial)?;
        witness_checked = true;
    }
    let zero = class.iter().all(|&x| x == 0);
    Ok(ObstructionVerdict {
        solvable,
        solution,
        kernel_invariants: Some(pb.kernel.base.invariants().to_vec()),
        h2_invariants: Some(h2.invariants().to_vec()),
        class: Some(class),
        trivial_by_equivalence: Some(by_equivalence),
        witness_checked,
        holds: Some(solvable == zero && zero == by_equivalence),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c2_trivial_member() -> GroupPair {
        GroupPair::from_generators(FiniteGroup::cyclic(2), &[vec![]]).unwrap()
    }

    #[test]
    fn c4_onto_c2_has_no_lift() {
        let pair = c2_trivial_member();
        let h = Arc::new(FiniteGroup::cyclic(4));
        let q = Arc::new(FiniteGroup::cyclic(2));
        let prob = LiftingProblem::new(pair, h, q, vec![0, 1, 0, 1], vec![0, 1], vec![vec![0]]).unwrap();
        assert!(solve_lifting(&prob, 1 << 20).unwrap().is_none());
        let v = verify_obstruction_criterion(&prob, 1 << 20).unwrap();
        assert_eq!(v.class, Some(vec![1]));
        assert_eq!(v.holds, Some(true));
        // the pullback is ℤ/4
        let pb = pullback_relative_extension(&prob).unwrap();
        let e = pb.relative_extension.extension();
        assert!(e.elements().any(|x| e.element_order(&x) == 4));
    }

    #[test]
    fn identity_surjection_lifts_trivially() {
        let g = FiniteGroup::symmetric(3);
        let t = g.find_permutation(&[1, 0, 2]).unwrap();
        let pair = GroupPair::from_generators(g.clone(), &[vec![t]]).unwrap();
        let arc = pair.group_arc().clone();
        let id: Vec<usize> = g.elements().collect();
        let sigma = vec![pair.member(0).elements().to_vec()];
        let prob = LiftingProblem::new(pair, arc.clone(), arc, id.clone(), id.clone(), sigma).unwrap();
        let sol = solve_lifting(&prob, 1 << 20).unwrap().unwrap();
        assert_eq!(sol.phibar, id);
        assert_eq!(sol.conjugators, vec![0]);
        let v = verify_obstruction_criterion(&prob, 1 << 20).unwrap();
        assert!(v.witness_checked && v.holds == Some(true));
    }

    #[test]
    fn kernel_coordinates_of_klein_four() {
        let h = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(4));
        let k: Vec<usize> = h.elements().collect();
        let kc = KernelCoordinates::new(&h, &k).unwrap();
        assert_eq!(kc.base.invariants(), &[2, 4]);
        for &x in &k {
            assert_eq!(kc.element(kc.coords(x)), x);
        }
        let s3 = FiniteGroup::symmetric(3);
        let all: Vec<usize> = s3.elements().collect();
        assert!(matches!(KernelCoordinates::new(&s3, &all), Err(Error::KernelNotAbelian)));
    }

    #[test]
    fn rejects_inconsistent_data() {
        let pair = c2_trivial_member();
        let h = Arc::new(FiniteGroup::cyclic(4));
        let q = Arc::new(FiniteGroup::cyclic(2));
        // not surjective
        assert!(LiftingProblem::new(pair.clone(), h.clone(), q.clone(), vec![0; 4], vec![0, 0], vec![vec![0]]).is_err());
        // σ does not lie over φ
        let whole = GroupPair::from_generators(FiniteGroup::cyclic(2), &[vec![1]]).unwrap();
        assert!(LiftingProblem::new(whole, h, q, vec![0, 1, 0, 1], vec![0, 1], vec![vec![0, 0]]).is_err());
    }
}
