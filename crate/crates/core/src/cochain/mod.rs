//! Inhomogeneous cochains on the bar resolution.
//!
//! An `n`-cochain is stored by its values on the bar symbols `[g_1,…,g_n]`,
//! which determine a `G`-map out of the free module. Tuples are numbered in
//! base `|G|` with `g_1` most significant. Three ladders share the layout:
//! values in `A` ([`AbsoluteCochain`]), values in `Hom(ℤ[G/𝒮], A)`
//! ([`PeripheralCochain`]), and `S_i`-equivariant cochains, which need the
//! whole basis `h_0[g_1,…,g_n]` ([`EquivariantCochain`]).

mod cohomology;
mod les;

pub use cohomology::{
    abelian_invariants, absolute_cohomology, hom_delta_module, member_cohomology_product,
    peripheral_cohomology, relative_cohomology, relative_cohomology_via_delta, relative_h2,
    CohomologyGroup, Ladder, MAX_DEGREE,
};
pub use les::{les_segment, LesMap, LesSegment};

use crate::error::{Error, Result};
use crate::group::GroupPair;
use crate::module::{diagonal_act_into, GModule, PeripheralValue};

pub fn tuple_count(n: usize, degree: usize) -> usize {
    n.pow(degree as u32)
}

pub fn encode_tuple(n: usize, t: &[usize]) -> usize {
    t.iter().fold(0, |acc, &g| acc * n + g)
}

pub fn decode_tuple(n: usize, degree: usize, mut idx: usize) -> Vec<usize> {
    let mut t = vec![0; degree];
    for k in (0..degree).rev() {
        t[k] = idx % n;
        idx /= n;
    }
    t
}

/// Bar coboundary on a table of `width`-wide values indexed by `degree`-tuples.
fn bar_coboundary(
    n: usize,
    mult: impl Fn(usize, usize) -> usize,
    degree: usize,
    width: usize,
    moduli: &[i64],
    src: &[i64],
    act: impl Fn(usize, &[i64], &mut [i64]),
) -> Vec<i64> {
    let count = tuple_count(n, degree + 1);
    let tail = tuple_count(n, degree);
    let mut out = vec![0i64; count * width];
    let mut acc = vec![0i64; width];
    let mut tmp = vec![0i64; width];
    let mut face = vec![0usize; degree];
    for idx in 0..count {
        let t = decode_tuple(n, degree + 1, idx);
        let g1 = t[0];
        let rest = idx % tail;
        act(g1, &src[rest * width..(rest + 1) * width], &mut tmp);
        acc.copy_from_slice(&tmp);
        for i in 1..=degree {
            // merge positions i-1 and i (0-based)
            face.clear();
            face.extend_from_slice(&t[..i - 1]);
            face.push(mult(t[i - 1], t[i]));
            face.extend_from_slice(&t[i + 1..]);
            let f = encode_tuple(n, &face);
            let v = &src[f * width..(f + 1) * width];
            if i % 2 == 1 {
                acc.iter_mut().zip(v).for_each(|(a, x)| *a -= x);
            } else {
                acc.iter_mut().zip(v).for_each(|(a, x)| *a += x);
            }
        }
        let head = idx / n;
        let v = &src[head * width..(head + 1) * width];
        if (degree + 1) % 2 == 1 {
            acc.iter_mut().zip(v).for_each(|(a, x)| *a -= x);
        } else {
            acc.iter_mut().zip(v).for_each(|(a, x)| *a += x);
        }
        for (k, a) in acc.iter().enumerate() {
            out[idx * width + k] = a.rem_euclid(moduli[k]);
        }
    }
    out
}

fn repeat_moduli(module: &GModule, copies: usize) -> Vec<i64> {
    module.invariants().iter().copied().cycle().take(copies * module.rank()).collect()
}

/// A cochain `C^n(G;A)`, flat over `G^n × rank`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbsoluteCochain {
    degree: usize,
    rank: usize,
    values: Vec<i64>,
}

impl AbsoluteCochain {
    pub fn zero(module: &GModule, degree: usize) -> Self {
        let n = module.group().order();
        Self { degree, rank: module.rank(), values: vec![0; tuple_count(n, degree) * module.rank()] }
    }

    /// Reduces the given flat table; errors on a length mismatch.
    pub fn from_values(module: &GModule, degree: usize, mut values: Vec<i64>) -> Result<Self> {
        let n = module.group().order();
        let want = tuple_count(n, degree) * module.rank();
        if values.len() != want {
            return Err(Error::Shape(format!("{degree}-cochain needs {want} entries, found {}", values.len())));
        }
        let moduli = repeat_moduli(module, tuple_count(n, degree));
        values.iter_mut().zip(&moduli).for_each(|(x, m)| *x = x.rem_euclid(*m));
        Ok(Self { degree, rank: module.rank(), values })
    }

    pub fn from_fn(module: &GModule, degree: usize, mut f: impl FnMut(&[usize]) -> Vec<i64>) -> Self {
        let n = module.group().order();
        let mut values = Vec::with_capacity(tuple_count(n, degree) * module.rank());
        for idx in 0..tuple_count(n, degree) {
            let v = module.base().elt(&f(&decode_tuple(n, degree, idx)));
            values.extend_from_slice(&v);
        }
        Self { degree, rank: module.rank(), values }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<i64> {
        self.values
    }

    /// Value on `[g_1,…,g_n]`, given by its tuple index.
    pub fn at(&self, idx: usize) -> &[i64] {
        &self.values[idx * self.rank..(idx + 1) * self.rank]
    }

    pub fn value(&self, n: usize, tuple: &[usize]) -> &[i64] {
        debug_assert_eq!(tuple.len(), self.degree);
        self.at(encode_tuple(n, tuple))
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&x| x == 0)
    }

    pub fn add(&self, module: &GModule, other: &Self) -> Self {
        self.combine(module, other, 1)
    }

    pub fn sub(&self, module: &GModule, other: &Self) -> Self {
        self.combine(module, other, -1)
    }

    fn combine(&self, module: &GModule, other: &Self, sign: i64) -> Self {
        assert_eq!(self.degree, other.degree);
        let inv = module.invariants();
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .enumerate()
            .map(|(k, (a, b))| (a + sign * b).rem_euclid(inv[k % self.rank]))
            .collect();
        Self { degree: self.degree, rank: self.rank, values }
    }

    pub fn coboundary(&self, module: &GModule) -> Self {
        let g = module.group();
        let n = g.order();
        let moduli = module.invariants();
        let values = bar_coboundary(n, |a, b| g.mul(a, b), self.degree, self.rank, moduli, &self.values, |h, v, o| {
            module.act_into(h, v, o)
        });
        Self { degree: self.degree + 1, rank: self.rank, values }
    }

    /// Whether the cochain vanishes whenever some entry of the tuple is the identity.
    pub fn is_normalized(&self, n: usize) -> bool {
        (0..tuple_count(n, self.degree))
            .filter(|&idx| decode_tuple(n, self.degree, idx).contains(&0))
            .all(|idx| self.at(idx).iter().all(|&x| x == 0))
    }
}

/// A cochain `C^n(𝒮;A)`, flat over `G^n × (global cosets) × rank`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PeripheralCochain {
    degree: usize,
    rank: usize,
    cosets: usize,
    values: Vec<i64>,
}

impl PeripheralCochain {
    pub fn zero(pair: &GroupPair, module: &GModule, degree: usize) -> Self {
        let width = pair.coset_count() * module.rank();
        Self {
            degree,
            rank: module.rank(),
            cosets: pair.coset_count(),
            values: vec![0; tuple_count(pair.group().order(), degree) * width],
        }
    }

    pub fn from_values(pair: &GroupPair, module: &GModule, degree: usize, mut values: Vec<i64>) -> Result<Self> {
        let n = pair.group().order();
        let slots = tuple_count(n, degree) * pair.coset_count();
        if values.len() != slots * module.rank() {
            return Err(Error::Shape(format!(
                "peripheral {degree}-cochain needs {} entries, found {}",
                slots * module.rank(),
                values.len()
            )));
        }
        let moduli = repeat_moduli(module, slots);
        values.iter_mut().zip(&moduli).for_each(|(x, m)| *x = x.rem_euclid(*m));
        Ok(Self { degree, rank: module.rank(), cosets: pair.coset_count(), values })
    }

    /// Builds from `f(tuple, global coset)`.
    pub fn from_fn(
        pair: &GroupPair,
        module: &GModule,
        degree: usize,
        mut f: impl FnMut(&[usize], usize) -> Vec<i64>,
    ) -> Self {
        let n = pair.group().order();
        let mut values = Vec::new();
        for idx in 0..tuple_count(n, degree) {
            let t = decode_tuple(n, degree, idx);
            for c in 0..pair.coset_count() {
                values.extend_from_slice(&module.base().elt(&f(&t, c)));
            }
        }
        Self { degree, rank: module.rank(), cosets: pair.coset_count(), values }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<i64> {
        self.values
    }

    fn width(&self) -> usize {
        self.cosets * self.rank
    }

    /// The peripheral value on the tuple with index `idx`.
    pub fn value_at(&self, idx: usize) -> PeripheralValue {
        PeripheralValue(self.values[idx * self.width()..(idx + 1) * self.width()].to_vec())
    }

    /// Value on tuple `idx` at global coset `c`.
    pub fn at(&self, idx: usize, c: usize) -> &[i64] {
        let base = idx * self.width() + c * self.rank;
        &self.values[base..base + self.rank]
    }

    pub fn value(&self, n: usize, tuple: &[usize], c: usize) -> &[i64] {
        self.at(encode_tuple(n, tuple), c)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&x| x == 0)
    }

    pub fn add(&self, module: &GModule, other: &Self) -> Self {
        self.combine(module, other, 1)
    }

    pub fn sub(&self, module: &GModule, other: &Self) -> Self {
        self.combine(module, other, -1)
    }

    fn combine(&self, module: &GModule, other: &Self, sign: i64) -> Self {
        assert_eq!(self.degree, other.degree);
        assert_eq!(self.cosets, other.cosets);
        let inv = module.invariants();
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .enumerate()
            .map(|(k, (a, b))| (a + sign * b).rem_euclid(inv[k % self.rank]))
            .collect();
        Self { values, ..*self }
    }

    pub fn coboundary(&self, pair: &GroupPair, module: &GModule) -> Self {
        let g = pair.group();
        let n = g.order();
        let moduli = repeat_moduli(module, self.cosets);
        let values = bar_coboundary(n, |a, b| g.mul(a, b), self.degree, self.width(), &moduli, &self.values, |h, v, o| {
            diagonal_act_into(pair, module, h, v, o)
        });
        Self { degree: self.degree + 1, values, ..*self }
    }

    /// Whether every value is constant across all cosets, i.e. the cochain lies in `im ev*`.
    pub fn is_constant(&self) -> bool {
        self.first_nonconstant().is_none()
    }

    /// First `(tuple index, coset)` whose value differs from the value at coset 0.
    pub fn first_nonconstant(&self) -> Option<(usize, usize)> {
        let count = self.values.len() / self.width().max(1);
        if self.width() == 0 {
            return None;
        }
        for idx in 0..count {
            for c in 1..self.cosets {
                if self.at(idx, c) != self.at(idx, 0) {
                    return Some((idx, c));
                }
            }
        }
        None
    }

    /// The absolute cochain read off coset 0 (the inverse of `ev*` on its image).
    pub fn at_identity_coset(&self, module: &GModule) -> AbsoluteCochain {
        let count = tuple_count(module.group().order(), self.degree);
        let mut values = Vec::with_capacity(count * self.rank);
        for idx in 0..count {
            values.extend_from_slice(self.at(idx, 0));
        }
        AbsoluteCochain { degree: self.degree, rank: module.rank(), values }
    }
}

/// `ev*`: copies each value to every coset slot.
pub fn ev_star(pair: &GroupPair, c: &AbsoluteCochain) -> PeripheralCochain {
    let cosets = pair.coset_count();
    let mut values = Vec::with_capacity(c.values.len() * cosets);
    for chunk in c.values.chunks(c.rank.max(1)) {
        for _ in 0..cosets {
            values.extend_from_slice(chunk);
        }
    }
    if c.rank == 0 {
        values.clear();
    }
    PeripheralCochain { degree: c.degree, rank: c.rank, cosets, values }
}

/// A peripheral cochain read modulo `im ev*`: an element of the relative cochain group one degree up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeCocycleRep {
    eta: PeripheralCochain,
}

/// `inc*`: the quotient projection, the identity on representatives.
pub fn inc_star(eta: PeripheralCochain) -> RelativeCocycleRep {
    RelativeCocycleRep { eta }
}

impl RelativeCocycleRep {
    pub fn eta(&self) -> &PeripheralCochain {
        &self.eta
    }

    pub fn into_eta(self) -> PeripheralCochain {
        self.eta
    }

    /// Relative degree, one more than the peripheral degree.
    pub fn relative_degree(&self) -> usize {
        self.eta.degree + 1
    }

    /// `ζ` with `ev*ζ = dη`, or the offending tuple and cosets.
    pub fn connecting_cochain(&self, pair: &GroupPair, module: &GModule) -> Result<AbsoluteCochain> {
        let d = self.eta.coboundary(pair, module);
        if let Some((idx, c)) = d.first_nonconstant() {
            let n = pair.group().order();
            let t = decode_tuple(n, d.degree, idx);
            let (g1, g2) = (t.first().copied().unwrap_or(0), t.get(1).copied().unwrap_or(0));
            return Err(Error::NotARelativeCocycle { g1, g2, coset_a: 0, coset_b: c });
        }
        Ok(d.at_identity_coset(module))
    }

    pub fn is_cocycle(&self, pair: &GroupPair, module: &GModule) -> bool {
        self.eta.coboundary(pair, module).is_constant()
    }
}

/// An `S_i`-equivariant cochain on `C_n(G)`, flat over `G × G^n × rank`
/// (basis element `h_0[g_1,…,g_n]` has index `h_0·|G|^n + tuple`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivariantCochain {
    member: usize,
    degree: usize,
    rank: usize,
    values: Vec<i64>,
}

impl EquivariantCochain {
    pub fn member(&self) -> usize {
        self.member
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn from_fn(
        pair: &GroupPair,
        module: &GModule,
        member: usize,
        degree: usize,
        mut f: impl FnMut(usize, &[usize]) -> Vec<i64>,
    ) -> Self {
        let n = pair.group().order();
        let mut values = Vec::new();
        for h0 in 0..n {
            for idx in 0..tuple_count(n, degree) {
                values.extend_from_slice(&module.base().elt(&f(h0, &decode_tuple(n, degree, idx))));
            }
        }
        Self { member, degree, rank: module.rank(), values }
    }

    /// Value on `h_0[tuple]`, by tuple index.
    pub fn at(&self, n: usize, h0: usize, idx: usize) -> &[i64] {
        let b = (h0 * tuple_count(n, self.degree) + idx) * self.rank;
        &self.values[b..b + self.rank]
    }

    /// Checks `ψ(s·b) = s·ψ(b)` for `s ∈ S_i` and every basis element `b`.
    pub fn check_equivariant(&self, pair: &GroupPair, module: &GModule) -> Result<()> {
        let g = pair.group();
        let n = g.order();
        let sub = pair.member(self.member);
        for &s in sub.elements() {
            for h0 in 0..n {
                for idx in 0..tuple_count(n, self.degree) {
                    let lhs = self.at(n, g.mul(s, h0), idx);
                    let rhs = module.act(s, self.at(n, h0, idx));
                    if lhs != &rhs[..] {
                        return Err(Error::NotEquivariant { member: self.member, s });
                    }
                }
            }
        }
        Ok(())
    }

    /// `(dψ)(h_0[g_1,…]) = ψ(h_0g_1[g_2,…]) + Σ(−1)^i ψ(h_0[…g_ig_{i+1}…]) + (−1)^{n+1} ψ(h_0[g_1,…,g_n])`.
    pub fn coboundary(&self, pair: &GroupPair, module: &GModule) -> Self {
        let g = pair.group();
        let n = g.order();
        let d = self.degree;
        let r = self.rank;
        let inv = module.invariants();
        let per = tuple_count(n, d);
        let per_out = tuple_count(n, d + 1);
        let mut values = vec![0; n * per_out * r];
        let mut face = Vec::with_capacity(d);
        for h0 in 0..n {
            for idx in 0..per_out {
                let t = decode_tuple(n, d + 1, idx);
                let mut acc = self.at(n, g.mul(h0, t[0]), idx % per).to_vec();
                for i in 1..=d {
                    face.clear();
                    face.extend_from_slice(&t[..i - 1]);
                    face.push(g.mul(t[i - 1], t[i]));
                    face.extend_from_slice(&t[i + 1..]);
                    let v = self.at(n, h0, encode_tuple(n, &face));
                    let sign = if i % 2 == 1 { -1 } else { 1 };
                    acc.iter_mut().zip(v).for_each(|(a, x)| *a += sign * x);
                }
                let v = self.at(n, h0, idx / n);
                let sign = if (d + 1) % 2 == 1 { -1 } else { 1 };
                acc.iter_mut().zip(v).for_each(|(a, x)| *a += sign * x);
                let base = (h0 * per_out + idx) * r;
                for k in 0..r {
                    values[base + k] = acc[k].rem_euclid(inv[k]);
                }
            }
        }
        Self { member: self.member, degree: d + 1, rank: r, values }
    }
}

/// `Φ(φ)_i(h_0[g]) = φ(h_0[g])(1S_i) = h_0·φ([g])(h_0⁻¹S_i)`.
pub fn phi(pair: &GroupPair, module: &GModule, eta: &PeripheralCochain) -> Vec<EquivariantCochain> {
    let g = pair.group();
    let n = g.order();
    (0..pair.family().len())
        .map(|i| {
            let c0 = pair.identity_coset(i);
            EquivariantCochain::from_fn(pair, module, i, eta.degree, |h0, t| {
                let c = pair.translate(g.inv(h0), c0);
                module.act(h0, eta.value(n, t, c)).0
            })
        })
        .collect()
}

/// `Ψ(ψ)([g])(xS_i) = x·ψ(x⁻¹[g])`; each component must be `S_i`-equivariant.
pub fn psi(pair: &GroupPair, module: &GModule, comps: &[EquivariantCochain]) -> Result<PeripheralCochain> {
    if comps.len() != pair.family().len() {
        return Err(Error::Shape(format!(
            "expected {} components, found {}",
            pair.family().len(),
            comps.len()
        )));
    }
    let degree = comps.first().map_or(0, |c| c.degree);
    for (i, c) in comps.iter().enumerate() {
        if c.member != i || c.degree != degree {
            return Err(Error::Shape(format!("component {i} has the wrong member or degree")));
        }
        c.check_equivariant(pair, module)?;
    }
    let g = pair.group();
    let n = g.order();
    Ok(PeripheralCochain::from_fn(pair, module, degree, |t, c| {
        let (i, _) = pair.coset_owner(c);
        let x = pair.coset_element(c);
        let idx = encode_tuple(n, t);
        module.act(x, comps[i].at(n, g.inv(x), idx)).0
    }))
}

/// Sparse columns of the coboundary `C^degree → C^{degree+1}` on a ladder of
/// the given width (one column per source coordinate).
pub(crate) fn coboundary_columns(
    n: usize,
    degree: usize,
    width: usize,
    apply: impl Fn(&[i64]) -> Vec<i64>,
) -> Vec<Vec<(usize, i64)>> {
    let dim = tuple_count(n, degree) * width;
    let mut delta = vec![0i64; dim];
    (0..dim)
        .map(|j| {
            delta[j] = 1;
            let out = apply(&delta);
            delta[j] = 0;
            out.iter().enumerate().filter(|(_, &x)| x != 0).map(|(k, &x)| (k, x)).collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::group::{FiniteGroup, Subgroup};
    use crate::module::AbelianGroup;

    fn random_abs(module: &GModule, degree: usize, rng: &mut ChaCha8Rng) -> AbsoluteCochain {
        AbsoluteCochain::from_fn(module, degree, |_| {
            module.invariants().iter().map(|&m| rng.gen_range(0..m)).collect()
        })
    }

    fn random_per(pair: &GroupPair, module: &GModule, degree: usize, rng: &mut ChaCha8Rng) -> PeripheralCochain {
        PeripheralCochain::from_fn(pair, module, degree, |_, _| {
            module.invariants().iter().map(|&m| rng.gen_range(0..m)).collect()
        })
    }

    fn s3() -> FiniteGroup {
        FiniteGroup::symmetric(3)
    }

    #[test]
    fn degree_one_formula_on_c2() {
        // d¹c([g1,g2]) = g1·c(g2) − c(g1g2) + c(g1)
        let g = Arc::new(FiniteGroup::cyclic(2));
        let f2 = GModule::trivial(AbelianGroup::new(vec![2]).unwrap(), g.clone());
        for bits in 0..4i64 {
            let c = AbsoluteCochain::from_fn(&f2, 1, |t| vec![(bits >> t[0]) & 1]);
            let d = c.coboundary(&f2);
            for a in 0..2 {
                for b in 0..2 {
                    let want = (c.value(2, &[b])[0] - c.value(2, &[g.mul(a, b)])[0] + c.value(2, &[a])[0])
                        .rem_euclid(2);
                    assert_eq!(d.value(2, &[a, b])[0], want);
                }
            }
        }
        // constant 0-cochain with trivial action is a cocycle
        let c = AbsoluteCochain::from_values(&f2, 0, vec![1]).unwrap();
        assert!(c.coboundary(&f2).is_zero());
    }

    #[test]
    fn d_squared_vanishes() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let groups = [
            FiniteGroup::cyclic(2),
            FiniteGroup::cyclic(4),
            s3(),
            FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2)),
            FiniteGroup::symmetric(4),
        ];
        for g in groups {
            let g = Arc::new(g);
            let gens = g.greedy_generators();
            // trivial action on Z/3 ⊕ Z/4
            let m = GModule::from_generator_actions(
                AbelianGroup::new(vec![3, 4]).unwrap(),
                g.clone(),
                &gens,
                &vec![vec![1, 0, 0, 1]; gens.len()],
            )
            .unwrap();
            let max_deg = if g.order() > 12 { 2 } else { 3 };
            for deg in 0..max_deg {
                let c = random_abs(&m, deg, &mut rng);
                assert!(c.coboundary(&m).coboundary(&m).is_zero(), "|G|={} deg={deg}", g.order());
            }
            let sub = Subgroup::generated(&g, &gens[..1]).unwrap();
            let pair = GroupPair::new(g.clone(), vec![sub, Subgroup::trivial(&g)]).unwrap();
            for deg in 0..max_deg {
                let c = random_per(&pair, &m, deg, &mut rng);
                assert!(c.coboundary(&pair, &m).coboundary(&pair, &m).is_zero());
            }
        }
    }

    #[test]
    fn ev_star_is_a_chain_map_and_injective() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = Arc::new(s3());
        let sign = GModule::from_generator_actions(
            AbelianGroup::new(vec![3]).unwrap(),
            g.clone(),
            &g.greedy_generators(),
            &[vec![2], vec![1]],
        );
        let m = match sign {
            Ok(m) => m,
            Err(_) => GModule::trivial(AbelianGroup::new(vec![3]).unwrap(), g.clone()),
        };
        let pair = GroupPair::from_generators(s3(), &[vec![1], vec![0]]).unwrap();
        for deg in 0..3 {
            let c = random_abs(&m, deg, &mut rng);
            let lhs = ev_star(&pair, &c.coboundary(&m));
            let rhs = ev_star(&pair, &c).coboundary(&pair, &m);
            assert_eq!(lhs, rhs);
            assert_eq!(ev_star(&pair, &c).at_identity_coset(&m), c);
            assert!(inc_star(ev_star(&pair, &c)).eta().is_constant());
        }
    }

    #[test]
    fn phi_psi_inverse_and_chain_maps() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let pairs = [
            GroupPair::from_generators(FiniteGroup::cyclic(2), &[vec![0]]).unwrap(),
            GroupPair::from_generators(s3(), &[vec![1], vec![2], vec![]]).unwrap(),
        ];
        for pair in &pairs {
            let m = GModule::trivial(AbelianGroup::new(vec![2]).unwrap(), pair.group_arc().clone());
            for deg in 0..3 {
                let eta = random_per(pair, &m, deg, &mut rng);
                let comps = phi(pair, &m, &eta);
                assert_eq!(psi(pair, &m, &comps).unwrap(), eta);
                let d_comps = phi(pair, &m, &eta.coboundary(pair, &m));
                for (a, b) in comps.iter().zip(&d_comps) {
                    assert_eq!(&a.coboundary(pair, &m), b);
                }
                // Φ(ev*ζ) is ζ on every component
                let zeta = random_abs(&m, deg, &mut rng);
                let n = pair.group().order();
                for comp in phi(pair, &m, &ev_star(pair, &zeta)) {
                    for idx in 0..tuple_count(n, deg) {
                        for h0 in 0..n {
                            assert_eq!(comp.at(n, h0, idx), &m.act(h0, zeta.at(idx))[..]);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn psi_rejects_non_equivariant() {
        let pair = GroupPair::from_generators(FiniteGroup::cyclic(2), &[vec![1]]).unwrap();
        let m = GModule::trivial(AbelianGroup::new(vec![2]).unwrap(), pair.group_arc().clone());
        let bad = EquivariantCochain::from_fn(&pair, &m, 0, 0, |h0, _| vec![h0 as i64]);
        assert_eq!(psi(&pair, &m, &[bad]).unwrap_err(), Error::NotEquivariant { member: 0, s: 1 });
    }

    #[test]
    fn relative_rep_reports_nonconstant_coboundary() {
        let pair = GroupPair::from_generators(FiniteGroup::cyclic(2), &[vec![]]).unwrap();
        let m = GModule::trivial(AbelianGroup::new(vec![2]).unwrap(), pair.group_arc().clone());
        // η([g])(c) = 1 only at g = t, c = 0
        let eta = PeripheralCochain::from_fn(&pair, &m, 1, |t, c| vec![i64::from(t[0] == 1 && c == 0)]);
        let rep = inc_star(eta);
        assert!(rep.is_cocycle(&pair, &m));
        let zeta = rep.connecting_cochain(&pair, &m).unwrap();
        // ζ([t,t]) = t·η(t)(t⁻¹·c0) + η(t)(c0) - η(1)(c0) = η(t)(c1) + η(t)(c0) = 1
        assert_eq!(zeta.value(2, &[1, 1]), &[1]);
        let eta = PeripheralCochain::from_fn(&pair, &m, 1, |t, c| vec![i64::from(t[0] == 0 && c == 0)]);
        assert!(matches!(
            inc_star(eta).connecting_cochain(&pair, &m),
            Err(Error::NotARelativeCocycle { .. })
        ));
    }
}
