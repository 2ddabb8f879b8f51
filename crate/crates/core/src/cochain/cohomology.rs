use std::sync::Arc;

use serde::Serialize;

use super::{coboundary_columns, tuple_count, AbsoluteCochain, PeripheralCochain};
use crate::error::{Error, Result};
use crate::group::GroupPair;
use crate::module::{AbelianGroup, GModule};
use crate::smith::{SparseColumns, Subquotient};

/// Highest cochain degree the library computes with.
pub const MAX_DEGREE: usize = 3;

/// Which cochain ladder a cohomology group is computed on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Ladder {
    /// `C^•(G;A)`.
    Absolute,
    /// `C^•(𝒮;A)`, computing `∏ H^n(S_i;A)`.
    Peripheral,
    /// `C^{•-1}(𝒮;A)` modulo `ev*`, computing `H^n(G,𝒮;A)`.
    Relative,
}

/// A cohomology group with explicit cocycle representatives.
///
/// Cocycles are flat cochain tables: absolute or peripheral cochains of
/// degree `n`, or for [`Ladder::Relative`] a peripheral cochain of degree `n-1`.
#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    degree: usize,
    ladder: Ladder,
    sub: Subquotient,
}

impl CohomologyGroup {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn ladder(&self) -> Ladder {
        self.ladder
    }

    pub fn invariants(&self) -> &[i64] {
        self.sub.invariants()
    }

    pub fn order(&self) -> u128 {
        self.sub.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.sub.is_trivial()
    }

    pub fn subquotient(&self) -> &Subquotient {
        &self.sub
    }

    pub fn is_cocycle(&self, values: &[i64]) -> bool {
        values.len() == self.sub.ambient().len() && self.sub.in_kernel(values)
    }

    /// Class coordinates of a cocycle.
    pub fn classify(&self, values: &[i64]) -> Result<Vec<i64>> {
        if values.len() != self.sub.ambient().len() {
            return Err(Error::Shape(format!(
                "cocycle has {} entries, expected {}",
                values.len(),
                self.sub.ambient().len()
            )));
        }
        if !self.sub.in_kernel(values) {
            return Err(Error::VerificationFailed(format!(
                "degree-{} {:?} cochain is not a cocycle",
                self.degree, self.ladder
            )));
        }
        self.sub.reduce(values)
    }

    /// Whether a cocycle lies in the zero class.
    pub fn is_zero_class(&self, values: &[i64]) -> bool {
        self.sub.is_zero_class(values)
    }

    /// A cocycle in the class with the given coordinates.
    pub fn decode(&self, coords: &[i64]) -> Vec<i64> {
        self.sub.lift(coords)
    }

    /// All class coordinates.
    pub fn classes(&self) -> impl Iterator<Item = Vec<i64>> + '_ {
        self.sub.elements()
    }
}

fn check_degree(n: usize, max: usize) -> Result<()> {
    if n > max {
        return Err(Error::DegreeUnsupported { degree: n, max });
    }
    Ok(())
}

fn repeated(module: &GModule, copies: usize) -> Vec<i64> {
    module.invariants().iter().copied().cycle().take(copies * module.rank()).collect()
}

fn abs_columns(module: &GModule, degree: usize) -> SparseColumns {
    let n = module.group().order();
    coboundary_columns(n, degree, module.rank(), |v| {
        AbsoluteCochain::from_values(module, degree, v.to_vec()).unwrap().coboundary(module).into_values()
    })
}

fn per_columns(pair: &GroupPair, module: &GModule, degree: usize) -> SparseColumns {
    let n = pair.group().order();
    coboundary_columns(n, degree, pair.coset_count() * module.rank(), |v| {
        PeripheralCochain::from_values(pair, module, degree, v.to_vec())
            .unwrap()
            .coboundary(pair, module)
            .into_values()
    })
}

/// `H^n(G;A)` for `0 ≤ n ≤ 3`.
pub fn absolute_cohomology(module: &GModule, n: usize) -> Result<CohomologyGroup> {
    check_degree(n, MAX_DEGREE)?;
    let order = module.group().order();
    let ambient = repeated(module, tuple_count(order, n));
    let y_mod = repeated(module, tuple_count(order, n + 1));
    let k = abs_columns(module, n);
    let b = if n == 0 { Vec::new() } else { abs_columns(module, n - 1) };
    let sub = Subquotient::from_columns(&ambient, &y_mod, &k, &b)?;
    Ok(CohomologyGroup { degree: n, ladder: Ladder::Absolute, sub })
}

/// `H^n` of the peripheral ladder, which is `∏_i H^n(S_i;A)` (coinduction).
pub fn peripheral_cohomology(pair: &GroupPair, module: &GModule, n: usize) -> Result<CohomologyGroup> {
    check_degree(n, MAX_DEGREE)?;
    check_same_group(pair, module)?;
    let slots = pair.coset_count();
    let order = pair.group().order();
    let ambient = repeated(module, tuple_count(order, n) * slots);
    let y_mod = repeated(module, tuple_count(order, n + 1) * slots);
    let k = per_columns(pair, module, n);
    let b = if n == 0 { Vec::new() } else { per_columns(pair, module, n - 1) };
    let sub = Subquotient::from_columns(&ambient, &y_mod, &k, &b)?;
    Ok(CohomologyGroup { degree: n, ladder: Ladder::Peripheral, sub })
}

fn check_same_group(pair: &GroupPair, module: &GModule) -> Result<()> {
    if pair.group() != module.group() {
        return Err(Error::MismatchedBase);
    }
    Ok(())
}

/// `H^n(G,𝒮;A)` for `1 ≤ n ≤ 3`, as
/// `{η ∈ C^{n-1}(𝒮;A) : dη ∈ im ev*} / (d C^{n-2}(𝒮;A) + ev* C^{n-1}(G;A))`.
pub fn relative_cohomology(pair: &GroupPair, module: &GModule, n: usize) -> Result<CohomologyGroup> {
    check_degree(n, MAX_DEGREE)?;
    if n == 0 {
        return Err(Error::DegreeUnsupported { degree: 0, max: MAX_DEGREE });
    }
    check_same_group(pair, module)?;
    let order = pair.group().order();
    let (slots, r) = (pair.coset_count(), module.rank());
    let width = slots * r;
    let ambient = repeated(module, tuple_count(order, n - 1) * slots);
    let out_tuples = tuple_count(order, n);
    let y_mod = repeated(module, out_tuples * (slots - 1));
    // inc* ∘ d: differences from coset 0
    let k: SparseColumns = per_columns(pair, module, n - 1)
        .into_iter()
        .map(|col| {
            let mut dense = vec![0i64; out_tuples * width];
            for (row, x) in col {
                dense[row] = x;
            }
            let mut out = Vec::new();
            for t in 0..out_tuples {
                for c in 1..slots {
                    for j in 0..r {
                        let x = dense[t * width + c * r + j] - dense[t * width + j];
                        if x != 0 {
                            out.push(((t * (slots - 1) + c - 1) * r + j, x));
                        }
                    }
                }
            }
            out
        })
        .collect();
    let mut b = if n >= 2 { per_columns(pair, module, n - 2) } else { Vec::new() };
    for t in 0..tuple_count(order, n - 1) {
        for j in 0..r {
            b.push((0..slots).map(|c| (t * width + c * r + j, 1)).collect());
        }
    }
    let sub = Subquotient::from_columns(&ambient, &y_mod, &k, &b)?;
    Ok(CohomologyGroup { degree: n, ladder: Ladder::Relative, sub })
}

/// `Hom(Δ, A)` with `Δ = ker(ℤ[G/𝒮] → ℤ)` on the basis `c − c_0` (`c ≠ c_0`,
/// `c_0` the global coset `1·S_0`); `(g·φ)(x) = g·φ(g⁻¹x)`.
pub fn hom_delta_module(pair: &GroupPair, module: &GModule) -> Result<GModule> {
    check_same_group(pair, module)?;
    let g = pair.group();
    let r = module.rank();
    let blocks = pair.coset_count() - 1;
    let dim = blocks * r;
    let base = AbelianGroup::new(repeated(module, blocks))?;
    let matrices = g
        .elements()
        .map(|x| {
            let m = module.matrix(x);
            let xi = g.inv(x);
            let mut out = vec![0i64; dim * dim];
            let src0 = pair.translate(xi, 0);
            for c in 1..=blocks {
                let src = pair.translate(xi, c);
                for (s, sign) in [(src, 1i64), (src0, -1i64)] {
                    if s == 0 {
                        continue;
                    }
                    for row in 0..r {
                        for col in 0..r {
                            out[((c - 1) * r + row) * dim + (s - 1) * r + col] += sign * m[row * r + col];
                        }
                    }
                }
            }
            out
        })
        .collect();
    GModule::new(base, pair.group_arc().clone(), matrices)
}

/// `H^n(G,𝒮;A)` by definition, as `H^{n-1}(G; Hom(Δ,A))`.
pub fn relative_cohomology_via_delta(pair: &GroupPair, module: &GModule, n: usize) -> Result<CohomologyGroup> {
    if n == 0 || n > MAX_DEGREE + 1 {
        return Err(Error::DegreeUnsupported { degree: n, max: MAX_DEGREE + 1 });
    }
    let hom = hom_delta_module(pair, module)?;
    let mut h = absolute_cohomology(&hom, n - 1)?;
    h.degree = n;
    Ok(h)
}

/// `H²(G,𝒮;A)` by the quotient route, after checking that the definitional
/// route gives the same invariant factors.
pub fn relative_h2(pair: &GroupPair, module: &GModule) -> Result<CohomologyGroup> {
    let h = relative_cohomology(pair, module, 2)?;
    let d = relative_cohomology_via_delta(pair, module, 2)?;
    if h.invariants() != d.invariants() {
        return Err(Error::VerificationFailed(format!(
            "relative H2 routes disagree: {:?} vs {:?}",
            h.invariants(),
            d.invariants()
        )));
    }
    Ok(h)
}

/// Invariant factors of `⊕_i H^n(S_i; A)`, each `S_i` treated as a group in its own right.
pub fn member_cohomology_product(pair: &GroupPair, module: &GModule, n: usize) -> Result<Vec<i64>> {
    check_same_group(pair, module)?;
    let mut all = Vec::new();
    for sub in pair.family() {
        let sg = Arc::new(sub.as_group(pair.group()));
        let res = module.restrict(sg, sub.elements())?;
        all.extend_from_slice(absolute_cohomology(&res, n)?.invariants());
    }
    Ok(abelian_invariants(&all))
}

/// Invariant factors (each dividing the next) of `⊕ ℤ/m_j`.
pub fn abelian_invariants(factors: &[i64]) -> Vec<i64> {
    let f: Vec<i64> = factors.iter().copied().filter(|&m| m > 1).collect();
    Subquotient::new(&f, &[], &[], &[]).expect("diagonal group").invariants().to_vec()
}
