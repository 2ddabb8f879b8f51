//! Small named groups, pairs, modules and lifting problems used by the
//! command line and the test suites.

use std::sync::Arc;

use crate::error::Result;
use crate::group::{FiniteGroup, GroupPair, Subgroup};
use crate::lifting::LiftingProblem;
use crate::module::{AbelianGroup, GModule};

/// `V4 = C2 × C2`; `a` is element 2 and `b` is element 1.
pub fn klein_four() -> FiniteGroup {
    FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2))
}

fn s3_elements(g: &FiniteGroup) -> (usize, usize) {
    (g.find_permutation(&[1, 0, 2]).unwrap(), g.find_permutation(&[1, 2, 0]).unwrap())
}

/// Parity of a permutation, as 0 or 1.
pub fn parity(p: &[usize]) -> usize {
    let mut seen = vec![false; p.len()];
    let mut odd = 0;
    for i in 0..p.len() {
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = p[j];
            len += 1;
        }
        if len > 0 {
            odd += len - 1;
        }
    }
    odd % 2
}

/// A sign character `G → {0,1}` exhibiting a `C2` quotient, when the group has an obvious one.
pub fn sign_character(g: &FiniteGroup) -> Option<Vec<usize>> {
    if let Some(perms) = g.permutations() {
        let chi: Vec<usize> = perms.iter().map(|p| parity(p)).collect();
        return chi.contains(&1).then_some(chi);
    }
    let n = g.order();
    if n.is_multiple_of(2) && n > 1 {
        // cyclic of even order, or C2 × C2 with character on the first factor
        let cyclic = (0..n).all(|k| g.mul(1 % n, k) == (k + 1) % n);
        if cyclic {
            return Some((0..n).map(|k| k % 2).collect());
        }
        if n == 4 && g.is_abelian() && (0..n).all(|x| g.mul(x, x) == 0) {
            return Some((0..n).map(|x| x / 2).collect());
        }
    }
    None
}

#[derive(Clone, Debug)]
pub struct NamedPair {
    pub name: String,
    pub pair: GroupPair,
}

fn pair(name: &str, group: FiniteGroup, family: &[Vec<usize>]) -> NamedPair {
    NamedPair { name: name.into(), pair: GroupPair::from_generators(group, family).expect("catalog pair") }
}

/// The ten catalog pairs.
pub fn pairs() -> Vec<NamedPair> {
    let s3 = FiniteGroup::symmetric(3);
    let (t, r) = s3_elements(&s3);
    vec![
        pair("C1,{C1}", FiniteGroup::trivial(), &[vec![]]),
        pair("C2,{C2}", FiniteGroup::cyclic(2), &[vec![1]]),
        pair("C2,{1}", FiniteGroup::cyclic(2), &[vec![]]),
        pair("C2,{1,C2}", FiniteGroup::cyclic(2), &[vec![], vec![1]]),
        pair("C4,{C2}", FiniteGroup::cyclic(4), &[vec![2]]),
        pair("V4,{<a>}", klein_four(), &[vec![2]]),
        pair("V4,{<a>,<b>}", klein_four(), &[vec![2], vec![1]]),
        pair("S3,{<(12)>}", s3.clone(), &[vec![t]]),
        pair("S3,{<(123)>}", s3.clone(), &[vec![r]]),
        pair("S3,{<(12)>,<(123)>}", s3, &[vec![t], vec![r]]),
    ]
}

pub fn trivial_module(group: &Arc<FiniteGroup>, invariants: Vec<i64>) -> GModule {
    GModule::trivial(AbelianGroup::new(invariants).expect("invariants"), group.clone())
}

/// `ℤ/m` with `g` acting by `(−1)^{χ(g)}`.
pub fn sign_module(group: &Arc<FiniteGroup>, m: i64, chi: &[usize]) -> Result<GModule> {
    let matrices = chi.iter().map(|&c| vec![if c == 1 { m - 1 } else { 1 }]).collect();
    GModule::new(AbelianGroup::new(vec![m])?, group.clone(), matrices)
}

#[derive(Clone, Debug)]
pub struct NamedModule {
    pub name: String,
    pub module: GModule,
}

/// F2, ℤ/3, ℤ/4 when `|G|` is even, and ℤ/3 twisted by a sign character when one exists.
pub fn modules(group: &Arc<FiniteGroup>) -> Vec<NamedModule> {
    let mut out = vec![
        NamedModule { name: "F2".into(), module: trivial_module(group, vec![2]) },
        NamedModule { name: "Z/3".into(), module: trivial_module(group, vec![3]) },
    ];
    if group.order().is_multiple_of(2) {
        out.push(NamedModule { name: "Z/4".into(), module: trivial_module(group, vec![4]) });
    }
    if let Some(chi) = sign_character(group) {
        out.push(NamedModule { name: "Z/3-sign".into(), module: sign_module(group, 3, &chi).expect("sign module") });
    }
    out
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub pair: GroupPair,
    pub module: GModule,
}

/// Every catalog pair with every compatible catalog module.
pub fn instances() -> Vec<Instance> {
    pairs()
        .into_iter()
        .flat_map(|p| {
            modules(p.pair.group_arc())
                .into_iter()
                .map(move |m| Instance { name: format!("({}; {})", p.name, m.name), pair: p.pair.clone(), module: m.module })
        })
        .collect()
}

pub fn find_instance(name: &str) -> Option<Instance> {
    instances().into_iter().find(|i| i.name == name)
}

#[derive(Clone, Debug)]
pub struct LiftingInstance {
    pub name: String,
    pub problem: LiftingProblem,
    pub expect_solvable: bool,
}

#[allow(clippy::too_many_arguments)]
fn lifting(
    name: &str,
    pair: GroupPair,
    h: FiniteGroup,
    q: FiniteGroup,
    alpha: impl Fn(usize) -> usize,
    phi: impl Fn(usize) -> usize,
    sigma: Vec<Vec<usize>>,
    expect_solvable: bool,
) -> LiftingInstance {
    let alpha = h.elements().map(&alpha).collect();
    let phi = pair.group().elements().map(&phi).collect();
    let problem =
        LiftingProblem::new(pair, Arc::new(h), Arc::new(q), alpha, phi, sigma).expect("catalog lifting problem");
    LiftingInstance { name: name.into(), problem, expect_solvable }
}

fn gp(group: FiniteGroup, family: &[Vec<usize>]) -> GroupPair {
    GroupPair::from_generators(group, family).expect("catalog pair")
}

/// Lifting problems with known answers. Products index `(x, y)` as `x·|B| + y`.
pub fn lifting_instances() -> Vec<LiftingInstance> {
    let c = FiniteGroup::cyclic;
    let prod = FiniteGroup::direct_product;
    let s3 = FiniteGroup::symmetric(3);
    let (t, r) = s3_elements(&s3);
    let r2 = s3.mul(r, r);
    let sign3: Vec<usize> = s3.permutations().unwrap().iter().map(|p| parity(p)).collect();
    let s5 = FiniteGroup::symmetric(5);
    let c3 = s5.find_permutation(&[1, 2, 0, 3, 4]).unwrap();
    let c5 = s5.find_permutation(&[1, 2, 3, 4, 0]).unwrap();
    let pow = |g: &FiniteGroup, x: usize, k: usize| (0..k).fold(0, |acc, _| g.mul(acc, x));
    let sigma_c3: Vec<usize> = (0..3).map(|k| pow(&s5, c3, k)).collect();
    let sigma_c5: Vec<usize> = (0..5).map(|k| pow(&s5, c5, k)).collect();
    let id = |x: usize| x;
    let zero = |_: usize| 0;

    vec![
        lifting("split C2xC2 -> C2", gp(c(2), &[vec![]]), prod(&c(2), &c(2)), c(2), |x| x / 2, id, vec![vec![0]], true),
        lifting("C4 -> C2", gp(c(2), &[vec![]]), c(4), c(2), |x| x % 2, id, vec![vec![0]], false),
        lifting("C4 -> C2 over the trivial map", gp(c(2), &[vec![]]), c(4), c(2), |x| x % 2, zero, vec![vec![0]], true),
        {
            let pair = gp(s3.clone(), &[vec![t]]);
            let sigma = vec![pair.member(0).elements().to_vec()];
            lifting("S3 -> S3 identity", pair, s3.clone(), s3.clone(), id, id, sigma, true)
        },
        // C15 would need an element of order 15 in Sym(5)
        lifting(
            "C15 into Sym(5) over {C3,C5}",
            gp(c(15), &[vec![5], vec![3]]),
            s5.clone(),
            FiniteGroup::trivial(),
            zero,
            zero,
            vec![sigma_c3, sigma_c5],
            false,
        ),
        // S3 has no element of order 6
        lifting(
            "C6 into S3 by sign over C3",
            gp(c(6), &[vec![2]]),
            s3.clone(),
            c(2),
            |x| sign3[x],
            |x| x % 2,
            vec![vec![0, r, r2]],
            false,
        ),
        lifting("S3 -> C2 by sign", gp(c(2), &[vec![]]), s3.clone(), c(2), |x| sign3[x], id, vec![vec![0]], true),
        lifting("C2 over Q = 1", gp(c(2), &[vec![1]]), c(2), FiniteGroup::trivial(), zero, zero, vec![vec![0, 1]], true),
        lifting(
            "C2 over Q = 1, two members",
            gp(c(2), &[vec![1], vec![1]]),
            c(2),
            FiniteGroup::trivial(),
            zero,
            zero,
            vec![vec![0, 1], vec![0, 0]],
            false,
        ),
        lifting(
            "C4xC2 -> V4",
            gp(klein_four(), &[vec![1]]),
            prod(&c(4), &c(2)),
            klein_four(),
            |x| (x / 2 % 2) * 2 + x % 2,
            id,
            vec![vec![0, 1]],
            false,
        ),
        lifting(
            "V4xC2 -> V4",
            gp(klein_four(), &[vec![2]]),
            prod(&klein_four(), &c(2)),
            klein_four(),
            |x| x / 2,
            id,
            vec![vec![0, 5]],
            true,
        ),
        lifting(
            "C4xC2 -> C4, twisted section",
            gp(c(4), &[vec![2]]),
            prod(&c(4), &c(2)),
            c(4),
            |x| x / 2,
            id,
            vec![vec![0, 5]],
            false,
        ),
        lifting(
            "C4xC2 -> C4, split section",
            gp(c(4), &[vec![2]]),
            prod(&c(4), &c(2)),
            c(4),
            |x| x / 2,
            id,
            vec![vec![0, 4]],
            true,
        ),
        {
            let pair = gp(s3.clone(), &[vec![r]]);
            let sigma = vec![pair.member(0).elements().iter().map(|&x| x * 3 + [0, 1, 2][pos3(&s3, r, x)]).collect()];
            lifting("S3xC3 -> S3", pair, prod(&s3, &c(3)), s3.clone(), |x| x / 3, id, sigma, false)
        },
        {
            let pair = gp(s3.clone(), &[vec![t]]);
            let sigma = vec![pair.member(0).elements().iter().map(|&x| x * 2 + usize::from(x == t)).collect()];
            lifting("S3xC2 -> S3", pair, prod(&s3, &c(2)), s3.clone(), |x| x / 2, id, sigma, true)
        },
    ]
}

/// `k` with `x = r^k`.
fn pos3(g: &FiniteGroup, r: usize, x: usize) -> usize {
    (0..3).find(|&k| (0..k).fold(0, |acc, _| g.mul(acc, r)) == x).expect("power of r")
}

/// `(G, {G})` for a group.
pub fn whole_group_pair(group: FiniteGroup) -> GroupPair {
    let g = Arc::new(group);
    GroupPair::new(g.clone(), vec![Subgroup::whole(&g)]).expect("whole group")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_sizes() {
        assert_eq!(pairs().len(), 10);
        let inst = instances();
        assert!(inst.len() >= 15);
        assert!(inst.iter().any(|i| i.name == "(S3,{<(12)>,<(123)>}; Z/3-sign)"));
        assert!(!inst.iter().any(|i| i.name.starts_with("(C1") && i.name.contains("Z/4")));
        assert!(lifting_instances().len() >= 10);
    }

    #[test]
    fn sign_characters() {
        assert_eq!(sign_character(&FiniteGroup::cyclic(4)), Some(vec![0, 1, 0, 1]));
        assert_eq!(sign_character(&FiniteGroup::cyclic(3)), None);
        assert_eq!(sign_character(&klein_four()), Some(vec![0, 0, 1, 1]));
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(sign_character(&s3).unwrap().iter().sum::<usize>(), 3);
    }
}
