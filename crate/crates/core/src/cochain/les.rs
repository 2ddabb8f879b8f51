use num_integer::Integer;

use super::{
    absolute_cohomology, ev_star, inc_star, peripheral_cohomology, relative_h2, AbsoluteCochain,
    CohomologyGroup, PeripheralCochain,
};
use crate::error::Result;
use crate::group::GroupPair;
use crate::module::GModule;
use crate::smith::{kernel_of_columns, Echelon};

/// A homomorphism between two cohomology groups, in their class coordinates:
/// `columns[t]` is the image of the `t`-th generator of the source.
#[derive(Clone, Debug)]
pub struct LesMap {
    pub name: &'static str,
    pub columns: Vec<Vec<i64>>,
}

/// `H¹(G) → ∏H¹(S_i) → H²(G,𝒮) → H²(G) → ∏H²(S_i)` with exactness verdicts.
#[derive(Clone, Debug)]
pub struct LesSegment {
    pub h1_group: CohomologyGroup,
    pub h1_members: CohomologyGroup,
    pub h2_relative: CohomologyGroup,
    pub h2_group: CohomologyGroup,
    pub h2_members: CohomologyGroup,
    pub maps: [LesMap; 4],
    /// Exactness at `∏H¹(S_i)`, `H²(G,𝒮)`, `H²(G)`.
    pub exact: [bool; 3],
    /// Whether consecutive composites vanish, at the same three spots.
    pub composites_zero: [bool; 3],
}

impl LesSegment {
    pub fn groups(&self) -> [&CohomologyGroup; 5] {
        [&self.h1_group, &self.h1_members, &self.h2_relative, &self.h2_group, &self.h2_members]
    }

    pub fn is_exact(&self) -> bool {
        self.exact.iter().all(|&b| b)
    }
}

fn induced(
    name: &'static str,
    src: &CohomologyGroup,
    dst: &CohomologyGroup,
    f: impl Fn(Vec<i64>) -> Result<Vec<i64>>,
) -> Result<LesMap> {
    let k = src.invariants().len();
    let columns = (0..k)
        .map(|t| {
            let mut e = vec![0; k];
            e[t] = 1;
            dst.classify(&f(src.decode(&e))?)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LesMap { name, columns })
}

pub fn les_segment(pair: &GroupPair, module: &GModule) -> Result<LesSegment> {
    let h1_group = absolute_cohomology(module, 1)?;
    let h1_members = peripheral_cohomology(pair, module, 1)?;
    let h2_relative = relative_h2(pair, module)?;
    let h2_group = absolute_cohomology(module, 2)?;
    let h2_members = peripheral_cohomology(pair, module, 2)?;

    let ev1 = induced("ev*", &h1_group, &h1_members, |v| {
        Ok(ev_star(pair, &AbsoluteCochain::from_values(module, 1, v)?).into_values())
    })?;
    let inc = induced("inc*", &h1_members, &h2_relative, Ok)?;
    let delta = induced("delta", &h2_relative, &h2_group, |v| {
        let eta = PeripheralCochain::from_values(pair, module, 1, v)?;
        Ok(inc_star(eta).connecting_cochain(pair, module)?.into_values())
    })?;
    let ev2 = induced("ev*", &h2_group, &h2_members, |v| {
        Ok(ev_star(pair, &AbsoluteCochain::from_values(module, 2, v)?).into_values())
    })?;

    let spots = [
        (&h1_group, &h1_members, &h2_relative, &ev1, &inc),
        (&h1_members, &h2_relative, &h2_group, &inc, &delta),
        (&h2_relative, &h2_group, &h2_members, &delta, &ev2),
    ];
    let mut exact = [false; 3];
    let mut composites_zero = [false; 3];
    for (k, (a, b, c, f, g)) in spots.into_iter().enumerate() {
        let (ex, zero) = exact_at(a, b, c, f, g)?;
        exact[k] = ex;
        composites_zero[k] = zero;
    }
    Ok(LesSegment {
        h1_group,
        h1_members,
        h2_relative,
        h2_group,
        h2_members,
        maps: [ev1, inc, delta, ev2],
        exact,
        composites_zero,
    })
}

/// `(im f = ker g, g∘f = 0)` for `A →f B →g C`.
fn exact_at(
    a: &CohomologyGroup,
    b: &CohomologyGroup,
    c: &CohomologyGroup,
    f: &LesMap,
    g: &LesMap,
) -> Result<(bool, bool)> {
    let e = a
        .invariants()
        .iter()
        .chain(b.invariants())
        .chain(c.invariants())
        .fold(1i64, |e, &m| e.lcm(&m));
    let bm = b.invariants();
    let cm = c.invariants();
    let mut image = Echelon::new(e, bm.len());
    for (j, &m) in bm.iter().enumerate() {
        let mut v = vec![0; bm.len()];
        v[j] = m;
        image.insert(&v);
    }
    for col in &f.columns {
        image.insert(col);
    }
    let g_cols: Vec<Vec<(usize, i64)>> = g
        .columns
        .iter()
        .map(|col| col.iter().enumerate().filter(|(_, &x)| x != 0).map(|(k, &x)| (k, x)).collect())
        .collect();
    let ker = kernel_of_columns(bm, cm, &g_cols, e)?;
    let zero = f.columns.iter().all(|col| {
        cm.iter().enumerate().all(|(k, &m)| {
            let s: i64 = col.iter().zip(&g.columns).map(|(x, gc)| x * gc[k]).sum();
            s.rem_euclid(m) == 0
        })
    });
    Ok((image.same_submodule(&ker), zero))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::module::AbelianGroup;

    fn f2(pair: &GroupPair) -> GModule {
        GModule::trivial(AbelianGroup::new(vec![2]).unwrap(), pair.group_arc().clone())
    }

    #[test]
    fn c2_with_whole_group() {
        let pair = GroupPair::from_generators(FiniteGroup::cyclic(2), &[vec![1]]).unwrap();
        let les = les_segment(&pair, &f2(&pair)).unwrap();
        assert!(les.h2_relative.is_trivial());
        assert!(les.is_exact());
        assert!(les.composites_zero.iter().all(|&z| z));
    }

    #[test]
    fn c2_with_trivial_member() {
        let pair = GroupPair::from_generators(FiniteGroup::cyclic(2), &[vec![]]).unwrap();
        let les = les_segment(&pair, &f2(&pair)).unwrap();
        assert!(les.h1_members.is_trivial());
        assert_eq!(les.h2_relative.invariants(), &[2]);
        assert_eq!(les.h2_group.invariants(), &[2]);
        assert!(les.h2_members.is_trivial());
        // δ is an isomorphism
        assert_eq!(les.maps[2].columns, vec![vec![1]]);
        assert!(les.is_exact());
    }

    #[test]
    fn zero_module() {
        let pair = GroupPair::from_generators(FiniteGroup::symmetric(3), &[vec![1]]).unwrap();
        let m = GModule::trivial(AbelianGroup::zero(), pair.group_arc().clone());
        let les = les_segment(&pair, &m).unwrap();
        assert!(les.groups().iter().all(|h| h.is_trivial()));
        assert!(les.is_exact());
    }
}
