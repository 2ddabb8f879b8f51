use std::sync::Arc;

use relcoh::catalog;
use relcoh::cochain::{decode_tuple, tuple_count};
use relcoh::group::{left_cosets, FiniteGroup, GroupPair, Subgroup, TransversalKind};
use relcoh::transfer::{basis_index, Chain, ChainMapSystem, HomotopyPair};

fn systems_for(pair: &GroupPair, i: usize, degree: usize) -> (ChainMapSystem, ChainMapSystem) {
    let g = pair.group_arc().clone();
    let sub = pair.member(i);
    let cosets = pair.cosets(i);
    let a = ChainMapSystem::new(g.clone(), sub, &cosets.transversal(TransversalKind::Min), degree).unwrap();
    let b = ChainMapSystem::new(g, sub, &cosets.transversal(TransversalKind::Max), degree).unwrap();
    (a, b)
}

#[test]
fn identities_on_catalog_subgroups() {
    for p in catalog::pairs() {
        for i in 0..p.pair.family().len() {
            let (a, b) = systems_for(&p.pair, i, 3);
            a.verify().unwrap_or_else(|e| panic!("{} member {i} min: {e}", p.name));
            b.verify().unwrap_or_else(|e| panic!("{} member {i} max: {e}", p.name));
            let h = HomotopyPair::new(&a, &b, 2).unwrap();
            h.verify(&a, &b).unwrap_or_else(|e| panic!("{} member {i}: {e}", p.name));
            // and in the other direction
            HomotopyPair::new(&b, &a, 2).unwrap().verify(&b, &a).unwrap();
        }
    }
}

#[test]
fn identities_in_s4() {
    let g = Arc::new(FiniteGroup::symmetric(4));
    let c4 = g.find_permutation(&[1, 2, 3, 0]).unwrap();
    let t = g.find_permutation(&[1, 0, 2, 3]).unwrap();
    let r = g.find_permutation(&[1, 2, 0, 3]).unwrap();
    for gens in [vec![c4], vec![t, r]] {
        let sub = Subgroup::generated(&g, &gens).unwrap();
        let cosets = left_cosets(&g, &sub).unwrap();
        let a = ChainMapSystem::new(g.clone(), &sub, &cosets.transversal(TransversalKind::Min), 1).unwrap();
        let b = ChainMapSystem::new(g.clone(), &sub, &cosets.transversal(TransversalKind::Max), 1).unwrap();
        a.verify().unwrap();
        b.verify().unwrap();
        HomotopyPair::new(&a, &b, 1).unwrap().verify(&a, &b).unwrap();
    }
}

#[test]
fn systems_are_deterministic() {
    for p in catalog::pairs() {
        for i in 0..p.pair.family().len() {
            let (a, _) = systems_for(&p.pair, i, 2);
            let (a2, _) = systems_for(&p.pair, i, 2);
            let n = p.pair.group().order();
            for d in 0..=2 {
                for h0 in 0..n {
                    for t in 0..tuple_count(n, d) {
                        let b = Chain::basis(d, basis_index(n, d, h0, &decode_tuple(n, d, t)));
                        assert_eq!(a.apply_j(&b), a2.apply_j(&b));
                        assert_eq!(a.apply_l(&b), a2.apply_l(&b));
                    }
                }
            }
        }
    }
}
