use relcoh::catalog;
use relcoh::extension::trivial_relative_extension;
use relcoh::lifting::{pullback_relative_extension, solution_witness, solve_lifting, verify_obstruction_criterion};

const CAP: u128 = 1 << 24;

#[test]
fn catalog_biconditional() {
    for inst in catalog::lifting_instances() {
        let prob = &inst.problem;
        let v = verify_obstruction_criterion(prob, CAP).unwrap_or_else(|e| panic!("{}: {e}", inst.name));
        assert_eq!(v.solvable, inst.expect_solvable, "{}", inst.name);
        if prob.kernel_is_abelian() {
            assert_eq!(v.holds, Some(true), "{}", inst.name);
            assert_eq!(v.is_zero_class(), Some(inst.expect_solvable), "{}", inst.name);
            assert_eq!(v.trivial_by_equivalence, Some(inst.expect_solvable), "{}", inst.name);
            assert_eq!(v.witness_checked, inst.expect_solvable);
        } else {
            assert_eq!(v.class, None);
            assert_eq!(v.holds, None);
        }
    }
}

#[test]
fn solutions_validate_and_trivialize_the_pullback() {
    for inst in catalog::lifting_instances() {
        let prob = &inst.problem;
        let Some(sol) = solve_lifting(prob, CAP).unwrap() else { continue };
        sol.validate(prob).unwrap();
        for (g, &x) in sol.phibar.iter().enumerate() {
            assert_eq!(prob.alpha().apply(x), prob.phi().apply(g));
        }
        if prob.kernel_is_abelian() {
            let pb = pullback_relative_extension(prob).unwrap();
            let trivial = trivial_relative_extension(prob.pair(), pb.module()).unwrap();
            solution_witness(prob, &pb, &sol).validate(&pb.relative_extension, &trivial).unwrap();
        }
    }
}

#[test]
fn nonabelian_kernel_has_no_class() {
    let inst = catalog::lifting_instances().into_iter().find(|i| !i.problem.kernel_is_abelian()).unwrap();
    assert!(pullback_relative_extension(&inst.problem).is_err());
    let v = verify_obstruction_criterion(&inst.problem, CAP).unwrap();
    assert!(!v.solvable);
    assert_eq!(v.kernel_invariants, None);
}
