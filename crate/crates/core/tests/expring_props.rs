mod common;

use common::*;
use fuchs_core::expring::{kernel_checks, ExpRingElem, GroupAlgElem};
use fuchs_core::{solve_dsigma, solve_partial_e, ExponentClass, Ring};
use proptest::prelude::*;

fn binom(k: usize) -> ExpRingElem {
    let mut c = vec![GroupAlgElem::zero(); k + 1];
    c[k] = GroupAlgElem::one();
    ExpRingElem::from_binomial_basis(&c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn partial_commutes_with_sigma(x in exp_elem()) {
        prop_assert_eq!(x.sigma().partial(), x.partial().sigma());
    }

    #[test]
    fn partial_is_a_derivation(x in exp_elem(), y in exp_elem()) {
        prop_assert_eq!(x.mul(&y).partial(), x.partial().mul(&y).add(&x.mul(&y.partial())));
    }

    #[test]
    fn sigma_is_a_ring_map(x in exp_elem(), y in exp_elem()) {
        prop_assert_eq!(x.mul(&y).sigma(), x.sigma().mul(&y.sigma()));
    }

    #[test]
    fn twisted_leibniz(x in exp_elem(), y in exp_elem()) {
        let lhs = x.mul(&y).d_sigma();
        prop_assert_eq!(&lhs, &x.d_sigma().mul(&y.sigma()).add(&x.mul(&y.d_sigma())));
        prop_assert_eq!(&lhs, &x.d_sigma().mul(&y).add(&x.sigma().mul(&y.d_sigma())));
    }

    #[test]
    fn dsigma_solver_round_trip(y in exp_elem()) {
        prop_assert_eq!(solve_dsigma(&y).d_sigma(), y);
    }

    #[test]
    fn partial_solver_round_trip(y in exp_elem()) {
        prop_assert_eq!(solve_partial_e(&y).partial(), y);
    }

    #[test]
    fn binomial_basis_round_trip(x in exp_elem()) {
        prop_assert_eq!(ExpRingElem::from_binomial_basis(&x.to_binomial_basis()), x);
    }

    #[test]
    fn dsigma_shifts_binomial_coefficients(x in prop::collection::vec(group_alg(), 1..4)) {
        // Restrict to A-coefficients, where d_σ acts only on ℓ.
        let coeffs: Vec<GroupAlgElem> = x
            .iter()
            .map(|g| GroupAlgElem::from(g.component(&ExponentClass::zero())))
            .collect();
        let e = ExpRingElem::from_binomial_basis(&coeffs);
        let shifted = ExpRingElem::from_binomial_basis(&coeffs[1..]);
        prop_assert_eq!(e.d_sigma(), shifted);
    }
}

#[test]
fn binomials_shift_under_dsigma() {
    for n in 1..8 {
        assert_eq!(binom(n).d_sigma(), binom(n - 1));
    }
}

#[test]
fn kernels_on_slices_up_to_degree_eight() {
    let classes = vec![
        ExponentClass::new(1, 2),
        ExponentClass::new(1, 3),
        ExponentClass::new(3, 4),
    ];
    for check in kernel_checks(&classes, -8..=8, 4) {
        assert!(check.holds, "{check:?}");
    }
}
