mod common;

use common::*;
use fuchs_core::diffmod::{partial_exp_matrix, sigma_exp_matrix, to_laurent_matrix};
use fuchs_core::functors::constant_form;
use fuchs_core::{
    exponents, find_constant_form, mon, rm, Cyclotomic, DiffModule, ExpRingElem, ExponentClass,
    LaurentPoly, Matrix, Rational, Ring, SearchOptions, SigmaModule,
};
use proptest::prelude::*;

const BOUND: u32 = 120;

fn opts() -> SearchOptions {
    SearchOptions::default()
}

fn to_exp(m: &Matrix<Cyclotomic>) -> Matrix<ExpRingElem> {
    m.map(|c| ExpRingElem::from(c.clone()))
}

/// `diag(t^{k_i})·P` for a constant invertible `P`.
fn shearing(n: usize) -> impl Strategy<Value = Matrix<LaurentPoly>> {
    (
        prop::collection::vec(-2i64..=2, n),
        invertible_rational_matrix(n),
    )
        .prop_map(move |(ks, p)| {
            let d = Matrix::diagonal_from(
                &ks.iter()
                    .map(|k| LaurentPoly::t_pow(*k))
                    .collect::<Vec<_>>(),
            );
            d.mul(&to_laurent_matrix(&p))
        })
}

fn module_and_shearing(max_dim: usize) -> impl Strategy<Value = (DiffModule, Matrix<LaurentPoly>)> {
    constant_module(max_dim).prop_flat_map(|m| {
        let n = m.dim();
        (Just(m), shearing(n))
    })
}

/// Every class `j/q` where `q` is the common denominator of the exponents.
fn all_classes_for(m: &DiffModule) -> Vec<ExponentClass> {
    let q = exponents(m, &opts())
        .unwrap()
        .entries()
        .iter()
        .map(|r| i64::try_from(r.value().denom().clone()).unwrap())
        .fold(1i64, num_integer::lcm);
    (0..q).map(|p| ExponentClass::new(p, q)).collect()
}

fn assert_conjugate(a: &SigmaModule, b: &SigmaModule) -> Result<(), TestCaseError> {
    let x = a.conjugation_witness(b, BOUND).unwrap();
    prop_assert!(x.is_some(), "{:?} not conjugate to {:?}", a, b);
    let x = x.unwrap();
    prop_assert!(x.inverse().is_some());
    prop_assert_eq!(a.monodromy().mul(&x), x.mul(b.monodromy()));
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn base_change_cocycle(m in constant_module(3), h in shearing(3), h2 in shearing(3)) {
        prop_assume!(m.dim() == 3);
        let once = m.base_change(&h).unwrap().base_change(&h2).unwrap();
        prop_assert_eq!(once, m.base_change(&h.mul(&h2)).unwrap());
    }

    #[test]
    fn fundamental_matrix_solves_and_is_invertible(m in constant_module(4)) {
        let g = m.constant_matrix().unwrap();
        let (u, r) = m.fundamental_matrix_with_monodromy(BOUND).unwrap();
        prop_assert_eq!(partial_exp_matrix(&u), to_exp(&g).mul(&u).neg());
        prop_assert_eq!(sigma_exp_matrix(&u), u.mul(&to_exp(&r)));
        let det = u.det_ring();
        let g0 = det.as_group_alg();
        prop_assert!(g0.is_some());
        let comps: Vec<_> = g0.unwrap().components().map(|(a, f)| (a.clone(), f.clone())).collect();
        prop_assert_eq!(comps.len(), 1);
        prop_assert!(comps[0].1.is_unit());
        let monodromy = mon(&m, &opts()).unwrap();
        assert_conjugate(&SigmaModule::new(r).unwrap(), &monodromy)?;
    }

    #[test]
    fn fully_faithful((m, n) in constant_module_pair(3)) {
        let h = m.horizontal_hom(&n, BOUND).unwrap();
        for f in &h {
            let lhs = fuchs_core::diffmod::partial_matrix(f)
                .add(&n.matrix().mul(f))
                .sub(&f.mul(m.matrix()));
            prop_assert!(lhs.is_zero());
        }
        let vm = mon(&m, &opts()).unwrap();
        let vn = mon(&n, &opts()).unwrap();
        prop_assert_eq!(h.len(), vm.hom_dim(&vn));
    }

    #[test]
    fn ext_of_rank_one(a in exponent_class(), b in exponent_class(), ka in -2i64..=2, kb in -2i64..=2) {
        let ma = DiffModule::rank_one(&a.value().add(&Rational::from(ka)));
        let mb = DiffModule::rank_one(&b.value().add(&Rational::from(kb)));
        prop_assert_eq!(ma.ext_dim(&mb, BOUND).unwrap(), usize::from(a == b));
    }

    #[test]
    fn rm_after_mon_is_isomorphic(m in constant_module(4)) {
        let back = rm(&mon(&m, &opts()).unwrap(), BOUND).unwrap();
        let w = m.find_isomorphism(&back, BOUND).unwrap();
        prop_assert!(w.is_some());
        prop_assert_eq!(back.base_change(&w.unwrap()).unwrap(), m);
    }

    #[test]
    fn mon_after_rm_is_conjugate(v in sigma_module(4)) {
        let back = mon(&rm(&v, BOUND).unwrap(), &opts()).unwrap();
        assert_conjugate(&back, &v)?;
    }

    #[test]
    fn trivialization_is_fixed(v in sigma_module(3)) {
        let b = v.trivialize(BOUND).unwrap();
        prop_assert_eq!(to_exp(v.monodromy()).mul(&sigma_exp_matrix(&b)), b.clone());
        prop_assert!(!b.det_ring().is_zero());
    }

    #[test]
    fn mon_is_monoidal((m, n) in constant_module_pair(2)) {
        let t = mon(&m.tensor(&n).unwrap(), &opts()).unwrap();
        let t2 = mon(&m, &opts()).unwrap().tensor(&mon(&n, &opts()).unwrap());
        assert_conjugate(&t, &t2)?;
        let d = mon(&m.dual(), &opts()).unwrap();
        assert_conjugate(&d, &mon(&m, &opts()).unwrap().dual())?;
    }

    #[test]
    fn exponents_of_constructions((m, n) in constant_module_pair(2)) {
        let em = exponents(&m, &opts()).unwrap();
        let en = exponents(&n, &opts()).unwrap();
        prop_assert_eq!(exponents(&m.tensor(&n).unwrap(), &opts()).unwrap(), em.pairwise_sums(&en));
        prop_assert_eq!(exponents(&m.dual(), &opts()).unwrap(), em.negated());
        prop_assert_eq!(exponents(&m.invert_coordinate(), &opts()).unwrap(), em.negated());
    }

    #[test]
    fn exponents_invariant_under_gauges((m, h) in module_and_shearing(3), p in invertible_rational_matrix(3)) {
        let e = exponents(&m, &opts()).unwrap();
        if m.dim() == 3 {
            let c = m.base_change(&to_laurent_matrix(&p)).unwrap();
            prop_assert_eq!(&exponents(&c, &opts()).unwrap(), &e);
        }
        let sheared = m.base_change(&h).unwrap();
        let o = SearchOptions { exponent_candidates: Some(all_classes_for(&m)), ..opts() };
        let form = constant_form(&sheared, &o).unwrap();
        prop_assert!(form.verify(&sheared));
        prop_assert_eq!(exponents(&form.module(), &o).unwrap(), e);
    }

    #[test]
    fn rank_one_sigma_jordan_data(a in exponent_class(), b in exponent_class()) {
        let va = SigmaModule::rank_one(&a.gamma()).unwrap();
        let vb = SigmaModule::rank_one(&b.gamma()).unwrap();
        let bound = a.order() * b.order();
        let t = va.tensor(&vb).jordan(bound.max(BOUND)).unwrap();
        prop_assert_eq!(&t.blocks[0].0, &a.add(&b).gamma());
        let d = va.dual().jordan(BOUND).unwrap();
        prop_assert_eq!(&d.blocks[0].0, &a.neg().gamma());
    }

    #[test]
    fn extensions_stay_regular((m, n) in constant_module_pair(2), star in prop::collection::vec(laurent_with(rational_cyclotomic()), 4)) {
        let star = Matrix::from_fn(m.dim(), n.dim(), |r, c| star[r * 2 + c].clone());
        let e = m.block_extension(&n, &star).unwrap();
        let mut classes = all_classes_for(&m);
        classes.extend(all_classes_for(&n));
        classes.sort();
        classes.dedup();
        // Gauge degrees reach the star degree plus the integer part of an exponent.
        let o = SearchOptions { exponent_candidates: Some(classes), laurent_degree_bound: 6, ..opts() };
        let form = find_constant_form(&e, &o).unwrap();
        prop_assert!(form.verify(&e));
        let mut expected = exponents(&m, &o).unwrap().entries().to_vec();
        expected.extend(exponents(&n, &o).unwrap().entries().iter().cloned());
        prop_assert_eq!(exponents(&form.module(), &o).unwrap(), fuchs_core::ExponentMultiset::new(expected));
    }
}
