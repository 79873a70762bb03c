mod common;

use common::*;
use fuchs_core::laurent::{
    kernel_partial_plus_a, kernel_partial_square, solve_partial_plus_a, windowed_kernel,
};
use fuchs_core::scalar::{euler_phi, gamma, gamma_inverse};
use fuchs_core::{Cyclotomic, ExponentClass, Field, LaurentPoly, Rational, Ring};
use proptest::prelude::*;

proptest! {
    #[test]
    fn gamma_is_a_homomorphism(a in exponent_class(), b in exponent_class()) {
        prop_assert_eq!(gamma(&a.add(&b)), gamma(&a).mul(&gamma(&b)));
    }

    #[test]
    fn gamma_inverse_undoes_gamma(a in exponent_class()) {
        prop_assert_eq!(gamma_inverse(&gamma(&a)).unwrap(), a);
    }

    #[test]
    fn field_axioms(x in cyclotomic(), y in cyclotomic(), z in cyclotomic()) {
        prop_assert_eq!(x.add(&y), y.add(&x));
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
        prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
        prop_assert!(x.sub(&x).is_zero());
        if !x.is_zero() {
            prop_assert_eq!(x.mul(&x.inv().unwrap()), Cyclotomic::one());
        } else {
            prop_assert!(x.try_inv().is_err());
        }
    }

    #[test]
    fn embedding_is_an_injective_ring_map(x in cyclotomic(), y in cyclotomic(), k in 1u32..=4) {
        let m = x.conductor() * y.conductor() * k;
        let (ex, ey) = (x.embed_to(m), y.embed_to(m));
        prop_assert_eq!(ex.coeffs().len(), euler_phi(m) as usize);
        prop_assert_eq!(ex.mul(&ey), x.mul(&y));
        prop_assert_eq!(ex.add(&ey), x.add(&y));
        prop_assert_eq!(ex == ey, x == y);
    }

    #[test]
    fn canonical_preserves_value(x in cyclotomic(), k in 1u32..=3) {
        let c = x.embed_to(x.conductor() * k).canonical();
        prop_assert_eq!(&c, &x);
        prop_assert!(c.conductor() <= x.conductor().max(1) * 2);
    }

    #[test]
    fn leibniz_on_laurent(f in laurent(), g in laurent()) {
        prop_assert_eq!(f.mul(&g).partial(), f.partial().mul(&g).add(&f.mul(&g.partial())));
    }

    #[test]
    fn shifted_partial_round_trip(y in laurent(), a in exponent_class()) {
        let y = if a.is_zero() {
            let mut y = y;
            y.add_term(0, &y.constant_term().neg());
            y
        } else {
            y
        };
        let x = solve_partial_plus_a(&y, &a).unwrap();
        prop_assert_eq!(x.partial_plus(a.value()), y);
    }

    #[test]
    fn partial_kernel_is_constants(lo in -6i64..=0, hi in 0i64..=6) {
        prop_assert_eq!(windowed_kernel(lo..=hi, LaurentPoly::partial), vec![LaurentPoly::one()]);
        prop_assert_eq!(kernel_partial_square(lo..=hi), vec![LaurentPoly::one()]);
    }

    #[test]
    fn shifted_kernel_vanishes(lo in -6i64..=0, hi in 0i64..=6, a in exponent_class()) {
        prop_assume!(!a.is_zero());
        prop_assert!(kernel_partial_plus_a(lo..=hi, a.value()).is_empty());
    }
}

#[test]
fn scalar_examples() {
    assert_eq!(gamma(&ExponentClass::zero()), Cyclotomic::one());
    assert_eq!(
        gamma(&ExponentClass::new(1, 3)).mul(&gamma(&ExponentClass::new(2, 3))),
        Cyclotomic::one()
    );
    assert_eq!(
        gamma_inverse(&Cyclotomic::one()).unwrap(),
        ExponentClass::zero()
    );
    assert_eq!(
        Cyclotomic::from(Rational::new(1, 2)).try_inv().unwrap(),
        Cyclotomic::from(2)
    );
    assert!(Cyclotomic::zero().try_inv().is_err());
}
