#![allow(dead_code)]

use fuchs_core::linalg::jordan_block;
use fuchs_core::{
    Cyclotomic, DiffModule, ExpRingElem, ExponentClass, GroupAlgElem, LaurentPoly, Matrix,
    Rational, SigmaModule,
};
use proptest::prelude::*;

pub const CONDUCTORS: [u32; 8] = [1, 2, 3, 4, 5, 6, 8, 12];

pub fn rational() -> impl Strategy<Value = Rational> + Clone {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| Rational::new(n, d))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |r| *r != Rational::from(0))
}

pub fn cyclotomic() -> impl Strategy<Value = Cyclotomic> {
    prop::sample::select(CONDUCTORS.to_vec()).prop_flat_map(|n| {
        let phi = fuchs_core::scalar::euler_phi(n) as usize;
        prop::collection::vec(rational(), phi).prop_map(move |c| Cyclotomic::new(n, c))
    })
}

pub fn exponent_class() -> impl Strategy<Value = ExponentClass> {
    (1i64..=12).prop_flat_map(|q| (0..q).prop_map(move |p| ExponentClass::new(p, q)))
}

pub fn laurent_with(
    coeff: impl Strategy<Value = Cyclotomic> + Clone,
) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-3i64..=3, coeff), 0..4).prop_map(LaurentPoly::from_terms)
}

pub fn rational_cyclotomic() -> impl Strategy<Value = Cyclotomic> + Clone {
    rational().prop_map(Cyclotomic::from)
}

pub fn laurent() -> impl Strategy<Value = LaurentPoly> {
    laurent_with(prop_oneof![3 => rational_cyclotomic(), 1 => cyclotomic()])
}

pub fn group_alg() -> impl Strategy<Value = GroupAlgElem> {
    prop::collection::vec((exponent_class(), laurent()), 0..3).prop_map(|v| {
        let mut g = GroupAlgElem::default();
        for (a, f) in v {
            g.add_component(a, &f);
        }
        g
    })
}

pub fn exp_elem() -> impl Strategy<Value = ExpRingElem> {
    prop::collection::vec(group_alg(), 0..4).prop_map(ExpRingElem::new)
}

pub fn invertible_rational_matrix(n: usize) -> impl Strategy<Value = Matrix<Cyclotomic>> {
    prop::collection::vec(-3i64..=3, n * n)
        .prop_map(move |v| Matrix::new(n, n, v.into_iter().map(Cyclotomic::from).collect()))
        .prop_filter("invertible", |m| !fuchs_core::Ring::is_zero(&m.det()))
}

/// Block sizes summing to `n`.
pub fn partition(n: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1usize..=n, n).prop_map(move |v| {
        let mut out = Vec::new();
        let mut left = n;
        for s in v {
            if left == 0 {
                break;
            }
            let s = s.min(left);
            out.push(s);
            left -= s;
        }
        out
    })
}

/// `P·diag(J(a_i, n_i))·P⁻¹` with rational `a_i` of denominator `q ≤ 12`.
pub fn constant_matrix(max_dim: usize) -> impl Strategy<Value = Matrix<Cyclotomic>> {
    (1i64..=12).prop_flat_map(move |q| constant_matrix_over(max_dim, q))
}

/// As [`constant_matrix`] with a fixed denominator `q`.
pub fn constant_matrix_over(max_dim: usize, q: i64) -> impl Strategy<Value = Matrix<Cyclotomic>> {
    (1..=max_dim).prop_flat_map(move |n| {
        (
            partition(n),
            prop::collection::vec(-2 * q..=2 * q, n),
            invertible_rational_matrix(n),
        )
            .prop_map(move |(sizes, nums, p)| {
                let blocks: Vec<_> = sizes
                    .iter()
                    .zip(&nums)
                    .map(|(s, a)| jordan_block(&Cyclotomic::from(Rational::new(*a, q)), *s))
                    .collect();
                let j = Matrix::block_diag(&blocks);
                p.mul(&j).mul(&p.inverse().unwrap())
            })
    })
}

pub fn constant_module(max_dim: usize) -> impl Strategy<Value = DiffModule> {
    constant_matrix(max_dim).prop_map(|g| DiffModule::from_constant(&g).unwrap())
}

/// Two constant modules whose exponents share a denominator `q ≤ 12`.
pub fn constant_module_pair(max_dim: usize) -> impl Strategy<Value = (DiffModule, DiffModule)> {
    (1i64..=12).prop_flat_map(move |q| {
        (
            constant_matrix_over(max_dim, q),
            constant_matrix_over(max_dim, q),
        )
            .prop_map(|(a, b)| {
                (
                    DiffModule::from_constant(&a).unwrap(),
                    DiffModule::from_constant(&b).unwrap(),
                )
            })
    })
}

/// `Q·diag(J(λ_i, n_i))·Q⁻¹` with λ_i roots of unity of order dividing `q ≤ 12`.
pub fn sigma_module(max_dim: usize) -> impl Strategy<Value = SigmaModule> {
    (1..=max_dim, 1u32..=12).prop_flat_map(|(n, q)| {
        (
            partition(n),
            prop::collection::vec(0..q as i64, n),
            invertible_rational_matrix(n),
        )
            .prop_map(move |(sizes, ks, p)| {
                let blocks: Vec<_> = sizes
                    .iter()
                    .zip(&ks)
                    .map(|(s, k)| jordan_block(&Cyclotomic::zeta_pow(q, *k), *s))
                    .collect();
                let j = Matrix::block_diag(&blocks);
                SigmaModule::new(p.mul(&j).mul(&p.inverse().unwrap())).unwrap()
            })
    })
}
