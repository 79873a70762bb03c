//! Exact computations with regular singular differential modules over the
//! Laurent polynomial ring `A = K[t, t⁻¹]`, `∂ = t·d/dt`, with `K` realized
//! as the union of the cyclotomic fields ℚ(ζ_N).
//!
//! The main entry points are [`DiffModule`] and [`SigmaModule`], and the
//! functors [`functors::mon`] and [`functors::rm`] between them.

pub mod diffmod;
pub mod error;
pub mod expring;
pub mod functors;
pub mod laurent;
pub mod linalg;
pub mod poly;
pub mod ring;
pub mod scalar;
pub mod sigmamod;

pub use diffmod::{Derivation, DiffModule, HorizontalSpace};
pub use error::{Error, Result};
pub use expring::{solve_dsigma, solve_partial_e, ExpRingElem, GroupAlgElem};
pub use functors::{
    constant_form, exponents, ext_dimension, find_constant_form, fuchs_decomposition,
    horizontal_morphisms, mon, mon_hom_compare, rm, ConstantForm, ExponentMultiset,
    FuchsDecomposition, SearchOptions,
};
pub use laurent::{solve_partial_plus_a, LaurentPoly};
pub use linalg::{jordan_form, JordanData, Matrix, DEFAULT_CONDUCTOR_BOUND};
pub use ring::{Field, Ring};
pub use scalar::{gamma, gamma_inverse, Cyclotomic, ExponentClass, Rational};
pub use sigmamod::SigmaModule;
