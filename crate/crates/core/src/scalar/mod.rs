//! Exact scalars: rationals, cyclotomic numbers and exponent classes in ℚ/ℤ.

mod cyclotomic;
mod exponent;
pub(crate) mod rational;

pub use cyclotomic::{cyclotomic_poly, divisors, euler_phi, Cyclotomic, SortKey, MAX_CONDUCTOR};
pub use exponent::{gamma, gamma_inverse, split_exponent, ExponentClass};
pub use rational::Rational;
