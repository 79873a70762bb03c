use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Cyclotomic, Rational};
use crate::error::{Error, Result};
use crate::ring::Ring;

/// Element of ℚ/ℤ, stored as its representative in `[0, 1)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ExponentClass(Rational);

impl ExponentClass {
    /// Class of an arbitrary rational.
    pub fn of(r: &Rational) -> Self {
        ExponentClass(r.split_mod_one().1)
    }

    /// Requires `0 <= r < 1`.
    pub fn from_representative(r: Rational) -> Result<Self> {
        if r.is_negative() || r >= Rational::one() {
            return Err(Error::Invalid(format!("{r} is not in [0, 1)")));
        }
        Ok(ExponentClass(r))
    }

    pub fn new(num: i64, den: i64) -> Self {
        Self::of(&Rational::new(num, den))
    }

    pub fn zero() -> Self {
        ExponentClass(Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    /// Sum of representatives split as `(class, carry)` with carry 0 or 1.
    pub fn add_with_carry(&self, other: &Self) -> (Self, i64) {
        let s = self.0.add(&other.0);
        if s >= Rational::one() {
            (ExponentClass(s.sub(&Rational::one())), 1)
        } else {
            (ExponentClass(s), 0)
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_with_carry(other).0
    }

    pub fn neg(&self) -> Self {
        if self.is_zero() {
            self.clone()
        } else {
            ExponentClass(Rational::one().sub(&self.0))
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Denominator of the representative.
    pub fn order(&self) -> u32 {
        self.0
            .denom()
            .to_u32()
            .expect("exponent denominator too large")
    }

    /// The root of unity exp(2πi·a) attached to this class.
    pub fn gamma(&self) -> Cyclotomic {
        let q = self.order();
        let p = self.0.numer().to_i64().expect("numerator fits");
        Cyclotomic::zeta_pow(q, p)
    }

    /// Inverse of [`gamma`](Self::gamma) on roots of unity.
    pub fn gamma_inverse(lambda: &Cyclotomic) -> Result<Self> {
        let not_root = || Error::NotRootOfUnity(lambda.to_string());
        if let Some(r) = lambda.as_rational() {
            return if r.is_one() {
                Ok(Self::zero())
            } else if *r == Rational::from_int(-1) {
                Ok(Self::new(1, 2))
            } else {
                Err(not_root())
            };
        }
        let q = lambda.root_of_unity_order().ok_or_else(not_root)?;
        let qi = q as i64;
        for p in 1..qi {
            if p.gcd(&qi) == 1 && Cyclotomic::zeta_pow(q, p) == *lambda {
                return Ok(ExponentClass(Rational::new(p, qi)));
            }
        }
        unreachable!("element of order {q} is a primitive root")
    }
}

pub fn gamma(a: &ExponentClass) -> Cyclotomic {
    a.gamma()
}

pub fn gamma_inverse(lambda: &Cyclotomic) -> Result<ExponentClass> {
    ExponentClass::gamma_inverse(lambda)
}

/// Splits a rational exponent into integer part and class.
pub fn split_exponent(r: &Rational) -> (BigInt, ExponentClass) {
    let (i, f) = r.split_mod_one();
    (i, ExponentClass(f))
}

impl From<ExponentClass> for Rational {
    fn from(a: ExponentClass) -> Rational {
        a.0
    }
}

impl fmt::Display for ExponentClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for ExponentClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0)
    }
}

impl Serialize for ExponentClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExponentClass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = Rational::deserialize(d)?;
        ExponentClass::from_representative(r).map_err(serde::de::Error::custom)
    }
}
