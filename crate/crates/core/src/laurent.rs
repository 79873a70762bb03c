//! Laurent polynomials K[t, t⁻¹] with the derivation ∂ = t·d/dt.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::ring::{impl_ring_ops, Field, Ring};
use crate::scalar::{Cyclotomic, ExponentClass, Rational};

/// Finite sum `Σ c_m t^m`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Cyclotomic>,
}

impl LaurentPoly {
    pub fn monomial(c: Cyclotomic, m: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { terms }
    }

    pub fn constant(c: Cyclotomic) -> Self {
        Self::monomial(c, 0)
    }

    /// `t^m`.
    pub fn t_pow(m: i64) -> Self {
        Self::monomial(Cyclotomic::one(), m)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Cyclotomic)>) -> Self {
        let mut p = LaurentPoly::default();
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn add_term(&mut self, m: i64, c: &Cyclotomic) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(e) => {
                *e = e.add(c);
                if e.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Cyclotomic)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn coeff(&self, m: i64) -> Cyclotomic {
        self.terms.get(&m).cloned().unwrap_or_else(Cyclotomic::zero)
    }

    pub fn constant_term(&self) -> Cyclotomic {
        self.coeff(0)
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&m| m == 0)
    }

    pub fn as_constant(&self) -> Option<Cyclotomic> {
        self.is_constant().then(|| self.constant_term())
    }

    /// `Some((c, m))` when `self = c·t^m` with `c ≠ 0`, i.e. a unit of A.
    pub fn as_unit(&self) -> Option<(Cyclotomic, i64)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next().unwrap();
        Some((c.clone(), *m))
    }

    pub fn is_unit(&self) -> bool {
        self.as_unit().is_some()
    }

    pub fn inverse_unit(&self) -> Result<Self> {
        let (c, m) = self
            .as_unit()
            .ok_or_else(|| Error::NotAUnit(self.to_string()))?;
        Ok(Self::monomial(c.inv().expect("nonzero"), -m))
    }

    /// ∂ = t·d/dt.
    pub fn partial(&self) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| **m != 0)
                .map(|(m, c)| (*m, c.scale(&Rational::from_int(*m))))
                .collect(),
        }
    }

    /// `∂ + a` applied to `self`.
    pub fn partial_plus(&self, a: &Rational) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (*m, c.scale(&Rational::from_int(*m).add(a)))),
        )
    }

    /// Substitution t ↦ t⁻¹.
    pub fn invert_variable(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (-m, c.clone())).collect(),
        }
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (m + k, c.clone())).collect(),
        }
    }

    pub fn scale_by(&self, c: &Cyclotomic) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, x)| (*m, x.mul(c))))
    }

    pub fn max_conductor(&self) -> u32 {
        self.terms
            .values()
            .map(Cyclotomic::conductor)
            .max()
            .unwrap_or(1)
    }
}

/// Solves `∂x + a·x = y`.
///
/// For `a ≠ 0` the solution is unique. For `a = 0` it exists iff `y` has
/// no constant term, and the constant term of `x` is taken to be zero.
pub fn solve_partial_plus_a(y: &LaurentPoly, a: &ExponentClass) -> Result<LaurentPoly> {
    let a = a.value();
    if a.is_zero() {
        let c = y.constant_term();
        if !c.is_zero() {
            return Err(Error::Obstruction(c));
        }
    }
    Ok(LaurentPoly {
        terms: y
            .terms
            .iter()
            .map(|(m, c)| {
                let d = Rational::from_int(*m).add(a);
                (*m, c.scale(&d.inv().expect("nonzero mode")))
            })
            .collect(),
    })
}

/// Basis of the kernel of the operator acting on `t^m` by `mode(m)`,
/// restricted to degrees in `window`, computed by exact linear algebra.
pub fn windowed_kernel(
    window: std::ops::RangeInclusive<i64>,
    op: impl Fn(&LaurentPoly) -> LaurentPoly,
) -> Vec<LaurentPoly> {
    let degs: Vec<i64> = window.collect();
    if degs.is_empty() {
        return Vec::new();
    }
    let images: Vec<LaurentPoly> = degs.iter().map(|&m| op(&LaurentPoly::t_pow(m))).collect();
    let lo = images
        .iter()
        .filter_map(LaurentPoly::min_degree)
        .min()
        .unwrap_or(0);
    let hi = images
        .iter()
        .filter_map(LaurentPoly::max_degree)
        .max()
        .unwrap_or(0);
    let rows = (hi - lo + 1).max(1) as usize;
    let m = Matrix::from_fn(rows, degs.len(), |r, c| images[c].coeff(lo + r as i64));
    m.nullspace()
        .into_iter()
        .map(|v| LaurentPoly::from_terms(degs.iter().copied().zip(v)))
        .collect()
}

/// `{f : ∂²f = 0}` inside the degree window.
pub fn kernel_partial_square(window: std::ops::RangeInclusive<i64>) -> Vec<LaurentPoly> {
    windowed_kernel(window, |f| f.partial().partial())
}

/// `{f : ∂f + a·f = 0}` inside the degree window.
pub fn kernel_partial_plus_a(
    window: std::ops::RangeInclusive<i64>,
    a: &Rational,
) -> Vec<LaurentPoly> {
    windowed_kernel(window, |f| f.partial_plus(a))
}

impl Ring for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::default()
    }

    fn one() -> Self {
        LaurentPoly::t_pow(0)
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c);
        }
        out
    }

    fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, &c.neg());
        }
        out
    }

    fn neg(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect(),
        }
    }

    fn mul(&self, o: &Self) -> Self {
        let mut out = LaurentPoly::default();
        for (m, c) in &self.terms {
            for (k, d) in &o.terms {
                out.add_term(m + k, &c.mul(d));
            }
        }
        out
    }

    fn from_rational(r: &Rational) -> Self {
        LaurentPoly::constant(Cyclotomic::rational(r.clone()))
    }

    fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return LaurentPoly::default();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, c.scale(r))).collect(),
        }
    }
}

impl_ring_ops!(LaurentPoly);

impl From<Cyclotomic> for LaurentPoly {
    fn from(c: Cyclotomic) -> Self {
        LaurentPoly::constant(c)
    }
}

impl From<Rational> for LaurentPoly {
    fn from(r: Rational) -> Self {
        LaurentPoly::constant(r.into())
    }
}

impl From<i64> for LaurentPoly {
    fn from(n: i64) -> Self {
        LaurentPoly::constant(n.into())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let coeff = if c.is_rational() {
                c.to_string()
            } else {
                format!("({c})")
            };
            match *m {
                0 => write!(f, "{coeff}")?,
                1 if c.is_one() => write!(f, "t")?,
                _ if c.is_one() => write!(f, "t^{m}")?,
                1 => write!(f, "{coeff}*t")?,
                _ => write!(f, "{coeff}*t^{m}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_map(self.terms.iter().map(|(m, c)| (m.to_string(), c)))
    }
}

/// A degree map, or a bare scalar for a constant.
#[derive(Deserialize)]
#[serde(untagged)]
enum LaurentInput {
    Terms(BTreeMap<String, Cyclotomic>),
    Constant(Cyclotomic),
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = match LaurentInput::deserialize(d)? {
            LaurentInput::Constant(c) => return Ok(LaurentPoly::constant(c)),
            LaurentInput::Terms(t) => t,
        };
        let mut p = LaurentPoly::default();
        for (k, c) in raw {
            let m: i64 = k
                .trim()
                .parse()
                .map_err(|_| D::Error::custom(format!("bad degree {k:?}")))?;
            if p.terms.contains_key(&m) {
                return Err(D::Error::custom(format!("duplicate degree {m}")));
            }
            p.add_term(m, &c);
        }
        Ok(p)
    }
}
