use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Rational;
use crate::linalg::Matrix;
use crate::poly::UniPoly;
use crate::ring::{impl_ring_ops, Field, Ring};

/// Conductors beyond this are refused; they only arise from runaway
/// mixing of unrelated roots of unity.
pub const MAX_CONDUCTOR: u32 = 1 << 16;

/// Exact element of ℚ(ζ_N) in the power basis `1, ζ, …, ζ^{φ(N)-1}`
/// reduced modulo the N-th cyclotomic polynomial.
///
/// Rational values are always stored with conductor 1. Elements of
/// different conductors are compared after embedding both into
/// ℚ(ζ_lcm).
#[derive(Clone)]
pub struct Cyclotomic {
    conductor: u32,
    coeffs: Vec<Rational>,
}

pub fn euler_phi(n: u32) -> u32 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

pub fn divisors(n: u32) -> Vec<u32> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn cache() -> &'static RwLock<HashMap<u32, Arc<[i64]>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<[i64]>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Integer coefficients of Φ_n, ascending, monic of degree φ(n).
pub fn cyclotomic_poly(n: u32) -> Arc<[i64]> {
    assert!(n >= 1);
    if let Some(p) = cache().read().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in divisors(n) {
        if d == n {
            continue;
        }
        num = exact_div_monic(&num, &cyclotomic_poly(d));
    }
    let p: Arc<[i64]> = num.into();
    cache().write().unwrap().insert(n, p.clone());
    p
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dd];
    for i in (dd..num.len()).rev() {
        let c = rem[i];
        if c == 0 {
            continue;
        }
        for (j, &dc) in den.iter().enumerate() {
            rem[i - dd + j] -= c * dc;
        }
        quot[i - dd] = c;
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}

fn lcm(a: u32, b: u32) -> u32 {
    let l = (a as u64).lcm(&(b as u64));
    assert!(
        l <= MAX_CONDUCTOR as u64,
        "conductor {l} exceeds supported bound"
    );
    l as u32
}

/// Reduces `Σ raw[e] x^e` modulo `x^n - 1` and then modulo Φ_n.
fn reduce(n: u32, raw: Vec<Rational>) -> Vec<Rational> {
    let phi = euler_phi(n) as usize;
    let n_us = n as usize;
    let mut folded: Vec<Rational> = if raw.len() <= n_us {
        raw
    } else {
        let mut f = vec![Rational::zero(); n_us];
        for (e, c) in raw.into_iter().enumerate() {
            if !c.is_zero() {
                f[e % n_us] = f[e % n_us].add(&c);
            }
        }
        f
    };
    if folded.len() <= phi {
        folded.resize(phi, Rational::zero());
        return folded;
    }
    let cp = cyclotomic_poly(n);
    for i in (phi..folded.len()).rev() {
        if folded[i].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut folded[i]);
        for (j, &pc) in cp.iter().take(phi).enumerate() {
            if pc != 0 {
                let k = i - phi + j;
                folded[k] = folded[k].sub(&c.mul(&Rational::from_int(pc)));
            }
        }
    }
    folded.truncate(phi);
    folded
}

impl Cyclotomic {
    /// Builds `Σ coeffs[e] ζ_N^e`; `coeffs` may have any length.
    pub fn new(conductor: u32, coeffs: Vec<Rational>) -> Self {
        assert!(
            (1..=MAX_CONDUCTOR).contains(&conductor),
            "bad conductor {conductor}"
        );
        Self::normalized(conductor, reduce(conductor, coeffs))
    }

    fn normalized(conductor: u32, coeffs: Vec<Rational>) -> Self {
        if conductor != 1 && coeffs.iter().skip(1).all(Ring::is_zero) {
            let c = coeffs.into_iter().next().unwrap_or_default();
            return Cyclotomic {
                conductor: 1,
                coeffs: vec![c],
            };
        }
        Cyclotomic { conductor, coeffs }
    }

    pub fn rational(r: Rational) -> Self {
        Cyclotomic {
            conductor: 1,
            coeffs: vec![r],
        }
    }

    /// ζ_n^k, the distinguished primitive n-th root of unity raised to `k`.
    pub fn zeta_pow(n: u32, k: i64) -> Self {
        let e = k.rem_euclid(n as i64) as usize;
        let mut raw = vec![Rational::zero(); e + 1];
        raw[e] = Rational::one();
        Self::new(n, raw)
    }

    pub fn zeta(n: u32) -> Self {
        Self::zeta_pow(n, 1)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then(|| &self.coeffs[0])
    }

    /// Coordinates in ℚ(ζ_m); `m` must be a multiple of the conductor.
    pub fn embed(&self, m: u32) -> Vec<Rational> {
        assert!(
            m.is_multiple_of(self.conductor),
            "{m} is not a multiple of {}",
            self.conductor
        );
        if m == self.conductor {
            return self.coeffs.clone();
        }
        let step = (m / self.conductor) as usize;
        let mut raw = vec![Rational::zero(); step * (self.coeffs.len() - 1) + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            raw[i * step] = c.clone();
        }
        reduce(m, raw)
    }

    pub fn embed_to(&self, m: u32) -> Cyclotomic {
        Cyclotomic {
            conductor: m,
            coeffs: self.embed(m),
        }
    }

    /// Lifts both operands into ℚ(ζ_lcm).
    pub fn embed_to_common_conductor(a: &Self, b: &Self) -> (u32, Vec<Rational>, Vec<Rational>) {
        let m = lcm(a.conductor, b.conductor);
        (m, a.embed(m), b.embed(m))
    }

    /// The Galois automorphism ζ ↦ ζ^k of ℚ(ζ_N), `k` coprime to N.
    pub fn galois(&self, k: u32) -> Self {
        if self.is_rational() {
            return self.clone();
        }
        let n = self.conductor as usize;
        let mut raw = vec![Rational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            let e = (i * k as usize) % n;
            raw[e] = raw[e].add(c);
        }
        Self::new(self.conductor, raw)
    }

    /// Same value, written over the smallest conductor that contains it.
    pub fn canonical(&self) -> Self {
        if self.is_rational() {
            return self.clone();
        }
        let n = self.conductor;
        let target = Matrix::from_column(self.coeffs.clone());
        for d in divisors(n) {
            if d == n {
                break;
            }
            if d % 4 == 2 {
                continue;
            }
            let phi_d = euler_phi(d) as usize;
            let cols: Vec<Vec<Rational>> = (0..phi_d)
                .map(|i| Cyclotomic::zeta_pow(d, i as i64).embed(n))
                .collect();
            let emb = Matrix::from_fn(self.coeffs.len(), phi_d, |r, c| cols[c][r].clone());
            if let Some(sol) = emb.solve(&target) {
                return Self::normalized(d, sol.column(0));
            }
        }
        self.clone()
    }

    /// Multiplicative order when `self` is a root of unity.
    pub fn root_of_unity_order(&self) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        // Roots of unity in ℚ(ζ_N) have order dividing lcm(N, 2).
        let bound = lcm(self.conductor, 2);
        let one = Cyclotomic::one();
        divisors(bound)
            .into_iter()
            .find(|&m| Ring::pow(self, m) == one)
    }

    pub fn sort_key(&self) -> SortKey {
        if let Some(r) = self.as_rational() {
            return SortKey::Rational(r.clone());
        }
        if let Ok(a) = super::ExponentClass::gamma_inverse(self) {
            return SortKey::RootOfUnity(a.value().clone());
        }
        let c = self.canonical();
        SortKey::Other(c.conductor, c.coeffs)
    }

    pub fn norm_to_rational(&self) -> Rational {
        if let Some(r) = self.as_rational() {
            return r.clone();
        }
        let n = self.conductor;
        let mut acc = Cyclotomic::one();
        for k in 1..n {
            if k.gcd(&n) == 1 {
                acc = acc.mul(&self.galois(k));
            }
        }
        acc.as_rational().cloned().expect("norm is rational")
    }

    fn as_qpoly(&self) -> UniPoly<Rational> {
        UniPoly::new(self.coeffs.clone())
    }
}

/// Total order used to sort eigenvalues deterministically: rationals by
/// value, then roots of unity by angle, then everything else.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum SortKey {
    Rational(Rational),
    RootOfUnity(Rational),
    Other(u32, Vec<Rational>),
}

impl Ring for Cyclotomic {
    fn zero() -> Self {
        Cyclotomic::rational(Rational::zero())
    }

    fn one() -> Self {
        Cyclotomic::rational(Rational::one())
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Ring::is_zero)
    }

    fn add(&self, o: &Self) -> Self {
        if self.conductor == o.conductor {
            let c = self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(a, b)| a.add(b))
                .collect();
            return Self::normalized(self.conductor, c);
        }
        let (m, a, b) = Self::embed_to_common_conductor(self, o);
        Self::normalized(m, a.iter().zip(&b).map(|(x, y)| x.add(y)).collect())
    }

    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    fn neg(&self) -> Self {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(Ring::neg).collect(),
        }
    }

    fn mul(&self, o: &Self) -> Self {
        if let Some(r) = o.as_rational() {
            return self.scale(r);
        }
        if let Some(r) = self.as_rational() {
            return o.scale(r);
        }
        let (m, a, b) = if self.conductor == o.conductor {
            (self.conductor, self.coeffs.clone(), o.coeffs.clone())
        } else {
            Self::embed_to_common_conductor(self, o)
        };
        let mut raw = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    raw[i + j] = raw[i + j].add(&x.mul(y));
                }
            }
        }
        Self::new(m, raw)
    }

    fn from_rational(r: &Rational) -> Self {
        Cyclotomic::rational(r.clone())
    }

    fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Cyclotomic::zero();
        }
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c.mul(r)).collect(),
        }
    }
}

impl Field for Cyclotomic {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(r) = self.as_rational() {
            return r.inv().map(Cyclotomic::rational);
        }
        let phi_n = UniPoly::new(
            cyclotomic_poly(self.conductor)
                .iter()
                .map(|&c| Rational::from_int(c))
                .collect(),
        );
        // Φ_N is irreducible, so gcd(x, Φ_N) = 1 and s·x ≡ 1 mod Φ_N.
        let (g, s, _) = self.as_qpoly().xgcd(&phi_n);
        debug_assert_eq!(g.degree(), Some(0));
        Some(Self::new(self.conductor, s.coeffs().to_vec()))
    }
}

impl_ring_ops!(Cyclotomic);

impl PartialEq for Cyclotomic {
    fn eq(&self, o: &Self) -> bool {
        if self.conductor == o.conductor {
            return self.coeffs == o.coeffs;
        }
        let (_, a, b) = Self::embed_to_common_conductor(self, o);
        a == b
    }
}

impl Eq for Cyclotomic {}

impl From<Rational> for Cyclotomic {
    fn from(r: Rational) -> Self {
        Cyclotomic::rational(r)
    }
}

impl From<i64> for Cyclotomic {
    fn from(n: i64) -> Self {
        Cyclotomic::rational(Rational::from_int(n))
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{r}");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c.is_one()) {
                (0, _) => write!(f, "{c}")?,
                (1, true) => write!(f, "z{}", self.conductor)?,
                (1, false) => write!(f, "{c}*z{}", self.conductor)?,
                (_, true) => write!(f, "z{}^{i}", self.conductor)?,
                (_, false) => write!(f, "{c}*z{}^{i}", self.conductor)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CyclotomicRepr {
    conductor: u32,
    coeffs: Vec<Rational>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CyclotomicInput {
    Full(CyclotomicRepr),
    Rational(Rational),
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if let Some(r) = self.as_rational() {
            return r.serialize(s);
        }
        CyclotomicRepr {
            conductor: self.conductor,
            coeffs: self.coeffs.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match CyclotomicInput::deserialize(d)? {
            CyclotomicInput::Rational(r) => Ok(Cyclotomic::rational(r)),
            CyclotomicInput::Full(CyclotomicRepr { conductor, coeffs }) => {
                if conductor == 0 || conductor > MAX_CONDUCTOR {
                    return Err(serde::de::Error::custom(format!(
                        "bad conductor {conductor}"
                    )));
                }
                let phi = euler_phi(conductor) as usize;
                if coeffs.len() != phi {
                    return Err(serde::de::Error::custom(format!(
                        "conductor {conductor} needs {phi} coefficients, got {}",
                        coeffs.len()
                    )));
                }
                Ok(Cyclotomic::new(conductor, coeffs))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32, k: i64) -> Cyclotomic {
        Cyclotomic::zeta_pow(n, k)
    }

    #[test]
    fn small_cyclotomic_polys() {
        assert_eq!(&*cyclotomic_poly(1), &[-1, 1]);
        assert_eq!(&*cyclotomic_poly(4), &[1, 0, 1]);
        assert_eq!(&*cyclotomic_poly(6), &[1, -1, 1]);
        assert_eq!(&*cyclotomic_poly(12), &[1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_poly(105).len(), 49);
        assert!(cyclotomic_poly(105).contains(&-2));
    }

    #[test]
    fn zeta4_squared_is_minus_one() {
        let i = z(4, 1);
        assert_eq!(&i * &i, Cyclotomic::from(-1));
        assert!((&i * &i).is_rational());
    }

    #[test]
    fn inverse_of_zeta3() {
        assert_eq!(z(3, 1).inv().unwrap(), z(3, 2));
        let x = Cyclotomic::new(
            5,
            vec![
                Rational::new(1, 2),
                Rational::from_int(3),
                Rational::new(-2, 7),
            ],
        );
        assert_eq!(x.mul(&x.inv().unwrap()), Cyclotomic::one());
        assert!(Cyclotomic::zero().inv().is_none());
    }

    #[test]
    fn add_zero_is_identity() {
        let x = z(7, 3) + Cyclotomic::from(2);
        assert_eq!(&x + &Cyclotomic::zero(), x);
    }

    #[test]
    fn cross_conductor_equality() {
        // ζ_6 = -ζ_3^2 and ζ_12^4 = ζ_3
        assert_eq!(z(6, 1), -z(3, 2));
        assert_eq!(z(12, 4), z(3, 1));
        assert_ne!(z(12, 1), z(3, 1));
    }

    #[test]
    fn canonical_shrinks_conductor() {
        let x = z(3, 1).embed_to(12);
        assert_eq!(x.conductor(), 12);
        let c = x.canonical();
        assert_eq!(c.conductor(), 3);
        assert_eq!(c, z(3, 1));
        assert_eq!(z(5, 2).canonical().conductor(), 5);
    }

    #[test]
    fn orders_and_norms() {
        assert_eq!(z(12, 3).root_of_unity_order(), Some(4));
        assert_eq!(Cyclotomic::from(-1).root_of_unity_order(), Some(2));
        assert_eq!(Cyclotomic::from(2).root_of_unity_order(), None);
        assert_eq!((z(4, 1) + Cyclotomic::one()).root_of_unity_order(), None);
        // N(1 + i) = 2
        assert_eq!(
            (z(4, 1) + Cyclotomic::one()).norm_to_rational(),
            Rational::from_int(2)
        );
    }

    #[test]
    fn serde_shape() {
        let x = z(4, 1).scale(&Rational::new(1, 2));
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"conductor":4,"coeffs":["0","1/2"]}"#);
        let back: Cyclotomic = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
        let r: Cyclotomic = serde_json::from_str(r#""3/4""#).unwrap();
        assert_eq!(r, Cyclotomic::from(Rational::new(3, 4)));
        assert_eq!(serde_json::to_string(&r).unwrap(), r#""3/4""#);
        let full: Cyclotomic = serde_json::from_str(r#"{"conductor":1,"coeffs":["-2"]}"#).unwrap();
        assert_eq!(full, Cyclotomic::from(-2));
        assert!(serde_json::from_str::<Cyclotomic>(r#"{"conductor":4,"coeffs":["1"]}"#).is_err());
        assert!(
            serde_json::from_str::<Cyclotomic>(r#"{"conductor":1,"coeffs":["1"],"x":1}"#).is_err()
        );
    }
}
