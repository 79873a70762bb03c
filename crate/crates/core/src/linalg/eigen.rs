use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use super::Matrix;
use crate::error::{Error, Result};
use crate::poly::UniPoly;
use crate::ring::Ring;
use crate::scalar::{cyclotomic_poly, euler_phi, Cyclotomic, Rational};

/// Characteristic polynomial `det(x·I - m)` together with the adjugate of
/// `m`, by the Faddeev–LeVerrier recursion. Works over any ring containing ℚ.
pub fn charpoly_and_adjugate<T: Ring>(m: &Matrix<T>) -> (UniPoly<T>, Matrix<T>) {
    assert!(m.is_square(), "charpoly of a non-square matrix");
    let n = m.rows();
    let mut coeffs = vec![T::zero(); n + 1];
    coeffs[n] = T::one();
    let mut mk = Matrix::<T>::zeros(n, n);
    for k in 1..=n {
        mk = m
            .mul(&mk)
            .add(&Matrix::scalar(n, coeffs[n - k + 1].clone()));
        let tr = m.mul(&mk).trace();
        coeffs[n - k] = tr.scale(&Rational::new(-1, k as i64));
    }
    let adj = if n % 2 == 1 { mk } else { mk.neg() };
    (UniPoly::new(coeffs), adj)
}

pub fn charpoly<T: Ring>(m: &Matrix<T>) -> UniPoly<T> {
    charpoly_and_adjugate(m).0
}

impl<T: Ring> Matrix<T> {
    /// Determinant without division, usable over rings such as K[t,t⁻¹].
    pub fn det_ring(&self) -> T {
        let n = self.rows();
        if n == 0 {
            return T::one();
        }
        let c0 = charpoly(self).coeff(0);
        if n.is_multiple_of(2) {
            c0
        } else {
            c0.neg()
        }
    }

    pub fn adjugate(&self) -> Self {
        charpoly_and_adjugate(self).1
    }
}

pub fn jordan_block<T: Ring>(lambda: &T, n: usize) -> Matrix<T> {
    Matrix::from_fn(n, n, |r, c| {
        if r == c {
            lambda.clone()
        } else if c == r + 1 {
            T::one()
        } else {
            T::zero()
        }
    })
}

fn divide_linear(p: &UniPoly<Cyclotomic>, root: &Cyclotomic) -> Option<UniPoly<Cyclotomic>> {
    let c = p.coeffs();
    if c.is_empty() {
        return None;
    }
    let mut q = vec![Cyclotomic::zero(); c.len() - 1];
    let mut acc = Cyclotomic::zero();
    for i in (0..c.len()).rev() {
        acc = c[i].add(&acc.mul(root));
        if i > 0 {
            q[i - 1] = acc.clone();
        }
    }
    acc.is_zero().then(|| UniPoly::new(q))
}

fn norm_to_q(p: &UniPoly<Cyclotomic>) -> UniPoly<Rational> {
    let n = p
        .coeffs()
        .iter()
        .fold(1u32, |acc, c| acc.lcm(&c.conductor()));
    if n == 1 {
        return p.map(|c| c.as_rational().unwrap().clone());
    }
    let mut acc = UniPoly::constant(Cyclotomic::one());
    for k in 1..n {
        if k.gcd(&n) == 1 {
            acc = acc.mul(&p.map(|c| c.embed_to(n).galois(k)));
        }
    }
    acc.map(|c| {
        c.as_rational()
            .expect("norm polynomial is rational")
            .clone()
    })
}

fn positive_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n > 1 << 44 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

fn rational_roots(q: &UniPoly<Rational>) -> Result<Vec<Rational>> {
    let mut roots = Vec::new();
    let mut coeffs: Vec<Rational> = q.coeffs().to_vec();
    while coeffs.len() > 1 && coeffs[0].is_zero() {
        coeffs.remove(0);
        if !roots.contains(&Rational::zero()) {
            roots.push(Rational::zero());
        }
    }
    if coeffs.len() <= 1 {
        return Ok(roots);
    }
    let den = crate::scalar::rational::common_denominator(coeffs.iter());
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| (c.big() * &den).to_integer())
        .collect();
    let too_big =
        || Error::EigenvalueNotFound("characteristic polynomial coefficients too large".into());
    let nums = positive_divisors(&ints[0]).ok_or_else(too_big)?;
    let dens = positive_divisors(ints.last().unwrap()).ok_or_else(too_big)?;
    let qp = UniPoly::new(coeffs);
    for u in &nums {
        for v in &dens {
            if !u.gcd(v).is_one() {
                continue;
            }
            for s in [BigInt::one(), -BigInt::one()] {
                let r = Rational::from_big(&s * u, v.clone());
                if qp.eval(&r).is_zero() && !roots.contains(&r) {
                    roots.push(r);
                }
            }
        }
    }
    Ok(roots)
}

/// Rational eigenvalues of `m` with algebraic multiplicities, ascending.
/// Never fails on eigenvalues outside ℚ; they are simply not listed.
pub fn rational_eigenvalues(m: &Matrix<Cyclotomic>) -> Result<Vec<(Rational, usize)>> {
    if !m.is_square() {
        return Err(Error::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let mut p = charpoly(m);
    let q = norm_to_q(&p).squarefree_part();
    let mut out = Vec::new();
    for r in rational_roots(&q)? {
        let c = Cyclotomic::from(r.clone());
        let mut mult = 0;
        while let Some(next) = divide_linear(&p, &c) {
            p = next;
            mult += 1;
        }
        if mult > 0 {
            out.push((r, mult));
        }
    }
    out.sort();
    Ok(out)
}

/// Eigenvalues of `m` with algebraic multiplicities, sorted by
/// [`Cyclotomic::sort_key`]. Only rational eigenvalues and roots of unity of
/// order at most `conductor_bound` are found; anything else is reported as
/// [`Error::EigenvalueNotFound`].
pub fn eigenvalues(
    m: &Matrix<Cyclotomic>,
    conductor_bound: u32,
) -> Result<Vec<(Cyclotomic, usize)>> {
    if !m.is_square() {
        return Err(Error::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let p = charpoly(m);
    let q = norm_to_q(&p).squarefree_part();
    let mut candidates: Vec<Cyclotomic> = rational_roots(&q)?
        .into_iter()
        .map(Cyclotomic::from)
        .collect();
    let deg = q.degree().unwrap_or(0);
    for d in 3..=conductor_bound {
        if euler_phi(d) as usize > deg {
            continue;
        }
        let phi_d = UniPoly::new(
            cyclotomic_poly(d)
                .iter()
                .map(|&c| Rational::from_int(c))
                .collect(),
        );
        if phi_d.divides(&q) {
            for k in 1..d {
                if k.gcd(&d) == 1 {
                    candidates.push(Cyclotomic::zeta_pow(d, k as i64));
                }
            }
        }
    }
    let mut found = Vec::new();
    let mut rest = p;
    let mut total = 0;
    for c in candidates {
        let mut mult = 0;
        while let Some(next) = divide_linear(&rest, &c) {
            rest = next;
            mult += 1;
        }
        if mult > 0 {
            total += mult;
            found.push((c, mult));
        }
    }
    if total != n {
        return Err(Error::EigenvalueNotFound(format!(
            "{} of {n} eigenvalues are rational or roots of unity of order <= {conductor_bound}; \
             remaining factor {rest}",
            total
        )));
    }
    found.sort_by_key(|(c, _)| c.sort_key());
    Ok(found)
}

/// `matrix · basis = basis · J` with `J` the block diagonal matrix of the
/// listed Jordan blocks.
#[derive(Debug, Clone)]
pub struct JordanData {
    pub blocks: Vec<(Cyclotomic, usize)>,
    pub basis: Matrix<Cyclotomic>,
}

impl JordanData {
    pub fn jordan_matrix(&self) -> Matrix<Cyclotomic> {
        let blocks: Vec<_> = self
            .blocks
            .iter()
            .map(|(l, n)| jordan_block(l, *n))
            .collect();
        Matrix::block_diag(&blocks)
    }

    /// Offsets of each block inside the basis.
    pub fn offsets(&self) -> Vec<usize> {
        self.blocks
            .iter()
            .scan(0, |acc, (_, n)| {
                let o = *acc;
                *acc += n;
                Some(o)
            })
            .collect()
    }
}

fn rank_of_columns(cols: &[Vec<Cyclotomic>]) -> usize {
    if cols.is_empty() {
        return 0;
    }
    Matrix::from_columns(cols).rank()
}

pub fn jordan_form(m: &Matrix<Cyclotomic>, conductor_bound: u32) -> Result<JordanData> {
    let n = m.rows();
    let eig = eigenvalues(m, conductor_bound)?;
    let mut blocks = Vec::new();
    let mut columns: Vec<Vec<Cyclotomic>> = Vec::with_capacity(n);
    for (lambda, mult) in eig {
        let b = m.sub(&Matrix::scalar(n, lambda.clone()));
        let mut kernels: Vec<Vec<Vec<Cyclotomic>>> = vec![Vec::new()];
        let mut power = Matrix::identity(n);
        while kernels.last().unwrap().len() < mult {
            power = power.mul(&b);
            kernels.push(power.nullspace());
            if kernels.len() > n + 1 {
                return Err(Error::Invalid(
                    "generalized eigenspace did not stabilize".into(),
                ));
            }
        }
        let top = kernels.len() - 1;
        let mut tops: Vec<(Vec<Cyclotomic>, usize)> = Vec::new();
        let mut level_vecs: Vec<Vec<Cyclotomic>> = Vec::new();
        for k in (1..=top).rev() {
            let mut span: Vec<Vec<Cyclotomic>> = kernels[k - 1].clone();
            span.extend(level_vecs.iter().cloned());
            let mut r = rank_of_columns(&span);
            for v in &kernels[k] {
                span.push(v.clone());
                let r2 = rank_of_columns(&span);
                if r2 > r {
                    r = r2;
                    tops.push((v.clone(), k));
                    level_vecs.push(v.clone());
                } else {
                    span.pop();
                }
            }
            level_vecs = level_vecs.iter().map(|v| b.mul_vec(v)).collect();
        }
        for (v, size) in tops {
            let mut chain = vec![v];
            for _ in 1..size {
                let next = b.mul_vec(chain.last().unwrap());
                chain.push(next);
            }
            chain.reverse();
            columns.extend(chain);
            blocks.push((lambda.clone(), size));
        }
    }
    Ok(JordanData {
        blocks,
        basis: Matrix::from_columns(&columns),
    })
}
