//! σ-modules: finite-dimensional representations of ℤ, given by the matrix
//! of the generator.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::expring::{solve_dsigma, ExpRingElem};
use crate::linalg::{jordan_form, JordanData, Matrix};
use crate::ring::{Field, Ring};
use crate::scalar::{gamma_inverse, Cyclotomic};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaModule {
    monodromy: Matrix<Cyclotomic>,
}

impl SigmaModule {
    pub fn new(monodromy: Matrix<Cyclotomic>) -> Result<Self> {
        if !monodromy.is_square() || monodromy.rows() == 0 {
            return Err(Error::NonSquare {
                rows: monodromy.rows(),
                cols: monodromy.cols(),
            });
        }
        if monodromy.det().is_zero() {
            return Err(Error::Invalid("monodromy matrix is not invertible".into()));
        }
        Ok(SigmaModule { monodromy })
    }

    /// V_λ: multiplication by λ on K.
    pub fn rank_one(lambda: &Cyclotomic) -> Result<Self> {
        if lambda.is_zero() {
            return Err(Error::ZeroEigenvalue);
        }
        Ok(SigmaModule {
            monodromy: Matrix::new(1, 1, vec![lambda.clone()]),
        })
    }

    pub fn dim(&self) -> usize {
        self.monodromy.rows()
    }

    pub fn monodromy(&self) -> &Matrix<Cyclotomic> {
        &self.monodromy
    }

    pub fn tensor(&self, o: &Self) -> Self {
        SigmaModule {
            monodromy: self.monodromy.kron(&o.monodromy),
        }
    }

    pub fn dual(&self) -> Self {
        let inv = self.monodromy.inverse().expect("monodromy is invertible");
        SigmaModule {
            monodromy: inv.transpose(),
        }
    }

    pub fn direct_sum(&self, o: &Self) -> Self {
        SigmaModule {
            monodromy: Matrix::block_diag(&[self.monodromy.clone(), o.monodromy.clone()]),
        }
    }

    pub fn jordan(&self, bound: u32) -> Result<JordanData> {
        jordan_form(&self.monodromy, bound)
    }

    /// Basis of `{F : F·S_self = S_other·F}`.
    pub fn hom_basis(&self, o: &Self) -> Vec<Matrix<Cyclotomic>> {
        let (p, q) = (o.dim(), self.dim());
        let op = Matrix::<Cyclotomic>::identity(q)
            .kron(&o.monodromy)
            .sub(&self.monodromy.transpose().kron(&Matrix::identity(p)));
        op.nullspace()
            .into_iter()
            .map(|v| Matrix::from_vec_col_major(p, q, &v))
            .collect()
    }

    pub fn hom_dim(&self, o: &Self) -> usize {
        self.hom_basis(o).len()
    }

    /// `X` with `S_self·X = X·S_other`, when the Jordan block lists agree.
    pub fn conjugation_witness(&self, o: &Self, bound: u32) -> Result<Option<Matrix<Cyclotomic>>> {
        if self.dim() != o.dim() {
            return Ok(None);
        }
        let a = self.jordan(bound)?;
        let b = o.jordan(bound)?;
        if a.blocks != b.blocks {
            return Ok(None);
        }
        let b_inv = b.basis.inverse().expect("Jordan basis is invertible");
        Ok(Some(a.basis.mul(&b_inv)))
    }

    /// Invertible `B` over E whose columns are fixed by `v ↦ S·σ(v)`, that is
    /// `S·σ(B) = B`.
    pub fn trivialize(&self, bound: u32) -> Result<Matrix<ExpRingElem>> {
        let jd = self.jordan(bound)?;
        let mut blocks = Vec::new();
        for (lambda, n) in &jd.blocks {
            let lambda_inv = lambda.inv().expect("monodromy is invertible");
            let a = gamma_inverse(&lambda_inv)?;
            let t_a = ExpRingElem::t_pow(a.value());
            // Fixed vectors of the unipotent block: y_0 = 1 and
            // d_σ(y_j) = -σ(y_{j-1}).
            let mut ys = vec![ExpRingElem::one()];
            for j in 1..*n {
                ys.push(solve_dsigma(&ys[j - 1].sigma().neg()));
            }
            let mut block = Matrix::<ExpRingElem>::zeros(*n, *n);
            let mut scale = Cyclotomic::one();
            for i in 0..*n {
                // rows are rescaled by λ^i to turn λ⁻¹·J into a unipotent block
                for k in i..*n {
                    block.set(i, k, ys[k - i].scale_by(&scale).mul(&t_a));
                }
                scale = scale.mul(lambda);
            }
            blocks.push(block);
        }
        let p = jd.basis.map(|c| ExpRingElem::from(c.clone()));
        Ok(p.mul(&Matrix::block_diag(&blocks)))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SigmaModuleRepr {
    #[serde(default)]
    dim: Option<usize>,
    monodromy: Matrix<Cyclotomic>,
}

impl Serialize for SigmaModule {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SigmaModuleRepr {
            dim: Some(self.dim()),
            monodromy: self.monodromy.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SigmaModule {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = SigmaModuleRepr::deserialize(d)?;
        let (rows, cols) = (r.monodromy.rows(), r.monodromy.cols());
        if rows != cols || rows == 0 {
            return Err(D::Error::custom(format!(
                "expected a nonempty square matrix, got {rows}x{cols}"
            )));
        }
        if r.dim.is_some_and(|d| d != rows) {
            return Err(D::Error::custom(format!(
                "dim {} does not match a {rows}x{rows} matrix",
                r.dim.unwrap_or_default()
            )));
        }
        SigmaModule::new(r.monodromy).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffmod::sigma_exp_matrix;
    use crate::scalar::Rational;

    fn c(n: i64) -> Cyclotomic {
        Cyclotomic::from(n)
    }

    fn check_fixed(v: &SigmaModule) -> Matrix<ExpRingElem> {
        let b = v.trivialize(120).unwrap();
        let s = v.monodromy().map(|x| ExpRingElem::from(x.clone()));
        assert_eq!(s.mul(&sigma_exp_matrix(&b)), b);
        b
    }

    #[test]
    fn constructions() {
        let z3 = Cyclotomic::zeta(3);
        let v = SigmaModule::rank_one(&z3).unwrap();
        let w = SigmaModule::rank_one(&c(-1)).unwrap();
        assert_eq!(v.tensor(&w).monodromy().get(0, 0), &z3.neg());
        assert_eq!(v.dual().monodromy().get(0, 0), &Cyclotomic::zeta_pow(3, 2));
        assert_eq!(v.tensor(&SigmaModule::rank_one(&c(1)).unwrap()), v);
        assert_eq!(
            SigmaModule::rank_one(&Cyclotomic::zero()),
            Err(Error::ZeroEigenvalue)
        );
    }

    #[test]
    fn hom_dims() {
        let one = SigmaModule::rank_one(&c(1)).unwrap();
        let minus = SigmaModule::rank_one(&c(-1)).unwrap();
        assert_eq!(minus.hom_dim(&minus), 1);
        assert_eq!(one.hom_dim(&minus), 0);
        let j =
            SigmaModule::new(Matrix::from_rows(vec![vec![c(1), c(1)], vec![c(0), c(1)]]).unwrap())
                .unwrap();
        assert_eq!(j.hom_dim(&j), 2);
    }

    #[test]
    fn trivialize_examples() {
        let b = check_fixed(&SigmaModule::rank_one(&c(-1)).unwrap());
        assert_eq!(b.get(0, 0), &ExpRingElem::t_pow(&Rational::new(1, 2)));
        let b = check_fixed(&SigmaModule::rank_one(&c(1)).unwrap());
        assert_eq!(b.get(0, 0), &ExpRingElem::one());
        let j =
            SigmaModule::new(Matrix::from_rows(vec![vec![c(1), c(1)], vec![c(0), c(1)]]).unwrap())
                .unwrap();
        let b = check_fixed(&j);
        assert_eq!(b.get(0, 1), &ExpRingElem::ell().neg());
        assert_eq!(b.get(1, 1), &ExpRingElem::one());
        let z = Cyclotomic::zeta(3);
        let k = SigmaModule::new(
            Matrix::from_rows(vec![
                vec![z.clone(), c(1), c(0)],
                vec![c(0), z.clone(), c(1)],
                vec![c(0), c(0), z],
            ])
            .unwrap(),
        )
        .unwrap();
        check_fixed(&k);
        let two = SigmaModule::rank_one(&c(2)).unwrap();
        assert!(matches!(two.trivialize(120), Err(Error::NotRootOfUnity(_))));
    }

    #[test]
    fn conjugation() {
        let s = Matrix::from_rows(vec![vec![c(0), c(-1)], vec![c(1), c(0)]]).unwrap();
        let v = SigmaModule::new(s).unwrap();
        let d = SigmaModule::new(Matrix::diagonal_from(&[
            Cyclotomic::zeta(4),
            Cyclotomic::zeta_pow(4, 3),
        ]))
        .unwrap();
        let x = v.conjugation_witness(&d, 120).unwrap().unwrap();
        assert_eq!(v.monodromy().mul(&x), x.mul(d.monodromy()));
    }
}
