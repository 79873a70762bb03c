//! Finite free differential modules over (K[t, t⁻¹], ∂ = t·d/dt), presented
//! by a connection matrix `G` in a chosen basis: `∇f = ∂f + G·f`.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::expring::ExpRingElem;
use crate::laurent::LaurentPoly;
use crate::linalg::{eigenvalues, jordan_form, rational_eigenvalues, Matrix};
use crate::ring::Ring;
use crate::scalar::{Cyclotomic, Rational};

/// The derivation of the base ring: `∂` itself or `h·∂` for a unit `h`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum Derivation {
    #[default]
    Standard,
    Twist(LaurentPoly),
}

impl Derivation {
    fn describe(&self) -> String {
        match self {
            Derivation::Standard => "t d/dt".to_string(),
            Derivation::Twist(h) => format!("({h}) t d/dt"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffModule {
    matrix: Matrix<LaurentPoly>,
    derivation: Derivation,
}

pub fn to_laurent_matrix(m: &Matrix<Cyclotomic>) -> Matrix<LaurentPoly> {
    m.map(|c| LaurentPoly::constant(c.clone()))
}

pub fn to_exp_matrix(m: &Matrix<LaurentPoly>) -> Matrix<ExpRingElem> {
    m.map(|f| ExpRingElem::from(f.clone()))
}

/// The constant matrix when every entry lies in K.
pub fn constant_matrix(m: &Matrix<LaurentPoly>) -> Option<Matrix<Cyclotomic>> {
    m.entries()
        .iter()
        .all(LaurentPoly::is_constant)
        .then(|| m.map(LaurentPoly::constant_term))
}

pub fn partial_matrix(m: &Matrix<LaurentPoly>) -> Matrix<LaurentPoly> {
    m.map(LaurentPoly::partial)
}

pub fn partial_exp_matrix(m: &Matrix<ExpRingElem>) -> Matrix<ExpRingElem> {
    m.map(ExpRingElem::partial)
}

pub fn sigma_exp_matrix(m: &Matrix<ExpRingElem>) -> Matrix<ExpRingElem> {
    m.map(ExpRingElem::sigma)
}

/// Inverse of a matrix over A; fails unless the determinant is a unit `c·t^m`.
pub fn inverse_over_a(h: &Matrix<LaurentPoly>) -> Result<Matrix<LaurentPoly>> {
    if !h.is_square() {
        return Err(Error::NonSquare {
            rows: h.rows(),
            cols: h.cols(),
        });
    }
    let det = h.det_ring();
    let inv_det = det
        .inverse_unit()
        .map_err(|_| Error::NotInvertibleOverA(format!("determinant {det} is not a unit")))?;
    Ok(h.adjugate().scale_by(&inv_det))
}

/// `exp(s·ℓ·N) = Σ_k (sℓ)^k N^k / k!` for nilpotent `N`.
pub fn exp_ell_nilpotent(n: &Matrix<Cyclotomic>, s: &Rational) -> Matrix<ExpRingElem> {
    let dim = n.rows();
    let mut out = Matrix::<ExpRingElem>::identity(dim);
    let mut power = Matrix::<Cyclotomic>::identity(dim);
    let mut coeff = Rational::one();
    for k in 1..=dim {
        power = power.mul(n);
        if power.is_zero() {
            break;
        }
        coeff = coeff.mul(s).mul(&Rational::new(1, k as i64));
        let ell_k = ExpRingElem::ell_pow(k).scale(&coeff);
        out = out.add(&power.map(|c| ell_k.scale_by(c)));
    }
    out
}

/// `exp(s·N)` for nilpotent `N`.
pub fn exp_nilpotent(n: &Matrix<Cyclotomic>, s: &Rational) -> Matrix<Cyclotomic> {
    let dim = n.rows();
    let mut out = Matrix::identity(dim);
    let mut power = Matrix::identity(dim);
    let mut coeff = Rational::one();
    for k in 1..=dim {
        power = power.mul(n);
        coeff = coeff.mul(s).mul(&Rational::new(1, k as i64));
        out = out.add(&power.scale(&coeff));
    }
    out
}

/// Matrix of `X ↦ n·X + A·X - X·B` on column-major `vec(X)`.
pub fn sylvester_operator(
    n: i64,
    a: &Matrix<Cyclotomic>,
    b: &Matrix<Cyclotomic>,
) -> Matrix<Cyclotomic> {
    let (p, q) = (a.rows(), b.rows());
    let id_p = Matrix::<Cyclotomic>::identity(p);
    let id_q = Matrix::<Cyclotomic>::identity(q);
    Matrix::scalar(p * q, Cyclotomic::from(n))
        .add(&id_q.kron(a))
        .sub(&b.transpose().kron(&id_p))
}

/// Integers `n` with `n = λ - μ` for eigenvalues λ of `b` and μ of `a`.
fn integer_differences(
    a: &Matrix<Cyclotomic>,
    b: &Matrix<Cyclotomic>,
    bound: u32,
) -> Result<Vec<i64>> {
    let ea = eigenvalues(a, bound)?;
    let eb = eigenvalues(b, bound)?;
    let mut out = Vec::new();
    for (l, _) in &eb {
        for (m, _) in &ea {
            if let Some(n) = l.sub(m).as_rational().and_then(Rational::to_i64) {
                out.push(n);
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Solutions in M ⊗ E, one vector per basis element.
#[derive(Debug, Clone, PartialEq)]
pub struct HorizontalSpace {
    pub basis: Vec<Vec<ExpRingElem>>,
}

impl HorizontalSpace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

impl DiffModule {
    pub fn new(matrix: Matrix<LaurentPoly>) -> Result<Self> {
        if !matrix.is_square() || matrix.rows() == 0 {
            return Err(Error::NonSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        Ok(DiffModule {
            matrix,
            derivation: Derivation::Standard,
        })
    }

    pub fn from_constant(g: &Matrix<Cyclotomic>) -> Result<Self> {
        Self::new(to_laurent_matrix(g))
    }

    /// N(a): rank one with connection matrix `[a]`.
    pub fn rank_one(a: &Rational) -> Self {
        DiffModule {
            matrix: Matrix::new(1, 1, vec![LaurentPoly::from(a.clone())]),
            derivation: Derivation::Standard,
        }
    }

    /// The trivial module of rank `n`.
    pub fn unit(n: usize) -> Self {
        DiffModule {
            matrix: Matrix::zeros(n, n),
            derivation: Derivation::Standard,
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix<LaurentPoly> {
        &self.matrix
    }

    pub fn derivation(&self) -> &Derivation {
        &self.derivation
    }

    pub fn constant_matrix(&self) -> Option<Matrix<Cyclotomic>> {
        constant_matrix(&self.matrix)
    }

    fn require_constant(&self) -> Result<Matrix<Cyclotomic>> {
        self.constant_matrix().ok_or_else(|| {
            Error::Invalid("connection matrix is not constant; find a constant form first".into())
        })
    }

    fn same_derivation(&self, o: &Self) -> Result<()> {
        if self.derivation != o.derivation {
            return Err(Error::MixedDerivations(
                self.derivation.describe(),
                o.derivation.describe(),
            ));
        }
        Ok(())
    }

    fn with_matrix(&self, matrix: Matrix<LaurentPoly>) -> Self {
        DiffModule {
            matrix,
            derivation: self.derivation.clone(),
        }
    }

    /// The module in the basis given by the columns of `h` (expressed in the
    /// current basis): `G' = H⁻¹·G·H + H⁻¹·∂(H)`. Applying `H` and then `H'`
    /// is the same as applying `H·H'`.
    pub fn base_change(&self, h: &Matrix<LaurentPoly>) -> Result<Self> {
        if h.rows() != self.dim() || h.cols() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "gauge is {}x{}, module has rank {}",
                h.rows(),
                h.cols(),
                self.dim()
            )));
        }
        let h_inv = inverse_over_a(h)?;
        let g = h_inv
            .mul(&self.matrix.mul(h))
            .add(&h_inv.mul(&partial_matrix(h)));
        Ok(self.with_matrix(g))
    }

    pub fn direct_sum(&self, o: &Self) -> Result<Self> {
        self.same_derivation(o)?;
        Ok(self.with_matrix(Matrix::block_diag(&[self.matrix.clone(), o.matrix.clone()])))
    }

    /// Matrix `G_M ⊗ I + I ⊗ G_N` on the basis `e_i ⊗ f_j` (row-major in `(i, j)`).
    pub fn tensor(&self, o: &Self) -> Result<Self> {
        self.same_derivation(o)?;
        let im = Matrix::<LaurentPoly>::identity(self.dim());
        let io = Matrix::<LaurentPoly>::identity(o.dim());
        Ok(self.with_matrix(self.matrix.kron(&io).add(&im.kron(&o.matrix))))
    }

    pub fn dual(&self) -> Self {
        self.with_matrix(self.matrix.transpose().neg())
    }

    pub fn hom_module(&self, o: &Self) -> Result<Self> {
        self.dual().tensor(o)
    }

    /// `0 → self → E → other → 0` with `G_E = [[G_self, star], [0, G_other]]`.
    pub fn block_extension(&self, other: &Self, star: &Matrix<LaurentPoly>) -> Result<Self> {
        self.same_derivation(other)?;
        if star.rows() != self.dim() || star.cols() != other.dim() {
            return Err(Error::DimensionMismatch(format!(
                "extension block must be {}x{}, got {}x{}",
                self.dim(),
                other.dim(),
                star.rows(),
                star.cols()
            )));
        }
        let n = self.dim() + other.dim();
        let mut g = Matrix::zeros(n, n);
        g.set_block(0, 0, &self.matrix);
        g.set_block(0, self.dim(), star);
        g.set_block(self.dim(), self.dim(), &other.matrix);
        Ok(self.with_matrix(g))
    }

    /// Gauge `[[I, X], [0, I]]` carrying the block extension to the direct
    /// sum, when it splits. Both diagonal blocks must be constant.
    pub fn split_extension(
        first: &Self,
        second: &Self,
        star: &Matrix<LaurentPoly>,
    ) -> Result<Option<Matrix<LaurentPoly>>> {
        let g1 = first.require_constant()?;
        let g3 = second.require_constant()?;
        let (p, q) = (g1.rows(), g3.rows());
        let mut degrees: Vec<i64> = star
            .entries()
            .iter()
            .flat_map(|f| f.terms().map(|(m, _)| m))
            .collect();
        degrees.sort();
        degrees.dedup();
        // ∂X + G1·X - X·G3 = -star, mode by mode.
        let mut x = Matrix::<LaurentPoly>::zeros(p, q);
        for n in degrees {
            let op = sylvester_operator(n, &g1, &g3);
            let rhs: Vec<Cyclotomic> = star.map(|f| f.coeff(n).neg()).vec_col_major();
            let Some(sol) = op.solve(&Matrix::from_column(rhs)) else {
                return Ok(None);
            };
            let xn = Matrix::from_vec_col_major(p, q, &sol.column(0));
            x = x.add(&xn.map(|c| LaurentPoly::monomial(c.clone(), n)));
        }
        let mut h = Matrix::<LaurentPoly>::identity(p + q);
        h.set_block(0, p, &x);
        Ok(Some(h))
    }

    /// Substitutes `t ↦ t⁻¹`; since `t⁻¹·d/dt⁻¹ = -t·d/dt`, the matrix becomes `-G(t⁻¹)`.
    pub fn invert_coordinate(&self) -> Self {
        let derivation = match &self.derivation {
            Derivation::Standard => Derivation::Standard,
            Derivation::Twist(h) => Derivation::Twist(h.invert_variable()),
        };
        DiffModule {
            matrix: self.matrix.map(|f| f.invert_variable().neg()),
            derivation,
        }
    }

    /// The same module over `(A, h·∂)` with connection `h·∇`.
    pub fn twist_derivation(&self, h: &LaurentPoly) -> Result<Self> {
        if !h.is_unit() {
            return Err(Error::NotAUnit(h.to_string()));
        }
        let total = match &self.derivation {
            Derivation::Standard => h.clone(),
            Derivation::Twist(h0) => h0.mul(h),
        };
        let derivation = if total.is_one() {
            Derivation::Standard
        } else {
            Derivation::Twist(total)
        };
        Ok(DiffModule {
            matrix: self.matrix.clone(),
            derivation,
        })
    }

    /// `U` with `∂U = -G·U`, from the Jordan data `G·P = P·J` of a constant
    /// `G`: `U = P·diag(t^{-a}·exp(-ℓN))·P⁻¹`.
    pub fn fundamental_matrix(&self, bound: u32) -> Result<Matrix<ExpRingElem>> {
        Ok(self.fundamental_matrix_with_monodromy(bound)?.0)
    }

    /// The fundamental matrix `U` together with `R` such that `σ(U) = U·R`.
    pub fn fundamental_matrix_with_monodromy(
        &self,
        bound: u32,
    ) -> Result<(Matrix<ExpRingElem>, Matrix<Cyclotomic>)> {
        let g = self.require_constant()?;
        let jd = jordan_form(&g, bound)?;
        let p_inv = jd.basis.inverse().expect("Jordan basis is invertible");
        let mut phi_blocks = Vec::new();
        let mut r_blocks = Vec::new();
        for (lambda, size) in &jd.blocks {
            let a = lambda
                .as_rational()
                .ok_or_else(|| Error::NonRationalExponent(lambda.to_string()))?;
            let nil = crate::linalg::jordan_block(&Cyclotomic::zero(), *size);
            let t = ExpRingElem::t_pow(&a.neg());
            phi_blocks.push(exp_ell_nilpotent(&nil, &Rational::from_int(-1)).map(|e| e.mul(&t)));
            let gamma = crate::scalar::ExponentClass::of(&a.neg()).gamma();
            r_blocks.push(exp_nilpotent(&nil, &Rational::from_int(-1)).scale_by(&gamma));
        }
        let p_e = jd.basis.map(|c| ExpRingElem::from(c.clone()));
        let p_inv_e = p_inv.map(|c| ExpRingElem::from(c.clone()));
        let u = p_e.mul(&Matrix::block_diag(&phi_blocks)).mul(&p_inv_e);
        let r = jd.basis.mul(&Matrix::block_diag(&r_blocks)).mul(&p_inv);
        Ok((u, r))
    }

    pub fn horizontal_sections(&self, bound: u32) -> Result<HorizontalSpace> {
        let u = self.fundamental_matrix(bound)?;
        Ok(HorizontalSpace {
            basis: (0..u.cols()).map(|c| u.column(c)).collect(),
        })
    }

    /// Basis of the horizontal morphisms `F: self → other` with entries in A,
    /// i.e. `∂F + G_other·F - F·G_self = 0`. Both matrices must be constant.
    pub fn horizontal_hom(&self, other: &Self, bound: u32) -> Result<Vec<Matrix<LaurentPoly>>> {
        self.same_derivation(other)?;
        let gm = self.require_constant()?;
        let gn = other.require_constant()?;
        let (p, q) = (gn.rows(), gm.rows());
        let mut out = Vec::new();
        for n in integer_differences(&gn, &gm, bound)? {
            for v in sylvester_operator(n, &gn, &gm).nullspace() {
                let x = Matrix::from_vec_col_major(p, q, &v);
                out.push(x.map(|c| LaurentPoly::monomial(c.clone(), n)));
            }
        }
        Ok(out)
    }

    /// An invertible horizontal `F: self → other`, so that
    /// `other.base_change(F) == self`, if one is found.
    pub fn find_isomorphism(
        &self,
        other: &Self,
        bound: u32,
    ) -> Result<Option<Matrix<LaurentPoly>>> {
        if self.dim() != other.dim() {
            return Ok(None);
        }
        let basis = self.horizontal_hom(other, bound)?;
        if basis.is_empty() {
            return Ok(None);
        }
        // The determinant of a horizontal map is horizontal, hence either zero
        // or a unit. A combination with nonzero determinant is searched along
        // a fixed pseudo-random sequence of small integer coefficients.
        let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
        for attempt in 0..64 {
            let coeffs: Vec<i64> = (0..basis.len())
                .map(|i| {
                    if attempt == 0 {
                        1
                    } else if attempt == 1 {
                        i as i64 + 1
                    } else {
                        state = state
                            .wrapping_mul(6364136223846793005)
                            .wrapping_add(1442695040888963407);
                        ((state >> 33) % 41) as i64 - 20
                    }
                })
                .collect();
            let f = basis.iter().zip(&coeffs).fold(
                Matrix::zeros(other.dim(), self.dim()),
                |acc: Matrix<LaurentPoly>, (b, c)| acc.add(&b.scale(&Rational::from_int(*c))),
            );
            if f.det_ring().is_unit() {
                return Ok(Some(f));
            }
        }
        Ok(None)
    }

    /// Dimension of the cokernel of ∇ on A^n for constant `G`: one per Jordan
    /// block of `G` at an integer eigenvalue.
    pub fn h1_dimension(&self) -> Result<usize> {
        let g = self.require_constant()?;
        let n = g.rows();
        let mut total = 0;
        for (lambda, _) in rational_eigenvalues(&g)? {
            if lambda.is_integer() {
                total += n - g.sub(&Matrix::scalar(n, Cyclotomic::from(lambda))).rank();
            }
        }
        Ok(total)
    }

    /// Dimension of Ext(self, other) = H¹(Hom(self, other)).
    pub fn ext_dim(&self, other: &Self, bound: u32) -> Result<usize> {
        self.same_derivation(other)?;
        let gm = self.require_constant()?;
        let gn = other.require_constant()?;
        let hom = self.hom_module(other)?.require_constant()?;
        let size = hom.rows();
        // Eigenvalues of the Hom matrix are the differences μ - λ.
        let mut total = 0;
        for n in integer_differences(&gm, &gn, bound)? {
            let lambda = Cyclotomic::from(n);
            total += size - hom.sub(&Matrix::scalar(size, lambda)).rank();
        }
        Ok(total)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum DerivationRepr {
    Twist(LaurentPoly),
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum DerivationField {
    Named(String),
    Twist(DerivationRepr),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DiffModuleRepr {
    /// Optional on input; checked against the matrix when present.
    #[serde(default)]
    dim: Option<usize>,
    matrix: Matrix<LaurentPoly>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    derivation: Option<DerivationField>,
}

impl Serialize for DiffModule {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let derivation = match &self.derivation {
            Derivation::Standard => DerivationField::Named("t d/dt".into()),
            Derivation::Twist(h) => DerivationField::Twist(DerivationRepr::Twist(h.clone())),
        };
        DiffModuleRepr {
            dim: Some(self.dim()),
            matrix: self.matrix.clone(),
            derivation: Some(derivation),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DiffModule {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = DiffModuleRepr::deserialize(d)?;
        let (rows, cols) = (r.matrix.rows(), r.matrix.cols());
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
        let m = DiffModule::new(r.matrix).map_err(D::Error::custom)?;
        match r.derivation {
            None => Ok(m),
            Some(DerivationField::Named(s)) if s.trim() == "t d/dt" => Ok(m),
            Some(DerivationField::Named(s)) => {
                Err(D::Error::custom(format!("unknown derivation {s:?}")))
            }
            Some(DerivationField::Twist(DerivationRepr::Twist(h))) => {
                m.twist_derivation(&h).map_err(D::Error::custom)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn lmat(rows: Vec<Vec<LaurentPoly>>) -> Matrix<LaurentPoly> {
        Matrix::from_rows(rows).unwrap()
    }

    fn t(m: i64) -> LaurentPoly {
        LaurentPoly::t_pow(m)
    }

    fn nilpotent2() -> DiffModule {
        DiffModule::new(lmat(vec![
            vec![0.into(), 1.into()],
            vec![0.into(), 0.into()],
        ]))
        .unwrap()
    }

    #[test]
    fn base_change_examples() {
        let m = DiffModule::rank_one(&Rational::zero());
        let h = lmat(vec![vec![t(1)]]);
        assert_eq!(
            m.base_change(&h).unwrap().matrix().get(0, 0),
            &LaurentPoly::one()
        );
        let g = nilpotent2();
        assert_eq!(g.base_change(&Matrix::identity(2)).unwrap(), g);
        let n1 = DiffModule::rank_one(&q(1, 1));
        assert!(n1
            .base_change(&lmat(vec![vec![t(-1)]]))
            .unwrap()
            .matrix()
            .get(0, 0)
            .is_zero());
        let bad = lmat(vec![vec![LaurentPoly::one().add(&t(1))]]);
        assert!(matches!(
            m.base_change(&bad),
            Err(Error::NotInvertibleOverA(_))
        ));
    }

    #[test]
    fn constructions() {
        let a = DiffModule::rank_one(&q(1, 3));
        let b = DiffModule::rank_one(&q(1, 2));
        assert_eq!(a.tensor(&b).unwrap(), DiffModule::rank_one(&q(5, 6)));
        assert_eq!(a.dual(), DiffModule::rank_one(&q(-1, 3)));
        let g = nilpotent2();
        assert_eq!(g.tensor(&DiffModule::unit(1)).unwrap(), g);
    }

    #[test]
    fn fundamental_matrix_examples() {
        let u = DiffModule::rank_one(&q(1, 2))
            .fundamental_matrix(120)
            .unwrap();
        assert_eq!(u.get(0, 0), &ExpRingElem::t_pow(&q(-1, 2)));
        let u = nilpotent2().fundamental_matrix(120).unwrap();
        assert_eq!(u.get(0, 1), &ExpRingElem::ell().neg());
        assert_eq!(u.get(0, 0), &ExpRingElem::one());
        let (u, r) = nilpotent2().fundamental_matrix_with_monodromy(120).unwrap();
        let r_e = r.map(|c| ExpRingElem::from(c.clone()));
        assert_eq!(sigma_exp_matrix(&u), u.mul(&r_e));
    }

    #[test]
    fn horizontal_hom_examples() {
        let n = |a, b| DiffModule::rank_one(&q(a, b));
        assert_eq!(n(1, 2).horizontal_hom(&n(1, 2), 120).unwrap().len(), 1);
        assert_eq!(n(0, 1).horizontal_hom(&n(1, 2), 120).unwrap().len(), 0);
        let f = n(0, 1).horizontal_hom(&n(1, 1), 120).unwrap();
        assert_eq!(f, vec![lmat(vec![vec![t(-1)]])]);
        let w = n(0, 1).find_isomorphism(&n(1, 1), 120).unwrap().unwrap();
        assert_eq!(n(1, 1).base_change(&w).unwrap(), n(0, 1));
        assert_eq!(
            nilpotent2()
                .horizontal_hom(&nilpotent2(), 120)
                .unwrap()
                .len(),
            2
        );
    }

    #[test]
    fn ext_examples() {
        let n = |a, b| DiffModule::rank_one(&q(a, b));
        assert_eq!(n(1, 3).ext_dim(&n(1, 3), 120).unwrap(), 1);
        assert_eq!(n(0, 1).ext_dim(&n(1, 2), 120).unwrap(), 0);
        assert_eq!(n(0, 1).ext_dim(&n(1, 1), 120).unwrap(), 1);
        assert_eq!(DiffModule::unit(1).h1_dimension().unwrap(), 1);
        let e = n(0, 1)
            .block_extension(&n(0, 1), &lmat(vec![vec![1.into()]]))
            .unwrap();
        assert_eq!(e, nilpotent2());
        let star = lmat(vec![vec![LaurentPoly::one().add(&t(2))]]);
        let e = n(0, 1).block_extension(&n(1, 2), &star).unwrap();
        let h = DiffModule::split_extension(&n(0, 1), &n(1, 2), &star)
            .unwrap()
            .unwrap();
        assert_eq!(
            e.base_change(&h).unwrap(),
            n(0, 1).direct_sum(&n(1, 2)).unwrap()
        );
        assert!(
            DiffModule::split_extension(&n(0, 1), &n(0, 1), &lmat(vec![vec![1.into()]]))
                .unwrap()
                .is_none()
        );
    }

    #[test]
    fn coordinate_and_twist() {
        let m =
            DiffModule::new(lmat(vec![vec![0.into(), t(1)], vec![0.into(), 0.into()]])).unwrap();
        let inv = m.invert_coordinate();
        assert_eq!(inv.matrix().get(0, 1), &t(-1).neg());
        assert_eq!(
            DiffModule::rank_one(&q(1, 3)).invert_coordinate(),
            DiffModule::rank_one(&q(-1, 3))
        );
        let a = DiffModule::rank_one(&q(1, 2));
        assert_eq!(a.twist_derivation(&LaurentPoly::one()).unwrap(), a);
        let tw = a.twist_derivation(&LaurentPoly::from(-1)).unwrap();
        assert!(matches!(tw.tensor(&a), Err(Error::MixedDerivations(..))));
        assert!(matches!(
            a.twist_derivation(&LaurentPoly::one().add(&t(1))),
            Err(Error::NotAUnit(_))
        ));
    }

    #[test]
    fn serde_roundtrip() {
        let m = DiffModule::new(lmat(vec![
            vec![0.into(), t(1)],
            vec![0.into(), LaurentPoly::from(q(1, 2))],
        ]))
        .unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert!(s.contains(r#""derivation":"t d/dt""#));
        assert_eq!(serde_json::from_str::<DiffModule>(&s).unwrap(), m);
        let tw = m.twist_derivation(&t(2)).unwrap();
        let s = serde_json::to_string(&tw).unwrap();
        assert_eq!(serde_json::from_str::<DiffModule>(&s).unwrap(), tw);
        assert!(serde_json::from_str::<DiffModule>(r#"{"dim":2,"matrix":[["0"]]}"#).is_err());
    }
}
