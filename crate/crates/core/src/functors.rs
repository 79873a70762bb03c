//! The Mon/Rm equivalence between regular singular differential modules and
//! σ-modules, exponents, the bounded constant-form search and Fuchs
//! decomposition.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::diffmod::{
    constant_matrix, exp_ell_nilpotent, exp_nilpotent, inverse_over_a, to_laurent_matrix,
    DiffModule,
};
use crate::error::{Error, Result};
use crate::expring::{ExpRingElem, GroupAlgElem};
use crate::laurent::{kernel_partial_plus_a, kernel_partial_square, LaurentPoly};
use crate::linalg::{
    eigenvalues, jordan_block, jordan_form, rank_mod_prime, Matrix, DEFAULT_CONDUCTOR_BOUND,
};
use crate::ring::{Field, Ring};
use crate::scalar::{gamma_inverse, Cyclotomic, ExponentClass, Rational};
use crate::sigmamod::SigmaModule;

pub const DEFAULT_LAURENT_DEGREE_BOUND: i64 = 4;

/// Bounds for the constant-form search and the eigenvalue finder.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchOptions {
    /// Exponent classes allowed for horizontal sections; `None` derives them
    /// from the `t⁰` coefficient when the matrix has no negative degrees.
    pub exponent_candidates: Option<Vec<ExponentClass>>,
    /// Laurent degrees of solution coefficients range over `[-d, d]`.
    pub laurent_degree_bound: i64,
    /// Maximal power of ℓ; `None` means rank − 1.
    pub ell_degree_bound: Option<usize>,
    pub conductor_bound: u32,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            exponent_candidates: None,
            laurent_degree_bound: DEFAULT_LAURENT_DEGREE_BOUND,
            ell_degree_bound: None,
            conductor_bound: DEFAULT_CONDUCTOR_BOUND,
        }
    }
}

/// Gauge `H` and constant `C` with `M.base_change(H)` having matrix `C`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantForm {
    pub gauge: Matrix<LaurentPoly>,
    pub constant: Matrix<Cyclotomic>,
}

impl ConstantForm {
    pub fn module(&self) -> DiffModule {
        DiffModule::from_constant(&self.constant).expect("square")
    }

    pub fn verify(&self, m: &DiffModule) -> bool {
        m.base_change(&self.gauge)
            .map(|b| b.matrix() == &to_laurent_matrix(&self.constant))
            .unwrap_or(false)
    }
}

/// Sorted multiset of exponent classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentMultiset(Vec<ExponentClass>);

impl ExponentMultiset {
    pub fn new(mut entries: Vec<ExponentClass>) -> Self {
        entries.sort();
        ExponentMultiset(entries)
    }

    pub fn from_rationals<'a>(it: impl IntoIterator<Item = &'a Rational>) -> Self {
        Self::new(it.into_iter().map(ExponentClass::of).collect())
    }

    pub fn entries(&self) -> &[ExponentClass] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn negated(&self) -> Self {
        Self::new(self.0.iter().map(ExponentClass::neg).collect())
    }

    pub fn pairwise_sums(&self, o: &Self) -> Self {
        Self::new(
            self.0
                .iter()
                .flat_map(|a| o.0.iter().map(move |b| a.add(b)))
                .collect(),
        )
    }
}

fn rational_eigen(lambda: &Cyclotomic) -> Result<Rational> {
    lambda
        .as_rational()
        .cloned()
        .ok_or_else(|| Error::NonRationalExponent(lambda.to_string()))
}

fn not_regular(e: Error) -> Error {
    match e {
        Error::NotFoundWithinBounds(s) => Error::NotRegularWithinBounds(s),
        e => e,
    }
}

/// A constant connection matrix for `m`: `m`'s own matrix when constant,
/// otherwise the result of [`find_constant_form`].
pub fn constant_form(m: &DiffModule, opts: &SearchOptions) -> Result<ConstantForm> {
    match m.constant_matrix() {
        Some(c) => Ok(ConstantForm {
            gauge: Matrix::identity(m.dim()),
            constant: c,
        }),
        None => find_constant_form(m, opts),
    }
}

fn regular_constant(m: &DiffModule, opts: &SearchOptions) -> Result<Matrix<Cyclotomic>> {
    constant_form(m, opts)
        .map(|f| f.constant)
        .map_err(not_regular)
}

/// Mon: Jordan blocks `J(a, n)` of a constant form become `J(γ(-a), n)`.
pub fn mon(m: &DiffModule, opts: &SearchOptions) -> Result<SigmaModule> {
    let c = regular_constant(m, opts)?;
    let jd = jordan_form(&c, opts.conductor_bound)?;
    let mut blocks = Vec::new();
    for (a, n) in &jd.blocks {
        let lambda = ExponentClass::of(&rational_eigen(a)?.neg()).gamma();
        blocks.push(jordan_block(&lambda, *n));
    }
    SigmaModule::new(Matrix::block_diag(&blocks))
}

/// A basis of horizontal maps `m → n` for regular modules, computed on
/// constant forms and carried back through the gauges.
pub fn horizontal_morphisms(
    m: &DiffModule,
    n: &DiffModule,
    opts: &SearchOptions,
) -> Result<Vec<Matrix<LaurentPoly>>> {
    let fm = constant_form(m, opts).map_err(not_regular)?;
    let fn_ = constant_form(n, opts).map_err(not_regular)?;
    let hm_inv = inverse_over_a(&fm.gauge)?;
    Ok(fm
        .module()
        .horizontal_hom(&fn_.module(), opts.conductor_bound)?
        .into_iter()
        .map(|f| fn_.gauge.mul(&f).mul(&hm_inv))
        .collect())
}

/// `dim Ext(m, n)` for regular modules, computed on constant forms.
pub fn ext_dimension(m: &DiffModule, n: &DiffModule, opts: &SearchOptions) -> Result<usize> {
    let cm = constant_form(m, opts).map_err(not_regular)?.module();
    let cn = constant_form(n, opts).map_err(not_regular)?.module();
    cm.ext_dim(&cn, opts.conductor_bound)
}

/// Rm: Jordan blocks `J(λ, n)` become `J(a, n)` with `γ(a) = λ⁻¹`, `0 ≤ a < 1`.
pub fn rm(v: &SigmaModule, conductor_bound: u32) -> Result<DiffModule> {
    let jd = v.jordan(conductor_bound)?;
    let mut blocks = Vec::new();
    for (lambda, n) in &jd.blocks {
        let a = gamma_inverse(&lambda.inv().expect("monodromy is invertible"))?;
        blocks.push(jordan_block(&Cyclotomic::from(a.value().clone()), *n));
    }
    DiffModule::from_constant(&Matrix::block_diag(&blocks))
}

pub fn exponents(m: &DiffModule, opts: &SearchOptions) -> Result<ExponentMultiset> {
    let c = regular_constant(m, opts)?;
    let mut out = Vec::new();
    for (lambda, mult) in eigenvalues(&c, opts.conductor_bound)? {
        let a = ExponentClass::of(&rational_eigen(&lambda)?);
        out.extend(std::iter::repeat_n(a, mult));
    }
    Ok(ExponentMultiset::new(out))
}

type SolKey = (usize, usize, ExponentClass, i64);

fn vector_coordinates(v: &[ExpRingElem]) -> BTreeMap<SolKey, Cyclotomic> {
    let mut out = BTreeMap::new();
    for (row, e) in v.iter().enumerate() {
        for (k, g) in e.ell_coeffs().iter().enumerate() {
            for (a, f) in g.components() {
                for (m, c) in f.terms() {
                    out.insert((row, k, a.clone(), m), c.clone());
                }
            }
        }
    }
    out
}

/// Coordinates of `target` in the span of `basis`, if it lies there.
fn express_in(basis: &[Vec<ExpRingElem>], target: &[ExpRingElem]) -> Option<Vec<Cyclotomic>> {
    let coords: Vec<_> = basis.iter().map(|b| vector_coordinates(b)).collect();
    let tc = vector_coordinates(target);
    let keys: Vec<&SolKey> = coords
        .iter()
        .flat_map(BTreeMap::keys)
        .chain(tc.keys())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let get = |m: &BTreeMap<SolKey, Cyclotomic>, k: &SolKey| {
        m.get(k).cloned().unwrap_or_else(Cyclotomic::zero)
    };
    let a = Matrix::from_fn(keys.len(), basis.len(), |r, c| get(&coords[c], keys[r]));
    let b = Matrix::from_fn(keys.len(), 1, |r, _| get(&tc, keys[r]));
    match (rational_matrix(&a), rational_matrix(&b)) {
        (Some(a), Some(b)) => a
            .solve(&b)
            .map(|x| x.column(0).into_iter().map(Cyclotomic::from).collect()),
        _ => a.solve(&b).map(|x| x.column(0)),
    }
}

/// Elimination over ℚ is much cheaper than over a cyclotomic field, and most
/// systems here are rational.
fn rational_matrix(a: &Matrix<Cyclotomic>) -> Option<Matrix<Rational>> {
    a.try_map(|c| {
        c.as_rational()
            .cloned()
            .ok_or(Error::Invalid(String::new()))
    })
    .ok()
}

fn nullspace(a: &Matrix<Cyclotomic>) -> Vec<Vec<Cyclotomic>> {
    match rational_matrix(a) {
        Some(r) if rank_mod_prime(&r) == Some(r.cols()) => Vec::new(),
        Some(r) => r
            .nullspace()
            .into_iter()
            .map(|v| v.into_iter().map(Cyclotomic::from).collect())
            .collect(),
        None => a.nullspace(),
    }
}

fn default_candidates(g: &Matrix<LaurentPoly>, bound: u32) -> Result<Vec<ExponentClass>> {
    let negative = g
        .entries()
        .iter()
        .any(|f| f.min_degree().is_some_and(|d| d < 0));
    if negative {
        return Err(Error::MissingCandidates(
            "the connection matrix has negative powers of t".into(),
        ));
    }
    let g0 = g.map(LaurentPoly::constant_term);
    let mut out = Vec::new();
    for (lambda, _) in eigenvalues(&g0, bound)? {
        out.push(ExponentClass::of(&rational_eigen(&lambda)?));
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Sparse vector over the window, keyed by (basis index, t-degree).
type WindowVec = BTreeMap<(usize, i64), Cyclotomic>;

/// `(∂ + G)(v)` for `v = Σ c·t^{m+s}·e_i`.
fn apply_connection(g: &Matrix<LaurentPoly>, s: &ExponentClass, v: &WindowVec) -> WindowVec {
    let mut out = WindowVec::new();
    let mut add = |key, c: Cyclotomic| {
        let e = out.entry(key).or_insert_with(Cyclotomic::zero);
        *e = e.add(&c);
    };
    for (&(i, m), c) in v {
        let weight = Rational::from_int(m).add(s.value());
        if !weight.is_zero() {
            add((i, m), c.mul(&Cyclotomic::from(weight)));
        }
        for r in 0..g.rows() {
            for (d, gc) in g.get(r, i).terms() {
                add((r, m + d), c.mul(gc));
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn combine(vecs: &[WindowVec], coeffs: &[Cyclotomic]) -> WindowVec {
    let mut out = WindowVec::new();
    for (v, c) in vecs.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (k, x) in v {
            let e = out.entry(*k).or_insert_with(Cyclotomic::zero);
            *e = e.add(&x.mul(c));
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Coefficient vectors `c` with `Σ c_j·vecs_j` vanishing on the coordinates
/// selected by `keep`.
fn relations(vecs: &[WindowVec], keep: impl Fn(&(usize, i64)) -> bool) -> Vec<Vec<Cyclotomic>> {
    let keys: Vec<(usize, i64)> = vecs
        .iter()
        .flat_map(|v| v.keys().copied())
        .filter(|k| keep(k))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let a = Matrix::from_fn(keys.len(), vecs.len(), |r, c| {
        vecs[c]
            .get(&keys[r])
            .cloned()
            .unwrap_or_else(Cyclotomic::zero)
    });
    if keys.is_empty() {
        return (0..vecs.len())
            .map(|j| {
                (0..vecs.len())
                    .map(|i| Cyclotomic::from(i64::from(i == j)))
                    .collect()
            })
            .collect();
    }
    nullspace(&a)
}

/// Horizontal sections `v = Σ c·t^{m+s}·ℓ^k·e_i` of `m ⊗ E` in one class `s`,
/// with `|m| ≤ degree_bound` and `k ≤ ell_bound`.
///
/// With `L = ∂ + G` acting on `t^s·K[t, 1/t]^n`, the section equation splits by
/// powers of ℓ into `L·v_k = -(k+1)·v_{k+1}`, so `v_k = (-L)^k·v_0 / k!` and a
/// section is fixed by `v_0` in the generalized kernel of `L`, taken as a
/// partial map on the degree window. Every linear system then has at most
/// `n·(2d+1)` unknowns instead of `(ell_bound+1)` times that.
fn sections_in_class(
    g: &Matrix<LaurentPoly>,
    s: &ExponentClass,
    degree_bound: i64,
    ell_bound: usize,
) -> Vec<Vec<ExpRingElem>> {
    let n = g.rows();
    let inside = |&(_, m): &(usize, i64)| m.abs() <= degree_bound;
    // powers[k][j] = L^k applied to the j-th basis vector of the current subspace.
    let mut powers: Vec<Vec<WindowVec>> = vec![(0..n)
        .flat_map(|i| (-degree_bound..=degree_bound).map(move |m| (i, m)))
        .map(|key| WindowVec::from([(key, Cyclotomic::one())]))
        .collect()];
    let mut found: Vec<Vec<WindowVec>> = Vec::new();
    for k in 0..=ell_bound {
        let next: Vec<WindowVec> = powers[k]
            .iter()
            .map(|v| apply_connection(g, s, v))
            .collect();
        let kernel = relations(&next, |_| true);
        if kernel.len() == found.len() {
            break;
        }
        found = kernel
            .iter()
            .map(|c| powers.iter().map(|level| combine(level, c)).collect())
            .collect();
        if k == ell_bound {
            break;
        }
        // Keep the subspace whose next power stays inside the window.
        let stay = relations(&next, |key| !inside(key));
        let restrict = |level: &[WindowVec]| -> Vec<WindowVec> {
            stay.iter().map(|c| combine(level, c)).collect()
        };
        powers = powers.iter().map(|level| restrict(level)).collect();
        powers.push(restrict(&next));
    }
    let mut factorial = 1i64;
    let scale: Vec<Cyclotomic> = (0..=ell_bound)
        .map(|k| {
            factorial *= (k as i64).max(1);
            let sign = if k % 2 == 0 { 1 } else { -1 };
            Cyclotomic::from(Rational::new(sign, factorial))
        })
        .collect();
    found
        .into_iter()
        .map(|levels| {
            let mut entries = vec![vec![GroupAlgElem::zero(); levels.len()]; n];
            for (k, v) in levels.iter().enumerate() {
                for (&(i, m), c) in v {
                    let c = c.mul(&scale[k]);
                    entries[i][k].add_component(s.clone(), &LaurentPoly::monomial(c, m));
                }
            }
            entries.into_iter().map(ExpRingElem::new).collect()
        })
        .collect()
}

/// Searches for `n` independent horizontal sections of `M ⊗ E` within the
/// bounds, reads off the monodromy, and rebuilds a gauge `H` over A with
/// `M.base_change(H) = C`, `C` in Jordan form with eigenvalues in `[0, 1)`.
///
/// A constant matrix is returned unchanged with `H = I`.
pub fn find_constant_form(m: &DiffModule, opts: &SearchOptions) -> Result<ConstantForm> {
    let g = m.matrix();
    let n = m.dim();
    if let Some(c) = constant_matrix(g) {
        return Ok(ConstantForm {
            gauge: Matrix::identity(n),
            constant: c,
        });
    }
    let candidates = match &opts.exponent_candidates {
        Some(c) => c.clone(),
        None => default_candidates(g, opts.conductor_bound)?,
    };
    let classes: BTreeSet<ExponentClass> = candidates.iter().map(ExponentClass::neg).collect();
    let ell_bound = opts.ell_degree_bound.unwrap_or(n - 1);
    let mut by_class: Vec<Vec<Vec<ExpRingElem>>> = Vec::new();
    let mut total = 0;
    for s in &classes {
        let sols = sections_in_class(g, s, opts.laurent_degree_bound, ell_bound);
        total += sols.len();
        if !sols.is_empty() {
            by_class.push(sols);
        }
    }
    if total != n {
        let listed: Vec<String> = candidates.iter().map(|a| a.value().to_string()).collect();
        return Err(Error::NotFoundWithinBounds(format!(
            "found {total} of {n} horizontal sections with exponent classes {{{}}}, \
             Laurent degrees within ±{} and ℓ-degree ≤ {ell_bound}",
            listed.join(", "),
            opts.laurent_degree_bound
        )));
    }
    // σ(U) = U·R, block diagonal over the classes.
    let mut columns = Vec::new();
    let mut r_blocks = Vec::new();
    for sols in &by_class {
        let k = sols.len();
        let mut r = Matrix::<Cyclotomic>::zeros(k, k);
        for (j, u) in sols.iter().enumerate() {
            let su: Vec<ExpRingElem> = u.iter().map(ExpRingElem::sigma).collect();
            let coords = express_in(sols, &su)
                .ok_or_else(|| Error::Invalid("σ does not preserve the solution space".into()))?;
            for (i, c) in coords.into_iter().enumerate() {
                r.set(i, j, c);
            }
        }
        columns.extend(sols.iter().cloned());
        r_blocks.push(r);
    }
    let u = Matrix::from_columns(&columns);
    let r = Matrix::block_diag(&r_blocks);
    let jd = jordan_form(&r, opts.conductor_bound)?;
    let uq = u.mul(&jd.basis.map(|c| ExpRingElem::from(c.clone())));

    // Φ₀ = diag(t^{-a}·exp(-ℓN)·P_b) has ∂Φ₀ = -C·Φ₀ and σ(Φ₀) = Φ₀·J_R.
    let mut c_blocks = Vec::new();
    let mut phi_inv_blocks = Vec::new();
    for (lambda, size) in &jd.blocks {
        let a = gamma_inverse(&lambda.inv().expect("monodromy is invertible"))?;
        let nil = jordan_block(&Cyclotomic::zero(), *size);
        let target = exp_nilpotent(&nil, &Rational::from_int(-1)).scale_by(lambda);
        let pb = jordan_form(&target, opts.conductor_bound)?.basis;
        let pb_inv = pb.inverse().expect("Jordan basis is invertible");
        let t_a = ExpRingElem::t_pow(a.value());
        let phi_inv = pb_inv
            .map(|c| ExpRingElem::from(c.clone()))
            .mul(&exp_ell_nilpotent(&nil, &Rational::one()))
            .map(|e| e.mul(&t_a));
        phi_inv_blocks.push(phi_inv);
        c_blocks.push(jordan_block(&Cyclotomic::from(a.value().clone()), *size));
    }
    let w = uq.mul(&Matrix::block_diag(&phi_inv_blocks));
    let gauge = w.try_map(|e| {
        e.as_laurent()
            .ok_or_else(|| Error::Invalid(format!("gauge entry {e} does not lie in K[t, 1/t]")))
    })?;
    let form = ConstantForm {
        gauge,
        constant: Matrix::block_diag(&c_blocks),
    };
    if !form.verify(m) {
        return Err(Error::Invalid(
            "reconstructed constant form failed verification".into(),
        ));
    }
    Ok(form)
}

/// A flag with rank-one quotients: after `gauge` the connection matrix is
/// the upper triangular `triangular`, whose diagonal lists the factors N(a).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FuchsDecomposition {
    pub gauge: Matrix<LaurentPoly>,
    pub triangular: Matrix<Cyclotomic>,
    pub factors: Vec<Rational>,
    pub exponents: ExponentMultiset,
}

pub fn fuchs_decomposition(m: &DiffModule, opts: &SearchOptions) -> Result<FuchsDecomposition> {
    let form = constant_form(m, opts).map_err(not_regular)?;
    let (gauge, triangular) = if form.constant.is_upper_triangular() {
        (form.gauge, form.constant)
    } else {
        let jd = jordan_form(&form.constant, opts.conductor_bound)?;
        let p = to_laurent_matrix(&jd.basis);
        (form.gauge.mul(&p), jd.jordan_matrix())
    };
    let factors = triangular
        .diagonal()
        .iter()
        .map(rational_eigen)
        .collect::<Result<Vec<_>>>()?;
    let exponents = ExponentMultiset::from_rationals(&factors);
    Ok(FuchsDecomposition {
        gauge,
        triangular,
        factors,
        exponents,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonHomReport {
    pub horizontal_dim: usize,
    pub monodromy_dim: usize,
    pub tensor_exponents: ExponentMultiset,
    pub expected_tensor_exponents: ExponentMultiset,
    pub dual_exponents: ExponentMultiset,
    pub expected_dual_exponents: ExponentMultiset,
}

impl MonHomReport {
    pub fn passed(&self) -> bool {
        self.horizontal_dim == self.monodromy_dim
            && self.tensor_exponents == self.expected_tensor_exponents
            && self.dual_exponents == self.expected_dual_exponents
    }
}

/// Compares horizontal morphisms with σ-equivariant maps of the monodromies,
/// and checks exponents of ⊗ and duals.
pub fn mon_hom_compare(
    m: &DiffModule,
    n: &DiffModule,
    opts: &SearchOptions,
) -> Result<MonHomReport> {
    let cm = constant_form(m, opts).map_err(not_regular)?.module();
    let cn = constant_form(n, opts).map_err(not_regular)?.module();
    let horizontal_dim = cm.horizontal_hom(&cn, opts.conductor_bound)?.len();
    let monodromy_dim = mon(&cm, opts)?.hom_dim(&mon(&cn, opts)?);
    let em = exponents(&cm, opts)?;
    let en = exponents(&cn, opts)?;
    Ok(MonHomReport {
        horizontal_dim,
        monodromy_dim,
        tensor_exponents: exponents(&cm.tensor(&cn)?, opts)?,
        expected_tensor_exponents: em.pairwise_sums(&en),
        dual_exponents: exponents(&cm.dual(), opts)?,
        expected_dual_exponents: em.negated(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NoExpNoLogReport {
    pub window: (i64, i64),
    pub partial_square_kernel: Vec<LaurentPoly>,
    pub partial_square_ok: bool,
    /// `(a, dim ker(∂ + a))` for each sampled non-integer `a`.
    pub shifted_kernels: Vec<(Rational, usize)>,
    /// Sampled values skipped because they are integers.
    pub excluded: Vec<Rational>,
}

impl NoExpNoLogReport {
    pub fn passed(&self) -> bool {
        self.partial_square_ok && self.shifted_kernels.iter().all(|(_, d)| *d == 0)
    }
}

/// Checks `ker ∂² = K` and `ker(∂ + a) = 0` on A within a degree window.
pub fn verify_no_exp_no_log(lo: i64, hi: i64, samples: &[Rational]) -> NoExpNoLogReport {
    let kernel = kernel_partial_square(lo..=hi);
    let expected: Vec<LaurentPoly> = if (lo..=hi).contains(&0) {
        vec![LaurentPoly::one()]
    } else {
        vec![]
    };
    let (excluded, kept): (Vec<Rational>, Vec<Rational>) =
        samples.iter().cloned().partition(Rational::is_integer);
    let shifted_kernels = kept
        .into_iter()
        .map(|a| {
            let d = kernel_partial_plus_a(lo..=hi, &a).len();
            (a, d)
        })
        .collect();
    NoExpNoLogReport {
        window: (lo, hi),
        partial_square_ok: kernel == expected,
        partial_square_kernel: kernel,
        shifted_kernels,
        excluded,
    }
}
