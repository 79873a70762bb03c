//! Seeded property suites over every module of the core crate.

use std::fmt;
use std::panic::{catch_unwind, AssertUnwindSafe};

use fuchs_core::diffmod::{
    partial_exp_matrix, partial_matrix, sigma_exp_matrix, to_laurent_matrix,
};
use fuchs_core::expring::kernel_checks;
use fuchs_core::functors::verify_no_exp_no_log;
use fuchs_core::linalg::{charpoly, jordan_form};
use fuchs_core::{
    exponents, find_constant_form, mon, mon_hom_compare, rm, solve_dsigma, solve_partial_e,
    solve_partial_plus_a, Cyclotomic, DiffModule, Error, ExpRingElem, ExponentClass, Field,
    LaurentPoly, Matrix, Rational, Ring, SearchOptions, SigmaModule,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::gen::{Gen, Sizes};

pub type GammaFn = fn(&ExponentClass) -> Cyclotomic;

const BOUND: u32 = 120;

#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize, clap::ValueEnum,
)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Scalar,
    Laurent,
    Expring,
    Linalg,
    Diffmod,
    Sigmamod,
    Functors,
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = serde_json::to_value(self).expect("unit variant");
        f.write_str(v.as_str().expect("string"))
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub seed: u64,
    pub cases: usize,
    pub sizes: Sizes,
    pub suite: Suite,
    /// The γ under test; swapped for a mutant to check the harness.
    pub gamma: GammaFn,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 0,
            cases: 16,
            sizes: Sizes::default(),
            suite: Suite::All,
            gamma: fuchs_core::gamma,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseFailure {
    pub case: usize,
    pub message: String,
    pub reproducer: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PropertyReport {
    pub id: String,
    pub suite: Suite,
    pub cases: usize,
    pub passed: usize,
    pub failures: Vec<CaseFailure>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyReport {
    pub seed: u64,
    pub suite: Suite,
    pub max_dim: usize,
    pub max_denominator: i64,
    pub max_degree: i64,
    pub passed: bool,
    pub properties: Vec<PropertyReport>,
}

impl VerifyReport {
    pub fn property(&self, id: &str) -> Option<&PropertyReport> {
        self.properties.iter().find(|p| p.id == id)
    }
}

struct CaseError(String);

impl From<Error> for CaseError {
    fn from(e: Error) -> Self {
        CaseError(format!("{}: {e}", e.kind()))
    }
}

impl From<&str> for CaseError {
    fn from(s: &str) -> Self {
        CaseError(s.to_string())
    }
}

type Check = Result<(), CaseError>;

fn ensure(cond: bool, msg: &str) -> Check {
    if cond {
        Ok(())
    } else {
        Err(CaseError(msg.to_string()))
    }
}

/// One generated case: the inputs as JSON and the check to run on them.
struct Case {
    reproducer: Value,
    check: Box<dyn FnOnce() -> Check>,
}

fn case(reproducer: Value, check: impl FnOnce() -> Check + 'static) -> Case {
    Case {
        reproducer,
        check: Box::new(check),
    }
}

struct Property {
    id: &'static str,
    suite: Suite,
    dim_cap: usize,
    fixed_cases: Option<usize>,
    build: fn(&mut Gen, &VerifyConfig) -> Case,
}

fn opts() -> SearchOptions {
    SearchOptions::default()
}

fn to_exp(m: &Matrix<Cyclotomic>) -> Matrix<ExpRingElem> {
    m.map(|c| ExpRingElem::from(c.clone()))
}

fn conjugate(a: &SigmaModule, b: &SigmaModule) -> Check {
    let x = a
        .conjugation_witness(b, BOUND)?
        .ok_or("no conjugating matrix found")?;
    ensure(x.inverse().is_some(), "witness is singular")?;
    ensure(
        a.monodromy().mul(&x) == x.mul(b.monodromy()),
        "witness does not conjugate",
    )
}

fn gamma_homomorphism(g: &mut Gen, cfg: &VerifyConfig) -> Case {
    let (a, b) = (g.exponent_class(), g.exponent_class());
    let gamma = cfg.gamma;
    case(json!({"a": a, "b": b}), move || {
        ensure(
            gamma(&a.add(&b)) == gamma(&a).mul(&gamma(&b)),
            "γ(a+b) ≠ γ(a)γ(b)",
        )
    })
}

fn gamma_kernel(g: &mut Gen, cfg: &VerifyConfig) -> Case {
    let a = g.exponent_class();
    let gamma = cfg.gamma;
    case(json!({"a": a}), move || {
        let v = gamma(&a);
        ensure(
            v.is_one() == a.is_zero(),
            "γ(a) = 1 exactly when a ∈ ℤ fails",
        )?;
        ensure(
            v.root_of_unity_order() == Some(a.order()),
            "order of γ(a) differs from the order of a",
        )
    })
}

fn gamma_inverse(g: &mut Gen, cfg: &VerifyConfig) -> Case {
    let a = g.exponent_class();
    let gamma = cfg.gamma;
    case(json!({"a": a}), move || {
        ensure(fuchs_core::gamma_inverse(&gamma(&a))? == a, "γ⁻¹(γ(a)) ≠ a")
    })
}

fn field_axioms(g: &mut Gen, _: &VerifyConfig) -> Case {
    let (x, y, z) = (g.cyclotomic(), g.cyclotomic(), g.cyclotomic());
    case(json!({"x": x, "y": y, "z": z}), move || {
        ensure(
            x.add(&y).mul(&z) == x.mul(&z).add(&y.mul(&z)),
            "distributivity",
        )?;
        ensure(x.mul(&y).mul(&z) == x.mul(&y.mul(&z)), "associativity")?;
        ensure(x.canonical() == x, "canonical form changes the value")?;
        if !x.is_zero() {
            ensure(x.mul(&x.try_inv()?).is_one(), "x·x⁻¹ ≠ 1")?;
        }
        Ok(())
    })
}

fn leibniz(g: &mut Gen, _: &VerifyConfig) -> Case {
    let (f, h) = (g.laurent(), g.laurent());
    case(json!({"f": f, "g": h}), move || {
        ensure(
            f.mul(&h).partial() == f.partial().mul(&h).add(&f.mul(&h.partial())),
            "∂(fg) ≠ ∂f·g + f·∂g",
        )
    })
}

fn shifted_solve(g: &mut Gen, _: &VerifyConfig) -> Case {
    let (y, a) = (g.laurent(), g.exponent_class());
    case(json!({"y": y, "a": a}), move || {
        let target = if a.is_zero() {
            y.sub(&LaurentPoly::constant(y.constant_term()))
        } else {
            y.clone()
        };
        let x = solve_partial_plus_a(&target, &a)?;
        ensure(x.partial_plus(a.value()) == target, "(∂ + a)x ≠ y")?;
        if a.is_zero() && !y.constant_term().is_zero() {
            ensure(
                matches!(solve_partial_plus_a(&y, &a), Err(Error::Obstruction(_))),
                "nonzero constant term must be an obstruction",
            )?;
        }
        Ok(())
    })
}

fn solve_dsigma_roundtrip(g: &mut Gen, _: &VerifyConfig) -> Case {
    let y = g.exp_elem();
    case(json!({"y": y}), move || {
        ensure(solve_dsigma(&y).d_sigma() == y, "d_σ(x) ≠ y")
    })
}

fn solve_partial_roundtrip(g: &mut Gen, _: &VerifyConfig) -> Case {
    let y = g.exp_elem();
    case(json!({"y": y}), move || {
        ensure(solve_partial_e(&y).partial() == y, "∂(x) ≠ y")
    })
}

fn sigma_commutes(g: &mut Gen, _: &VerifyConfig) -> Case {
    let x = g.exp_elem();
    case(json!({"x": x}), move || {
        ensure(x.sigma().partial() == x.partial().sigma(), "∂σ ≠ σ∂")
    })
}

fn twisted_leibniz(g: &mut Gen, _: &VerifyConfig) -> Case {
    let (f, h) = (g.exp_elem(), g.exp_elem());
    case(json!({"f": f, "g": h}), move || {
        let lhs = f.mul(&h).d_sigma();
        ensure(
            lhs == f.d_sigma().mul(&h.sigma()).add(&f.mul(&h.d_sigma())),
            "d_σ(fg) ≠ d_σf·σg + f·d_σg",
        )?;
        ensure(
            f.mul(&h).sigma() == f.sigma().mul(&h.sigma()),
            "σ is not multiplicative",
        )
    })
}

fn binomial_roundtrip(g: &mut Gen, _: &VerifyConfig) -> Case {
    let x = g.exp_elem();
    case(json!({"x": x}), move || {
        ensure(
            ExpRingElem::from_binomial_basis(&x.to_binomial_basis()) == x,
            "binomial basis round trip",
        )
    })
}

fn kernels(g: &mut Gen, _: &VerifyConfig) -> Case {
    let d = g.sizes.max_degree;
    let classes = vec![
        ExponentClass::zero(),
        ExponentClass::new(1, 2),
        ExponentClass::new(1, 3),
    ];
    case(
        json!({"window": [-d, d], "classes": classes, "max_ell_degree": 3}),
        move || {
            for k in kernel_checks(&classes, -d..=d, 3) {
                ensure(
                    k.holds,
                    &format!(
                        "{}: kernel dimension {} expected {}",
                        k.name, k.kernel_dim, k.expected_dim
                    ),
                )?;
            }
            Ok(())
        },
    )
}

fn no_exp_no_log(g: &mut Gen, _: &VerifyConfig) -> Case {
    let d = g.sizes.max_degree.max(2);
    let samples = vec![
        Rational::new(1, 2),
        Rational::new(-2, 3),
        Rational::new(5, 12),
    ];
    case(json!({"window": [-d, d], "samples": samples}), move || {
        ensure(
            verify_no_exp_no_log(-d, d, &samples).passed(),
            "kernel of ∂² or ∂ + a is wrong",
        )
    })
}

fn cayley_hamilton(g: &mut Gen, _: &VerifyConfig) -> Case {
    let n = g.dim(4);
    let m = Matrix::from_fn(n, n, |_, _| {
        if g.chance(0.7) {
            Cyclotomic::from(g.rational())
        } else {
            g.cyclotomic()
        }
    });
    case(json!({"matrix": m}), move || {
        let p = charpoly(&m);
        let mut acc = Matrix::<Cyclotomic>::zeros(n, n);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(&m).add(&Matrix::scalar(n, c.clone()));
        }
        ensure(acc.is_zero(), "p(M) ≠ 0")
    })
}

fn jordan_reconstruction(g: &mut Gen, _: &VerifyConfig) -> Case {
    let (n, q) = (g.dim(5), g.denominator());
    let m = g.constant_matrix_over(n, q);
    case(json!({"matrix": m}), move || {
        let jd = jordan_form(&m, BOUND)?;
        ensure(
            m.mul(&jd.basis) == jd.basis.mul(&jd.jordan_matrix()),
            "M·P ≠ P·J",
        )?;
        ensure(jd.basis.inverse().is_some(), "Jordan basis is singular")
    })
}

fn base_change_cocycle(g: &mut Gen, _: &VerifyConfig) -> Case {
    let m = g.constant_module(4);
    let (h1, h2) = (g.shearing(m.dim()), g.shearing(m.dim()));
    case(json!({"module": m, "first": h1, "second": h2}), move || {
        let twice = m.base_change(&h1)?.base_change(&h2)?;
        ensure(
            twice == m.base_change(&h1.mul(&h2))?,
            "base change is not a right action",
        )
    })
}

fn fundamental_matrix(g: &mut Gen, _: &VerifyConfig) -> Case {
    let m = g.constant_module(5);
    case(json!({"module": m}), move || {
        let gm = m.constant_matrix().ok_or("constant")?;
        let (u, r) = m.fundamental_matrix_with_monodromy(BOUND)?;
        ensure(
            partial_exp_matrix(&u) == to_exp(&gm).mul(&u).neg(),
            "∂U ≠ -GU",
        )?;
        ensure(sigma_exp_matrix(&u) == u.mul(&to_exp(&r)), "σ(U) ≠ U·R")?;
        conjugate(&SigmaModule::new(r)?, &mon(&m, &opts())?)
    })
}

fn ext_rank_one(g: &mut Gen, _: &VerifyConfig) -> Case {
    let (a, b) = (g.exponent_class(), g.exponent_class());
    let (ka, kb) = (g.int(-2, 2), g.int(-2, 2));
    let ma = DiffModule::rank_one(&a.value().add(&Rational::from(ka)));
    let mb = DiffModule::rank_one(&b.value().add(&Rational::from(kb)));
    case(json!({"source": ma, "target": mb}), move || {
        ensure(
            ma.ext_dim(&mb, BOUND)? == usize::from(a == b),
            "dim Ext(N(a), N(b)) ≠ [a ≡ b]",
        )
    })
}

fn fully_faithful(g: &mut Gen, _: &VerifyConfig) -> Case {
    let (m, n) = g.constant_pair(3);
    case(json!({"source": m, "target": n}), move || {
        let h = m.horizontal_hom(&n, BOUND)?;
        for f in &h {
            let d = partial_matrix(f)
                .add(&n.matrix().mul(f))
                .sub(&f.mul(m.matrix()));
            ensure(d.is_zero(), "basis element is not horizontal")?;
        }
        let expected = mon(&m, &opts())?.hom_dim(&mon(&n, &opts())?);
        ensure(
            h.len() == expected,
            "horizontal maps and σ-maps differ in dimension",
        )
    })
}

fn invert_coordinate(g: &mut Gen, _: &VerifyConfig) -> Case {
    let m = g.constant_module(4);
    case(json!({"module": m}), move || {
        let e = exponents(&m, &opts())?;
        ensure(
            exponents(&m.invert_coordinate(), &opts())? == e.negated(),
            "t ↦ 1/t does not negate exponents",
        )
    })
}

fn trivialize(g: &mut Gen, _: &VerifyConfig) -> Case {
    let v = g.sigma_module(4);
    case(json!({"module": v}), move || {
        let b = v.trivialize(BOUND)?;
        ensure(
            to_exp(v.monodromy()).mul(&sigma_exp_matrix(&b)) == b,
            "S·σ(B) ≠ B",
        )?;
        ensure(!b.det_ring().is_zero(), "trivialization is singular")
    })
}

fn rank_one_sigma(g: &mut Gen, _: &VerifyConfig) -> Case {
    let (a, b) = (g.exponent_class(), g.exponent_class());
    case(json!({"a": a, "b": b}), move || {
        let va = SigmaModule::rank_one(&a.gamma())?;
        let vb = SigmaModule::rank_one(&b.gamma())?;
        ensure(
            va.tensor(&vb) == SigmaModule::rank_one(&a.add(&b).gamma())?,
            "V_λ ⊗ V_μ ≠ V_λμ",
        )?;
        ensure(
            va.dual() == SigmaModule::rank_one(&a.neg().gamma())?,
            "dual(V_λ) ≠ V_λ⁻¹",
        )
    })
}

fn rm_after_mon(g: &mut Gen, _: &VerifyConfig) -> Case {
    let m = g.constant_module(5);
    case(json!({"module": m}), move || {
        let back = rm(&mon(&m, &opts())?, BOUND)?;
        let w = m
            .find_isomorphism(&back, BOUND)?
            .ok_or("no isomorphism found")?;
        ensure(
            back.base_change(&w)? == m,
            "witness does not carry Rm(Mon(M)) to M",
        )
    })
}

fn mon_after_rm(g: &mut Gen, _: &VerifyConfig) -> Case {
    let v = g.sigma_module(5);
    case(json!({"module": v}), move || {
        conjugate(&mon(&rm(&v, BOUND)?, &opts())?, &v)
    })
}

fn exponent_invariance(g: &mut Gen, _: &VerifyConfig) -> Case {
    let m = g.constant_module(3);
    let p = to_laurent_matrix(&g.invertible_matrix(m.dim()));
    let h = g.shearing(m.dim());
    case(
        json!({"module": m, "constant_gauge": p, "shearing_gauge": h}),
        move || {
            let e = exponents(&m, &opts())?;
            ensure(
                exponents(&m.base_change(&p)?, &opts())? == e,
                "constant gauge changes exponents",
            )?;
            let q = e
                .entries()
                .iter()
                .map(|a| a.order() as i64)
                .fold(1, num_integer::lcm);
            let o = SearchOptions {
                exponent_candidates: Some((0..q).map(|j| ExponentClass::new(j, q)).collect()),
                ..opts()
            };
            let sheared = m.base_change(&h)?;
            let form = find_constant_form(&sheared, &o)?;
            ensure(form.verify(&sheared), "constant form does not verify")?;
            ensure(
                exponents(&form.module(), &o)? == e,
                "shearing gauge changes exponents",
            )
        },
    )
}

fn mon_monoidal(g: &mut Gen, _: &VerifyConfig) -> Case {
    let (m, n) = g.constant_pair(2);
    case(json!({"first": m, "second": n}), move || {
        let (vm, vn) = (mon(&m, &opts())?, mon(&n, &opts())?);
        conjugate(&mon(&m.tensor(&n)?, &opts())?, &vm.tensor(&vn))?;
        conjugate(&mon(&m.dual(), &opts())?, &vm.dual())
    })
}

fn hom_compare(g: &mut Gen, _: &VerifyConfig) -> Case {
    let (m, n) = g.constant_pair(3);
    case(json!({"source": m, "target": n}), move || {
        ensure(
            mon_hom_compare(&m, &n, &opts())?.passed(),
            "Mon does not match Hom, ⊗ or duals",
        )
    })
}

fn properties() -> Vec<Property> {
    use Suite::*;
    let p = |id, suite, dim_cap, build| Property {
        id,
        suite,
        dim_cap,
        fixed_cases: None,
        build,
    };
    let once = |id, suite, build| Property {
        id,
        suite,
        dim_cap: 1,
        fixed_cases: Some(1),
        build,
    };
    vec![
        p("scalar.gamma_homomorphism", Scalar, 1, gamma_homomorphism),
        p("scalar.gamma_kernel", Scalar, 1, gamma_kernel),
        p("scalar.gamma_inverse", Scalar, 1, gamma_inverse),
        p("scalar.field_axioms", Scalar, 1, field_axioms),
        p("laurent.leibniz", Laurent, 1, leibniz),
        p("laurent.shifted_solve", Laurent, 1, shifted_solve),
        once("laurent.no_exp_no_log", Laurent, no_exp_no_log),
        p("expring.solve_dsigma", Expring, 1, solve_dsigma_roundtrip),
        p("expring.solve_partial", Expring, 1, solve_partial_roundtrip),
        p(
            "expring.sigma_commutes_with_partial",
            Expring,
            1,
            sigma_commutes,
        ),
        p("expring.twisted_leibniz", Expring, 1, twisted_leibniz),
        p("expring.binomial_basis", Expring, 1, binomial_roundtrip),
        once("expring.kernels", Expring, kernels),
        p("linalg.cayley_hamilton", Linalg, 4, cayley_hamilton),
        p(
            "linalg.jordan_reconstruction",
            Linalg,
            5,
            jordan_reconstruction,
        ),
        p(
            "diffmod.base_change_cocycle",
            Diffmod,
            4,
            base_change_cocycle,
        ),
        p("diffmod.fundamental_matrix", Diffmod, 5, fundamental_matrix),
        p("diffmod.ext_rank_one", Diffmod, 1, ext_rank_one),
        p("diffmod.fully_faithful", Diffmod, 3, fully_faithful),
        p("diffmod.invert_coordinate", Diffmod, 4, invert_coordinate),
        p("sigmamod.trivialize", Sigmamod, 4, trivialize),
        p("sigmamod.rank_one", Sigmamod, 1, rank_one_sigma),
        p("functors.rm_after_mon", Functors, 5, rm_after_mon),
        p("functors.mon_after_rm", Functors, 5, mon_after_rm),
        p(
            "functors.exponent_invariance",
            Functors,
            3,
            exponent_invariance,
        ),
        p("functors.mon_monoidal", Functors, 2, mon_monoidal),
        p("functors.mon_hom_compare", Functors, 3, hom_compare),
    ]
}

/// Property ids in report order.
pub fn property_ids(suite: Suite) -> Vec<&'static str> {
    properties()
        .into_iter()
        .filter(|p| suite == Suite::All || p.suite == suite)
        .map(|p| p.id)
        .collect()
}

fn panic_message(payload: Box<dyn std::any::Any + Send>) -> String {
    payload
        .downcast_ref::<String>()
        .cloned()
        .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
        .unwrap_or_else(|| "panic".into())
}

pub fn verify_suite(cfg: &VerifyConfig) -> VerifyReport {
    let props: Vec<Property> = properties()
        .into_iter()
        .filter(|p| cfg.suite == Suite::All || p.suite == cfg.suite)
        .collect();
    let jobs: Vec<(usize, usize)> = props
        .iter()
        .enumerate()
        .flat_map(|(i, p)| (0..p.fixed_cases.unwrap_or(cfg.cases)).map(move |c| (i, c)))
        .collect();
    let mut results: Vec<(usize, usize, Option<CaseFailure>)> = jobs
        .par_iter()
        .map(|&(i, c)| {
            let p = &props[i];
            let sizes = Sizes {
                max_dim: cfg.sizes.max_dim.min(p.dim_cap),
                ..cfg.sizes
            };
            let mut g = Gen::for_case(cfg.seed, i, c, sizes);
            let Case { reproducer, check } = (p.build)(&mut g, cfg);
            let outcome = catch_unwind(AssertUnwindSafe(check))
                .unwrap_or_else(|e| Err(CaseError(panic_message(e))));
            let failure = outcome.err().map(|CaseError(message)| CaseFailure {
                case: c,
                message,
                reproducer,
            });
            (i, c, failure)
        })
        .collect();
    results.sort_by_key(|(i, c, _)| (*i, *c));

    let mut reports: Vec<PropertyReport> = props
        .iter()
        .map(|p| PropertyReport {
            id: p.id.to_string(),
            suite: p.suite,
            cases: 0,
            passed: 0,
            failures: Vec::new(),
        })
        .collect();
    for (i, _, failure) in results {
        let r = &mut reports[i];
        r.cases += 1;
        match failure {
            Some(f) => r.failures.push(f),
            None => r.passed += 1,
        }
    }
    reports.sort_by(|a, b| a.id.cmp(&b.id));
    VerifyReport {
        seed: cfg.seed,
        suite: cfg.suite,
        max_dim: cfg.sizes.max_dim,
        max_denominator: cfg.sizes.max_denominator,
        max_degree: cfg.sizes.max_degree,
        passed: reports.iter().all(|r| r.failures.is_empty()),
        properties: reports,
    }
}
