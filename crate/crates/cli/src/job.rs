use std::fmt;
use std::path::Path;

use fuchs_core::{
    constant_form, exponents, ext_dimension, fuchs_decomposition, horizontal_morphisms, mon, rm,
    solve_dsigma, solve_partial_e, DiffModule, Error, ExpRingElem, ExponentClass, ExponentMultiset,
    LaurentPoly, Matrix, SearchOptions, SigmaModule, DEFAULT_CONDUCTOR_BOUND,
};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::gen::Sizes;
use crate::verify::{verify_suite, Suite, VerifyConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Exponents,
    Mon,
    Rm,
    ConstantForm,
    Fuchs,
    Solve,
    Hom,
    Ext,
    Trivialize,
    Verify,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobOptions {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponent_candidates: Option<Vec<ExponentClass>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_bound: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conductor_bound: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub suite: Option<Suite>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cases: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_dim: Option<usize>,
    /// Single-line JSON instead of pretty-printed.
    #[serde(default)]
    pub compact: bool,
}

/// A command, its input (a path or inline JSON) and options.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub command: Command,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    #[serde(default)]
    pub options: JobOptions,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Operator {
    Partial,
    Dsigma,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolveInput {
    pub operator: Operator,
    pub target: ExpRingElem,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolveOutput {
    pub operator: Operator,
    pub target: ExpRingElem,
    pub solution: ExpRingElem,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairInput {
    pub source: DiffModule,
    pub target: DiffModule,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExponentsOutput {
    pub exponents: ExponentMultiset,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomOutput {
    pub dimension: usize,
    pub basis: Vec<Matrix<LaurentPoly>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtOutput {
    pub ext_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrivializeOutput {
    pub trivialization: Matrix<ExpRingElem>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum JobError {
    /// Exit code 2: unreadable, unparsable or schema-invalid input.
    Malformed(String),
    /// Exit code 1: a typed failure from the computation.
    Domain(Error),
}

impl fmt::Display for JobError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JobError::Malformed(m) => write!(f, "malformed input: {m}"),
            JobError::Domain(e) => e.fmt(f),
        }
    }
}

impl From<Error> for JobError {
    fn from(e: Error) -> Self {
        JobError::Domain(e)
    }
}

impl JobError {
    pub fn exit_code(&self) -> i32 {
        match self {
            JobError::Malformed(_) => 2,
            JobError::Domain(_) => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            JobError::Malformed(_) => "MalformedInput",
            JobError::Domain(e) => e.kind(),
        }
    }

    pub fn to_json(&self) -> Value {
        let message = match self {
            JobError::Malformed(m) => m.clone(),
            JobError::Domain(e) => e.to_string(),
        };
        json!({"error": {"kind": self.kind(), "message": message}})
    }
}

/// What the binary prints and the status it exits with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

fn parse<T: DeserializeOwned>(text: &str) -> Result<T, JobError> {
    serde_json::from_str(text).map_err(|e| JobError::Malformed(e.to_string()))
}

/// Text of the input: inline JSON when it starts like a JSON value,
/// otherwise the contents of the named file.
pub fn resolve_input(input: &str) -> Result<String, JobError> {
    if input.trim_start().starts_with(['{', '[', '"']) {
        return Ok(input.to_string());
    }
    let path = Path::new(input.trim());
    if !path.is_file() {
        let shown: String = input.trim().chars().take(60).collect();
        return Err(JobError::Malformed(format!(
            "{shown:?} is neither inline JSON nor a readable file"
        )));
    }
    std::fs::read_to_string(path)
        .map_err(|e| JobError::Malformed(format!("cannot read {}: {e}", path.display())))
}

impl JobSpec {
    pub fn search_options(&self) -> SearchOptions {
        let o = &self.options;
        let d = SearchOptions::default();
        SearchOptions {
            exponent_candidates: o.exponent_candidates.clone(),
            laurent_degree_bound: o.degree_bound.unwrap_or(d.laurent_degree_bound),
            conductor_bound: self.conductor_bound(),
            ..d
        }
    }

    pub fn conductor_bound(&self) -> u32 {
        self.options
            .conductor_bound
            .unwrap_or(DEFAULT_CONDUCTOR_BOUND)
    }

    fn validate(&self) -> Result<(), JobError> {
        let o = &self.options;
        if o.degree_bound.is_some_and(|d| d < 0) {
            return Err(JobError::Malformed(
                "degree bound must be non-negative".into(),
            ));
        }
        if o.conductor_bound
            .is_some_and(|n| n == 0 || n > fuchs_core::scalar::MAX_CONDUCTOR)
        {
            return Err(JobError::Malformed(format!(
                "conductor bound must lie in 1..={}",
                fuchs_core::scalar::MAX_CONDUCTOR
            )));
        }
        if o.max_dim == Some(0) {
            return Err(JobError::Malformed("max_dim must be positive".into()));
        }
        if self.command != Command::Verify && self.input.is_none() {
            return Err(JobError::Malformed("no input given".into()));
        }
        Ok(())
    }

    fn input_text(&self) -> Result<String, JobError> {
        resolve_input(self.input.as_deref().unwrap_or_default())
    }

    fn verify_config(&self) -> VerifyConfig {
        let o = &self.options;
        let d = VerifyConfig::default();
        VerifyConfig {
            seed: o.seed.unwrap_or(d.seed),
            cases: o.cases.unwrap_or(d.cases),
            sizes: Sizes {
                max_dim: o.max_dim.unwrap_or(d.sizes.max_dim),
                ..d.sizes
            },
            suite: o.suite.unwrap_or(Suite::All),
            ..d
        }
    }

    /// Runs the job and returns the JSON result value.
    pub fn execute(&self) -> Result<Value, JobError> {
        self.validate()?;
        let opts = self.search_options();
        let value = match self.command {
            Command::Verify => to_value(&verify_suite(&self.verify_config())),
            Command::Exponents => {
                let m: DiffModule = parse(&self.input_text()?)?;
                to_value(&ExponentsOutput {
                    exponents: exponents(&m, &opts)?,
                })
            }
            Command::Mon => to_value(&mon(&parse(&self.input_text()?)?, &opts)?),
            Command::Rm => to_value(&rm(&parse(&self.input_text()?)?, self.conductor_bound())?),
            Command::ConstantForm => to_value(&constant_form(&parse(&self.input_text()?)?, &opts)?),
            Command::Fuchs => to_value(&fuchs_decomposition(&parse(&self.input_text()?)?, &opts)?),
            Command::Solve => {
                let SolveInput { operator, target } = parse(&self.input_text()?)?;
                let solution = match operator {
                    Operator::Partial => solve_partial_e(&target),
                    Operator::Dsigma => solve_dsigma(&target),
                };
                to_value(&SolveOutput {
                    operator,
                    target,
                    solution,
                })
            }
            Command::Hom => {
                let p: PairInput = parse(&self.input_text()?)?;
                let basis = horizontal_morphisms(&p.source, &p.target, &opts)?;
                to_value(&HomOutput {
                    dimension: basis.len(),
                    basis,
                })
            }
            Command::Ext => {
                let p: PairInput = parse(&self.input_text()?)?;
                to_value(&ExtOutput {
                    ext_dim: ext_dimension(&p.source, &p.target, &opts)?,
                })
            }
            Command::Trivialize => {
                let v: SigmaModule = parse(&self.input_text()?)?;
                to_value(&TrivializeOutput {
                    trivialization: v.trivialize(self.conductor_bound())?,
                })
            }
        };
        Ok(value)
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("results serialize")
}

pub fn render(v: &Value, compact: bool) -> String {
    let mut s = if compact {
        serde_json::to_string(v)
    } else {
        serde_json::to_string_pretty(v)
    }
    .expect("JSON values serialize");
    s.push('\n');
    s
}

pub fn run(job: &JobSpec) -> Outcome {
    match job.execute() {
        Ok(v) => Outcome {
            stdout: render(&v, job.options.compact),
            code: 0,
        },
        Err(e) => Outcome {
            stdout: render(&e.to_json(), job.options.compact),
            code: e.exit_code(),
        },
    }
}
