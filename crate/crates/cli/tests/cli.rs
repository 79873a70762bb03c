use std::io::Write;
use std::process::{Command, Output, Stdio};

use fuchs_core::{
    ConstantForm, Cyclotomic, DiffModule, ExponentClass, FuchsDecomposition, Rational, Ring,
    SigmaModule,
};
use fuchs_kit::job::{ExponentsOutput, ExtOutput, HomOutput, SolveOutput, TrivializeOutput};
use fuchs_kit::{run, verify_suite, JobOptions, JobSpec, Suite, VerifyConfig, VerifyReport};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

const N_HALF: &str = r#"{"matrix":[[{"0":"1/2"}]]}"#;
const SHEAR: &str = r#"{"matrix":[[{},{"1":"1"}],[{},{}]]}"#;
const ONE_PLUS_T: &str = r#"{"matrix":[[{"0":"1","1":"1"}]]}"#;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_fuchs-kit"));
    c.env_remove("FUCHS_KIT_CONDUCTOR_BOUND");
    c
}

fn cli(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn cli_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .expect("stdin")
        .write_all(input.as_bytes())
        .expect("write stdin");
    child.wait_with_output().expect("binary exits")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("JSON output")
}

/// Parses into `T`, checks it serializes back to the same JSON, returns it.
fn round_trip<T: Serialize + DeserializeOwned>(o: &Output) -> T {
    assert_eq!(o.status.code(), Some(0), "{}", stdout(o));
    let v = json(o);
    let t: T = serde_json::from_value(v.clone()).expect("output matches its schema");
    assert_eq!(serde_json::to_value(&t).unwrap(), v);
    t
}

fn error_kind(o: &Output) -> String {
    json(o)["error"]["kind"]
        .as_str()
        .expect("error kind")
        .to_string()
}

#[test]
fn exponents_of_rank_one_module() {
    let out: ExponentsOutput = round_trip(&cli(&["exponents", "-i", N_HALF]));
    let shown = serde_json::to_value(&out.exponents).unwrap();
    assert_eq!(shown, serde_json::json!(["1/2"]));
}

#[test]
fn mon_of_trivial_module_is_trivial() {
    let v: SigmaModule = round_trip(&cli(&["mon", "-i", r#"{"matrix":[["0"]]}"#]));
    assert_eq!(v, SigmaModule::rank_one(&Cyclotomic::one()).unwrap());
}

#[test]
fn rm_inverts_mon() {
    let v = cli(&["mon", "-i", N_HALF, "--json"]);
    let m: DiffModule = round_trip(&cli_stdin(&["rm"], &stdout(&v)));
    let expected: DiffModule = serde_json::from_str(N_HALF).unwrap();
    assert_eq!(m, expected);
}

#[test]
fn every_command_output_round_trips() {
    let form: ConstantForm = round_trip(&cli(&["constant-form", "-i", SHEAR]));
    let shear: DiffModule = serde_json::from_str(SHEAR).unwrap();
    assert!(form.verify(&shear));

    let f: FuchsDecomposition = round_trip(&cli(&["fuchs", "-i", SHEAR]));
    assert_eq!(f.factors, vec![Rational::zero(), Rational::zero()]);

    let target = r#"{"operator":"dsigma","target":{"ell_coeffs":[{"1/2":{"1":"1"}}]}}"#;
    let s: SolveOutput = round_trip(&cli(&["solve", "-i", target]));
    assert_eq!(s.solution.sigma().sub(&s.solution), s.target);

    let pair = format!(r#"{{"source":{N_HALF},"target":{{"matrix":[[{{"0":"-1/2"}}]]}}}}"#);
    let h: HomOutput = round_trip(&cli(&["hom", "-i", &pair]));
    assert_eq!(h.dimension, 1);
    let e: ExtOutput = round_trip(&cli(&["ext", "-i", &pair]));
    assert_eq!(e.ext_dim, 1);

    let t: TrivializeOutput = round_trip(&cli(&["trivialize", "-i", r#"{"monodromy":[["-1"]]}"#]));
    assert_eq!(t.trivialization.rows(), 1);

    let r: VerifyReport = round_trip(&cli(&["verify", "--suite", "scalar", "--cases", "4"]));
    assert!(r.passed);
}

#[test]
fn solve_output_satisfies_its_equation() {
    let target =
        r#"{"operator":"dsigma","target":{"ell_coeffs":[{"1/2":{"1":"1"}},{"0":{"-2":"3"}}]}}"#;
    let s: SolveOutput = round_trip(&cli(&["solve", "-i", target]));
    assert_eq!(s.solution.sigma().sub(&s.solution), s.target);
    let target =
        r#"{"operator":"partial","target":{"ell_coeffs":[{"1/3":{"0":"1"}},{"0":{"0":"2"}}]}}"#;
    let s: SolveOutput = round_trip(&cli(&["solve", "-i", target]));
    assert_eq!(s.solution.partial(), s.target);
}

#[test]
fn exit_codes() {
    assert_eq!(cli(&["exponents", "-i", N_HALF]).status.code(), Some(0));

    let o = cli(&["constant-form", "-i", ONE_PLUS_T]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(error_kind(&o), "NotFoundWithinBounds");

    for bad in [
        r#"{"matrix":[["0"]],"extra":1}"#,
        r#"{"matrix":[["0","1"]]}"#,
        r#"{"matrix":"#,
        "no/such/file.json",
    ] {
        let o = cli(&["exponents", "-i", bad]);
        assert_eq!(o.status.code(), Some(2), "{bad}");
        assert_eq!(error_kind(&o), "MalformedInput");
    }
    assert_eq!(cli(&["transmogrify"]).status.code(), Some(2));
    assert_eq!(
        cli(&["exponents", "-i", N_HALF, "--degree-bound", "-1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn output_is_byte_identical_across_runs() {
    let jobs: [&[&str]; 4] = [
        &["constant-form", "-i", SHEAR],
        &["fuchs", "-i", SHEAR, "--json"],
        &["constant-form", "-i", ONE_PLUS_T],
        &["verify", "--seed", "7", "--cases", "3"],
    ];
    for args in jobs {
        let a = cli(args);
        let b = cli(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}

#[test]
fn input_from_file_inline_and_stdin_agree() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(SHEAR.as_bytes()).unwrap();
    let path = file.path().to_str().unwrap();
    let from_file = cli(&["fuchs", "--input", path]);
    let inline = cli(&["fuchs", "-i", SHEAR]);
    let piped = cli_stdin(&["fuchs"], SHEAR);
    assert_eq!(from_file.status.code(), Some(0));
    assert_eq!(from_file.stdout, inline.stdout);
    assert_eq!(piped.stdout, inline.stdout);
}

#[test]
fn compact_flag_prints_one_line() {
    let pretty = cli(&["fuchs", "-i", SHEAR]);
    let compact = cli(&["fuchs", "-i", SHEAR, "--json"]);
    assert_eq!(stdout(&compact).lines().count(), 1);
    assert!(stdout(&pretty).lines().count() > 1);
    assert_eq!(json(&pretty), json(&compact));
}

#[test]
fn conductor_bound_from_environment() {
    let v = r#"{"monodromy":[[{"conductor":3,"coeffs":["-1","-1"]}]]}"#;
    assert_eq!(cli(&["rm", "-i", v]).status.code(), Some(0));
    let o = bin()
        .args(["rm", "-i", v])
        .env("FUCHS_KIT_CONDUCTOR_BOUND", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(error_kind(&o), "EigenvalueNotFound");
    let flag_wins = bin()
        .args(["rm", "-i", v, "--conductor-bound", "3"])
        .env("FUCHS_KIT_CONDUCTOR_BOUND", "2")
        .output()
        .unwrap();
    assert_eq!(flag_wins.status.code(), Some(0));
}

#[test]
fn exponent_candidates_flag_limits_the_search() {
    let allowed = cli(&[
        "constant-form",
        "-i",
        SHEAR,
        "--exponent-candidates",
        "0,1/2",
    ]);
    assert_eq!(allowed.status.code(), Some(0));
    let excluded = cli(&["constant-form", "-i", SHEAR, "--exponent-candidates", "1/2"]);
    assert_eq!(excluded.status.code(), Some(1));
    assert_eq!(error_kind(&excluded), "NotFoundWithinBounds");
}

#[test]
fn job_specs_reject_unknown_fields() {
    let ok: JobSpec = serde_json::from_str(
        r#"{"command":"constant-form","input":"{\"matrix\":[[\"0\"]]}","options":{"degree_bound":2}}"#,
    )
    .unwrap();
    assert_eq!(run(&ok).code, 0);
    assert!(serde_json::from_str::<JobSpec>(r#"{"command":"mon","inputs":"x"}"#).is_err());
    assert!(
        serde_json::from_str::<JobSpec>(r#"{"command":"mon","options":{"degree":2}}"#).is_err()
    );
    assert!(serde_json::from_str::<JobSpec>(r#"{"command":"integrate"}"#).is_err());
    let missing = JobSpec {
        command: fuchs_kit::Command::Mon,
        input: None,
        options: JobOptions::default(),
    };
    assert_eq!(run(&missing).code, 2);
}

#[test]
fn verify_with_seed_42_passes() {
    let o = cli(&["verify", "--suite", "all", "--seed", "42"]);
    let r: VerifyReport = round_trip(&o);
    assert!(r.passed);
    assert!(r
        .properties
        .iter()
        .all(|p| p.cases > 0 && p.failures.is_empty()));
    let mut ids: Vec<_> = r.properties.iter().map(|p| p.id.clone()).collect();
    let sorted = {
        let mut s = ids.clone();
        s.sort();
        s
    };
    assert_eq!(ids, sorted);
    ids.dedup();
    assert_eq!(ids.len(), r.properties.len());
}

#[test]
fn rank_one_only_is_degenerate_safe() {
    let o = cli(&["verify", "--max-dim", "1", "--seed", "3"]);
    let r: VerifyReport = round_trip(&o);
    assert!(r.passed, "{}", stdout(&o));
    assert_eq!(r.max_dim, 1);
}

fn off_by_one(a: &ExponentClass) -> Cyclotomic {
    Cyclotomic::zeta_pow(a.order(), 1).mul(&a.gamma())
}

#[test]
fn mutant_gamma_is_caught() {
    let cfg = VerifyConfig {
        seed: 42,
        suite: Suite::Scalar,
        ..VerifyConfig::default()
    };
    assert!(verify_suite(&cfg).passed);
    let report = verify_suite(&VerifyConfig {
        gamma: off_by_one,
        ..cfg
    });
    assert!(!report.passed);
    for id in ["gamma_homomorphism", "gamma_kernel", "gamma_inverse"] {
        let failing = report
            .property(&format!("scalar.{id}"))
            .expect("property runs");
        assert!(!failing.failures.is_empty(), "{id} missed the mutant");
        assert!(failing.failures[0].reproducer.is_object());
    }
    assert!(report
        .property("scalar.field_axioms")
        .unwrap()
        .failures
        .is_empty());
}
