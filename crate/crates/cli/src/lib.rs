//! Command-line front end for `fuchs-core`: JSON in, JSON out, plus seeded
//! property suites.

pub mod gen;
pub mod job;
pub mod verify;

pub use gen::{Gen, Sizes};
pub use job::{run, Command, JobError, JobOptions, JobSpec, Outcome};
pub use verify::{verify_suite, GammaFn, Suite, VerifyConfig, VerifyReport};
