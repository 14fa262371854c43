//! Generators and law suites: every law of the construction as a sampled,
//! deterministic check.

pub mod config;
pub mod gen;
pub mod report;
pub mod suites;

use rand_chacha::ChaCha8Rng;

use crate::par::{run_indexed, Execution};

pub use config::{sample_rng, sample_seed, GenConfig};
pub use report::{CheckReport, Counterexample, Failure, LawReport, Status, UntilDiagnostic, KEPT_FAILURES};
pub use suites::{run_suite, run_suite_with, SUITES};

/// Runs `law` on `samples` independent generators and collects failures.
///
/// Sample `i` draws from `sample_rng(sample_seed(seed, name, i))`, so the
/// report does not depend on `exec`. An `Err` from the law is a failure;
/// crate errors convert into counterexamples through `?`.
pub fn run_check<F>(name: &str, seed: u64, samples: usize, exec: Execution, law: F) -> CheckReport
where
    F: Fn(&mut ChaCha8Rng) -> Result<(), Counterexample> + Sync + Send,
{
    let outcomes = run_indexed(samples, exec, |i| {
        let s = sample_seed(seed, name, i);
        law(&mut sample_rng(s)).err().map(|counterexample| Failure {
            check: name.to_string(),
            sample: i,
            seed: s,
            counterexample,
        })
    });
    let failed: Vec<Failure> = outcomes.into_iter().flatten().collect();
    CheckReport {
        name: name.to_string(),
        samples,
        failed: failed.len(),
        failures: failed.into_iter().take(KEPT_FAILURES).collect(),
    }
}

/// Fails with `detail` unless `ok`.
pub(crate) fn ensure(ok: bool, detail: impl FnOnce() -> Counterexample) -> Result<(), Counterexample> {
    if ok {
        Ok(())
    } else {
        Err(detail())
    }
}
