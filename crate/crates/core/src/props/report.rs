use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::model::Model;
use crate::modelfile::{model_to_json, signature_to_json};
use crate::sentence::Sentence;
use crate::signature::Signature;

/// Failures kept per check; the rest are only counted.
pub const KEPT_FAILURES: usize = 5;

/// A failing input, in the CLI's text and JSON formats so that it can be
/// replayed with `stacklogic check`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub logic: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub signature: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub formula: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<Value>,
}

impl Counterexample {
    pub fn new(detail: impl Into<String>) -> Self {
        Self {
            detail: detail.into(),
            ..Self::default()
        }
    }

    pub fn signature(mut self, sig: &Signature) -> Self {
        self.logic = Some(sig.stack().to_string());
        self.signature = Some(signature_to_json(sig));
        self
    }

    pub fn formula(mut self, rho: &Sentence) -> Self {
        self.formula = Some(rho.to_string());
        self
    }

    pub fn model(mut self, m: &Model) -> Self {
        self.model = Some(model_to_json(m));
        self
    }
}

impl From<crate::Error> for Counterexample {
    fn from(e: crate::Error) -> Self {
        Counterexample::new(format!("error: {e}"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub check: String,
    pub sample: usize,
    /// Seed of the failing sample's generator.
    pub seed: u64,
    pub counterexample: Counterexample,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub samples: usize,
    pub failed: usize,
    pub failures: Vec<Failure>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Horizon stability of the until translation, measured rather than asserted.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct UntilDiagnostic {
    pub samples: usize,
    /// Samples whose hybrid value agrees at horizons `H` and `H + (n − k)`.
    pub stable: usize,
    /// Stable samples whose hybrid value equals the LTL value.
    pub agree_when_stable: usize,
    pub errors: usize,
    pub examples: Vec<Counterexample>,
}

impl UntilDiagnostic {
    pub fn stable_fraction(&self) -> f64 {
        ratio(self.stable, self.samples)
    }

    pub fn agreement_fraction(&self) -> f64 {
        ratio(self.agree_when_stable, self.stable)
    }
}

fn ratio(a: usize, b: usize) -> f64 {
    if b == 0 {
        1.0
    } else {
        a as f64 / b as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LawReport {
    pub suite: String,
    pub seed: u64,
    pub samples_run: usize,
    pub status: Status,
    pub checks: Vec<CheckReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub until: Option<UntilDiagnostic>,
}

impl LawReport {
    pub fn new(suite: impl Into<String>, seed: u64, checks: Vec<CheckReport>, until: Option<UntilDiagnostic>) -> Self {
        let status = if checks.iter().all(CheckReport::passed) {
            Status::Pass
        } else {
            Status::Fail
        };
        Self {
            suite: suite.into(),
            seed,
            samples_run: checks.iter().map(|c| c.samples).sum(),
            status,
            checks,
            until,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &Failure> {
        self.checks.iter().flat_map(|c| c.failures.iter())
    }

    pub fn check(&self, name: &str) -> Option<&CheckReport> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(f, "suite {} (seed {}): {status}", self.suite, self.seed)?;
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            let mark = if c.passed() { "ok  " } else { "FAIL" };
            writeln!(
                f,
                "  {mark} {:<width$}  {:>5} samples  {} failed",
                c.name, c.samples, c.failed
            )?;
            for fail in &c.failures {
                writeln!(
                    f,
                    "       sample {} (seed {}): {}",
                    fail.sample, fail.seed, fail.counterexample.detail
                )?;
                if let Some(formula) = &fail.counterexample.formula {
                    writeln!(f, "         formula: {formula}")?;
                }
                if let Some(model) = &fail.counterexample.model {
                    writeln!(f, "         model:   {model}")?;
                }
            }
        }
        if let Some(u) = &self.until {
            writeln!(f, "  until diagnostic (reported, not asserted):")?;
            writeln!(
                f,
                "       {} samples, {} horizon-stable ({:.2}%), {} of those agree with LTL ({:.2}%), {} errors",
                u.samples,
                u.stable,
                100.0 * u.stable_fraction(),
                u.agree_when_stable,
                100.0 * u.agreement_fraction(),
                u.errors
            )?;
            for ex in &u.examples {
                writeln!(f, "       {}", ex.detail)?;
            }
        }
        write!(f, "{} samples run", self.samples_run)
    }
}
