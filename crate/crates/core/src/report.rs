//! Outcome of an exhaustive verification run.

use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;

/// One violated instance, with both sides rendered.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub inputs: String,
    pub lhs: String,
    pub rhs: String,
}

impl Failure {
    pub fn new(inputs: String, lhs: &impl fmt::Display, rhs: &impl fmt::Display) -> Self {
        Failure {
            inputs,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        }
    }

    pub fn text(inputs: String, lhs: &str, rhs: &str) -> Self {
        Failure {
            inputs,
            lhs: lhs.to_owned(),
            rhs: rhs.to_owned(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub cases: usize,
    pub failures: Vec<Failure>,
    #[serde(serialize_with = "as_secs")]
    pub wall_time: Duration,
}

fn as_secs<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

impl VerificationReport {
    pub fn new(suite: &str) -> Self {
        VerificationReport {
            suite: suite.to_owned(),
            cases: 0,
            failures: Vec::new(),
            wall_time: Duration::ZERO,
        }
    }

    /// Run `check` on every case in parallel. Each call reports how many
    /// instances it covered and which of them failed; an error counts as one
    /// failed instance. Failures keep the order of `cases`.
    pub fn run<T, F>(suite: &str, cases: &[T], check: F) -> Self
    where
        T: Sync + fmt::Debug,
        F: Fn(&T) -> Result<(usize, Vec<Failure>)> + Sync,
    {
        let start = Instant::now();
        let results: Vec<(usize, Vec<Failure>)> = cases
            .par_iter()
            .map(|case| match check(case) {
                Ok(r) => r,
                Err(e) => (1, vec![Failure::text(format!("{case:?}"), &e.to_string(), "")]),
            })
            .collect();
        let mut report = VerificationReport::new(suite);
        for (n, fails) in results {
            report.cases += n;
            report.failures.extend(fails);
        }
        report.wall_time = start.elapsed();
        report
    }

    /// Record a single boolean check.
    pub fn check(&mut self, inputs: impl Into<String>, ok: bool) {
        self.cases += 1;
        if !ok {
            self.failures.push(Failure::text(inputs.into(), "", ""));
        }
    }

    /// Record an equality check.
    pub fn check_eq<T: PartialEq + fmt::Display>(&mut self, inputs: impl Into<String>, lhs: &T, rhs: &T) {
        self.cases += 1;
        if lhs != rhs {
            self.failures.push(Failure::new(inputs.into(), lhs, rhs));
        }
    }

    /// Fold another report into this one.
    pub fn absorb(&mut self, other: VerificationReport) {
        self.cases += other.cases;
        self.failures.extend(other.failures);
        self.wall_time += other.wall_time;
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("reports serialize")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} cases, {} failures, {:.2}s",
            self.suite,
            self.cases,
            self.failures.len(),
            self.wall_time.as_secs_f64()
        )?;
        for fail in self.failures.iter().take(10) {
            write!(f, "\n  {}", fail.inputs)?;
            if !fail.lhs.is_empty() || !fail.rhs.is_empty() {
                write!(f, "\n    lhs: {}\n    rhs: {}", fail.lhs, fail.rhs)?;
            }
        }
        if self.failures.len() > 10 {
            write!(f, "\n  … {} more", self.failures.len() - 10)?;
        }
        Ok(())
    }
}
