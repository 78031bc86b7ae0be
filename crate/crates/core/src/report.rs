use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Most failure messages kept verbatim; the rest are only counted.
const KEPT: usize = 64;

/// Outcome of a verification sweep: empty iff every instance passed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    failures: Vec<String>,
    total: usize,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn fail(&mut self, msg: impl Into<String>) {
        self.total += 1;
        if self.failures.len() < KEPT {
            self.failures.push(msg.into());
        }
    }

    /// Record a failure with `msg` unless `ok` holds.
    pub fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok {
            self.fail(msg());
        }
    }

    /// Absorb another report, prefixing its messages.
    pub fn merge(&mut self, prefix: &str, other: Report) {
        for f in other.failures {
            if self.failures.len() < KEPT {
                self.failures.push(format!("{prefix}: {f}"));
            }
        }
        self.total += other.total;
    }

    pub fn is_ok(&self) -> bool {
        self.total == 0
    }

    pub fn failures(&self) -> &[String] {
        &self.failures
    }

    /// Number of failed instances, including those not kept verbatim.
    pub fn count(&self) -> usize {
        self.total
    }

    pub fn into_result(self, what: &str) -> Result<()> {
        if self.is_ok() {
            Ok(())
        } else {
            Err(Error::CheckFailed(format!("{what}: {}", self.failures[0])))
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return f.write_str("ok");
        }
        writeln!(f, "{} failure(s)", self.total)?;
        for m in &self.failures {
            writeln!(f, "  {m}")?;
        }
        if self.total > self.failures.len() {
            writeln!(f, "  ... {} more", self.total - self.failures.len())?;
        }
        Ok(())
    }
}

impl FromIterator<String> for Report {
    fn from_iter<I: IntoIterator<Item = String>>(iter: I) -> Self {
        let mut r = Report::new();
        for m in iter {
            r.fail(m);
        }
        r
    }
}

pub(crate) fn ser_display<T: fmt::Display, S: serde::Serializer>(x: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(x)
}

pub(crate) fn ser_display_vec<T: fmt::Display, S: serde::Serializer>(
    xs: &[T],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|x| x.to_string()))
}
