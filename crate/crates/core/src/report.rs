//! Deterministic plain-text verification reports.

use std::fmt;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail {
        witness: String,
    },
    /// A hypothesis of the check does not hold, so nothing was concluded.
    Precondition {
        reason: String,
    },
}

impl Verdict {
    pub fn from_bool(ok: bool, witness: impl FnOnce() -> String) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail { witness: witness() }
        }
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail { .. })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => write!(f, "pass"),
            Verdict::Fail { witness } => write!(f, "FAIL ({witness})"),
            Verdict::Precondition { reason } => write!(f, "precondition unmet ({reason})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
    /// Extra lines (counts, residuals, tables), printed indented.
    pub detail: Vec<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, verdict: Verdict) -> Self {
        Self { name: name.into(), verdict, detail: Vec::new() }
    }

    pub fn with_detail(mut self, text: impl fmt::Display) -> Self {
        self.detail.extend(text.to_string().lines().map(str::to_string));
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub title: String,
    /// Convention flags in effect, as `(name, value)`.
    pub conventions: Vec<(String, String)>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Self { title: title.into(), conventions: Vec::new(), checks: Vec::new() }
    }

    pub fn convention(mut self, name: &str, value: impl fmt::Display) -> Self {
        self.conventions.push((name.to_string(), value.to_string()));
        self
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    /// Every check passed; an unmet precondition is not a pass.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.verdict == Verdict::Pass)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "yangbax {VERSION} report: {}", self.title)?;
        for (k, v) in &self.conventions {
            writeln!(f, "convention {k} = {v}")?;
        }
        for c in &self.checks {
            writeln!(f, "check {}: {}", c.name, c.verdict)?;
            for d in &c.detail {
                writeln!(f, "    {d}")?;
            }
        }
        let failed = self.checks.iter().filter(|c| c.verdict.is_fail()).count();
        let unmet = self.checks.iter().filter(|c| matches!(c.verdict, Verdict::Precondition { .. })).count();
        writeln!(f, "summary: {} checks, {failed} failed, {unmet} preconditions unmet", self.checks.len())?;
        write!(f, "result: {}", if self.passed() { "pass" } else { "FAIL" })
    }
}
