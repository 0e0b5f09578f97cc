//! Timed pass/fail records for the acceptance criteria of `tqf-core`.

use std::fmt;
use std::time::{Duration, Instant};

use tqf_core::verify::VerificationReport;

/// Result of one acceptance criterion.
#[derive(Debug, Clone)]
pub struct Criterion {
    pub id: u32,
    pub title: String,
    /// Whether every check held, ignoring the time budget.
    pub checks_passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub budget: Option<Duration>,
}

impl Criterion {
    /// Runs `body`, which returns whether its checks held and a one-line
    /// summary.
    pub fn run(id: u32, title: &str, budget: Option<Duration>, body: impl FnOnce() -> (bool, String)) -> Criterion {
        let start = Instant::now();
        let (checks_passed, detail) = body();
        Criterion { id, title: title.to_string(), checks_passed, detail, elapsed: start.elapsed(), budget }
    }

    pub fn within_budget(&self) -> bool {
        self.budget.is_none_or(|b| self.elapsed <= b)
    }

    pub fn passed(&self) -> bool {
        self.checks_passed && self.within_budget()
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let secs = self.elapsed.as_secs_f64();
        let time = match self.budget {
            Some(b) => format!("{secs:.2} s, budget {} s", b.as_secs()),
            None => format!("{secs:.2} s"),
        };
        write!(f, "{status} criterion {:>2}: {} [{time}] {}", self.id, self.title, self.detail)
    }
}

/// Totals over a set of reports, naming the first failing check.
pub fn summarize(reports: &[VerificationReport]) -> (bool, String) {
    let total: usize = reports.iter().map(|r| r.checks.len()).sum();
    let corrected: usize = reports.iter().map(|r| r.corrections().count()).sum();
    let failures: Vec<String> = reports
        .iter()
        .flat_map(|r| {
            let params: Vec<String> = r.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let params = params.join(" ");
            r.failures().map(move |c| format!("{} ({params}) {}: {} != {} {}", r.suite, c.name, c.lhs, c.rhs, c.detail))
        })
        .collect();
    let mut line = format!("{total} checks, {} failed, {corrected} corrected", failures.len());
    if let Some(first) = failures.first() {
        line.push_str(&format!("; first failure: {}", first.trim_end()));
    }
    (failures.is_empty() && total > 0, line)
}
