//! The machine-readable report and its text rendering.

use serde::{Deserialize, Serialize};

use crate::scenarios::{CheckResult, Profile, Status};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub partial: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool: String,
    pub version: String,
    pub profile: Profile,
    pub summary: Summary,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn new(profile: Profile, checks: Vec<CheckResult>) -> Report {
        let mut summary = Summary { total: checks.len(), ..Summary::default() };
        for c in &checks {
            match c.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Partial => summary.partial += 1,
                Status::Skipped => summary.skipped += 1,
            }
        }
        Report {
            schema_version: SCHEMA_VERSION,
            tool: "k3m20".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            profile,
            summary,
            checks,
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.summary.fail > 0 {
            1
        } else {
            0
        }
    }

    pub fn failing(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| c.status == Status::Fail).map(|c| c.id.as_str()).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let width = self.checks.iter().map(|c| c.id.len()).max().unwrap_or(0);
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "{:<7} {:<width$}  expected {}  actual {}",
                c.status.label(),
                c.id,
                c.expected,
                c.actual
            ));
            if let Some(n) = &c.note {
                out.push_str(&format!("  [{n}]"));
            }
            out.push('\n');
        }
        let s = &self.summary;
        out.push_str(&format!(
            "{} checks: {} pass, {} fail, {} partial, {} skipped\n",
            s.total, s.pass, s.fail, s.partial, s.skipped
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenarios::Basis;

    fn check(id: &str, status: Status) -> CheckResult {
        CheckResult {
            id: id.into(),
            suite: "lattice".into(),
            status,
            expected: "1".into(),
            actual: "1".into(),
            basis: Basis::Literal,
            anchor: String::new(),
            note: None,
            elapsed_ms: 0,
        }
    }

    #[test]
    fn summary_and_exit_code() {
        let r = Report::new(Profile::Quick, vec![check("a", Status::Pass), check("b", Status::Partial)]);
        assert_eq!(r.exit_code(), 0);
        let r = Report::new(Profile::Quick, vec![check("a", Status::Fail), check("b", Status::Skipped)]);
        assert_eq!((r.summary.fail, r.summary.skipped, r.exit_code()), (1, 1, 1));
        assert_eq!(r.failing(), vec!["a"]);
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back.checks, r.checks);
        assert!(r.to_text().contains("FAIL"));
    }
}
