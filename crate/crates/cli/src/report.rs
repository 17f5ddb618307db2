//! JSON verdict report.

use serde::Serialize;
use serde_json::Value;

use crate::cases::Tier;

#[derive(Clone, Debug, Serialize)]
pub struct CaseResult {
    pub case: String,
    pub citation: String,
    pub expected: Value,
    pub computed: Value,
    /// `null` when the case was skipped.
    #[serde(rename = "match")]
    pub matched: Option<bool>,
    pub seconds: Option<f64>,
    #[serde(skip)]
    pub criterion: u8,
}

impl CaseResult {
    pub fn status(&self) -> &'static str {
        match self.matched {
            Some(true) => "PASS",
            Some(false) => "FAIL",
            None => "SKIP",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerdictReport {
    pub tier: Tier,
    pub cases: Vec<CaseResult>,
    pub summary: Summary,
}

impl VerdictReport {
    /// Sorts by case label and tallies the summary.
    pub fn new(tier: Tier, mut cases: Vec<CaseResult>) -> Self {
        cases.sort_by(|a, b| a.case.cmp(&b.case));
        let mut summary = Summary::default();
        for c in &cases {
            match c.matched {
                Some(true) => summary.passed += 1,
                Some(false) => summary.failed += 1,
                None => summary.skipped += 1,
            }
        }
        VerdictReport { tier, cases, summary }
    }

    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.cases {
            out.push_str(&format!("{} {:<28} expected {} computed {}\n", c.status(), c.case, c.expected, c.computed));
        }
        let s = self.summary;
        out.push_str(&format!("{} passed, {} failed, {} skipped\n", s.passed, s.failed, s.skipped));
        out
    }
}
