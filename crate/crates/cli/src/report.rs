//! Report assembly: per-suite, per-check PASS/FAIL lines with the
//! instantiated identities echoed; rendering is deterministic byte for
//! byte for a fixed scenario and seed.

#[derive(Debug, Clone)]
pub struct Check {
    pub label: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn pass(label: impl Into<String>, detail: impl Into<String>) -> Self {
        Check {
            label: label.into(),
            pass: true,
            detail: detail.into(),
        }
    }

    pub fn of(label: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check {
            label: label.into(),
            pass,
            detail: detail.into(),
        }
    }

    /// An informational line that never fails the suite.
    pub fn note(label: impl Into<String>, detail: impl Into<String>) -> Self {
        Check {
            label: label.into(),
            pass: true,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub name: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn new(name: &str) -> Self {
        SuiteReport {
            name: name.to_string(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub scenario: String,
    pub version: u32,
    pub seed: u64,
    pub suites: Vec<SuiteReport>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.suites.iter().all(|s| s.all_pass())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str("galmod verification report\n");
        out.push_str(&format!("scenario: {} (version {})\n", self.scenario, self.version));
        out.push_str(&format!("seed: {}\n", self.seed));
        for suite in &self.suites {
            out.push_str(&format!("suite {}\n", suite.name));
            for c in &suite.checks {
                let verdict = if c.pass { "PASS" } else { "FAIL" };
                if c.detail.is_empty() {
                    out.push_str(&format!("  {verdict} {}\n", c.label));
                } else {
                    out.push_str(&format!("  {verdict} {} :: {}\n", c.label, c.detail));
                }
            }
            let passed = suite.checks.iter().filter(|c| c.pass).count();
            out.push_str(&format!(
                "  result: {} ({passed}/{} checks)\n",
                if suite.all_pass() { "PASS" } else { "FAIL" },
                suite.checks.len()
            ));
        }
        let passed = self.suites.iter().filter(|s| s.all_pass()).count();
        let checks: usize = self.suites.iter().map(|s| s.checks.len()).sum();
        let checks_passed: usize = self
            .suites
            .iter()
            .map(|s| s.checks.iter().filter(|c| c.pass).count())
            .sum();
        out.push_str(&format!(
            "summary: {passed}/{} suites passed, {checks_passed}/{checks} checks passed\n",
            self.suites.len()
        ));
        out
    }

    /// Machine-readable key-value export.
    pub fn render_kv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("scenario={}\n", self.scenario));
        out.push_str(&format!("seed={}\n", self.seed));
        for suite in &self.suites {
            for (i, c) in suite.checks.iter().enumerate() {
                out.push_str(&format!(
                    "{}.{:03}.{}={}\n",
                    suite.name,
                    i,
                    c.label.replace([' ', '='], "_"),
                    if c.pass { "PASS" } else { "FAIL" }
                ));
            }
        }
        out.push_str(&format!(
            "result={}\n",
            if self.all_pass() { "PASS" } else { "FAIL" }
        ));
        out
    }
}
