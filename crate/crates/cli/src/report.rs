//! Machine-readable verification reports.
//!
//! Field order is fixed by the struct layouts, so identical runs produce
//! byte-identical JSON. Wall times are only written when requested.

use minor_sums::RingSpec;
use serde::Serialize;
use serde_json::Value;

/// A claim/oracle disagreement.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub instance: Value,
    pub closed: Value,
    pub brute: Value,
    /// Smallest enumeration rank whose term is nonzero, when the check has
    /// an enumeration behind it.
    pub witness_rank: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub ring: RingSpec,
    pub instances: usize,
    pub passed: usize,
    pub failed: usize,
    pub counterexamples: Vec<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<Vec<Value>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

impl SuiteReport {
    pub fn new(suite: &str, ring: RingSpec) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            ring,
            instances: 0,
            passed: 0,
            failed: 0,
            counterexamples: Vec::new(),
            details: None,
            wall_time_ms: None,
        }
    }

    pub fn pass(&mut self) {
        self.instances += 1;
        self.passed += 1;
    }

    pub fn fail(&mut self, cx: Counterexample) {
        self.instances += 1;
        self.failed += 1;
        self.counterexamples.push(cx);
    }

    /// Records one outcome; `cx` is only built on failure.
    pub fn record(&mut self, ok: bool, cx: impl FnOnce() -> Counterexample) {
        if ok {
            self.pass();
        } else {
            self.fail(cx());
        }
    }

    pub fn detail(&mut self, v: Value) {
        self.details.get_or_insert_with(Vec::new).push(v);
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub command: String,
    pub instances: usize,
    pub passed: usize,
    pub failed: usize,
    pub suites: Vec<SuiteReport>,
}

impl VerificationReport {
    pub fn new(command: &str, suites: Vec<SuiteReport>) -> Self {
        VerificationReport {
            command: command.to_string(),
            instances: suites.iter().map(|s| s.instances).sum(),
            passed: suites.iter().map(|s| s.passed).sum(),
            failed: suites.iter().map(|s| s.failed).sum(),
            suites,
        }
    }

    pub fn success(&self) -> bool {
        self.failed == 0
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }
}
