//! Verification outcomes shared by identities and congruence claims, with
//! the JSON layout used by the CLI and the FFI layer.

use std::fmt;
use std::time::Duration;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Identity,
    Claim,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Counterexample,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Verified => "verified",
            Status::Counterexample => "counterexample",
            Status::Skipped => "skipped",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProofStatus {
    Proved,
    Classical,
    Conjecture,
    Mined,
}

impl fmt::Display for ProofStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProofStatus::Proved => "proved",
            ProofStatus::Classical => "classical",
            ProofStatus::Conjecture => "conjecture",
            ProofStatus::Mined => "mined",
        })
    }
}

/// First coefficient index that broke the statement. For claims `value` is
/// the coefficient mod `p^N`; for identities it is `lhs - rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub index: u64,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub id: String,
    pub kind: Kind,
    pub status: Status,
    pub checked: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure: Option<Failure>,
    pub source: String,
    pub proof_status: ProofStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn is_counterexample(&self) -> bool {
        self.status == Status::Counterexample
    }
}

/// Result of recomputing one claim over `Z` and reducing, compared with the
/// modular computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpotCheck {
    pub id: String,
    pub order: u64,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub suite: Option<String>,
    pub order: u64,
    pub results: Vec<VerificationReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spot_check: Option<SpotCheck>,
}

impl SuiteReport {
    pub fn counterexamples(&self) -> usize {
        self.results.iter().filter(|r| r.is_counterexample()).count()
    }

    pub fn skipped(&self) -> usize {
        self.results.iter().filter(|r| r.status == Status::Skipped).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> SuiteReport {
        SuiteReport {
            suite: Some("demo".into()),
            order: 100,
            results: vec![
                VerificationReport {
                    id: "A(5,2; 5n+1) % 5 == 0".into(),
                    kind: Kind::Claim,
                    status: Status::Counterexample,
                    checked: 1,
                    failure: Some(Failure { index: 1, value: "2".into() }),
                    source: "control".into(),
                    proof_status: ProofStatus::Conjecture,
                    reason: None,
                    elapsed: Duration::from_millis(3),
                },
                VerificationReport {
                    id: "rr-relation".into(),
                    kind: Kind::Identity,
                    status: Status::Skipped,
                    checked: 0,
                    failure: None,
                    source: "registry".into(),
                    proof_status: ProofStatus::Classical,
                    reason: Some("order too small".into()),
                    elapsed: Duration::ZERO,
                },
            ],
            spot_check: None,
        }
    }

    #[test]
    fn json_layout() {
        let v: serde_json::Value = serde_json::from_str(&sample().to_json()).unwrap();
        let first = &v["results"][0];
        assert_eq!(first["status"], "counterexample");
        assert_eq!(first["kind"], "claim");
        assert_eq!(first["failure"]["value"], "2");
        assert_eq!(first["proof_status"], "conjecture");
        assert!(first.get("elapsed").is_none());
        assert!(v["results"][1].get("failure").is_none());
        assert!(v.get("spot_check").is_none());
    }

    #[test]
    fn json_round_trip_drops_only_timing() {
        let r = sample();
        let back = SuiteReport::from_json(&r.to_json()).unwrap();
        let mut expect = r.clone();
        for e in &mut expect.results {
            e.elapsed = Duration::ZERO;
        }
        assert_eq!(back, expect);
        assert_eq!(back.counterexamples(), 1);
        assert_eq!(back.skipped(), 1);
    }
}
