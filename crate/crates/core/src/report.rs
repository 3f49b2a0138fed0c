//! Claim records and run reports.
//!
//! Conventions:
//!
//! * A claim pairs a predicted value with an observed one; its status is
//!   `verified`, `refuted`, or `inconclusive-at-precision` when truncation
//!   kept the observation from being decisive.
//! * Reports serialize with a fixed field order and no timestamps, so the
//!   same configuration always produces byte-identical JSON; the runtime
//!   field stays 0 unless timing collection is switched on explicitly.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub enum ClaimStatus {
    #[serde(rename = "verified")]
    Verified,
    #[serde(rename = "refuted")]
    Refuted,
    #[serde(rename = "inconclusive-at-precision")]
    InconclusiveAtPrecision,
}

impl ClaimStatus {
    /// Larger is worse; reports aggregate to their worst claim.
    fn severity(self) -> u8 {
        match self {
            ClaimStatus::Verified => 0,
            ClaimStatus::InconclusiveAtPrecision => 1,
            ClaimStatus::Refuted => 2,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ClaimStatus::Verified => "verified",
            ClaimStatus::Refuted => "refuted",
            ClaimStatus::InconclusiveAtPrecision => "inconclusive-at-precision",
        }
    }
}

/// One predicted-versus-observed comparison.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Claim {
    pub claim_id: String,
    pub paper_anchor: String,
    pub predicted: String,
    pub observed: String,
    pub status: ClaimStatus,
}

impl Claim {
    /// Status from literal equality of the two sides.
    pub fn check(
        claim_id: impl Into<String>,
        paper_anchor: impl Into<String>,
        predicted: impl Into<String>,
        observed: impl Into<String>,
    ) -> Claim {
        let predicted = predicted.into();
        let observed = observed.into();
        let status = if predicted == observed {
            ClaimStatus::Verified
        } else {
            ClaimStatus::Refuted
        };
        Claim {
            claim_id: claim_id.into(),
            paper_anchor: paper_anchor.into(),
            predicted,
            observed,
            status,
        }
    }

    /// A claim whose expected outcome is disagreement: verified when the
    /// two sides differ.
    pub fn check_differs(
        claim_id: impl Into<String>,
        paper_anchor: impl Into<String>,
        predicted: impl Into<String>,
        observed: impl Into<String>,
    ) -> Claim {
        let predicted = predicted.into();
        let observed = observed.into();
        let status = if predicted == observed {
            ClaimStatus::Refuted
        } else {
            ClaimStatus::Verified
        };
        Claim {
            claim_id: claim_id.into(),
            paper_anchor: paper_anchor.into(),
            predicted,
            observed,
            status,
        }
    }

    pub fn with_status(
        claim_id: impl Into<String>,
        paper_anchor: impl Into<String>,
        predicted: impl Into<String>,
        observed: impl Into<String>,
        status: ClaimStatus,
    ) -> Claim {
        Claim {
            claim_id: claim_id.into(),
            paper_anchor: paper_anchor.into(),
            predicted: predicted.into(),
            observed: observed.into(),
            status,
        }
    }

    pub fn inconclusive(
        claim_id: impl Into<String>,
        paper_anchor: impl Into<String>,
        predicted: impl Into<String>,
        observed: impl Into<String>,
    ) -> Claim {
        Claim::with_status(
            claim_id,
            paper_anchor,
            predicted,
            observed,
            ClaimStatus::InconclusiveAtPrecision,
        )
    }
}

fn default_prime() -> u64 {
    7
}
fn default_n() -> u64 {
    3
}
fn default_q() -> u64 {
    2
}
fn default_e_max() -> u64 {
    12
}
fn default_degree_bound() -> i64 {
    8
}
fn default_precision() -> String {
    "64".to_string()
}
fn default_format() -> String {
    "text".to_string()
}

/// Parameters of one runner invocation; every field has a default, so a
/// config is reproducible from its serialized form alone.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RunConfig {
    pub example: String,
    #[serde(default = "default_prime")]
    pub prime: u64,
    #[serde(default = "default_n")]
    pub n: u64,
    #[serde(default = "default_q")]
    pub q: u64,
    #[serde(default = "default_e_max")]
    pub e_max: u64,
    #[serde(default = "default_degree_bound")]
    pub degree_bound: i64,
    #[serde(default = "default_precision")]
    pub precision: String,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_format")]
    pub format: String,
    #[serde(default)]
    pub d: Option<String>,
    #[serde(default)]
    pub timings: bool,
}

impl RunConfig {
    pub fn new(example: impl Into<String>) -> RunConfig {
        RunConfig {
            example: example.into(),
            prime: default_prime(),
            n: default_n(),
            q: default_q(),
            e_max: default_e_max(),
            degree_bound: default_degree_bound(),
            precision: default_precision(),
            seed: 0,
            format: default_format(),
            d: None,
            timings: false,
        }
    }
}

/// Everything one runner produced.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Report {
    pub example: String,
    pub config: RunConfig,
    pub claims: Vec<Claim>,
    pub runtime_ms: u64,
}

impl Report {
    pub fn new(config: RunConfig, claims: Vec<Claim>) -> Report {
        Report { example: config.example.clone(), config, claims, runtime_ms: 0 }
    }

    pub fn overall(&self) -> ClaimStatus {
        self.claims
            .iter()
            .map(|c| c.status)
            .max_by_key(|s| s.severity())
            .unwrap_or(ClaimStatus::Verified)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("example: {}\n", self.example));
        for c in &self.claims {
            out.push_str(&format!(
                "  [{}] {}: predicted {} | observed {}  ({})\n",
                c.status.label(),
                c.claim_id,
                c.predicted,
                c.observed,
                c.paper_anchor
            ));
        }
        out.push_str(&format!(
            "overall: {} ({} claims)\n",
            self.overall().label(),
            self.claims.len()
        ));
        if self.runtime_ms > 0 {
            out.push_str(&format!("runtime: {} ms\n", self.runtime_ms));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn claim_status_from_comparison() {
        let ok = Claim::check("a", "b", "12", "12");
        assert_eq!(ok.status, ClaimStatus::Verified);
        let bad = Claim::check("a", "b", "12", "13");
        assert_eq!(bad.status, ClaimStatus::Refuted);
        let differs = Claim::check_differs("a", "b", "4", "2");
        assert_eq!(differs.status, ClaimStatus::Verified);
    }

    #[test]
    fn report_aggregates_to_worst() {
        let cfg = RunConfig::new("demo");
        let report = Report::new(
            cfg.clone(),
            vec![
                Claim::check("one", "x", "1", "1"),
                Claim::inconclusive("two", "y", "1", "unknown"),
            ],
        );
        assert_eq!(report.overall(), ClaimStatus::InconclusiveAtPrecision);
        let report = Report::new(cfg, vec![Claim::check("one", "x", "1", "2")]);
        assert_eq!(report.overall(), ClaimStatus::Refuted);
    }

    #[test]
    fn json_shape_is_stable() {
        let mut cfg = RunConfig::new("demo");
        cfg.seed = 9;
        let report = Report::new(cfg, vec![Claim::check("idx", "anchor", "4", "4")]);
        let json = report.to_json();
        assert!(json.contains("\"example\": \"demo\""));
        assert!(json.contains("\"status\": \"verified\""));
        assert!(json.contains("\"runtime_ms\": 0"));
        // Identical reports serialize to identical bytes.
        let report2 = Report::new(
            {
                let mut c = RunConfig::new("demo");
                c.seed = 9;
                c
            },
            vec![Claim::check("idx", "anchor", "4", "4")],
        );
        assert_eq!(report.to_json(), report2.to_json());
        // And round-trip through serde.
        let back: Report = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
    }

    #[test]
    fn text_rendering() {
        let report = Report::new(
            RunConfig::new("demo"),
            vec![Claim::check("idx", "anchor", "4", "5")],
        );
        let text = report.render_text();
        assert!(text.starts_with("example: demo\n"));
        assert!(text.contains("[refuted] idx: predicted 4 | observed 5  (anchor)"));
        assert!(text.contains("overall: refuted (1 claims)"));
        assert!(!text.contains("runtime:"));
    }
}
