//! Verification outcomes shared by the checkers.

use serde_json::{json, Value};

#[derive(Clone, Debug, PartialEq)]
pub enum Confidence {
    Exact,
    /// Randomized result; the probability that it is wrong is at most the bound.
    Probabilistic { failure_bound: f64 },
}

impl Confidence {
    pub fn to_json(&self) -> Value {
        match self {
            Confidence::Exact => json!({"kind": "exact"}),
            Confidence::Probabilistic { failure_bound } => {
                json!({"kind": "probabilistic", "failure_bound": format!("{failure_bound:e}")})
            }
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Confidence::Exact)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    Certified { method: String },
    CertifiedProbabilistic { method: String, failure_bound: f64 },
    CertifiedByAlternator { method: String },
    /// No counterexample among `samples` random checks; not a proof.
    Sampled { samples: u64 },
    Refuted { witness: Value },
    Unknown { reason: String },
}

impl Verdict {
    pub fn certified(method: impl Into<String>) -> Verdict {
        Verdict::Certified { method: method.into() }
    }

    pub fn unknown(reason: impl Into<String>) -> Verdict {
        Verdict::Unknown { reason: reason.into() }
    }

    /// Certified exactly, structurally, or via an alternator.
    pub fn is_certified(&self) -> bool {
        matches!(self, Verdict::Certified { .. } | Verdict::CertifiedByAlternator { .. })
    }

    /// Any positive outcome, including probabilistic and sampled ones.
    pub fn is_positive(&self) -> bool {
        !matches!(self, Verdict::Refuted { .. } | Verdict::Unknown { .. })
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::Refuted { .. })
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Verdict::Certified { .. } => "certified",
            Verdict::CertifiedProbabilistic { .. } => "certified-probabilistic",
            Verdict::CertifiedByAlternator { .. } => "certified-by-alternator",
            Verdict::Sampled { .. } => "sampled",
            Verdict::Refuted { .. } => "refuted",
            Verdict::Unknown { .. } => "unknown",
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({"verdict": self.tag()});
        let o = v.as_object_mut().unwrap();
        match self {
            Verdict::Certified { method } | Verdict::CertifiedByAlternator { method } => {
                o.insert("method".into(), json!(method));
            }
            Verdict::CertifiedProbabilistic { method, failure_bound } => {
                o.insert("method".into(), json!(method));
                o.insert("failure_bound".into(), json!(format!("{failure_bound:e}")));
            }
            Verdict::Sampled { samples } => {
                o.insert("samples".into(), json!(samples));
            }
            Verdict::Refuted { witness } => {
                o.insert("witness".into(), witness.clone());
            }
            Verdict::Unknown { reason } => {
                o.insert("reason".into(), json!(reason));
            }
        }
        v
    }
}
