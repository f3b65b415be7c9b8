use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

use crate::oracle::frame::FrameSource;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Consistent,
    Violated,
}

/// Something a reader can re-check by hand: a frame with its Tomiyama
/// eigenvalue, a parameter point, or a bipartite vector with its value.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Witness {
    Frame { source: FrameSource, index: usize, min_eigenvalue: f64, vectors: Vec<Vec<[f64; 2]>> },
    Point { x: f64, y: f64, k: usize, note: String },
    Vector { d: usize, entries: Vec<[f64; 2]>, value: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Statistics {
    pub samples: usize,
    pub worst_margin: f64,
    #[serde(flatten)]
    pub extra: BTreeMap<String, Value>,
}

impl Statistics {
    pub fn new(samples: usize, worst_margin: f64) -> Self {
        Self { samples, worst_margin, extra: BTreeMap::new() }
    }

    pub fn with(mut self, key: &str, value: impl Serialize) -> Self {
        self.extra.insert(key.to_string(), serde_json::to_value(value).expect("serializable"));
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleReport {
    pub oracle: String,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub statistics: Statistics,
}

impl OracleReport {
    pub fn consistent(oracle: &str, statistics: Statistics) -> Self {
        Self { oracle: oracle.to_string(), verdict: Verdict::Consistent, witness: None, statistics }
    }

    pub fn violated(oracle: &str, witness: Witness, statistics: Statistics) -> Self {
        Self { oracle: oracle.to_string(), verdict: Verdict::Violated, witness: Some(witness), statistics }
    }

    pub fn is_consistent(&self) -> bool {
        self.verdict == Verdict::Consistent
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
