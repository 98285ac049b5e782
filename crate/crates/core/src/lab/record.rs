//! Result rows and the run record.

use super::stats::Summary;
use serde::{Deserialize, Serialize};

/// CSV column order.
pub const CSV_HEADER: [&str; 9] = ["kind", "n", "trials", "mean", "std_err", "statistic", "lo99", "hi99", "seed"];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub kind: String,
    pub n: u64,
    pub trials: usize,
    pub mean: f64,
    pub std_err: f64,
    pub statistic: String,
    pub lo99: f64,
    pub hi99: f64,
    pub seed: u64,
}

impl Row {
    pub fn from_summary(kind: &str, n: u64, statistic: &str, s: &Summary, seed: u64) -> Row {
        Row {
            kind: kind.to_string(),
            n,
            trials: s.count,
            mean: s.mean,
            std_err: s.std_err,
            statistic: statistic.to_string(),
            lo99: s.lo99,
            hi99: s.hi99,
            seed,
        }
    }

    pub fn fields(&self) -> [String; 9] {
        [
            self.kind.clone(),
            self.n.to_string(),
            self.trials.to_string(),
            fmt_f64(self.mean),
            fmt_f64(self.std_err),
            self.statistic.clone(),
            fmt_f64(self.lo99),
            fmt_f64(self.hi99),
            self.seed.to_string(),
        ]
    }
}

/// Shortest round-trip form; identical on every platform.
pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        "NaN".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{x}")
    }
}

/// Everything an experiment produces. No timing: that lives in the manifest.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub kind: String,
    pub spec_hash: String,
    pub seed: u64,
    pub rows: Vec<Row>,
    /// Kind-specific estimates, checks and tables.
    pub details: serde_json::Value,
}

impl RunRecord {
    pub fn row(&self, n: u64, statistic: &str) -> Option<&Row> {
        self.rows.iter().find(|r| r.n == n && r.statistic == statistic)
    }
}
