use serde::Serialize;
use serde_json::json;

/// Which centrality a [`ScoreVector`] holds, with its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Metric {
    Degree,
    GeometricGain { delta: f64 },
    ExponentialGain,
    Katz { delta: f64 },
    Eigenvector,
    PageRank { alpha: f64 },
    Communicability,
}

impl Metric {
    pub fn name(&self) -> &'static str {
        match self {
            Metric::Degree => "degree",
            Metric::GeometricGain { .. } => "gpg",
            Metric::ExponentialGain => "epg",
            Metric::Katz { .. } => "katz",
            Metric::Eigenvector => "eigenvector",
            Metric::PageRank { .. } => "pagerank",
            Metric::Communicability => "communicability",
        }
    }

    /// Parameters as JSON, for the sidecar written next to score CSVs.
    pub fn parameters(&self) -> serde_json::Value {
        match self {
            Metric::GeometricGain { delta } | Metric::Katz { delta } => json!({ "delta": delta }),
            Metric::PageRank { alpha } => json!({ "alpha": alpha }),
            _ => json!({}),
        }
    }

    pub fn sidecar(&self) -> serde_json::Value {
        json!({ "metric": self.name(), "parameters": self.parameters() })
    }
}

impl std::fmt::Display for Metric {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Per-node centrality scores, bound to the graph they were computed on via
/// its fingerprint. Values are indexed by internal node index.
#[derive(Debug, Clone, Serialize)]
pub struct ScoreVector {
    #[serde(skip)]
    pub metric: Metric,
    pub values: Vec<f64>,
    pub graph_fingerprint: String,
}

impl ScoreVector {
    pub fn new(metric: Metric, values: Vec<f64>, graph_fingerprint: String) -> Self {
        ScoreVector {
            metric,
            values,
            graph_fingerprint,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}
