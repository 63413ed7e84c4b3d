//! walkgain — sparse-graph centrality by truncated walk series.
//!
//! The toolkit computes the geometric and exponential potential gain of
//! every node — walk-count scores with geometric (δ^{k−1}) or factorial
//! (1/(k−1)!) length penalties — through sparse recurrences with certified
//! truncation error, alongside the classic baselines (degree, Katz,
//! eigenvector, PageRank, communicability) and the Spearman rank-correlation
//! protocol used to compare them.
//!
//! Module map:
//! - [`graph`]: CSR storage, edge-list ingestion, spmv
//! - [`spectral`]: power-iteration spectral radius and Perron vector
//! - [`gain`]: the gain series, ε(k) curves, crossover and spectrum transforms
//! - [`baselines`]: comparison centralities
//! - [`rank`]: Spearman ρ, δ sweeps, pairwise tables
//! - [`oracle`]: dense brute-force references for verification
//! - [`generate`]: fixtures and random corpora
//! - [`export`], [`manifest`]: file formats behind the CLI

pub mod baselines;
pub mod error;
pub mod export;
pub mod gain;
pub mod generate;
pub mod graph;
pub mod manifest;
pub mod oracle;
pub mod rank;
pub mod score;
pub mod spectral;
pub mod verify;

pub use error::{Error, Result};
pub use gain::{ConvergenceReport, SeriesConfig, StopReason, Variant};
pub use graph::{Graph, LoadSummary};
pub use score::{Metric, ScoreVector};
pub use spectral::SpectralEstimate;
