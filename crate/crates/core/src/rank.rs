//! Spearman rank correlation and the δ-sweep / pairwise-table protocol.
//!
//! Ties receive fractional (average) ranks; ρ is the Pearson correlation of
//! the rank vectors. Constant inputs have zero rank variance and yield an
//! undefined correlation, reported as such rather than 0 or 1 — regular
//! graphs produce constant centralities, so this case is routine.

use serde::Serialize;

use crate::baselines;
use crate::error::{Error, Result};
use crate::gain::{self, SeriesConfig};
use crate::graph::Graph;
use crate::score::ScoreVector;
use crate::spectral::SpectralEstimate;

/// Fractional ranks, 1-based; tied values share the average of the
/// positions they occupy.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let mut ranks = vec![0.0; n];
    let mut pos = 0;
    while pos < n {
        let mut end = pos + 1;
        while end < n && values[order[end]] == values[order[pos]] {
            end += 1;
        }
        // positions pos..end are 1-based ranks pos+1..=end
        let rank = (pos + 1 + end) as f64 / 2.0;
        for &i in &order[pos..end] {
            ranks[i] = rank;
        }
        pos = end;
    }
    ranks
}

/// Spearman ρ on raw slices.
pub fn spearman_rho_values(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            actual: b.len(),
        });
    }
    if a.len() < 2 {
        return Err(Error::Domain(
            "spearman correlation needs at least two observations".into(),
        ));
    }
    let ra = average_ranks(a);
    let rb = average_ranks(b);
    pearson(&ra, &rb)
}

fn pearson(x: &[f64], y: &[f64]) -> Result<f64> {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (a, b) in x.iter().zip(y) {
        let dx = a - mx;
        let dy = b - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::UndefinedCorrelation);
    }
    // single sqrt keeps rho(a, a) exactly 1
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// Spearman ρ between two score vectors from the same graph.
pub fn spearman_rho(a: &ScoreVector, b: &ScoreVector) -> Result<f64> {
    if a.graph_fingerprint != b.graph_fingerprint {
        return Err(Error::Domain(
            "score vectors were computed on different graphs".into(),
        ));
    }
    spearman_rho_values(&a.values, &b.values)
}

/// 20 log-spaced grid points in [10⁻³/λ₁, 0.999/λ₁].
pub fn default_delta_grid(lambda1: f64) -> Vec<f64> {
    delta_grid(lambda1, 1e-3, 0.999, 20)
}

/// Log-spaced δ values between lo/λ₁ and hi/λ₁ inclusive.
pub fn delta_grid(lambda1: f64, lo_ratio: f64, hi_ratio: f64, points: usize) -> Vec<f64> {
    assert!(points >= 2 && lo_ratio > 0.0 && hi_ratio > lo_ratio);
    let lo = (lo_ratio / lambda1).ln();
    let hi = (hi_ratio / lambda1).ln();
    (0..points)
        .map(|i| (lo + (hi - lo) * i as f64 / (points - 1) as f64).exp())
        .collect()
}

/// Metrics a sweep can correlate against the geometric gain. Katz is
/// re-evaluated at each grid δ; the rest are δ-independent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepMetric {
    Degree,
    Katz,
    Eigenvector,
    PageRank,
    ExponentialGain,
}

impl SweepMetric {
    pub const ALL: [SweepMetric; 5] = [
        SweepMetric::Degree,
        SweepMetric::Katz,
        SweepMetric::Eigenvector,
        SweepMetric::PageRank,
        SweepMetric::ExponentialGain,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SweepMetric::Degree => "degree",
            SweepMetric::Katz => "katz",
            SweepMetric::Eigenvector => "eigenvector",
            SweepMetric::PageRank => "pagerank",
            SweepMetric::ExponentialGain => "epg",
        }
    }
}

impl std::str::FromStr for SweepMetric {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "degree" => Ok(SweepMetric::Degree),
            "katz" => Ok(SweepMetric::Katz),
            "eigenvector" => Ok(SweepMetric::Eigenvector),
            "pagerank" => Ok(SweepMetric::PageRank),
            "epg" => Ok(SweepMetric::ExponentialGain),
            other => Err(format!("unknown sweep metric {other:?}")),
        }
    }
}

/// Shared iteration parameters for sweeps and tables.
#[derive(Debug, Clone, Copy)]
pub struct AnalysisParams {
    pub series_tol: f64,
    pub k_max: usize,
    pub alpha: f64,
    pub eigen_tol: f64,
    pub eigen_max_iters: usize,
    pub pagerank_tol: f64,
    pub pagerank_max_iters: usize,
}

impl Default for AnalysisParams {
    fn default() -> Self {
        AnalysisParams {
            series_tol: gain::DEFAULT_SERIES_TOL,
            k_max: 400,
            alpha: baselines::DEFAULT_PAGERANK_ALPHA,
            eigen_tol: 1e-12,
            eigen_max_iters: 100_000,
            pagerank_tol: baselines::DEFAULT_PAGERANK_TOL,
            pagerank_max_iters: baselines::DEFAULT_PAGERANK_MAX_ITERS,
        }
    }
}

/// ρ(GPG, X) per metric across a δ grid. `None` marks an undefined
/// correlation (constant ranking).
#[derive(Debug, Clone)]
pub struct SweepResult {
    pub delta_grid: Vec<f64>,
    pub metrics: Vec<SweepMetric>,
    /// rho[grid index][metric index]
    pub rho: Vec<Vec<Option<f64>>>,
}

pub fn delta_sweep(
    g: &Graph,
    grid: &[f64],
    metrics: &[SweepMetric],
    spectral: &SpectralEstimate,
    params: &AnalysisParams,
) -> Result<SweepResult> {
    if grid.is_empty() {
        return Err(Error::Domain("delta grid is empty".into()));
    }
    if !grid.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::Domain("delta grid must be strictly increasing".into()));
    }
    for &delta in grid {
        gain::check_geometric_delta(delta, spectral)?;
    }

    let degree = baselines::degree_centrality(g);
    let eigenvector = if metrics.contains(&SweepMetric::Eigenvector) {
        Some(baselines::eigenvector_centrality(g, params.eigen_tol, params.eigen_max_iters).scores)
    } else {
        None
    };
    let pr = if metrics.contains(&SweepMetric::PageRank) {
        Some(
            baselines::pagerank(g, params.alpha, params.pagerank_tol, params.pagerank_max_iters)?
                .scores,
        )
    } else {
        None
    };
    let epg = if metrics.contains(&SweepMetric::ExponentialGain) {
        let mut cfg = SeriesConfig::exponential(spectral.lambda1);
        cfg.tol = params.series_tol;
        Some(gain::exponential_potential_gain(g, &cfg, spectral)?.0)
    } else {
        None
    };

    let mut rho = Vec::with_capacity(grid.len());
    for &delta in grid {
        let cfg = SeriesConfig {
            delta,
            k_max: params.k_max,
            tol: params.series_tol,
            k_ref: gain::default_k_ref(params.k_max),
        };
        let (gpg, _) = gain::geometric_potential_gain(g, &cfg, spectral)?;
        let mut row = Vec::with_capacity(metrics.len());
        for metric in metrics {
            let other = match metric {
                SweepMetric::Degree => degree.clone(),
                SweepMetric::Katz => {
                    baselines::katz(g, delta, params.series_tol, params.k_max, spectral)?
                }
                SweepMetric::Eigenvector => eigenvector.clone().expect("precomputed"),
                SweepMetric::PageRank => pr.clone().expect("precomputed"),
                SweepMetric::ExponentialGain => epg.clone().expect("precomputed"),
            };
            row.push(option_rho(&gpg, &other)?);
        }
        rho.push(row);
    }
    Ok(SweepResult {
        delta_grid: grid.to_vec(),
        metrics: metrics.to_vec(),
        rho,
    })
}

/// Undefined correlations become None; real errors propagate.
fn option_rho(a: &ScoreVector, b: &ScoreVector) -> Result<Option<f64>> {
    match spearman_rho(a, b) {
        Ok(rho) => Ok(Some(rho)),
        Err(Error::UndefinedCorrelation) => Ok(None),
        Err(other) => Err(other),
    }
}

pub const TABLE_METRICS: [&str; 6] = ["degree", "eigenvector", "pagerank", "katz", "gpg", "epg"];

/// Pairwise Spearman ρ over {DEG, EC, PR, Katz, GPG, EPG} at one δ.
#[derive(Debug, Clone)]
pub struct CorrelationTable {
    pub metrics: Vec<&'static str>,
    pub delta: f64,
    /// Symmetric with a unit diagonal; None marks undefined entries.
    pub rho: Vec<Vec<Option<f64>>>,
}

pub fn correlation_table(
    g: &Graph,
    delta: f64,
    spectral: &SpectralEstimate,
    params: &AnalysisParams,
) -> Result<CorrelationTable> {
    gain::check_geometric_delta(delta, spectral)?;
    let cfg = SeriesConfig {
        delta,
        k_max: params.k_max,
        tol: params.series_tol,
        k_ref: gain::default_k_ref(params.k_max),
    };
    let mut epg_cfg = SeriesConfig::exponential(spectral.lambda1);
    epg_cfg.tol = params.series_tol;

    let columns: Vec<ScoreVector> = vec![
        baselines::degree_centrality(g),
        baselines::eigenvector_centrality(g, params.eigen_tol, params.eigen_max_iters).scores,
        baselines::pagerank(g, params.alpha, params.pagerank_tol, params.pagerank_max_iters)?
            .scores,
        baselines::katz(g, delta, params.series_tol, params.k_max, spectral)?,
        gain::geometric_potential_gain(g, &cfg, spectral)?.0,
        gain::exponential_potential_gain(g, &epg_cfg, spectral)?.0,
    ];

    let m = columns.len();
    let mut rho = vec![vec![None; m]; m];
    for i in 0..m {
        rho[i][i] = Some(1.0);
        for j in (i + 1)..m {
            let value = option_rho(&columns[i], &columns[j])?;
            rho[i][j] = value;
            rho[j][i] = value;
        }
    }
    Ok(CorrelationTable {
        metrics: TABLE_METRICS.to_vec(),
        delta,
        rho,
    })
}
