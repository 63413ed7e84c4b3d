//! The comparison centralities: degree, Katz, eigenvector, PageRank and
//! communicability. Katz and communicability reuse the truncated-series
//! machinery; eigenvector delegates to the spectral module.

use crate::error::{Error, Result};
use crate::gain::{
    check_exponential_guard, check_geometric_delta, truncated_series, SeriesConfig,
};
use crate::graph::Graph;
use crate::score::{Metric, ScoreVector};
use crate::spectral::{self, PrincipalEigenvector, SpectralEstimate};

pub const DEFAULT_PAGERANK_ALPHA: f64 = 0.85;
pub const DEFAULT_PAGERANK_TOL: f64 = 1e-12;
pub const DEFAULT_PAGERANK_MAX_ITERS: usize = 10_000;

/// Degree as a score vector.
pub fn degree_centrality(g: &Graph) -> ScoreVector {
    let values = g.degrees().iter().map(|&d| d as f64).collect();
    ScoreVector::new(Metric::Degree, values, g.fingerprint().to_string())
}

/// Katz centrality (I − δA)⁻¹·1 by the truncated Neumann series
/// Σ_{j≥0} δ^j A^j·1, j = 0 term included.
pub fn katz(
    g: &Graph,
    delta: f64,
    tol: f64,
    k_max: usize,
    spectral: &SpectralEstimate,
) -> Result<ScoreVector> {
    check_geometric_delta(delta, spectral)?;
    if k_max == 0 {
        return Err(Error::Domain("k_max must be at least 1".into()));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Domain(format!("tol must be positive, got {tol}")));
    }
    let run = truncated_series(g, true, |_| delta, k_max, tol, |_| None);
    Ok(ScoreVector::new(
        Metric::Katz { delta },
        run.sum,
        g.fingerprint().to_string(),
    ))
}

pub fn katz_with(g: &Graph, delta: f64, spectral: &SpectralEstimate) -> Result<ScoreVector> {
    let cfg = SeriesConfig::geometric(delta);
    katz(g, delta, cfg.tol, cfg.k_max, spectral)
}

#[derive(Debug, Clone)]
pub struct PageRankResult {
    /// Probability convention: entries sum to 1.
    pub scores: ScoreVector,
    pub iterations: usize,
    pub converged: bool,
}

/// PageRank as the damped series (1−α)·Σ_{k≥0} α^k (Āᵀ)^k·u with Ā the
/// row-normalized adjacency and u uniform. Undirected loading guarantees
/// no dangling nodes. The result is renormalized to sum exactly to 1.
pub fn pagerank(g: &Graph, alpha: f64, tol: f64, max_iters: usize) -> Result<PageRankResult> {
    if alpha.is_nan() || alpha <= 0.0 || alpha >= 1.0 {
        return Err(Error::Domain(format!(
            "pagerank damping factor must lie in (0, 1), got {alpha}"
        )));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Domain(format!("tol must be positive, got {tol}")));
    }
    let n = g.node_count();
    let inv_degree: Vec<f64> = (0..n).map(|i| 1.0 / g.degree(i) as f64).collect();
    let mut term = vec![1.0 / n as f64; n];
    let mut scores: Vec<f64> = term.iter().map(|v| (1.0 - alpha) * v).collect();
    let mut scaled = vec![0.0; n];
    let mut next = vec![0.0; n];
    let mut converged = false;
    let mut iterations = max_iters;
    for iter in 1..=max_iters {
        // (Āᵀ x)_i = Σ_{j ∈ N(i)} x_j / d_j, i.e. one spmv on x/d
        for i in 0..n {
            scaled[i] = term[i] * inv_degree[i];
        }
        g.spmv_into(&scaled, &mut next);
        for v in &mut next {
            *v *= alpha;
        }
        std::mem::swap(&mut term, &mut next);
        let mut added = 0.0;
        for (s, t) in scores.iter_mut().zip(&term) {
            let a = (1.0 - alpha) * t;
            *s += a;
            added += a;
        }
        if added < tol {
            converged = true;
            iterations = iter;
            break;
        }
    }
    let total: f64 = scores.iter().sum();
    for v in &mut scores {
        *v /= total;
    }
    Ok(PageRankResult {
        scores: ScoreVector::new(
            Metric::PageRank { alpha },
            scores,
            g.fingerprint().to_string(),
        ),
        iterations,
        converged,
    })
}

/// Perron eigenvector, L2-normalized, all entries positive on connected
/// graphs.
pub fn eigenvector_centrality(g: &Graph, tol: f64, max_iters: usize) -> PrincipalEigenvector {
    spectral::principal_eigenvector(g, tol, max_iters)
}

/// Communicability centrality exp(A)·1 = Σ_{j≥0} A^j/j!·1, j = 0 included.
pub fn communicability_centrality(
    g: &Graph,
    tol: f64,
    k_max: usize,
    spectral: &SpectralEstimate,
) -> Result<ScoreVector> {
    check_exponential_guard(spectral)?;
    if k_max == 0 {
        return Err(Error::Domain("k_max must be at least 1".into()));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Domain(format!("tol must be positive, got {tol}")));
    }
    let run = truncated_series(g, true, |k| 1.0 / k as f64, k_max, tol, |_| None);
    Ok(ScoreVector::new(
        Metric::Communicability,
        run.sum,
        g.fingerprint().to_string(),
    ))
}
