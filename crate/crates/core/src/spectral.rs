//! Spectral radius estimation by power iteration.
//!
//! The iteration runs on the shifted operator A + I so that bipartite
//! spectra (symmetric around zero, raw power iteration oscillates between
//! ±λ₁) still have a strictly dominant eigenvalue λ₁ + 1. The reported
//! quantity is always the Rayleigh quotient of A itself.

use serde::Serialize;

use crate::graph::Graph;
use crate::score::{Metric, ScoreVector};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_ITERS: usize = 10_000;

#[derive(Debug, Clone, Serialize)]
pub struct SpectralEstimate {
    pub lambda1: f64,
    pub iterations: usize,
    /// Relative change of the Rayleigh quotient at termination.
    pub residual: f64,
    pub converged: bool,
}

fn l2_norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Power iteration on A + I from the all-ones start vector, reporting the
/// Rayleigh quotient of A. Stops when successive Rayleigh quotients change
/// relatively by less than `tol`. Non-convergence is flagged, not an error.
pub fn estimate_spectral_radius(g: &Graph, tol: f64, max_iters: usize) -> SpectralEstimate {
    let n = g.node_count();
    let mut v = vec![1.0 / (n as f64).sqrt(); n];
    let mut av = vec![0.0; n];
    let mut rayleigh_prev = f64::NAN;
    let mut rel_change = f64::INFINITY;
    for iter in 1..=max_iters {
        g.spmv_into(&v, &mut av);
        let rayleigh = dot(&v, &av);
        debug_assert!(
            rayleigh <= g.max_degree() as f64 + 1e-9,
            "Rayleigh quotient {rayleigh} above max degree"
        );
        if iter > 1 {
            rel_change = (rayleigh - rayleigh_prev).abs() / rayleigh.abs().max(f64::MIN_POSITIVE);
            if rel_change < tol {
                return SpectralEstimate {
                    lambda1: rayleigh,
                    iterations: iter,
                    residual: rel_change,
                    converged: true,
                };
            }
        }
        rayleigh_prev = rayleigh;
        // shifted step: w = (A + I)v, then normalize
        for i in 0..n {
            av[i] += v[i];
        }
        let norm = l2_norm(&av);
        for i in 0..n {
            v[i] = av[i] / norm;
        }
    }
    SpectralEstimate {
        lambda1: rayleigh_prev,
        iterations: max_iters,
        residual: rel_change,
        converged: false,
    }
}

/// Spectral radius with the default tolerance and iteration budget.
pub fn radius(g: &Graph) -> SpectralEstimate {
    estimate_spectral_radius(g, DEFAULT_TOL, DEFAULT_MAX_ITERS)
}

#[derive(Debug, Clone)]
pub struct PrincipalEigenvector {
    /// Unit-L2, entrywise non-negative; strictly positive on connected graphs.
    pub scores: ScoreVector,
    pub estimate: SpectralEstimate,
    /// False means the Perron vector is supported on a subset of components;
    /// callers should surface a warning.
    pub connected: bool,
}

/// Dominant eigenvector by the same shifted iteration, but with a
/// residual-based stop: ‖Av − ρv‖₂ ≤ tol·max(ρ, 1) for unit v. The looser
/// Rayleigh-change criterion is not enough when the vector itself is the
/// result.
pub fn principal_eigenvector(g: &Graph, tol: f64, max_iters: usize) -> PrincipalEigenvector {
    let n = g.node_count();
    let connected = g.is_connected();
    let mut v = vec![1.0 / (n as f64).sqrt(); n];
    let mut av = vec![0.0; n];
    let mut rayleigh = 0.0;
    let mut residual = f64::INFINITY;
    let mut iterations = max_iters;
    let mut converged = false;
    for iter in 1..=max_iters {
        g.spmv_into(&v, &mut av);
        rayleigh = dot(&v, &av);
        let mut resid_sq = 0.0;
        for i in 0..n {
            let r = av[i] - rayleigh * v[i];
            resid_sq += r * r;
        }
        residual = resid_sq.sqrt();
        if residual <= tol * rayleigh.abs().max(1.0) {
            iterations = iter;
            converged = true;
            break;
        }
        for i in 0..n {
            av[i] += v[i];
        }
        let norm = l2_norm(&av);
        for i in 0..n {
            v[i] = av[i] / norm;
        }
    }
    // iterates stay non-negative; renormalize so the result is exactly unit
    let norm = l2_norm(&v);
    for x in &mut v {
        *x = x.abs() / norm;
    }
    let estimate = SpectralEstimate {
        lambda1: rayleigh,
        iterations,
        residual: residual / rayleigh.abs().max(f64::MIN_POSITIVE),
        converged,
    };
    PrincipalEigenvector {
        scores: ScoreVector::new(Metric::Eigenvector, v, g.fingerprint().to_string()),
        estimate,
        connected,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    #[test]
    fn complete_graph_radius() {
        let g = generate::complete(3);
        let est = estimate_spectral_radius(&g, 1e-12, 10_000);
        assert!(est.converged);
        assert!((est.lambda1 - 2.0).abs() < 1e-10);
    }

    #[test]
    fn star_radius_is_sqrt_leaves() {
        let g = generate::star(4);
        let est = estimate_spectral_radius(&g, 1e-12, 10_000);
        assert!((est.lambda1 - 2.0).abs() < 1e-10);
    }

    #[test]
    fn path3_radius() {
        let g = generate::path(3);
        let est = estimate_spectral_radius(&g, 1e-12, 10_000);
        assert!((est.lambda1 - 2.0f64.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn even_cycles_need_the_shift() {
        // bipartite spectrum ±2; the shifted iteration settles at exactly 2
        for n in [4usize, 6, 8, 10] {
            let g = generate::cycle(n);
            let est = estimate_spectral_radius(&g, 1e-12, 10_000);
            assert!(est.converged);
            assert!((est.lambda1 - 2.0).abs() < 1e-9, "C{n}: {}", est.lambda1);
        }
    }

    #[test]
    fn estimate_bounded_by_degrees() {
        let mut rng = crate::generate::seeded_rng(7);
        for _ in 0..20 {
            let g = generate::gnp_connected(20, 0.3, &mut rng);
            let est = estimate_spectral_radius(&g, 1e-10, 10_000);
            let max_deg = g.max_degree() as f64;
            let avg_deg = 2.0 * g.edge_count() as f64 / g.node_count() as f64;
            assert!(est.lambda1 <= max_deg + 1e-9);
            assert!(est.lambda1 >= avg_deg - 1e-6);
            assert!(est.lambda1 >= max_deg.sqrt() - 1e-6);
        }
    }

    #[test]
    fn eigenvector_uniform_on_complete() {
        let g = generate::complete(5);
        let r = principal_eigenvector(&g, 1e-12, 10_000);
        assert!(r.estimate.converged);
        let expect = 1.0 / 5.0f64.sqrt();
        for v in &r.scores.values {
            assert!((v - expect).abs() < 1e-10);
        }
    }

    #[test]
    fn eigenvector_star_ratio_is_lambda() {
        let g = generate::star(4);
        let r = principal_eigenvector(&g, 1e-12, 100_000);
        let center = g.index_of("0").unwrap();
        let leaf = g.index_of("1").unwrap();
        let ratio = r.scores.values[center] / r.scores.values[leaf];
        assert!((ratio - 2.0).abs() < 1e-8, "ratio {ratio}");
    }

    #[test]
    fn eigenvector_matches_jacobi_oracle() {
        let mut rng = crate::generate::seeded_rng(12);
        let g = generate::gnp_connected(12, 0.5, &mut rng);
        let r = principal_eigenvector(&g, 1e-13, 100_000);
        let dense = crate::oracle::dense_from_graph(&g).unwrap();
        let eig = crate::oracle::dense_symmetric_eigen(&dense, 1e-13).unwrap();
        let n = g.node_count();
        let mut reference: Vec<f64> = (0..n).map(|i| eig.eigenvectors.get(i, 0)).collect();
        if reference.iter().sum::<f64>() < 0.0 {
            for v in &mut reference {
                *v = -*v;
            }
        }
        for i in 0..n {
            assert!(
                (r.scores.values[i] - reference[i]).abs() < 1e-8,
                "component {i}: {} vs {}",
                r.scores.values[i],
                reference[i]
            );
        }
    }

    #[test]
    fn residual_invariant_holds() {
        let mut rng = crate::generate::seeded_rng(3);
        let g = generate::gnp_connected(30, 0.2, &mut rng);
        let tol = 1e-11;
        let r = principal_eigenvector(&g, tol, 100_000);
        let av = g.spmv(&r.scores.values).unwrap();
        let lambda = r.estimate.lambda1;
        let mut resid = 0.0;
        for i in 0..g.node_count() {
            let d = av[i] - lambda * r.scores.values[i];
            resid += d * d;
        }
        let resid = resid.sqrt() / l2_norm(&r.scores.values);
        assert!(resid <= 10.0 * tol * lambda, "residual {resid}");
    }

    #[test]
    fn disconnected_graph_flags_warning() {
        let (g, _) = crate::graph::Graph::from_index_edges(&[(0, 1), (2, 3)]).unwrap();
        let r = principal_eigenvector(&g, 1e-10, 10_000);
        assert!(!r.connected);
    }
}
