//! Sparse-vs-dense equivalence over a random corpus: every sparse metric is
//! recomputed by the dense oracle and the worst relative deviation per
//! metric is reported.

use crate::baselines;
use crate::error::Result;
use crate::gain::{self, SeriesConfig};
use crate::generate;
use crate::graph::Graph;
use crate::oracle;
use crate::spectral;

pub const DEFAULT_THRESHOLD: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct MetricDeviation {
    pub metric: &'static str,
    pub max_rel_dev: f64,
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub seed: u64,
    pub corpus_size: usize,
    pub threshold: f64,
    pub deviations: Vec<MetricDeviation>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.deviations.iter().all(|d| d.max_rel_dev <= self.threshold)
    }
}

fn max_rel_dev(got: &[f64], want: &[f64]) -> f64 {
    got.iter()
        .zip(want)
        .map(|(g, w)| (g - w).abs() / w.abs())
        .fold(0.0, f64::max)
}

/// Run all six metrics against their dense counterparts on each corpus
/// graph, tracking the worst deviation seen per metric.
pub fn oracle_equivalence(seed: u64, corpus_size: usize, threshold: f64) -> Result<VerifyReport> {
    let corpus = generate::random_corpus(seed, corpus_size);
    let mut worst = [0.0f64; 6];
    for g in &corpus {
        let devs = check_graph(g)?;
        for (w, d) in worst.iter_mut().zip(devs) {
            *w = w.max(d);
        }
    }
    let names = ["gpg", "epg", "katz", "communicability", "eigenvector", "pagerank"];
    Ok(VerifyReport {
        seed,
        corpus_size,
        threshold,
        deviations: names
            .iter()
            .zip(worst)
            .map(|(metric, max_rel_dev)| MetricDeviation { metric, max_rel_dev })
            .collect(),
    })
}

/// Deviations for one graph, in the order gpg, epg, katz, communicability,
/// eigenvector, pagerank.
pub fn check_graph(g: &Graph) -> Result<[f64; 6]> {
    let est = spectral::estimate_spectral_radius(g, 1e-13, 500_000);
    let delta = 0.5 / est.lambda1;
    let dense = oracle::dense_from_graph(g)?;

    let cfg = SeriesConfig {
        delta,
        k_max: 600,
        tol: 1e-14,
        k_ref: 1220,
    };
    let (gpg, _) = gain::geometric_potential_gain(g, &cfg, &est)?;
    let katz = baselines::katz(g, delta, 1e-14, 600, &est)?;
    let neumann = oracle::dense_neumann_solve(&dense, delta)?;

    let mut epg_cfg = SeriesConfig::exponential(est.lambda1);
    epg_cfg.tol = 1e-15;
    epg_cfg.k_max = epg_cfg.k_max.max(60) * 2;
    let (epg, _) = gain::exponential_potential_gain(g, &epg_cfg, &est)?;
    let comm = baselines::communicability_centrality(g, 1e-15, epg_cfg.k_max, &est)?;
    let expm = oracle::dense_expm_action(&dense)?;

    let ec = baselines::eigenvector_centrality(g, 1e-13, 1_000_000);
    let eig = oracle::dense_symmetric_eigen(&dense, 1e-13)?;
    let n = g.node_count();
    let mut perron: Vec<f64> = (0..n).map(|i| eig.eigenvectors.get(i, 0)).collect();
    if perron.iter().sum::<f64>() < 0.0 {
        for v in &mut perron {
            *v = -*v;
        }
    }

    let pr = baselines::pagerank(g, 0.85, 1e-14, 100_000)?;
    let dense_pr = oracle::dense_pagerank(&dense, 0.85)?;

    Ok([
        max_rel_dev(&gpg.values, &neumann.gain),
        max_rel_dev(&epg.values, &expm.gain),
        max_rel_dev(&katz.values, &neumann.katz),
        max_rel_dev(&comm.values, &expm.exp_ones),
        max_rel_dev(&ec.scores.values, &perron),
        max_rel_dev(&pr.scores.values, &dense_pr),
    ])
}
