//! Geometric and exponential potential gain by truncated walk series.
//!
//! Both metrics weight the count of length-k walks ending at a node:
//! geometrically (δ^{k−1}, closed form A(I−δA)⁻¹·1) or factorially
//! (1/(k−1)!, closed form A·exp(A)·1). Each term comes from one sparse
//! matrix–vector product, so a k-term truncation costs O(k·|E|) time and
//! O(|E|) memory beyond the graph.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::score::{Metric, ScoreVector};
use crate::spectral::SpectralEstimate;

/// Relative-increment stopping tolerance default.
pub const DEFAULT_SERIES_TOL: f64 = 1e-12;
/// Default walk-length cap for the geometric series.
pub const GEOMETRIC_K_MAX: usize = 100;
/// Admissibility bound multiplier: delta must stay below 0.9999/λ₁.
pub const DELTA_SAFETY_MARGIN: f64 = 0.9999;
/// The exponential series peaks near e^{λ₁}; beyond this λ₁ it would
/// overflow f64.
pub const OVERFLOW_LAMBDA_LIMIT: f64 = 650.0;
/// A reference truncation whose last relative increment exceeds this is
/// rejected as a surrogate ground truth.
pub const REFERENCE_REL_LIMIT: f64 = 1e-12;

/// Classical Katz convention: the midpoint of the useful admissible range.
pub fn default_delta(lambda1: f64) -> f64 {
    1.0 / (2.0 * lambda1)
}

/// Default cap for the exponential series: ⌈4eλ₁⌉, double the length at
/// which the factorial decay provably dominates.
pub fn exponential_k_max(lambda1: f64) -> usize {
    ((4.0 * std::f64::consts::E * lambda1).ceil() as usize).max(8)
}

pub fn default_k_ref(k_max: usize) -> usize {
    2 * k_max + 20
}

/// Truncation parameters for a series run.
#[derive(Debug, Clone, Copy)]
pub struct SeriesConfig {
    /// Geometric decay parameter δ; ignored by the exponential variant.
    pub delta: f64,
    /// Maximum walk length k*.
    pub k_max: usize,
    /// Relative-increment stopping tolerance.
    pub tol: f64,
    /// Reference length for the surrogate ground truth in ε curves;
    /// must exceed k_max when a curve is requested.
    pub k_ref: usize,
}

impl SeriesConfig {
    pub fn geometric(delta: f64) -> Self {
        SeriesConfig {
            delta,
            k_max: GEOMETRIC_K_MAX,
            tol: DEFAULT_SERIES_TOL,
            k_ref: default_k_ref(GEOMETRIC_K_MAX),
        }
    }

    pub fn exponential(lambda1: f64) -> Self {
        let k_max = exponential_k_max(lambda1);
        SeriesConfig {
            delta: 0.0,
            k_max,
            tol: DEFAULT_SERIES_TOL,
            k_ref: default_k_ref(k_max),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Geometric,
    Exponential,
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Variant::Geometric => "geometric",
            Variant::Exponential => "exponential",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    Tolerance,
    KMax,
}

#[derive(Debug, Clone, Serialize)]
pub struct SeriesStep {
    /// Walk length.
    pub k: usize,
    /// ‖term_k‖₂.
    pub increment_norm: f64,
    /// ‖partial sum through k‖₂.
    pub partial_norm: f64,
    /// Relative L2 distance to the k_ref reference; only set by curve runs.
    pub epsilon: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceReport {
    pub variant: Variant,
    pub delta: Option<f64>,
    pub lambda1: f64,
    pub steps: Vec<SeriesStep>,
    pub stop_reason: StopReason,
    /// Median ratio of successive ε values (curve runs) or increment norms
    /// over the last third of the recorded steps.
    pub rate_estimate: Option<f64>,
}

impl ConvergenceReport {
    /// The JSON header written next to the ε(k) CSV.
    pub fn header_json(&self) -> serde_json::Value {
        serde_json::json!({
            "variant": self.variant,
            "delta": self.delta,
            "lambda1": self.lambda1,
            "rate_estimate": self.rate_estimate,
            "stop_reason": self.stop_reason,
        })
    }
}

fn l2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn l2_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

pub(crate) struct SeriesRun {
    pub sum: Vec<f64>,
    pub steps: Vec<SeriesStep>,
    pub stop: StopReason,
}

/// Shared recurrence: term_0 = 1, term_k = factor(k)·A·term_{k−1}, summed
/// from k = 1 (plus the all-ones term when `include_initial_ones`). Stops
/// once ‖term_k‖/‖sum‖ < tol or at k_max; tol = 0 forces exactly k_max
/// terms. `epsilon` is evaluated on each partial sum for curve runs.
pub(crate) fn truncated_series<F, E>(
    g: &Graph,
    include_initial_ones: bool,
    factor: F,
    k_max: usize,
    tol: f64,
    mut epsilon: E,
) -> SeriesRun
where
    F: Fn(usize) -> f64,
    E: FnMut(&[f64]) -> Option<f64>,
{
    let n = g.node_count();
    let mut term = vec![1.0; n];
    let mut sum = if include_initial_ones {
        term.clone()
    } else {
        vec![0.0; n]
    };
    let mut next = vec![0.0; n];
    let mut steps = Vec::new();
    let mut stop = StopReason::KMax;
    for k in 1..=k_max {
        g.spmv_into(&term, &mut next);
        let f = factor(k);
        if f != 1.0 {
            for v in &mut next {
                *v *= f;
            }
        }
        std::mem::swap(&mut term, &mut next);
        for (s, t) in sum.iter_mut().zip(&term) {
            *s += t;
        }
        let increment_norm = l2(&term);
        let partial_norm = l2(&sum);
        steps.push(SeriesStep {
            k,
            increment_norm,
            partial_norm,
            epsilon: epsilon(&sum),
        });
        if increment_norm < tol * partial_norm {
            stop = StopReason::Tolerance;
            break;
        }
    }
    SeriesRun { sum, steps, stop }
}

fn geometric_factor(delta: f64) -> impl Fn(usize) -> f64 {
    move |k| if k == 1 { 1.0 } else { delta }
}

fn exponential_factor() -> impl Fn(usize) -> f64 {
    |k| if k == 1 { 1.0 } else { 1.0 / (k - 1) as f64 }
}

pub(crate) fn require_converged(spectral: &SpectralEstimate) -> Result<()> {
    if spectral.converged {
        Ok(())
    } else {
        Err(Error::NonConvergence {
            iterations: spectral.iterations,
        })
    }
}

/// delta must sit in [0, 0.9999/λ₁); anything else risks divergence.
pub(crate) fn check_geometric_delta(delta: f64, spectral: &SpectralEstimate) -> Result<()> {
    require_converged(spectral)?;
    if !delta.is_finite() || delta < 0.0 {
        return Err(Error::Domain(format!(
            "delta must be finite and non-negative, got {delta}"
        )));
    }
    let limit = DELTA_SAFETY_MARGIN / spectral.lambda1;
    if delta >= limit {
        return Err(Error::DivergenceRisk { delta, limit });
    }
    Ok(())
}

pub(crate) fn check_exponential_guard(spectral: &SpectralEstimate) -> Result<()> {
    require_converged(spectral)?;
    if spectral.lambda1 > OVERFLOW_LAMBDA_LIMIT {
        return Err(Error::OverflowRisk {
            lambda1: spectral.lambda1,
            limit: OVERFLOW_LAMBDA_LIMIT,
        });
    }
    Ok(())
}

fn check_common(cfg: &SeriesConfig) -> Result<()> {
    if cfg.k_max == 0 {
        return Err(Error::Domain("k_max must be at least 1".into()));
    }
    if cfg.tol.is_nan() || cfg.tol <= 0.0 {
        return Err(Error::Domain(format!("tol must be positive, got {}", cfg.tol)));
    }
    Ok(())
}

/// Median of consecutive ratios over the last third of `values`.
fn median_ratio_last_third(values: &[f64]) -> Option<f64> {
    let len = values.len();
    if len < 3 {
        return None;
    }
    let start = ((2 * len) / 3).max(1);
    let mut ratios: Vec<f64> = Vec::new();
    for i in start..len {
        let (prev, cur) = (values[i - 1], values[i]);
        if prev > 0.0 && cur > 0.0 && prev.is_finite() && cur.is_finite() {
            ratios.push(cur / prev);
        }
    }
    if ratios.is_empty() {
        return None;
    }
    ratios.sort_by(f64::total_cmp);
    let mid = ratios.len() / 2;
    Some(if ratios.len() % 2 == 1 {
        ratios[mid]
    } else {
        (ratios[mid - 1] + ratios[mid]) / 2.0
    })
}

fn report_from_run(
    run: SeriesRun,
    variant: Variant,
    delta: Option<f64>,
    lambda1: f64,
) -> (Vec<f64>, ConvergenceReport) {
    let increments: Vec<f64> = run.steps.iter().map(|s| s.increment_norm).collect();
    let rate_estimate = median_ratio_last_third(&increments);
    (
        run.sum,
        ConvergenceReport {
            variant,
            delta,
            lambda1,
            steps: run.steps,
            stop_reason: run.stop,
            rate_estimate,
        },
    )
}

/// Geometric potential gain g_k = Σ_{j=1..k} δ^{j−1}·A^j·1 via the
/// recurrence y₁ = A·1, y_j = (δA)·y_{j−1}.
pub fn geometric_potential_gain(
    g: &Graph,
    cfg: &SeriesConfig,
    spectral: &SpectralEstimate,
) -> Result<(ScoreVector, ConvergenceReport)> {
    check_common(cfg)?;
    check_geometric_delta(cfg.delta, spectral)?;
    let run = truncated_series(g, false, geometric_factor(cfg.delta), cfg.k_max, cfg.tol, |_| None);
    let (values, report) = report_from_run(run, Variant::Geometric, Some(cfg.delta), spectral.lambda1);
    let scores = ScoreVector::new(
        Metric::GeometricGain { delta: cfg.delta },
        values,
        g.fingerprint().to_string(),
    );
    Ok((scores, report))
}

/// Exponential potential gain e_k = Σ_{j=1..k} A^j/(j−1)!·1 via
/// t₁ = A·1, t_j = (A·t_{j−1})/(j−1). δ plays no role.
pub fn exponential_potential_gain(
    g: &Graph,
    cfg: &SeriesConfig,
    spectral: &SpectralEstimate,
) -> Result<(ScoreVector, ConvergenceReport)> {
    check_common(cfg)?;
    check_exponential_guard(spectral)?;
    let run = truncated_series(g, false, exponential_factor(), cfg.k_max, cfg.tol, |_| None);
    let (values, report) = report_from_run(run, Variant::Exponential, None, spectral.lambda1);
    let scores = ScoreVector::new(Metric::ExponentialGain, values, g.fingerprint().to_string());
    Ok((scores, report))
}

/// Snapshot of the truncated series after each k = 1..k_max. Diagnostic
/// surface used by tolerance checks: element k−1 holds the k-term sum.
pub fn series_partial_sums(g: &Graph, variant: Variant, delta: f64, k_max: usize) -> Vec<Vec<f64>> {
    let mut snapshots = Vec::with_capacity(k_max);
    let factor_geo = geometric_factor(delta);
    let factor_exp = exponential_factor();
    let factor: &dyn Fn(usize) -> f64 = match variant {
        Variant::Geometric => &factor_geo,
        Variant::Exponential => &factor_exp,
    };
    truncated_series(g, false, factor, k_max, 0.0, |sum| {
        snapshots.push(sum.to_vec());
        None
    });
    snapshots
}

/// ε(k) curve against a k_ref surrogate ground truth.
///
/// Runs the recurrence once to k_ref to form the reference (rejecting it if
/// the final relative increment is above 1e-12), then again to k_max,
/// recording ε(k) = ‖ref − sum_k‖₂/‖ref‖₂ for every k.
pub fn convergence_curve(
    g: &Graph,
    cfg: &SeriesConfig,
    variant: Variant,
    spectral: &SpectralEstimate,
) -> Result<ConvergenceReport> {
    check_common(cfg)?;
    match variant {
        Variant::Geometric => check_geometric_delta(cfg.delta, spectral)?,
        Variant::Exponential => check_exponential_guard(spectral)?,
    }
    if cfg.k_ref <= cfg.k_max {
        return Err(Error::Domain(format!(
            "k_ref ({}) must exceed k_max ({}) for a usable reference",
            cfg.k_ref, cfg.k_max
        )));
    }
    let factor_geo = geometric_factor(cfg.delta);
    let factor_exp = exponential_factor();
    let factor: &dyn Fn(usize) -> f64 = match variant {
        Variant::Geometric => &factor_geo,
        Variant::Exponential => &factor_exp,
    };

    let reference = truncated_series(g, false, factor, cfg.k_ref, 0.0, |_| None);
    let last = reference.steps.last().expect("k_ref >= 1");
    let rel_increment = last.increment_norm / last.partial_norm;
    if rel_increment > REFERENCE_REL_LIMIT {
        return Err(Error::UnreliableReference { rel_increment });
    }
    let ref_sum = reference.sum;
    let ref_norm = l2(&ref_sum);

    let run = truncated_series(g, false, factor, cfg.k_max, 0.0, |sum| {
        Some(l2_diff(&ref_sum, sum) / ref_norm)
    });
    let epsilons: Vec<f64> = run.steps.iter().filter_map(|s| s.epsilon).collect();
    let rate_estimate = median_ratio_last_third(&epsilons);
    Ok(ConvergenceReport {
        variant,
        delta: match variant {
            Variant::Geometric => Some(cfg.delta),
            Variant::Exponential => None,
        },
        lambda1: spectral.lambda1,
        steps: run.steps,
        stop_reason: run.stop,
        rate_estimate,
    })
}

/// The δ at which the geometric and exponential eigenvalue transforms of a
/// single eigenvalue coincide.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CrossoverPoint {
    pub delta_c: f64,
    /// Whether δ^c < 1/λ, the admissibility condition.
    pub admissible: bool,
}

/// δ^c = (e^λ − 1)/(λ·e^λ) = −expm1(−λ)/λ, satisfying
/// λ/(1 − δ^c·λ) = λ·e^λ exactly up to rounding.
pub fn crossover_delta(lambda: f64) -> Result<CrossoverPoint> {
    if !lambda.is_finite() {
        return Err(Error::Domain(format!("lambda must be finite, got {lambda}")));
    }
    if lambda == 0.0 {
        return Err(Error::Domain(
            "crossover is undefined at lambda = 0: the transforms coincide for every delta".into(),
        ));
    }
    let delta_c = -f64::exp_m1(-lambda) / lambda;
    Ok(CrossoverPoint {
        delta_c,
        admissible: delta_c < 1.0 / lambda,
    })
}

/// Spectra of the gain operators: λ ↦ λ/(1−δλ) (geometric) and λ ↦ λe^λ
/// (exponential). Errors on a pole δλ = 1.
pub fn eigenvalue_transforms(lambdas: &[f64], delta: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut geometric = Vec::with_capacity(lambdas.len());
    let mut exponential = Vec::with_capacity(lambdas.len());
    for &lambda in lambdas {
        let denom = 1.0 - delta * lambda;
        if denom == 0.0 {
            return Err(Error::Domain(format!(
                "pole: delta*lambda = 1 at lambda = {lambda}, delta = {delta}"
            )));
        }
        geometric.push(lambda / denom);
        exponential.push(lambda * lambda.exp());
    }
    Ok((geometric, exponential))
}
