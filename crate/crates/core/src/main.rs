use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use walkgain::baselines;
use walkgain::error::{Error, Result};
use walkgain::export;
use walkgain::gain::{self, SeriesConfig, Variant};
use walkgain::graph::{set_parallel_spmv, Graph, LoadSummary};
use walkgain::manifest::RunManifest;
use walkgain::rank::{self, AnalysisParams, SweepMetric};
use walkgain::spectral::{self, SpectralEstimate};
use walkgain::verify;

#[derive(Parser)]
#[command(
    name = "walkgain",
    version,
    about = "Walk-series centrality for sparse undirected graphs",
    after_help = "Exit codes: 0 ok, 2 parse, 3 domain/precondition, 4 non-convergence, 5 resource cap."
)]
struct Cli {
    /// Worker threads for sparse matrix-vector products. The default of 1 is
    /// fully deterministic; row partitioning keeps results bit-identical
    /// either way.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Estimate the spectral radius; prints JSON to stdout.
    Spectral {
        input: PathBuf,
        #[arg(long, default_value_t = spectral::DEFAULT_TOL)]
        tol: f64,
        #[arg(long, default_value_t = spectral::DEFAULT_MAX_ITERS)]
        max_iters: usize,
    },
    /// Compute one centrality; writes scores.csv, metric.json, id_map.csv
    /// and manifest.json into the output directory.
    Centrality {
        input: PathBuf,
        #[arg(long, value_enum)]
        metric: MetricArg,
        /// Decay parameter for gpg/katz: either an absolute value ("0.25")
        /// or relative to the spectral radius ("0.5/lambda1").
        /// Defaults to 1/(2*lambda1).
        #[arg(long)]
        delta: Option<DeltaSpec>,
        /// PageRank damping factor.
        #[arg(long, default_value_t = baselines::DEFAULT_PAGERANK_ALPHA)]
        alpha: f64,
        #[arg(long, default_value_t = gain::DEFAULT_SERIES_TOL)]
        tol: f64,
        /// Walk-length cap (series metrics) or iteration cap (eigenvector,
        /// pagerank). Defaults depend on the metric.
        #[arg(long)]
        k_max: Option<usize>,
        #[arg(long, short)]
        output: PathBuf,
    },
    /// Truncation-error curve ε(k) against a k_ref reference; writes
    /// convergence.csv, header.json and manifest.json.
    Convergence {
        input: PathBuf,
        #[arg(long, value_enum)]
        variant: VariantArg,
        #[arg(long)]
        delta: Option<DeltaSpec>,
        #[arg(long)]
        k_max: Option<usize>,
        #[arg(long)]
        k_ref: Option<usize>,
        #[arg(long, short)]
        output: PathBuf,
    },
    /// Spearman rho between the geometric gain and other metrics across a
    /// log-spaced delta grid; writes sweep.csv and manifest.json.
    Sweep {
        input: PathBuf,
        #[arg(long, default_value_t = 20)]
        grid_points: usize,
        /// Grid start, as a fraction of 1/lambda1.
        #[arg(long, default_value_t = 1e-3)]
        grid_min_ratio: f64,
        /// Grid end, as a fraction of 1/lambda1.
        #[arg(long, default_value_t = 0.999)]
        grid_max_ratio: f64,
        /// Comma-separated subset of degree,katz,eigenvector,pagerank,epg.
        #[arg(long, value_delimiter = ',')]
        metrics: Option<Vec<String>>,
        #[arg(long, short)]
        output: PathBuf,
    },
    /// Pairwise correlation table over all six metrics at one delta; writes
    /// correlation.csv and manifest.json.
    Correlate {
        input: PathBuf,
        #[arg(long)]
        delta: DeltaSpec,
        #[arg(long, short)]
        output: PathBuf,
    },
    /// Crossover delta for an eigenvalue; prints JSON to stdout.
    Crossover {
        #[arg(long)]
        lambda: f64,
    },
    /// Sparse-vs-dense oracle equivalence over a random corpus of connected
    /// graphs; prints per-metric max relative deviations.
    Verify {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        corpus_size: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricArg {
    Gpg,
    Epg,
    Degree,
    Katz,
    Eigenvector,
    Pagerank,
    Communicability,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Geometric,
    Exponential,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::Geometric => Variant::Geometric,
            VariantArg::Exponential => Variant::Exponential,
        }
    }
}

/// "--delta 0.25" or "--delta 0.5/lambda1".
#[derive(Clone, Copy, Debug)]
enum DeltaSpec {
    Absolute(f64),
    OverLambda(f64),
}

impl std::str::FromStr for DeltaSpec {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if let Some(ratio) = s.strip_suffix("/lambda1") {
            let r: f64 = ratio
                .parse()
                .map_err(|_| format!("invalid ratio in delta argument {s:?}"))?;
            Ok(DeltaSpec::OverLambda(r))
        } else {
            let v: f64 = s.parse().map_err(|_| format!("invalid delta {s:?}"))?;
            Ok(DeltaSpec::Absolute(v))
        }
    }
}

impl DeltaSpec {
    fn resolve(self, lambda1: f64) -> f64 {
        match self {
            DeltaSpec::Absolute(v) => v,
            DeltaSpec::OverLambda(r) => r / lambda1,
        }
    }

    fn describe(self) -> String {
        match self {
            DeltaSpec::Absolute(v) => format!("{v}"),
            DeltaSpec::OverLambda(r) => format!("{r}/lambda1"),
        }
    }
}

/// Cached spectral estimate, keyed by the graph fingerprint and stored
/// beside the input (or under WALKGAIN_CACHE_DIR).
#[derive(Serialize, Deserialize)]
struct CachedEstimate {
    fingerprint: String,
    tol: f64,
    lambda1: f64,
    iterations: usize,
    residual: f64,
    converged: bool,
}

fn cache_path(input: &Path, fingerprint: &str) -> PathBuf {
    let dir = std::env::var_os("WALKGAIN_CACHE_DIR")
        .map(PathBuf::from)
        .or_else(|| input.parent().map(Path::to_path_buf))
        .unwrap_or_else(|| PathBuf::from("."));
    let stem = input
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "graph".to_string());
    dir.join(format!("{stem}.lambda1.{}.json", &fingerprint[..12]))
}

fn cached_spectral(input: &Path, g: &Graph, tol: f64, max_iters: usize) -> SpectralEstimate {
    let path = cache_path(input, g.fingerprint());
    if let Ok(text) = std::fs::read_to_string(&path) {
        if let Ok(c) = serde_json::from_str::<CachedEstimate>(&text) {
            if c.fingerprint == g.fingerprint() && c.converged && c.tol <= tol {
                return SpectralEstimate {
                    lambda1: c.lambda1,
                    iterations: c.iterations,
                    residual: c.residual,
                    converged: true,
                };
            }
        }
    }
    let est = spectral::estimate_spectral_radius(g, tol, max_iters);
    if est.converged {
        let cached = CachedEstimate {
            fingerprint: g.fingerprint().to_string(),
            tol,
            lambda1: est.lambda1,
            iterations: est.iterations,
            residual: est.residual,
            converged: est.converged,
        };
        // best effort: an unwritable cache directory is not an error
        if let Ok(body) = serde_json::to_string_pretty(&cached) {
            let _ = std::fs::write(&path, body + "\n");
        }
    }
    est
}

fn load_graph(input: &Path) -> Result<(Graph, LoadSummary)> {
    let (g, summary) = Graph::load_path(input)?;
    if summary.self_loops_dropped > 0 || summary.duplicates_collapsed > 0 {
        eprintln!(
            "note: dropped {} self-loop(s), collapsed {} duplicate edge(s)",
            summary.self_loops_dropped, summary.duplicates_collapsed
        );
    }
    if summary.isolated_dropped > 0 {
        eprintln!(
            "warning: {} isolated node(s) dropped at load",
            summary.isolated_dropped
        );
    }
    Ok((g, summary))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 1 {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global();
        set_parallel_spmv(true);
    }
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Spectral { input, tol, max_iters } => {
            let (g, _) = load_graph(&input)?;
            let est = cached_spectral(&input, &g, tol, max_iters);
            println!("{}", serde_json::to_string_pretty(&est).expect("serializable"));
            Ok(if est.converged {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(4)
            })
        }
        Command::Centrality { input, metric, delta, alpha, tol, k_max, output } => {
            run_centrality(&input, metric, delta, alpha, tol, k_max, &output)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Convergence { input, variant, delta, k_max, k_ref, output } => {
            run_convergence(&input, variant.into(), delta, k_max, k_ref, &output)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Sweep {
            input,
            grid_points,
            grid_min_ratio,
            grid_max_ratio,
            metrics,
            output,
        } => {
            run_sweep(&input, grid_points, grid_min_ratio, grid_max_ratio, metrics, &output)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Correlate { input, delta, output } => {
            run_correlate(&input, delta, &output)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Crossover { lambda } => {
            let point = gain::crossover_delta(lambda)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "lambda": lambda,
                    "delta_c": point.delta_c,
                    "admissible": point.admissible,
                }))
                .expect("serializable")
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { seed, corpus_size } => {
            let report = verify::oracle_equivalence(seed, corpus_size, verify::DEFAULT_THRESHOLD)?;
            println!(
                "oracle equivalence over {} connected graphs (seed {}):",
                report.corpus_size, report.seed
            );
            for dev in &report.deviations {
                println!(
                    "  {:<16} max relative deviation {:.3e}  [{}]",
                    dev.metric,
                    dev.max_rel_dev,
                    if dev.max_rel_dev <= report.threshold { "pass" } else { "FAIL" }
                );
            }
            if report.passed() {
                println!("PASS (threshold {:.1e})", report.threshold);
                Ok(ExitCode::SUCCESS)
            } else {
                println!("FAIL (threshold {:.1e})", report.threshold);
                Ok(ExitCode::FAILURE)
            }
        }
    }
}

fn require_converged_scores(converged: bool, iterations: usize) -> Result<()> {
    if converged {
        Ok(())
    } else {
        Err(Error::NonConvergence { iterations })
    }
}

fn run_centrality(
    input: &Path,
    metric: MetricArg,
    delta: Option<DeltaSpec>,
    alpha: f64,
    tol: f64,
    k_max: Option<usize>,
    output: &Path,
) -> Result<()> {
    let started = Instant::now();
    let (g, _) = load_graph(input)?;

    let needs_lambda = matches!(
        metric,
        MetricArg::Gpg | MetricArg::Katz | MetricArg::Epg | MetricArg::Communicability
    );
    let est = if needs_lambda {
        let est = cached_spectral(input, &g, spectral::DEFAULT_TOL, spectral::DEFAULT_MAX_ITERS);
        Some(est)
    } else {
        None
    };
    let resolve_delta = |est: &SpectralEstimate| -> f64 {
        delta
            .map(|d| d.resolve(est.lambda1))
            .unwrap_or_else(|| gain::default_delta(est.lambda1))
    };

    let scores = match metric {
        MetricArg::Degree => baselines::degree_centrality(&g),
        MetricArg::Gpg => {
            let est = est.as_ref().expect("lambda computed");
            let cfg = SeriesConfig {
                delta: resolve_delta(est),
                k_max: k_max.unwrap_or(gain::GEOMETRIC_K_MAX),
                tol,
                k_ref: 0,
            };
            gain::geometric_potential_gain(&g, &cfg, est)?.0
        }
        MetricArg::Epg => {
            let est = est.as_ref().expect("lambda computed");
            let mut cfg = SeriesConfig::exponential(est.lambda1);
            cfg.tol = tol;
            if let Some(k) = k_max {
                cfg.k_max = k;
            }
            gain::exponential_potential_gain(&g, &cfg, est)?.0
        }
        MetricArg::Katz => {
            let est = est.as_ref().expect("lambda computed");
            baselines::katz(
                &g,
                resolve_delta(est),
                tol,
                k_max.unwrap_or(gain::GEOMETRIC_K_MAX),
                est,
            )?
        }
        MetricArg::Communicability => {
            let est = est.as_ref().expect("lambda computed");
            baselines::communicability_centrality(
                &g,
                tol,
                k_max.unwrap_or_else(|| gain::exponential_k_max(est.lambda1)),
                est,
            )?
        }
        MetricArg::Eigenvector => {
            let result = baselines::eigenvector_centrality(&g, tol, k_max.unwrap_or(100_000));
            if !result.connected {
                eprintln!(
                    "warning: graph is disconnected; the Perron vector concentrates on the \
                     dominant component(s)"
                );
            }
            require_converged_scores(result.estimate.converged, result.estimate.iterations)?;
            result.scores
        }
        MetricArg::Pagerank => {
            let result = baselines::pagerank(&g, alpha, tol, k_max.unwrap_or(10_000))?;
            require_converged_scores(result.converged, result.iterations)?;
            result.scores
        }
    };

    std::fs::create_dir_all(output)?;
    std::fs::write(output.join("scores.csv"), export::scores_csv(&g, &scores))?;
    std::fs::write(
        output.join("metric.json"),
        serde_json::to_string_pretty(&scores.metric.sidecar()).expect("serializable") + "\n",
    )?;
    std::fs::write(output.join("id_map.csv"), g.id_map_csv())?;

    let mut manifest = RunManifest::new(
        &input.to_string_lossy(),
        g.fingerprint(),
        "centrality",
        json!({
            "metric": scores.metric.name(),
            "metric_parameters": scores.metric.parameters(),
            "delta": delta.map(|d| d.describe()),
            "alpha": alpha,
            "tol": tol,
            "k_max": k_max,
        }),
    );
    manifest.duration_seconds = started.elapsed().as_secs_f64();
    manifest.write_to_dir(output)?;
    Ok(())
}

fn run_convergence(
    input: &Path,
    variant: Variant,
    delta: Option<DeltaSpec>,
    k_max: Option<usize>,
    k_ref: Option<usize>,
    output: &Path,
) -> Result<()> {
    let started = Instant::now();
    let (g, _) = load_graph(input)?;
    let est = cached_spectral(input, &g, spectral::DEFAULT_TOL, spectral::DEFAULT_MAX_ITERS);
    let delta_value = delta
        .map(|d| d.resolve(est.lambda1))
        .unwrap_or_else(|| gain::default_delta(est.lambda1));
    let k_max = k_max.unwrap_or(match variant {
        Variant::Geometric => gain::GEOMETRIC_K_MAX,
        Variant::Exponential => gain::exponential_k_max(est.lambda1),
    });
    let cfg = SeriesConfig {
        delta: delta_value,
        k_max,
        tol: gain::DEFAULT_SERIES_TOL,
        k_ref: k_ref.unwrap_or_else(|| gain::default_k_ref(k_max)),
    };
    let report = gain::convergence_curve(&g, &cfg, variant, &est)?;

    std::fs::create_dir_all(output)?;
    std::fs::write(output.join("convergence.csv"), export::convergence_csv(&report))?;
    std::fs::write(
        output.join("header.json"),
        serde_json::to_string_pretty(&report.header_json()).expect("serializable") + "\n",
    )?;
    let mut manifest = RunManifest::new(
        &input.to_string_lossy(),
        g.fingerprint(),
        "convergence",
        json!({
            "variant": variant.to_string(),
            "delta": delta_value,
            "k_max": cfg.k_max,
            "k_ref": cfg.k_ref,
        }),
    );
    manifest.duration_seconds = started.elapsed().as_secs_f64();
    manifest.write_to_dir(output)?;
    Ok(())
}

fn run_sweep(
    input: &Path,
    grid_points: usize,
    grid_min_ratio: f64,
    grid_max_ratio: f64,
    metrics: Option<Vec<String>>,
    output: &Path,
) -> Result<()> {
    let started = Instant::now();
    if grid_points < 2 {
        return Err(Error::Domain("grid needs at least 2 points".into()));
    }
    if !(grid_min_ratio > 0.0 && grid_min_ratio < grid_max_ratio && grid_max_ratio < 1.0) {
        return Err(Error::Domain(format!(
            "grid ratios must satisfy 0 < min < max < 1, got [{grid_min_ratio}, {grid_max_ratio}]"
        )));
    }
    let metrics: Vec<SweepMetric> = match metrics {
        None => SweepMetric::ALL.to_vec(),
        Some(names) => names
            .iter()
            .map(|n| n.parse().map_err(Error::Domain))
            .collect::<Result<_>>()?,
    };
    let (g, _) = load_graph(input)?;
    let est = cached_spectral(input, &g, spectral::DEFAULT_TOL, spectral::DEFAULT_MAX_ITERS);
    let grid = rank::delta_grid(est.lambda1, grid_min_ratio, grid_max_ratio, grid_points);
    let result = rank::delta_sweep(&g, &grid, &metrics, &est, &AnalysisParams::default())?;

    std::fs::create_dir_all(output)?;
    std::fs::write(output.join("sweep.csv"), export::sweep_csv(&result))?;
    let mut manifest = RunManifest::new(
        &input.to_string_lossy(),
        g.fingerprint(),
        "sweep",
        json!({
            "grid_points": grid_points,
            "grid_min_ratio": grid_min_ratio,
            "grid_max_ratio": grid_max_ratio,
            "metrics": metrics.iter().map(|m| m.name()).collect::<Vec<_>>(),
            "lambda1": est.lambda1,
        }),
    );
    manifest.duration_seconds = started.elapsed().as_secs_f64();
    manifest.write_to_dir(output)?;
    Ok(())
}

fn run_correlate(input: &Path, delta: DeltaSpec, output: &Path) -> Result<()> {
    let started = Instant::now();
    let (g, _) = load_graph(input)?;
    let est = cached_spectral(input, &g, spectral::DEFAULT_TOL, spectral::DEFAULT_MAX_ITERS);
    let delta_value = delta.resolve(est.lambda1);
    let table = rank::correlation_table(&g, delta_value, &est, &AnalysisParams::default())?;

    std::fs::create_dir_all(output)?;
    std::fs::write(output.join("correlation.csv"), export::correlation_csv(&table))?;
    let mut manifest = RunManifest::new(
        &input.to_string_lossy(),
        g.fingerprint(),
        "correlate",
        json!({
            "delta": delta_value,
            "delta_spec": delta.describe(),
            "lambda1": est.lambda1,
        }),
    );
    manifest.duration_seconds = started.elapsed().as_secs_f64();
    manifest.write_to_dir(output)?;
    Ok(())
}
