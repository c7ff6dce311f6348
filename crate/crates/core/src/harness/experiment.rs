use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;

use crate::geometry::displacement_dstar;
use crate::graph_reconstruct::reconstruct_from_graph;
use crate::instance::{build_graph, build_ordering_oracle, sample_embedding};
use crate::order_reconstruct::{reconstruct_from_orders, PlacementParams};

use super::{edge_symmetric_difference, quality_q, HarnessError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Graph,
    Orders,
}

impl Mode {
    pub fn name(&self) -> &'static str {
        match self {
            Mode::Graph => "graph",
            Mode::Orders => "orders",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub mode: Mode,
    pub n: usize,
    /// Threshold of the geometric graph. Required in graph mode; in orders
    /// mode it only enables the graph-quality metrics.
    pub r: Option<f64>,
    pub trials: usize,
    pub base_seed: u64,
    pub params: PlacementParams,
    /// A graph-mode trial succeeds when `d* ≤ graph_factor · r`.
    pub graph_factor: f64,
    /// An orders-mode trial succeeds when `d* < orders_factor · √(ln n)`.
    pub orders_factor: f64,
    /// Compute `Q_G` and the edge symmetric difference when `r` is known.
    pub quality_metrics: bool,
    /// Record wall-clock time per trial. Off gives byte-identical reports.
    pub timing: bool,
    pub output: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(mode: Mode, n: usize, r: Option<f64>, trials: usize, base_seed: u64) -> Self {
        ExperimentConfig {
            mode,
            n,
            r,
            trials,
            base_seed,
            params: PlacementParams::default(),
            graph_factor: 2.0,
            orders_factor: 3.6,
            quality_metrics: true,
            timing: true,
            output: None,
        }
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        let bad = |m: String| Err(HarnessError::BadConfig(m));
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if self.n < 5 {
            return bad(format!("n = {} is below the minimum of 5", self.n));
        }
        let side = (self.n as f64).sqrt();
        match (self.mode, self.r) {
            (Mode::Graph, None) => return bad("graph mode needs r".into()),
            (_, Some(r)) if !(r > 0.0 && r < side) => {
                return bad(format!("r = {r} must lie in (0, {side})"))
            }
            _ => {}
        }
        Ok(())
    }

    /// The displacement a trial must stay within to count as a success.
    pub fn success_bound(&self) -> f64 {
        match self.mode {
            Mode::Graph => self.graph_factor * self.r.unwrap_or(f64::NAN),
            Mode::Orders => self.orders_factor * (self.n as f64).ln().sqrt(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialRow {
    pub trial: usize,
    pub seed: u64,
    pub d_star: Option<f64>,
    pub symmetry: Option<u8>,
    pub q_g: Option<f64>,
    pub edge_sym_diff: Option<f64>,
    pub r_hat: Option<f64>,
    pub runtime_ms: u64,
    /// The pipeline error, for failed trials.
    pub error: Option<String>,
}

impl TrialRow {
    pub fn failed(&self) -> bool {
        self.error.is_some()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Aggregates {
    pub median_d_star: f64,
    pub mean_d_star: f64,
    pub max_d_star: f64,
    /// Successful trials over all trials; failed trials count against it.
    pub success_fraction: f64,
    pub failures: usize,
}

impl Aggregates {
    /// Over the non-failed rows; the d* statistics are NaN if there are none.
    pub fn from_rows(rows: &[TrialRow], success_bound: f64, mode: Mode) -> Self {
        let mut d: Vec<f64> = rows.iter().filter_map(|r| r.d_star).collect();
        d.sort_by(f64::total_cmp);
        let median = match d.len() {
            0 => f64::NAN,
            k if k % 2 == 1 => d[k / 2],
            k => 0.5 * (d[k / 2 - 1] + d[k / 2]),
        };
        let mean = if d.is_empty() {
            f64::NAN
        } else {
            d.iter().sum::<f64>() / d.len() as f64
        };
        let max = d.last().copied().unwrap_or(f64::NAN);
        let ok = d
            .iter()
            .filter(|&&x| match mode {
                Mode::Graph => x <= success_bound,
                Mode::Orders => x < success_bound,
            })
            .count();
        Aggregates {
            median_d_star: median,
            mean_d_star: mean,
            max_d_star: max,
            success_fraction: ok as f64 / rows.len().max(1) as f64,
            failures: rows.iter().filter(|r| r.failed()).count(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub rows: Vec<TrialRow>,
    pub aggregates: Aggregates,
}

pub const CSV_HEADER: &str = "trial,seed,d_star,symmetry,q_g,edge_sym_diff,r_hat,runtime_ms,failed";

fn opt<T: std::fmt::Display>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

impl ExperimentReport {
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        s.push_str(CSV_HEADER);
        s.push('\n');
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{},{},{}",
                r.trial,
                r.seed,
                opt(r.d_star),
                opt(r.symmetry),
                opt(r.q_g),
                opt(r.edge_sym_diff),
                opt(r.r_hat),
                r.runtime_ms,
                r.failed() as u8
            );
        }
        s
    }

    /// `key=value` lines: configuration, success rule, aggregates and the
    /// error of each failed trial.
    pub fn summary(&self) -> String {
        let c = &self.config;
        let a = &self.aggregates;
        let mut s = String::new();
        let mut kv = |k: &str, v: String| {
            let _ = writeln!(s, "{k}={v}");
        };
        kv("mode", c.mode.name().into());
        kv("n", c.n.to_string());
        kv("r", opt(c.r));
        kv("trials", c.trials.to_string());
        kv("base_seed", c.base_seed.to_string());
        kv("alpha", c.params.alpha.to_string());
        let rule = match c.mode {
            Mode::Graph => format!("d_star <= {} * r", c.graph_factor),
            Mode::Orders => format!("d_star < {} * sqrt(ln n)", c.orders_factor),
        };
        kv("success_rule", rule);
        kv("success_bound", c.success_bound().to_string());
        kv(
            "rationale",
            "the guarantees are asymptotic with high probability; finite n needs slack, so the bound is a \
             relaxed constant and the measured d_star is what matters"
                .into(),
        );
        kv("median_d_star", a.median_d_star.to_string());
        kv("mean_d_star", a.mean_d_star.to_string());
        kv("max_d_star", a.max_d_star.to_string());
        kv("success_fraction", a.success_fraction.to_string());
        kv("failures", a.failures.to_string());
        for r in self.rows.iter().filter(|r| r.failed()) {
            kv(
                &format!("failure.{}", r.trial),
                r.error.clone().unwrap_or_default(),
            );
        }
        s
    }

    /// Writes the CSV to `path` and the summary next to it.
    pub fn write(&self, path: &Path) -> Result<(), HarnessError> {
        std::fs::File::create(path)?.write_all(self.to_csv().as_bytes())?;
        std::fs::File::create(summary_path(path))?.write_all(self.summary().as_bytes())?;
        Ok(())
    }
}

/// `<path>.summary.txt`.
pub fn summary_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".summary.txt");
    PathBuf::from(s)
}

pub fn run_trial(cfg: &ExperimentConfig, trial: usize) -> TrialRow {
    let seed = cfg.base_seed.wrapping_add(trial as u64);
    let start = Instant::now();
    let mut row = TrialRow {
        trial,
        seed,
        d_star: None,
        symmetry: None,
        q_g: None,
        edge_sym_diff: None,
        r_hat: None,
        runtime_ms: 0,
        error: None,
    };
    if let Err(e) = fill_trial(cfg, seed, &mut row) {
        row.error = Some(e.to_string());
    }
    if cfg.timing {
        row.runtime_ms = start.elapsed().as_millis() as u64;
    }
    row
}

fn fill_trial(cfg: &ExperimentConfig, seed: u64, row: &mut TrialRow) -> Result<(), HarnessError> {
    let psi = sample_embedding(cfg.n, seed)?;
    let graph = match cfg.r {
        Some(r) => Some(build_graph(&psi, r)?),
        None => None,
    };
    let result = match cfg.mode {
        Mode::Graph => {
            let g = graph.as_ref().expect("validated");
            reconstruct_from_graph(&g.without_threshold())?
        }
        Mode::Orders => reconstruct_from_orders(&build_ordering_oracle(&psi), &cfg.params)?,
    };
    let (d, sigma) = displacement_dstar(&psi, &result.phi)?;
    row.d_star = Some(d);
    row.symmetry = Some(sigma.index());
    row.r_hat = result.r_estimate.map(|e| e.r_hat);
    if let (Some(g), Some(r), true) = (&graph, cfg.r, cfg.quality_metrics) {
        row.q_g = quality_q(g, &result.phi, Some(r));
        row.edge_sym_diff = Some(edge_symmetric_difference(g, &result.phi, r)?);
    }
    Ok(())
}

/// Runs `cfg.trials` independent trials, trial `t` with seed
/// `base_seed + t`. Pipeline failures are recorded in the rows; only an
/// invalid config or an unwritable output is an error.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport, HarnessError> {
    cfg.validate()?;
    let rows: Vec<TrialRow> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| run_trial(cfg, t))
        .collect();
    let aggregates = Aggregates::from_rows(&rows, cfg.success_bound(), cfg.mode);
    let report = ExperimentReport {
        config: cfg.clone(),
        rows,
        aggregates,
    };
    if let Some(path) = &cfg.output {
        report.write(path)?;
    }
    Ok(report)
}
