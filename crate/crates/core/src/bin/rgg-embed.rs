use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use rgg_embed::geometry::displacement_dstar;
use rgg_embed::graph_reconstruct::reconstruct_from_graph;
use rgg_embed::harness::{
    diagnostics, edge_symmetric_difference, quality_q, run_experiment, summary_path,
    ExperimentConfig, HarnessError, Mode,
};
use rgg_embed::instance::{build_graph, build_ordering_oracle, io, sample_embedding, InstanceError};
use rgg_embed::order_reconstruct::{reconstruct_from_orders, PlacementParams};

#[derive(Parser)]
#[command(name = "rgg-embed", version, about = "Embed random geometric graphs and distance orderings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Graph,
    Orders,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a hidden embedding and write it with its graph and/or orderings.
    Generate {
        #[arg(long)]
        n: usize,
        /// Threshold for the graph; required with --out-graph.
        #[arg(long)]
        r: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out_embedding: Option<PathBuf>,
        #[arg(long)]
        out_graph: Option<PathBuf>,
        #[arg(long)]
        out_orderings: Option<PathBuf>,
    },
    /// Reconstruct an embedding from a graph file.
    ReconstructGraph {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Diagnostics file; defaults to `<out>.diag`.
        #[arg(long)]
        diag: Option<PathBuf>,
    },
    /// Reconstruct an embedding from distance orderings.
    ReconstructOrders {
        #[arg(long, conflicts_with = "embedding", required_unless_present = "embedding")]
        orderings: Option<PathBuf>,
        /// Answer ordering queries from a hidden embedding instead.
        #[arg(long)]
        embedding: Option<PathBuf>,
        #[arg(long, default_value_t = 0.93)]
        alpha: f64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        diag: Option<PathBuf>,
    },
    /// Compare an estimate to the truth.
    Evaluate {
        #[arg(long)]
        truth: PathBuf,
        #[arg(long)]
        estimate: PathBuf,
        #[arg(long, requires = "r")]
        graph: Option<PathBuf>,
        #[arg(long)]
        r: Option<f64>,
    },
    /// Run seeded trials and write a CSV report.
    Experiment {
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: Option<f64>,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.93)]
        alpha: f64,
        #[arg(long)]
        out: PathBuf,
        /// Write 0 for runtimes so identical runs give identical files.
        #[arg(long)]
        deterministic: bool,
    },
}

enum Failure {
    Input(String),
    Pipeline(String),
}

impl From<HarnessError> for Failure {
    fn from(e: HarnessError) -> Self {
        match e {
            HarnessError::Reconstruct(_) | HarnessError::EmptyGraph => Failure::Pipeline(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<InstanceError> for Failure {
    fn from(e: InstanceError) -> Self {
        Failure::Input(e.to_string())
    }
}

fn default_diag(out: &Path, diag: Option<PathBuf>) -> PathBuf {
    diag.unwrap_or_else(|| {
        let mut s = out.as_os_str().to_owned();
        s.push(".diag");
        PathBuf::from(s)
    })
}

fn write_text(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn run(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Generate {
            n,
            r,
            seed,
            out_embedding,
            out_graph,
            out_orderings,
        } => {
            let psi = sample_embedding(n, seed)?;
            if let Some(p) = out_embedding {
                io::save_embedding(&p, &psi)?;
            }
            if let Some(p) = out_graph {
                let r = r.ok_or_else(|| Failure::Input("--out-graph needs --r".into()))?;
                io::save_graph(&p, &build_graph(&psi, r)?)?;
            }
            if let Some(p) = out_orderings {
                io::save_orderings(&p, &build_ordering_oracle(&psi))?;
            }
        }
        Command::ReconstructGraph { graph, out, diag } => {
            let g = io::load_graph(&graph)?;
            let res = reconstruct_from_graph(&g).map_err(HarnessError::from)?;
            io::save_embedding(&out, &res.phi)?;
            write_text(&default_diag(&out, diag), &diagnostics(&res))?;
        }
        Command::ReconstructOrders {
            orderings,
            embedding,
            alpha,
            out,
            diag,
        } => {
            let oracle = match (orderings, embedding) {
                (Some(p), _) => io::load_orderings(&p)?,
                (None, Some(p)) => build_ordering_oracle(&io::load_embedding(&p)?),
                (None, None) => unreachable!("clap requires one source"),
            };
            let params = PlacementParams::with_alpha(alpha).map_err(HarnessError::from)?;
            let res = reconstruct_from_orders(&oracle, &params).map_err(HarnessError::from)?;
            io::save_embedding(&out, &res.phi)?;
            write_text(&default_diag(&out, diag), &diagnostics(&res))?;
        }
        Command::Evaluate {
            truth,
            estimate,
            graph,
            r,
        } => {
            let psi = io::load_embedding(&truth)?;
            let phi = io::load_embedding(&estimate)?;
            let (d, sigma) = displacement_dstar(&psi, &phi).map_err(HarnessError::from)?;
            println!("d_star={d}");
            println!("symmetry={}", sigma.index());
            if let (Some(gp), Some(r)) = (graph, r) {
                let g = io::load_graph(&gp)?;
                if g.n() != phi.len() {
                    return Err(Failure::Input("graph and estimate sizes differ".into()));
                }
                match quality_q(&g, &phi, Some(r)) {
                    Some(q) => println!("q_g={q}"),
                    None => println!("q_g="),
                }
                println!("edge_sym_diff={}", edge_symmetric_difference(&g, &phi, r)?);
            }
        }
        Command::Experiment {
            mode,
            n,
            r,
            trials,
            seed,
            alpha,
            out,
            deterministic,
        } => {
            let mode = match mode {
                ModeArg::Graph => Mode::Graph,
                ModeArg::Orders => Mode::Orders,
            };
            let mut cfg = ExperimentConfig::new(mode, n, r, trials, seed);
            cfg.params = PlacementParams::with_alpha(alpha)
                .map_err(|e| Failure::Input(e.to_string()))?;
            cfg.timing = !deterministic;
            cfg.output = Some(out.clone());
            let rep = run_experiment(&cfg).map_err(|e| Failure::Input(e.to_string()))?;
            let a = rep.aggregates;
            println!(
                "median_d_star={} max_d_star={} success_fraction={} failures={}",
                a.median_d_star, a.max_d_star, a.success_fraction, a.failures
            );
            println!("wrote {} and {}", out.display(), summary_path(&out).display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Pipeline(m)) => {
            eprintln!("reconstruction failed: {m}");
            ExitCode::from(2)
        }
    }
}
