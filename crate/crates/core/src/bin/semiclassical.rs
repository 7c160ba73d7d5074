//! Thin command-line front end over `lie_semiclassical::harness`.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lie_semiclassical::harness::{cmd_limit, cmd_repinfo, cmd_verify, Outcome, RunConfig, Suite, THREADS_ENV};
use lie_semiclassical::Result;

#[derive(Parser)]
#[command(name = "semiclassical", version, about = "Classical limits of su(M) Hamiltonians")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension, weight diagram and invariant checks of an irrep.
    Repinfo(Common),
    /// The sequence cl_n of a Hamiltonian at a set of points.
    Limit(Common),
    /// Run a verification suite.
    Verify(Common),
}

#[derive(Args)]
struct Common {
    /// JSON config file; flags given on the command line override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long = "M")]
    m: Option<usize>,
    /// Highest weight in fundamental coordinates, e.g. `1,0`.
    #[arg(long, value_delimiter = ',')]
    weight: Option<Vec<u64>>,
    #[arg(long)]
    hamiltonian: Option<String>,
    #[arg(long)]
    hamiltonian_file: Option<PathBuf>,
    /// JSON array of points `{"x_i_j": [re, im], ...}`.
    #[arg(long)]
    points: Option<PathBuf>,
    #[arg(long)]
    count: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    radius: Option<f64>,
    /// Schedule of n, e.g. `1,2,4,8`.
    #[arg(long, value_delimiter = ',')]
    n: Option<Vec<u64>>,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    suite: Option<String>,
    #[arg(long)]
    max_degree: Option<usize>,
    #[arg(long)]
    tol_norm: Option<f64>,
    #[arg(long)]
    tol_golden: Option<f64>,
    #[arg(long)]
    tol_theorem3: Option<f64>,
    #[arg(long)]
    tol_poisson: Option<f64>,
    #[arg(long)]
    tol_equivariance: Option<f64>,
    /// Print the JSON report instead of the text summary.
    #[arg(long)]
    json: bool,
}

impl Common {
    fn config(&self) -> Result<RunConfig> {
        let mut cfg = match &self.config {
            Some(p) => RunConfig::from_json_file(p)?,
            None => RunConfig::default(),
        };
        if let Some(m) = self.m {
            cfg.m = m;
        }
        if let Some(w) = &self.weight {
            cfg.weight = w.clone();
        }
        if self.hamiltonian.is_some() {
            cfg.hamiltonian = self.hamiltonian.clone();
        }
        if self.hamiltonian_file.is_some() {
            cfg.hamiltonian_file = self.hamiltonian_file.clone();
        }
        if self.points.is_some() {
            cfg.points = self.points.clone();
        }
        if let Some(c) = self.count {
            cfg.sampler.count = c;
        }
        if let Some(s) = self.seed {
            cfg.sampler.seed = s;
        }
        if let Some(r) = self.radius {
            cfg.sampler.radius = r;
        }
        if let Some(n) = &self.n {
            cfg.n = n.clone();
        }
        if self.output.is_some() {
            cfg.output = self.output.clone();
        }
        if let Some(f) = &self.format {
            cfg.format = serde_json::from_value(serde_json::Value::String(f.clone()))?;
        }
        if let Some(s) = &self.suite {
            cfg.suite = Some(s.parse::<Suite>()?);
        }
        if let Some(d) = self.max_degree {
            cfg.max_degree = d;
        }
        let t = &mut cfg.tolerances;
        for (slot, v) in [
            (&mut t.norm, self.tol_norm),
            (&mut t.golden, self.tol_golden),
            (&mut t.theorem3, self.tol_theorem3),
            (&mut t.poisson, self.tol_poisson),
            (&mut t.equivariance, self.tol_equivariance),
        ] {
            if let Some(v) = v {
                *slot = v;
            }
        }
        Ok(cfg)
    }
}

fn main() -> ExitCode {
    if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok()) {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().ok();
    }
    let cli = Cli::parse();
    let (common, run): (&Common, fn(&RunConfig) -> Result<Outcome>) = match &cli.command {
        Command::Repinfo(c) => (c, cmd_repinfo),
        Command::Limit(c) => (c, cmd_limit),
        Command::Verify(c) => (c, cmd_verify),
    };
    let outcome = common.config().and_then(|cfg| run(&cfg)).unwrap_or_else(|e| Outcome::from_error(&e));
    if common.json {
        println!("{}", serde_json::to_string_pretty(&outcome.report).expect("serializable"));
    } else if outcome.exit_code >= 2 {
        eprintln!("{}", outcome.text);
    } else {
        print!("{}", outcome.text);
    }
    ExitCode::from(outcome.exit_code as u8)
}
