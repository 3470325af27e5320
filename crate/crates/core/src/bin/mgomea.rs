use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use modular_gomea::data::{generate_synthetic, SyntheticSpec};
use modular_gomea::experiment::{cmd_report, cmd_run, cmd_sweep, parse_grid, Algorithm, ExperimentPlan, GridCell};
use modular_gomea::gomea::TerminalPolicy;

#[derive(Parser)]
#[command(name = "mgomea", version, about = "Symbolic regression with modular GP-GOMEA")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one configuration and write its log, front, best expression and summary.
    Run(PlanArgs),
    /// Run every grid cell, population size and repetition; writes sweep.csv.
    Sweep(PlanArgs),
    /// Write a synthetic benchmark as CSV (columns x0.., y).
    Synth {
        #[arg(long)]
        synthetic: u8,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Summarize a sweep.csv per configuration.
    Report { sweep: PathBuf },
}

#[derive(Args)]
struct PlanArgs {
    /// TOML plan; flags below override its fields.
    #[arg(long)]
    plan: Option<PathBuf>,
    #[arg(long)]
    algo: Option<Algorithm>,
    /// CSV file with a header row.
    #[arg(long)]
    dataset: Option<PathBuf>,
    /// Target column of the CSV.
    #[arg(long)]
    target: Option<String>,
    #[arg(long)]
    train_fraction: Option<f64>,
    #[arg(long)]
    synthetic: Option<u8>,
    #[arg(long)]
    data_seed: Option<u64>,
    #[arg(long)]
    trees: Option<usize>,
    #[arg(long)]
    depth: Option<usize>,
    /// Comma-separated DEPTHxTREES cells, e.g. 4x4,7x1.
    #[arg(long)]
    grid: Option<String>,
    /// Population sizes, comma-separated.
    #[arg(long, value_delimiter = ',')]
    pop: Option<Vec<usize>>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    reps: Option<usize>,
    #[arg(long)]
    budget_seconds: Option<f64>,
    #[arg(long)]
    budget_generations: Option<usize>,
    /// Bare flag means `true`.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    linear_scaling: Option<bool>,
    /// Bare flag means `true`.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    coefficients: Option<bool>,
    #[arg(long)]
    terminal_policy: Option<TerminalPolicy>,
    #[arg(long)]
    batch_max: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the last generation's MI matrices and FOS as CSV.
    #[arg(long)]
    dump_linkage: bool,
}

impl PlanArgs {
    fn into_plan(self) -> modular_gomea::Result<ExperimentPlan> {
        let mut p = match &self.plan {
            Some(path) => ExperimentPlan::from_toml_file(path)?,
            None => ExperimentPlan::default(),
        };
        if let Some(v) = self.algo {
            p.algorithm = v;
        }
        if let Some(v) = self.dataset {
            p.dataset = Some(v);
            p.synthetic = None;
        }
        if let Some(v) = self.synthetic {
            p.synthetic = Some(v);
            p.dataset = None;
        }
        if let Some(v) = self.target {
            p.target = v;
        }
        if let Some(v) = self.train_fraction {
            p.train_fraction = v;
        }
        if let Some(v) = self.data_seed {
            p.data_seed = v;
        }
        if let Some(g) = &self.grid {
            p.grid = parse_grid(g)?;
        }
        if self.trees.is_some() || self.depth.is_some() {
            let base = p.grid.first().copied().unwrap_or(GridCell { depth: 4, trees: 4 });
            p.grid = vec![GridCell {
                depth: self.depth.unwrap_or(base.depth),
                trees: self.trees.unwrap_or(base.trees),
            }];
        }
        if let Some(v) = self.pop {
            p.populations = v;
        }
        if let Some(v) = self.seed {
            p.seed = v;
        }
        if let Some(v) = self.reps {
            p.repetitions = v;
        }
        if let Some(v) = self.budget_seconds {
            p.budget_seconds = Some(v);
        }
        if let Some(v) = self.budget_generations {
            p.budget_generations = Some(v);
        }
        if let Some(v) = self.linear_scaling {
            p.linear_scaling = Some(v);
        }
        if let Some(v) = self.coefficients {
            p.coefficients = Some(v);
        }
        if let Some(v) = self.terminal_policy {
            p.terminal_policy = v;
        }
        if let Some(v) = self.batch_max {
            p.batch_max = v;
        }
        if let Some(v) = self.out {
            p.out = v;
        }
        p.dump_linkage |= self.dump_linkage;
        Ok(p)
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> modular_gomea::Result<()> {
    match cli.command {
        Command::Run(args) => {
            let plan = args.into_plan()?;
            let s = cmd_run(&plan)?;
            println!("r2_train {}", s.r2_train);
            if let Some(r) = s.r2_test {
                println!("r2_test {r}");
            }
            if let Some(r) = s.recovered {
                println!("recovered {r}");
            }
            println!("{}", s.expression);
            println!("artifacts in {}", plan.out.display());
        }
        Command::Sweep(args) => {
            let plan = args.into_plan()?;
            let path = cmd_sweep(&plan, |row| {
                let status = if row.error.is_empty() {
                    format!("r2 {}", row.r2_train.unwrap_or(f64::NAN))
                } else {
                    format!("failed: {}", row.error)
                };
                eprintln!("{} {} pop {} rep {}: {status}", row.algo, row.config, row.population, row.repetition);
            })?;
            println!("{}", path.display());
        }
        Command::Synth {
            synthetic,
            seed,
            samples,
            out,
        } => {
            let data = generate_synthetic(&SyntheticSpec {
                id: synthetic,
                n_samples: samples,
                seed,
            })?;
            data.write_csv(&out, false)?;
            println!("{}", out.display());
        }
        Command::Report { sweep } => print!("{}", cmd_report(&sweep)?),
    }
    Ok(())
}
