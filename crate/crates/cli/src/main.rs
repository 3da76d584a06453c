use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use infdet_cli::pipeline::{run_check, run_loja, run_report, DEFAULT_K_MAX};
use infdet_cli::report::{format_check, format_loja, format_perturb, format_report};
use infdet_cli::parse_problem;
use infdet_core::error::Error;
use infdet_core::loja::SamplePlan;
use infdet_core::perturb::{analyze_at, build_pair, verify_pair};
use infdet_core::ProblemSpec;

/// Exit status contract: 0 means the pipeline ran (its verdict is data,
/// not a status), 2 means the input was rejected, 3 means an enumeration
/// size cap was hit.
const EXIT_INPUT: u8 = 2;
const EXIT_SIZE_CAP: u8 = 3;

#[derive(Parser)]
#[command(
    name = "infdet",
    about = "Certify infinite determinacy of germs presented by a symmetric representation over a critical variety",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct PlanArgs {
    /// Innermost sampling shell radius.
    #[arg(long)]
    rmin: Option<f64>,
    /// Outermost sampling shell radius.
    #[arg(long)]
    rmax: Option<f64>,
    /// Number of geometric shells.
    #[arg(long)]
    shells: Option<usize>,
    /// Samples drawn per shell.
    #[arg(long = "per-shell")]
    per_shell: Option<usize>,
    /// Generator seed; identical seeds reproduce runs byte for byte.
    #[arg(long)]
    seed: Option<u64>,
}

impl PlanArgs {
    fn to_plan(&self) -> SamplePlan {
        let mut plan = SamplePlan::default();
        if let Some(v) = self.rmin {
            plan.rmin = v;
        }
        if let Some(v) = self.rmax {
            plan.rmax = v;
        }
        if let Some(v) = self.shells {
            plan.shells = v;
        }
        if let Some(v) = self.per_shell {
            plan.per_shell = v;
        }
        if let Some(v) = self.seed {
            plan.seed = v;
        }
        plan
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the symbolic certification pass.
    Check {
        file: PathBuf,
        /// Largest power of the maximal ideal tried by the membership
        /// searches.
        #[arg(long = "k-max", default_value_t = DEFAULT_K_MAX)]
        k_max: u32,
    },
    /// Estimate the two regularity exponents by seeded sampling.
    Loja {
        file: PathBuf,
        #[command(flatten)]
        plan: PlanArgs,
    },
    /// Build and verify a degenerate/regular perturbation pair at a
    /// point of the critical variety.
    Perturb {
        file: PathBuf,
        /// Comma-separated coordinates, e.g. `0,0,0.5`.
        #[arg(long)]
        point: String,
        /// Perturbation scale; defaults to a fraction of the matrix norm.
        #[arg(long)]
        eps: Option<f64>,
    },
    /// Run both passes concurrently and fuse their verdicts.
    Report {
        file: PathBuf,
        #[arg(long = "k-max", default_value_t = DEFAULT_K_MAX)]
        k_max: u32,
        #[command(flatten)]
        plan: PlanArgs,
    },
}

fn problem_name(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "problem".into())
}

fn load(path: &Path) -> Result<(ProblemSpec, String), u8> {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("{}: {}", path.display(), e);
            return Err(EXIT_INPUT);
        }
    };
    match parse_problem(&text) {
        Ok(spec) => Ok((spec, problem_name(path))),
        Err(d) => {
            eprintln!("{}: {}", path.display(), d);
            Err(EXIT_INPUT)
        }
    }
}

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::SizeCap { .. } => EXIT_SIZE_CAP,
        _ => EXIT_INPUT,
    }
}

fn parse_point(raw: &str) -> Result<Vec<f64>, u8> {
    let mut out = Vec::new();
    for part in raw.split(',') {
        match part.trim().parse::<f64>() {
            Ok(v) => out.push(v),
            Err(_) => {
                eprintln!("--point: `{}` is not a number", part.trim());
                return Err(EXIT_INPUT);
            }
        }
    }
    Ok(out)
}

fn run(cli: Cli) -> Result<(), u8> {
    match cli.cmd {
        Cmd::Check { file, k_max } => {
            let (spec, name) = load(&file)?;
            let check = run_check(&spec, k_max).map_err(|e| {
                eprintln!("{}: {}", name, e);
                exit_for(&e)
            })?;
            print!("{}", format_check(&name, &spec, &check));
        }
        Cmd::Loja { file, plan } => {
            let (spec, name) = load(&file)?;
            let plan = plan.to_plan();
            let loja = run_loja(&spec, &plan).map_err(|e| {
                eprintln!("{}: {}", name, e);
                exit_for(&e)
            })?;
            print!("{}", format_loja(&name, &spec, &loja));
        }
        Cmd::Perturb { file, point, eps } => {
            let (spec, name) = load(&file)?;
            let point = parse_point(&point)?;
            let outcome = analyze_at(&spec, &point).and_then(|data| {
                let pair = build_pair(&data, eps);
                let ver = verify_pair(&spec, &data, &pair)?;
                Ok((data, pair, ver))
            });
            let (data, pair, ver) = outcome.map_err(|e| {
                eprintln!("{}: {}", name, e);
                exit_for(&e)
            })?;
            print!(
                "{}",
                format_perturb(
                    &name,
                    &spec,
                    &point,
                    pair.eps_scale,
                    &data.eigen.values,
                    &pair.epsilons,
                    &ver
                )
            );
        }
        Cmd::Report { file, k_max, plan } => {
            let (spec, name) = load(&file)?;
            let plan = plan.to_plan();
            let report = run_report(&spec, &name, k_max, &plan).map_err(|e| {
                eprintln!("{}: {}", name, e);
                exit_for(&e)
            })?;
            print!("{}", format_report(&spec, &report));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(code) => ExitCode::from(code),
    }
}
