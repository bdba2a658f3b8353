use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use curvkind_cli::analyze::{self, AnalyzeOptions};
use curvkind_cli::verify::{self, Theorem, VerifyOptions};
use curvkind_cli::{model, CliError, CliResult, OutputFormat};
use curvkind_core::BasisConvention;

#[derive(Parser)]
#[command(name = "curvkind", version, about = "Curvature operators of the second kind and isotropic curvature")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Convention {
    Orthonormal,
    PaperH,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze the tensor document at FILE ("-" reads stdin).
    Analyze {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 64)]
        restarts: usize,
        #[arg(long, value_enum, default_value = "orthonormal")]
        convention: Convention,
        #[arg(long, env = "CURVKIND_TOLERANCE", default_value_t = curvkind_core::DEFAULT_TOLERANCE)]
        tolerance: f64,
        #[arg(long, conflicts_with = "text")]
        json: bool,
        #[arg(long)]
        text: bool,
    },
    /// Describe a model space, or dump its canonical tensor document.
    Model {
        name: String,
        #[arg(long)]
        dump: bool,
        #[arg(long)]
        kappa: Option<f64>,
        #[arg(long)]
        scalar: Option<f64>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Run a seeded ensemble check (main2a, main2b or main5-criteria).
    Verify {
        theorem: String,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_delimiter = ',', default_value = "4,5")]
        dims: Vec<usize>,
        #[arg(long, default_value_t = 32)]
        restarts: usize,
        #[arg(long)]
        json: bool,
    },
}

fn read_input(file: &PathBuf) -> CliResult<String> {
    if file.as_os_str() == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s).map_err(|e| CliError::Parse(e.to_string()))?;
        Ok(s)
    } else {
        std::fs::read_to_string(file).map_err(|e| CliError::Parse(format!("{}: {e}", file.display())))
    }
}

fn run(cli: Cli) -> CliResult<String> {
    match cli.command {
        Command::Analyze { file, seed, restarts, convention, tolerance, json, text: _ } => {
            if !(tolerance.is_finite() && tolerance > 0.0) {
                return Err(CliError::Validation(format!("tolerance must be positive, got {tolerance}")));
            }
            let r = analyze::load(&read_input(&file)?, tolerance)?;
            let opts = AnalyzeOptions {
                seed,
                restarts: restarts.max(1),
                convention: match convention {
                    Convention::Orthonormal => BasisConvention::Orthonormal,
                    Convention::PaperH => BasisConvention::PaperH,
                },
                tolerance,
            };
            let rep = analyze::analyze(&r, &opts)?;
            let format = if json { OutputFormat::Json } else { OutputFormat::Text };
            Ok(match format {
                OutputFormat::Json => analyze::render_json(&rep),
                OutputFormat::Text => analyze::render_text(&rep),
            })
        }
        Command::Model { name, dump, kappa, scalar, n } => {
            let mut params = BTreeMap::new();
            if let Some(k) = kappa {
                params.insert("kappa".to_string(), k);
            }
            if let Some(s) = scalar {
                params.insert("scalar".to_string(), s);
            }
            if let Some(n) = n {
                params.insert("n".to_string(), n as f64);
            }
            let spec = model::model_spec(&name, &params)?;
            if dump {
                model::dump(&spec)
            } else {
                model::describe(&spec)
            }
        }
        Command::Verify { theorem, count, seed, dims, restarts, json } => {
            let theorem: Theorem = theorem.parse()?;
            let opts = VerifyOptions { count, seed, dims, restarts: restarts.max(1) };
            let summary = verify::verify(theorem, &opts)?;
            let out = if json { verify::render_json(&summary) } else { verify::render_text(&summary) };
            if summary.violations > 0 {
                print!("{out}");
                return Err(CliError::Violation(format!("{} violations", summary.violations)));
            }
            Ok(out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("curvkind: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
