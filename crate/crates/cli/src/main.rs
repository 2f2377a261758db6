use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ruled_core::pipeline::{
    run_config, sweep_grid, write_outputs, write_sweep_csv, Emit, Overrides, PipelineError, RunConfig, RunOutcome,
    Verdict, DEFAULT_PHI0, DEFAULT_THETA0,
};

const EXIT_FAIL: u8 = 1;
const EXIT_ERROR: u8 = 2;

/// Synthesize and verify timelike ruled surfaces in Minkowski 3-space.
#[derive(Parser, Debug)]
#[command(name = "ruled", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the surface, verify it and write the configured outputs.
    Synthesize {
        #[command(flatten)]
        common: Common,
        /// Directory that relative output paths resolve against.
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Build the surface and print the verification report; writes nothing.
    Verify {
        #[command(flatten)]
        common: Common,
    },
    /// Run every (theta0, phi0) seed combination and print one CSV row each.
    Sweep {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        theta0: Option<Vec<f64>>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        phi0: Option<Vec<f64>>,
    },
    /// Write only the OBJ mesh configured under outputs.mesh.
    ExportMesh {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
}

#[derive(Args, Debug)]
struct Common {
    /// JSON run configuration (schema version 1).
    #[arg(long)]
    config: PathBuf,
    /// Override the directrix step.
    #[arg(long, allow_negative_numbers = true)]
    step: Option<f64>,
    /// Override the relative tolerance.
    #[arg(long, allow_negative_numbers = true)]
    tol_rel: Option<f64>,
    /// Override the absolute tolerance.
    #[arg(long, allow_negative_numbers = true)]
    tol_abs: Option<f64>,
}

impl Common {
    fn load(&self) -> Result<RunConfig, PipelineError> {
        let mut config = RunConfig::from_path(&self.config)?;
        config.apply_overrides(&Overrides {
            step: self.step,
            tol_rel: self.tol_rel,
            tol_abs: self.tol_abs,
        })?;
        Ok(config)
    }
}

fn print_summary(config: &RunConfig, outcome: &RunOutcome) {
    let r = &outcome.report;
    println!("system {}  samples {}  cylindrical {}", config.system.name(), r.samples, r.cylindrical_samples);
    for q in &r.quantities {
        println!(
            "  {:<20} {:<8} max_abs {:.3e}  max_rel {:.3e}  endpoints {:.3e}  tol {:.1e}  {}",
            q.name,
            format!("{:?}", q.mode).to_lowercase(),
            q.max_abs_error,
            q.max_rel_error,
            q.endpoint_max_abs_error,
            q.tolerance,
            if q.pass { "pass" } else { "FAIL" },
        );
    }
    for (name, d) in &r.defects {
        println!(
            "  {:<20} defect   {:.3e}  tol {:.1e}  {}",
            name,
            d.value,
            d.tolerance,
            if d.pass { "pass" } else { "FAIL" }
        );
    }
    println!("verdict {}", if r.pass { "pass" } else { "fail" });
}

fn verdict_code(pass: bool) -> ExitCode {
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAIL)
    }
}

fn run(cli: Cli) -> Result<ExitCode, PipelineError> {
    match cli.command {
        Command::Synthesize { common, out_dir } => {
            let config = common.load()?;
            let outcome = run_config(&config)?;
            for path in write_outputs(&config, &outcome, &out_dir, Emit::All)? {
                eprintln!("wrote {}", path.display());
            }
            print_summary(&config, &outcome);
            Ok(verdict_code(outcome.passed()))
        }
        Command::Verify { common } => {
            let config = common.load()?;
            let outcome = run_config(&config)?;
            print_summary(&config, &outcome);
            Ok(verdict_code(outcome.passed()))
        }
        Command::Sweep { common, theta0, phi0 } => {
            let config = common.load()?;
            let theta0 = theta0.unwrap_or_else(|| DEFAULT_THETA0.to_vec());
            let phi0 = phi0.unwrap_or_else(|| DEFAULT_PHI0.to_vec());
            if theta0.is_empty() || phi0.is_empty() {
                return Err(PipelineError::ConfigInvalid {
                    field: "--theta0/--phi0".into(),
                    message: "seed lists must be nonempty".into(),
                });
            }
            let rows = sweep_grid(&config, &theta0, &phi0);
            write_sweep_csv(&rows, io::stdout().lock())?;
            Ok(verdict_code(rows.iter().all(|r| r.verdict == Verdict::Pass)))
        }
        Command::ExportMesh { common, out_dir } => {
            let config = common.load()?;
            if config.outputs.mesh.is_none() {
                return Err(PipelineError::ConfigInvalid {
                    field: "outputs.mesh".into(),
                    message: "export-mesh needs a mesh section".into(),
                });
            }
            let outcome = run_config(&config)?;
            for path in write_outputs(&config, &outcome, &out_dir, Emit::MeshOnly)? {
                eprintln!("wrote {}", path.display());
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if let Some(s) = e.location() {
                eprintln!("  failed at s = {s}");
            }
            ExitCode::from(EXIT_ERROR)
        }
    }
}
