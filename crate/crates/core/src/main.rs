use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use conconic_core::io::commands::EXIT_INPUT;
use conconic_core::io::{run_morley, run_poncelet, run_verify, IoError, Mode, MorleyArgs, Outcome, PonceletArgs, Scene};
use conconic_core::Tolerance;

#[derive(Parser)]
#[command(name = "conconic", version, about = "Conics on triangle cevians, Poncelet chains and Morley's trisectors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Number backend; `morley` and `poncelet` need `float`.
    #[arg(long)]
    mode: Option<Mode>,
    /// Relative tolerance for float zero tests.
    #[arg(long)]
    epsilon: Option<f64>,
    /// Closure tolerance for Poncelet chains.
    #[arg(long)]
    closure_tol: Option<f64>,
    /// Write an SVG figure to this path.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Print the JSON report instead of the text summary.
    #[arg(long)]
    json: bool,
}

impl Common {
    fn tolerance(&self, base: Tolerance) -> Tolerance {
        let mut tol = base;
        if let Some(e) = self.epsilon {
            tol.eps = e;
        }
        if let Some(c) = self.closure_tol {
            tol.closure = c;
        }
        tol
    }

    fn require_float(&self, command: &str) -> Result<(), IoError> {
        match self.mode {
            Some(Mode::Rational) => Err(IoError::Invalid(format!(
                "{command} needs square roots and trigonometry; use --mode float"
            ))),
            _ => Ok(()),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check the four conditions for the cevians described in a scene file.
    Verify {
        scene: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Build the trisector configuration of a triangle and test the porism on its conics.
    Morley {
        /// Vertices as "x1,y1 x2,y2 x3,y3".
        #[arg(long, allow_hyphen_values = true)]
        triangle: String,
        #[arg(long, default_value_t = 25)]
        poncelet_samples: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Trace a Poncelet chain between two conics.
    Poncelet {
        /// Outer conic coefficients "x2,xy,y2,xz,yz,z2".
        #[arg(long, allow_hyphen_values = true)]
        outer: String,
        /// Inner conic coefficients, same order.
        #[arg(long, allow_hyphen_values = true)]
        inner: String,
        /// Starting point "x,y" on the outer conic.
        #[arg(long, allow_hyphen_values = true)]
        start: Option<String>,
        #[arg(long, default_value_t = 100)]
        max_steps: usize,
        /// Run the porism check for this closure step.
        #[arg(long)]
        expected_n: Option<usize>,
        #[arg(long, default_value_t = 25)]
        samples: usize,
        #[command(flatten)]
        common: Common,
    },
}

fn emit<R: Serialize>(outcome: Outcome<R>, common: &Common, text: impl Fn(&R) -> String) -> Result<i32, IoError> {
    if let (Some(path), Some(svg)) = (&common.svg, &outcome.svg) {
        std::fs::write(path, svg).map_err(|e| IoError::Read {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
    }
    let body = if common.json {
        let json = serde_json::to_string_pretty(&outcome.report).expect("reports serialize");
        format!("{json}\n")
    } else {
        text(&outcome.report)
    };
    // A closed pipe (e.g. `| head`) is not an error worth a panic.
    let _ = std::io::stdout().lock().write_all(body.as_bytes());
    Ok(outcome.exit_code)
}

fn run(cli: Cli) -> Result<i32, IoError> {
    match cli.command {
        Command::Verify { scene, common } => {
            let scene = Scene::load(&scene)?;
            let tol = common.tolerance(scene.tolerance());
            let mode = common.mode.unwrap_or(scene.mode);
            let outcome = run_verify(&scene, mode, &tol, common.svg.is_some())?;
            emit(outcome, &common, |r| r.to_text())
        }
        Command::Morley {
            triangle,
            poncelet_samples,
            common,
        } => {
            common.require_float("morley")?;
            let args = MorleyArgs {
                triangle,
                samples: poncelet_samples,
            };
            let outcome = run_morley(&args, &common.tolerance(Tolerance::default()), common.svg.is_some())?;
            emit(outcome, &common, |r| r.to_text())
        }
        Command::Poncelet {
            outer,
            inner,
            start,
            max_steps,
            expected_n,
            samples,
            common,
        } => {
            common.require_float("poncelet")?;
            let args = PonceletArgs {
                outer,
                inner,
                start,
                max_steps,
                expected_n,
                samples,
            };
            let outcome = run_poncelet(&args, &common.tolerance(Tolerance::default()), common.svg.is_some())?;
            emit(outcome, &common, |r| r.to_text())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT as u8)
        }
    }
}

