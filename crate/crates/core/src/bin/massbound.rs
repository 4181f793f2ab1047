use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use massbound::experiment::{
    cmd_check_perturb, cmd_estimate, cmd_gen, cmd_modal, cmd_reproduce, cmd_sweep, to_json, verdict_exit_code,
    verdict_line, write_text, CommandError, Mode, OutputFormat, RunConfig,
};

#[derive(Parser)]
#[command(name = "massbound", version, about = "Lower bounds on the least mass eigenvalue from modal data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a reference system (M1 or M2) as a JSON system file
    Gen {
        name: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Solve the pencil of a system file and emit modal data
    Modal {
        system: PathBuf,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate F(alpha) over a grid of shifts
    Sweep {
        modal: PathBuf,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        alpha_min: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        alpha_max: Option<f64>,
        #[arg(long)]
        alpha_step: Option<f64>,
        #[arg(long, value_enum, default_value_t = Mode::Blind)]
        mode: Mode,
        /// System file, required in oracle mode
        #[arg(long)]
        system: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        plot: Option<PathBuf>,
    },
    /// Estimate the mass matrix and recommended shift from k pairs
    Estimate {
        modal: PathBuf,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run both reference systems and emit the comparison report
    Reproduce {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check whether a mass perturbation is certified by a lower bound
    CheckPerturb {
        #[arg(long, allow_hyphen_values = true)]
        bound: f64,
        delta: PathBuf,
    },
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), CommandError> {
    match out {
        Some(path) => write_text(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<i32, CommandError> {
    match cli.command {
        Command::Gen { name, out } => {
            cmd_gen(&name, &out)?;
        }
        Command::Modal { system, k, out } => {
            emit(&to_json(&cmd_modal(&system, k)?), out.as_deref())?;
        }
        Command::Sweep {
            modal,
            k,
            alpha_min,
            alpha_max,
            alpha_step,
            mode,
            system,
            format,
            out,
            plot,
        } => {
            let cfg = RunConfig {
                k,
                alpha_min,
                alpha_max,
                alpha_step,
                format,
                plot,
                mode,
                system,
            };
            let report = cmd_sweep(&modal, &cfg)?;
            emit(&report.render(format), out.as_deref())?;
        }
        Command::Estimate { modal, k, out } => {
            emit(&to_json(&cmd_estimate(&modal, k)?), out.as_deref())?;
        }
        Command::Reproduce { out } => {
            emit(&cmd_reproduce()?.to_json(), out.as_deref())?;
        }
        Command::CheckPerturb { bound, delta } => {
            let verdict = cmd_check_perturb(bound, &delta)?;
            println!("{}", verdict_line(&verdict));
            return Ok(verdict_exit_code(&verdict));
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
