use std::io::Read;
use std::process::ExitCode;

use clap::Parser;

use corr_cli::{execute, parse, ExecOptions, IrredMode};

/// Exact correspondence and transfer computations from a declarative
/// script.
#[derive(Parser)]
#[command(name = "corres", version, about)]
struct Args {
    /// Script file (stdin when omitted).
    #[arg(long)]
    input: Option<std::path::PathBuf>,

    /// Emit the machine-readable JSON report.
    #[arg(long)]
    json: bool,

    /// Seed for generated verification suites.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Degree bound for the symmetric-power cross-check of transfers.
    #[arg(long, default_value_t = 6)]
    max_degree: usize,

    /// Irreducibility checking for declared tower steps: on, off, or auto.
    #[arg(long, default_value = "auto")]
    check_irreducibility: String,

    /// Write the report to a file instead of stdout.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let mode = match args.check_irreducibility.as_str() {
        "on" => IrredMode::On,
        "off" => IrredMode::Off,
        "auto" => IrredMode::Auto,
        other => {
            eprintln!("invalid --check-irreducibility value `{other}` (on, off, auto)");
            return ExitCode::from(2);
        }
    };
    let text = match &args.input {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("cannot read {}: {e}", path.display());
                return ExitCode::from(2);
            }
        },
        None => {
            let mut buf = String::new();
            if let Err(e) = std::io::stdin().read_to_string(&mut buf) {
                eprintln!("cannot read stdin: {e}");
                return ExitCode::from(2);
            }
            buf
        }
    };
    let script = match parse(&text) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(2);
        }
    };
    let opts = ExecOptions {
        seed: args.seed,
        max_degree: args.max_degree,
        check_irreducibility: mode,
    };
    let report = match execute(&script, &opts) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(2);
        }
    };
    let rendered = if args.json { report.to_json() } else { report.render_human() };
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &rendered) {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{rendered}"),
    }
    if report.any_failed() {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
