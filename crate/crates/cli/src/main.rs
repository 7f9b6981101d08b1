//! `pionless-qre`: resource estimates, sweeps and desk verification.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use pionless_core::{KickbackConstant, LogBase, TimeSpec};
use pionless_qre::{
    accounting, estimate, load_params, parse_range, parse_time, render_csv, render_estimate,
    render_json, sweep, Axis, CliError, EstimateRequest, Format, Method, SweepRequest, PARAMS_ENV,
};

#[derive(Parser)]
#[command(
    name = "pionless-qre",
    version,
    about = "Fault-tolerant resource estimates for lattice pionless EFT"
)]
struct Cli {
    /// Parameter file with `key = value` lines.
    #[arg(long, global = true, env = PARAMS_ENV)]
    params: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// T-count and qubits for one instance.
    Estimate {
        #[arg(long, value_enum)]
        method: Method,
        #[arg(long)]
        eta: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Estimates along the eta or m axis.
    Sweep {
        #[arg(long, value_enum)]
        axis: Axis,
        /// Inclusive range `START..END`.
        #[arg(long)]
        range: String,
        #[arg(long, default_value_t = 1)]
        step: u64,
        /// Comma-separated methods.
        #[arg(long, value_delimiter = ',', default_value = "trotter2,qsp")]
        methods: Vec<Method>,
        /// Particle number when the sweep runs over m.
        #[arg(long, default_value_t = 16)]
        eta: u64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[command(flatten)]
        common: Common,
    },
    /// Runs the desk verification suite; exit status 1 on any failure.
    Verify {
        /// Only run cases whose name contains this text.
        filter: Option<String>,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value_t = 3)]
    d: u32,
    #[arg(long, default_value_t = 3)]
    m: u32,
    #[arg(long, default_value_t = 0.1)]
    eps: f64,
    /// `cross:<E>MeV`, `response:<Δω>MeV` or a time in MeV⁻¹.
    #[arg(long, default_value = "cross:10MeV", value_parser = parse_time)]
    time: TimeSpec,
    /// Count the spin and isospin qubits of every nucleon.
    #[arg(long)]
    include_internal: bool,
    /// `8b` or `4b`.
    #[arg(long, default_value = "8b")]
    kickback_constant: KickbackConstant,
    /// `2` or `e`.
    #[arg(long, default_value = "2")]
    qsp_log_base: LogBase,
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let params = load_params(cli.params.as_deref())?;
    match cli.command {
        Command::Estimate {
            method,
            eta,
            common,
        } => {
            let req = EstimateRequest {
                method,
                eta,
                d: common.d,
                m: common.m,
                eps: common.eps,
                time: common.time,
                accounting: accounting(
                    common.include_internal,
                    common.kickback_constant,
                    common.qsp_log_base,
                ),
            };
            emit(&format!("{}\n", render_estimate(&estimate(&req, &params)?)));
        }
        Command::Sweep {
            axis,
            range,
            step,
            methods,
            eta,
            format,
            common,
        } => {
            let req = SweepRequest {
                axis,
                values: parse_range(&range, step).map_err(CliError::Usage)?,
                methods,
                eta,
                d: common.d,
                m: common.m,
                eps: common.eps,
                time: common.time,
                accounting: accounting(
                    common.include_internal,
                    common.kickback_constant,
                    common.qsp_log_base,
                ),
            };
            let rows = sweep(&req, &params)?;
            match format {
                Format::Csv => emit(&render_csv(&req, &params, &rows)),
                Format::Json => emit(&format!("{}\n", render_json(&req, &params, &rows))),
            }
        }
        Command::Verify { filter } => {
            let report = pionless_desk_sim::suite::run_suite_with(&params, filter.as_deref());
            emit(&format!("{}\n", report.to_json()));
            for case in report.cases.iter().filter(|c| !c.pass) {
                eprintln!("FAIL {}: {}", case.name, case.detail);
            }
            if !report.all_pass() {
                if report.cases.is_empty() {
                    eprintln!("no verification case matches the filter");
                }
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// Writes to stdout; a closed pipe (e.g. `| head`) ends output quietly.
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|()| out.flush());
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
