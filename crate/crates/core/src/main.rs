use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use geoloop::cli::{self, parse_angle, CliError, SynthSpec, Target, Verdict};
use geoloop::{Mode, NmrParams};

/// Single-loop geometric gate toolkit. Angles are radians; `pi/4`-style
/// literals are accepted.
#[derive(Parser)]
#[command(name = "geoloop", version)]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    SingleLoop,
    TwoQubitNatural,
    TwoQubitLineSelective,
    ControlledU,
}

#[derive(Subcommand)]
enum Command {
    /// Write a schedule file.
    Synthesize {
        #[arg(long, value_enum, default_value = "single-loop")]
        kind: Kind,
        /// Polar angle of the cyclic state, in [0, pi/2] (single-loop, controlled-u).
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
        chi: Option<f64>,
        /// Frequency of the z pulses (single-loop) or y pulses (two-qubit).
        #[arg(long, default_value_t = 1.0)]
        omega: f64,
        /// Frequency of the x and -y pulses.
        #[arg(long, default_value_t = 1.0)]
        omega2: f64,
        /// Coupling constant J (two-qubit).
        #[arg(long, default_value_t = 1.0)]
        coupling_j: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        omega_a: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        omega_b: f64,
        /// Accessory field on qubit a; defaults to omega_a - pi*J.
        #[arg(long, allow_hyphen_values = true)]
        accessory: Option<f64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare a schedule's propagator against a named gate.
    Verify {
        schedule: PathBuf,
        /// u_chi:<chi> | u2 | u2_prime | controlled_u:<chi>
        #[arg(long)]
        target: Target,
    },
    /// Print total, dynamical and geometric phase of the plus state at (chi, phi).
    Phase {
        schedule: PathBuf,
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
        chi: f64,
        #[arg(long, value_parser = parse_angle, default_value = "0", allow_hyphen_values = true)]
        phi: f64,
    },
    /// Export the Bloch-vector path of the plus state at (chi, phi) as CSV.
    ExportPath {
        schedule: PathBuf,
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
        chi: f64,
        #[arg(long, value_parser = parse_angle, default_value = "0", allow_hyphen_values = true)]
        phi: f64,
        /// Samples per segment, including both endpoints.
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Monte Carlo control-error sweep of trace fidelity.
    Noise {
        schedule: PathBuf,
        #[arg(long)]
        target: Target,
        #[arg(long, default_value_t = 0.0)]
        sigma_omega: f64,
        #[arg(long, default_value_t = 0.0)]
        sigma_tau: f64,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn run(cmd: Command) -> Result<u8, CliError> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cmd {
        Command::Synthesize { kind, chi, omega, omega2, coupling_j, omega_a, omega_b, accessory, out: path } => {
            let need_chi = || chi.ok_or_else(|| CliError::input("--chi is required for this kind"));
            let mut params = NmrParams::new(omega_a, omega_b, coupling_j);
            params.accessory = accessory;
            let spec = match kind {
                Kind::SingleLoop => SynthSpec::SingleLoop { chi: need_chi()?, omega, omega2 },
                Kind::ControlledU => SynthSpec::ControlledU { chi: need_chi()?, omega, omega2 },
                Kind::TwoQubitNatural => SynthSpec::TwoQubit { mode: Mode::Natural, omega, params },
                Kind::TwoQubitLineSelective => SynthSpec::TwoQubit { mode: Mode::LineSelective, omega, params },
            };
            cli::cmd_synthesize(&spec, &path)?;
            Ok(0)
        }
        Command::Verify { schedule, target } => match cli::cmd_verify(&schedule, &target, &mut out)? {
            Verdict::Pass => Ok(0),
            Verdict::Fail => Ok(1),
        },
        Command::Phase { schedule, chi, phi } => {
            cli::cmd_phase(&schedule, chi, phi, &mut out)?;
            Ok(0)
        }
        Command::ExportPath { schedule, chi, phi, samples, out: path } => {
            cli::cmd_export_path(&schedule, chi, phi, samples, &path)?;
            Ok(0)
        }
        Command::Noise { schedule, target, sigma_omega, sigma_tau, trials, seed } => {
            cli::cmd_noise(&schedule, &target, sigma_omega, sigma_tau, trials, seed, &mut out)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(args.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let _ = io::stdout().flush();
            eprintln!("error: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
