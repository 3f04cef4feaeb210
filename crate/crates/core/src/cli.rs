//! Command implementations behind the `geoloop` binary.
//!
//! Each command returns `Ok` on success or an [`CliError`] carrying the exit
//! code: 1 for semantic failures (verification FAIL, non-cyclic state), 2 for
//! input errors (bad arguments, unreadable or malformed files, I/O).

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use crate::error::Error;
use crate::file::ScheduleFile;
use crate::gates::{compare_gates, single_loop_schedule, u_chi, GateReport};
use crate::linalg::SquareMatrix;
use crate::noise::{fidelity_sweep, NoiseSpec};
use crate::phases::{geometric_phase, sample_path};
use crate::state::{Branch, QubitState};
use crate::twoqubit::{controlled_u_gate, controlled_u_schedule, two_qubit_schedule, u2_gate, u2_prime_gate, Mode, NmrParams};
use crate::Schedule;

/// Deviation threshold for `verify`; looser than the library tolerance to
/// absorb decimal round-trips through files.
pub const VERIFY_THRESHOLD: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }

    pub fn semantic(message: impl Into<String>) -> Self {
        Self { code: 1, message: message.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::input(e.to_string())
    }
}

fn io_err(e: std::io::Error) -> CliError {
    CliError::input(format!("I/O error: {e}"))
}

/// Parses an angle in radians: a plain number, or `[-][k*]pi[/n]`
/// such as `pi/4`, `-pi/2` or `2*pi/3`.
pub fn parse_angle(s: &str) -> Result<f64, String> {
    let t = s.trim();
    if let Ok(v) = t.parse::<f64>() {
        return if v.is_finite() { Ok(v) } else { Err(format!("angle must be finite: {s}")) };
    }
    let bad = || format!("cannot parse angle `{s}` (use radians or e.g. pi/4)");
    let (sign, body) = match t.strip_prefix('-') {
        Some(rest) => (-1.0, rest),
        None => (1.0, t),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    let factor = match num.strip_suffix("pi") {
        Some("") => 1.0,
        Some(k) => k.strip_suffix('*').unwrap_or(k).parse::<f64>().map_err(|_| bad())?,
        None => return Err(bad()),
    };
    let den = match den {
        Some(d) => d.parse::<f64>().map_err(|_| bad())?,
        None => 1.0,
    };
    let v = sign * factor * std::f64::consts::PI / den;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(bad())
    }
}

/// Named verification target.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Target {
    UChi(f64),
    U2,
    U2Prime,
    ControlledU(f64),
}

impl FromStr for Target {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.split_once(':') {
            Some(("u_chi", a)) => Ok(Target::UChi(parse_angle(a)?)),
            Some(("controlled_u", a)) => Ok(Target::ControlledU(parse_angle(a)?)),
            None if s == "u2" => Ok(Target::U2),
            None if s == "u2_prime" => Ok(Target::U2Prime),
            _ => Err(format!("unknown target `{s}` (expected u_chi:<chi>, u2, u2_prime or controlled_u:<chi>)")),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::UChi(c) => write!(f, "u_chi:{c}"),
            Target::U2 => f.write_str("u2"),
            Target::U2Prime => f.write_str("u2_prime"),
            Target::ControlledU(c) => write!(f, "controlled_u:{c}"),
        }
    }
}

/// What `synthesize` should build.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SynthSpec {
    SingleLoop { chi: f64, omega: f64, omega2: f64 },
    TwoQubit { mode: Mode, omega: f64, params: NmrParams<f64> },
    ControlledU { chi: f64, omega: f64, omega2: f64 },
}

pub fn synthesize(spec: &SynthSpec) -> Result<ScheduleFile, CliError> {
    Ok(match *spec {
        SynthSpec::SingleLoop { chi, omega, omega2 } => {
            ScheduleFile::SingleQubit(single_loop_schedule(chi, omega, omega2)?)
        }
        SynthSpec::TwoQubit { mode, omega, params } => {
            ScheduleFile::TwoQubit(two_qubit_schedule(omega, &params, mode)?)
        }
        SynthSpec::ControlledU { chi, omega, omega2 } => {
            ScheduleFile::TwoQubit(controlled_u_schedule(chi, omega, omega2)?)
        }
    })
}

pub fn cmd_synthesize(spec: &SynthSpec, out: &Path) -> Result<(), CliError> {
    let file = synthesize(spec)?;
    fs::write(out, file.to_text()).map_err(io_err)
}

pub fn load_schedule(path: &Path) -> Result<ScheduleFile, CliError> {
    let text = fs::read_to_string(path).map_err(io_err)?;
    ScheduleFile::parse(&text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn single_qubit(file: ScheduleFile, command: &str) -> Result<Schedule<f64>, CliError> {
    match file {
        ScheduleFile::SingleQubit(s) => Ok(s),
        ScheduleFile::TwoQubit(_) => Err(CliError::input(format!("{command} requires a single_qubit schedule"))),
    }
}

pub fn compare_to_target(file: &ScheduleFile, target: &Target) -> Result<GateReport<f64>, CliError> {
    let actual: Box<dyn SquareMatrix<f64>> = match file {
        ScheduleFile::SingleQubit(s) => Box::new(s.unitary()),
        ScheduleFile::TwoQubit(c) => Box::new(c.unitary()?),
    };
    let expected: Box<dyn SquareMatrix<f64>> = match *target {
        Target::UChi(chi) => Box::new(u_chi(chi)),
        Target::U2 => Box::new(u2_gate::<f64>()),
        Target::U2Prime => Box::new(u2_prime_gate::<f64>()),
        Target::ControlledU(chi) => Box::new(controlled_u_gate(chi)),
    };
    Ok(compare_gates(actual.as_ref(), expected.as_ref())?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

pub fn cmd_verify(schedule: &Path, target: &Target, w: &mut dyn Write) -> Result<Verdict, CliError> {
    let file = load_schedule(schedule)?;
    let report = compare_to_target(&file, target)?;
    let verdict = if report.passes(VERIFY_THRESHOLD) { Verdict::Pass } else { Verdict::Fail };
    (|| -> std::io::Result<()> {
        writeln!(w, "target {target}")?;
        writeln!(w, "max_entry_deviation {:e}", report.max_entry_deviation)?;
        writeln!(w, "trace_fidelity {}", report.trace_fidelity)?;
        writeln!(w, "unitarity_defect {:e}", report.unitarity_defect)?;
        writeln!(w, "{}", if verdict == Verdict::Pass { "PASS" } else { "FAIL" })
    })()
    .map_err(io_err)?;
    Ok(verdict)
}

/// Fixed 12-decimal rendering with negative zero folded to zero.
fn fmt_phase(x: f64) -> String {
    let s = format!("{x:.12}");
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

pub fn cmd_phase(schedule: &Path, chi: f64, phi: f64, w: &mut dyn Write) -> Result<(), CliError> {
    let sched = single_qubit(load_schedule(schedule)?, "phase")?;
    let initial = QubitState::from_angles(chi, phi, Branch::Plus)?;
    let d = geometric_phase(&sched, &initial).map_err(|e| match e {
        Error::NonCyclic { .. } => CliError::semantic("initial state not cyclic"),
        other => other.into(),
    })?;
    writeln!(
        w,
        "total {}\ndynamical {}\ngeometric {}",
        fmt_phase(d.total),
        fmt_phase(d.dynamical),
        fmt_phase(d.geometric)
    )
    .map_err(io_err)
}

/// Renders the Bloch path as CSV text (`t,x,y,z`, LF line endings).
pub fn path_csv(sched: &Schedule<f64>, chi: f64, phi: f64, samples: usize) -> Result<String, CliError> {
    let initial = QubitState::from_angles(chi, phi, Branch::Plus)?;
    let path = sample_path(sched, &initial, samples)?;
    let mut out = String::from("t,x,y,z\n");
    for (t, p) in path.samples() {
        out.push_str(&format!("{t},{},{},{}\n", p.x, p.y, p.z));
    }
    Ok(out)
}

/// Writes the path CSV and returns the number of data rows.
pub fn cmd_export_path(schedule: &Path, chi: f64, phi: f64, samples: usize, out: &Path) -> Result<usize, CliError> {
    let sched = single_qubit(load_schedule(schedule)?, "export-path")?;
    let csv = path_csv(&sched, chi, phi, samples)?;
    fs::write(out, &csv).map_err(io_err)?;
    Ok(csv.lines().count() - 1)
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_noise(
    schedule: &Path,
    target: &Target,
    sigma_omega: f64,
    sigma_tau: f64,
    trials: usize,
    seed: u64,
    w: &mut dyn Write,
) -> Result<(), CliError> {
    let sched = single_qubit(load_schedule(schedule)?, "noise")?;
    let target = match *target {
        Target::UChi(chi) => u_chi(chi),
        other => return Err(CliError::input(format!("noise needs a single-qubit target, got {other}"))),
    };
    let spec = NoiseSpec::new(sigma_omega, sigma_tau, trials, seed)?;
    let result = fidelity_sweep(&sched, &target, &spec)?;
    let mut text = String::from("trial,fidelity\n");
    for (k, f) in result.fidelities.iter().enumerate() {
        text.push_str(&format!("{k},{f}\n"));
    }
    text.push_str(&format!("mean,{}\nmin,{}\nstd,{}\n", result.mean, result.min, result.std));
    w.write_all(text.as_bytes()).map_err(io_err)
}
