//! Versioned JSON schedule files.
//!
//! ```json
//! {
//!   "version": 1,
//!   "kind": "single_qubit",
//!   "label": "single-loop chi=0.785",
//!   "segments": [ { "axis": [0.0, 0.0, 1.0], "omega": 1.0, "duration": 1.5707963267948966 } ]
//! }
//! ```
//!
//! Two-qubit files use `"kind": "two_qubit"` with a `mode` (`natural` or
//! `line_selective`), optional `nmr` parameters, and `steps`, each one of
//! `{"pulse_y": {omega, duration}}`, `{"pulse": {axis, omega, duration}}` or
//! `{"coupling": {duration}}`. Unknown fields are rejected.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::schedule::{ControlSegment, Schedule};
use crate::twoqubit::{ConditionalSchedule, ConditionalStep, Mode, NmrParams};

pub const FORMAT_VERSION: u32 = 1;

/// In-memory form of a schedule file.
#[derive(Debug, Clone, PartialEq)]
pub enum ScheduleFile {
    SingleQubit(Schedule<f64>),
    TwoQubit(ConditionalSchedule<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum FileError {
    /// Malformed document; the message carries line and column.
    Syntax(String),
    UnsupportedVersion(u32),
    Invalid(String),
}

impl fmt::Display for FileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FileError::Syntax(m) => write!(f, "parse error: {m}"),
            FileError::UnsupportedVersion(v) => {
                write!(f, "unsupported schedule file version {v} (expected {FORMAT_VERSION})")
            }
            FileError::Invalid(m) => write!(f, "invalid schedule: {m}"),
        }
    }
}

impl std::error::Error for FileError {}

impl From<Error> for FileError {
    fn from(e: Error) -> Self {
        FileError::Invalid(e.to_string())
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum RawKind {
    SingleQubit,
    TwoQubit,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum RawMode {
    Natural,
    LineSelective,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSegment {
    axis: [f64; 3],
    omega: f64,
    duration: f64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPulseY {
    omega: f64,
    duration: f64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCoupling {
    duration: f64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum RawStep {
    PulseY(RawPulseY),
    Pulse(RawSegment),
    Coupling(RawCoupling),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNmr {
    omega_a: f64,
    omega_b: f64,
    coupling_j: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    accessory: Option<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    version: u32,
    kind: RawKind,
    #[serde(default)]
    label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mode: Option<RawMode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    nmr: Option<RawNmr>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    segments: Option<Vec<RawSegment>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    steps: Option<Vec<RawStep>>,
}

const Y_AXIS: [f64; 3] = [0.0, 1.0, 0.0];

fn segment(raw: &RawSegment) -> Result<ControlSegment<f64>, FileError> {
    Ok(ControlSegment::new(raw.axis, raw.omega, raw.duration)?)
}

fn raw_segment(seg: &ControlSegment<f64>) -> RawSegment {
    RawSegment { axis: seg.axis(), omega: seg.omega(), duration: seg.duration() }
}

fn invalid(msg: &str) -> FileError {
    FileError::Invalid(msg.to_string())
}

impl ScheduleFile {
    pub fn parse(text: &str) -> Result<Self, FileError> {
        let raw: RawFile = serde_json::from_str(text).map_err(|e| FileError::Syntax(e.to_string()))?;
        if raw.version != FORMAT_VERSION {
            return Err(FileError::UnsupportedVersion(raw.version));
        }
        match raw.kind {
            RawKind::SingleQubit => {
                if raw.steps.is_some() || raw.mode.is_some() || raw.nmr.is_some() {
                    return Err(invalid("single_qubit files take only `segments`"));
                }
                let segments = raw
                    .segments
                    .ok_or_else(|| invalid("missing `segments`"))?
                    .iter()
                    .map(segment)
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(ScheduleFile::SingleQubit(Schedule::new(segments, raw.label)))
            }
            RawKind::TwoQubit => {
                if raw.segments.is_some() {
                    return Err(invalid("two_qubit files take `steps`, not `segments`"));
                }
                let mode = match raw.mode.ok_or_else(|| invalid("missing `mode`"))? {
                    RawMode::Natural => Mode::Natural,
                    RawMode::LineSelective => Mode::LineSelective,
                };
                let params = raw.nmr.map(|n| NmrParams {
                    omega_a: n.omega_a,
                    omega_b: n.omega_b,
                    coupling_j: n.coupling_j,
                    accessory: n.accessory,
                });
                if let Some(p) = &params {
                    let fields = [p.omega_a, p.omega_b, p.coupling_j, p.accessory.unwrap_or(0.0)];
                    if fields.iter().any(|x| !x.is_finite()) {
                        return Err(invalid("nmr parameters must be finite"));
                    }
                }
                let steps = raw
                    .steps
                    .ok_or_else(|| invalid("missing `steps`"))?
                    .iter()
                    .map(|s| match s {
                        RawStep::PulseY(p) => Ok(ConditionalStep::Pulse(ControlSegment::new(
                            Y_AXIS,
                            p.omega,
                            p.duration,
                        )?)),
                        RawStep::Pulse(seg) => Ok(ConditionalStep::Pulse(segment(seg)?)),
                        RawStep::Coupling(c) => {
                            if !(c.duration.is_finite() && c.duration >= 0.0) {
                                return Err(FileError::from(Error::InvalidDuration(c.duration)));
                            }
                            Ok(ConditionalStep::Coupling { duration: c.duration })
                        }
                    })
                    .collect::<Result<Vec<_>, FileError>>()?;
                let has_coupling = steps.iter().any(|s| matches!(s, ConditionalStep::Coupling { .. }));
                if has_coupling {
                    let p = params.as_ref().ok_or_else(|| invalid("coupling steps require `nmr`"))?;
                    if p.accessory.is_none() {
                        return Err(FileError::from(Error::MissingAccessory));
                    }
                    if !(p.coupling_j > 0.0) {
                        return Err(FileError::from(Error::InvalidCoupling(p.coupling_j)));
                    }
                }
                Ok(ScheduleFile::TwoQubit(ConditionalSchedule { steps, mode, params, label: raw.label }))
            }
        }
    }

    /// Pretty-printed JSON, newline-terminated. Numbers use the shortest
    /// representation that parses back to the same `f64`.
    pub fn to_text(&self) -> String {
        let raw = match self {
            ScheduleFile::SingleQubit(s) => RawFile {
                version: FORMAT_VERSION,
                kind: RawKind::SingleQubit,
                label: s.label.clone(),
                mode: None,
                nmr: None,
                segments: Some(s.segments.iter().map(raw_segment).collect()),
                steps: None,
            },
            ScheduleFile::TwoQubit(c) => RawFile {
                version: FORMAT_VERSION,
                kind: RawKind::TwoQubit,
                label: c.label.clone(),
                mode: Some(match c.mode {
                    Mode::Natural => RawMode::Natural,
                    Mode::LineSelective => RawMode::LineSelective,
                }),
                nmr: c.params.map(|p| RawNmr {
                    omega_a: p.omega_a,
                    omega_b: p.omega_b,
                    coupling_j: p.coupling_j,
                    accessory: p.accessory,
                }),
                segments: None,
                steps: Some(
                    c.steps
                        .iter()
                        .map(|s| match s {
                            ConditionalStep::Pulse(seg) if seg.axis() == Y_AXIS => {
                                RawStep::PulseY(RawPulseY { omega: seg.omega(), duration: seg.duration() })
                            }
                            ConditionalStep::Pulse(seg) => RawStep::Pulse(raw_segment(seg)),
                            ConditionalStep::Coupling { duration } => {
                                RawStep::Coupling(RawCoupling { duration: *duration })
                            }
                        })
                        .collect(),
                ),
            },
        };
        let mut text = serde_json::to_string_pretty(&raw).expect("schedule serializes");
        text.push('\n');
        text
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::single_loop_schedule;
    use crate::twoqubit::two_qubit_schedule;

    #[test]
    fn single_qubit_round_trip() {
        let f = ScheduleFile::SingleQubit(single_loop_schedule(0.7, 1.1, 2.3).unwrap());
        assert_eq!(ScheduleFile::parse(&f.to_text()).unwrap(), f);
    }

    #[test]
    fn two_qubit_round_trip_uses_pulse_y() {
        let p = NmrParams::new(10.0, 20.0, 0.5);
        let f = ScheduleFile::TwoQubit(two_qubit_schedule(1.0, &p, Mode::Natural).unwrap());
        let text = f.to_text();
        assert!(text.contains("\"pulse_y\""));
        assert!(text.contains("\"coupling\""));
        assert_eq!(ScheduleFile::parse(&text).unwrap(), f);
    }

    #[test]
    fn unknown_field_reports_position() {
        let text = "{\n  \"version\": 1,\n  \"kind\": \"single_qubit\",\n  \"segments\": [],\n  \"colour\": 3\n}\n";
        match ScheduleFile::parse(text) {
            Err(FileError::Syntax(m)) => {
                assert!(m.contains("colour"), "{m}");
                assert!(m.contains("line 5"), "{m}");
            }
            other => panic!("{other:?}"),
        }
        let text = r#"{"version":1,"kind":"single_qubit","segments":[{"axis":[1,0,0],"omega":1,"duration":1,"phase":0}]}"#;
        assert!(matches!(ScheduleFile::parse(text), Err(FileError::Syntax(_))));
    }

    #[test]
    fn semantic_errors() {
        let bad_version = r#"{"version":2,"kind":"single_qubit","segments":[]}"#;
        assert_eq!(ScheduleFile::parse(bad_version), Err(FileError::UnsupportedVersion(2)));
        let bad_axis = r#"{"version":1,"kind":"single_qubit","segments":[{"axis":[1,1,0],"omega":1,"duration":1}]}"#;
        assert!(matches!(ScheduleFile::parse(bad_axis), Err(FileError::Invalid(_))));
        let no_nmr = r#"{"version":1,"kind":"two_qubit","mode":"natural","steps":[{"coupling":{"duration":1}}]}"#;
        assert!(matches!(ScheduleFile::parse(no_nmr), Err(FileError::Invalid(_))));
        let no_mode = r#"{"version":1,"kind":"two_qubit","steps":[]}"#;
        assert!(matches!(ScheduleFile::parse(no_mode), Err(FileError::Invalid(_))));
        assert!(matches!(ScheduleFile::parse("not json"), Err(FileError::Syntax(_))));
    }

    #[test]
    fn empty_single_qubit_file() {
        let f = ScheduleFile::parse(r#"{"version":1,"kind":"single_qubit","segments":[]}"#).unwrap();
        assert_eq!(f, ScheduleFile::SingleQubit(Schedule::new(Vec::new(), "")));
    }
}
