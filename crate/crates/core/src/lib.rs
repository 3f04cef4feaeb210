//! Simulation and verification of nonadiabatic geometric gates built from
//! single-loop pulse schedules.
//!
//! The numerical core is generic over [`Real`] (`f32` or `f64`); the
//! aliases below fix the scalar to `f64`, which is what the schedule files,
//! the command-line tool and the stated tolerances assume.
//!
//! ```
//! use geoloop::{single_loop_schedule, u_chi, compare_gates};
//!
//! let chi = std::f64::consts::FRAC_PI_3;
//! let loop_gate = single_loop_schedule(chi, 1.0, 2.0).unwrap().unitary();
//! let report = compare_gates(&loop_gate, &u_chi(chi)).unwrap();
//! assert!(report.max_entry_deviation < 1e-12);
//! ```

pub mod cli;
pub mod error;
pub mod file;
pub mod gates;
pub mod linalg;
pub mod noise;
pub mod phases;
pub mod scalar;
pub mod schedule;
pub mod state;
pub mod twoqubit;

pub use error::{Error, Result};
pub use file::{FileError, ScheduleFile};
pub use gates::{commutator_norm, compare_gates, single_loop_schedule, u_chi, u_gate, GateReport};
pub use linalg::{CMatrix, CMatrix2, CMatrix4, SquareMatrix, Unitary, Unitary2, Unitary4};
pub use noise::{fidelity_sweep, perturb_schedule, NoiseSpec, SweepResult};
pub use phases::{
    dynamical_contributions, dynamical_phase, geometric_phase, is_cyclic, sample_path, solid_angle,
    total_phase, BlochPath, PhaseDecomposition,
};
pub use scalar::{wrap_phase, Real};
pub use schedule::{propagate, schedule_unitary, segment_unitary, ControlSegment, Schedule};
pub use state::{BlochVector, Branch, QubitState};
pub use twoqubit::{
    controlled_u, controlled_u_gate, controlled_u_schedule, effective_field_a, nmr_hamiltonian,
    two_qubit_schedule, two_qubit_unitary, u2_gate, u2_prime_gate, BState, ConditionalSchedule,
    ConditionalStep, Mode, NmrParams,
};

pub type C64 = num_complex::Complex<f64>;
pub type State = QubitState<f64>;
pub type Bloch = BlochVector<f64>;
pub type Segment = ControlSegment<f64>;
pub type Sched = Schedule<f64>;
pub type Gate2 = Unitary2<f64>;
pub type Gate4 = Unitary4<f64>;
pub type Path = BlochPath<f64>;
pub type Phases = PhaseDecomposition<f64>;
pub type Report = GateReport<f64>;
pub type Nmr = NmrParams<f64>;
pub type TwoQubitSched = ConditionalSchedule<f64>;
pub type Noise = NoiseSpec<f64>;
pub type Sweep = SweepResult<f64>;
