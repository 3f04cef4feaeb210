//! Piecewise-constant single-qubit drives and their exact propagators.
//!
//! A segment drives the qubit with `H = (ω/2)(n·σ)` for a time `τ` (ħ = 1),
//! and its propagator `exp(−iHτ)` is evaluated in closed form as
//! `cos(θ/2)·I − i·sin(θ/2)·(n·σ)` with `θ = ωτ`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::{CMatrix2, Unitary2};
use crate::scalar::Real;
use crate::state::{BlochVector, QubitState};

/// One constant piece of a drive: rotation axis, angular frequency and duration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ControlSegment<T> {
    axis: [T; 3],
    omega: T,
    duration: T,
}

impl<T: Real> ControlSegment<T> {
    /// Validates `‖axis‖ = 1` (to `Real::algebraic_tol()`), `omega ≥ 0` and
    /// `duration ≥ 0`. Zero-duration segments are legal and act as identity.
    pub fn new(axis: [T; 3], omega: T, duration: T) -> Result<Self> {
        if axis.iter().any(|a| !a.is_finite()) {
            return Err(Error::NonFinite("segment axis"));
        }
        let norm = axis.iter().map(|&a| a * a).sum::<T>().sqrt();
        if (norm - T::one()).abs() > T::algebraic_tol() {
            return Err(Error::NonUnitAxis { norm: norm.to_f64().unwrap_or(f64::NAN) });
        }
        if !omega.is_finite() || omega < T::zero() {
            return Err(Error::InvalidOmega(omega.to_f64().unwrap_or(f64::NAN)));
        }
        if !duration.is_finite() || duration < T::zero() {
            return Err(Error::InvalidDuration(duration.to_f64().unwrap_or(f64::NAN)));
        }
        Ok(Self { axis, omega, duration })
    }

    pub fn along_x(omega: T, duration: T) -> Result<Self> {
        Self::new([T::one(), T::zero(), T::zero()], omega, duration)
    }

    pub fn along_y(omega: T, duration: T) -> Result<Self> {
        Self::new([T::zero(), T::one(), T::zero()], omega, duration)
    }

    pub fn along_z(omega: T, duration: T) -> Result<Self> {
        Self::new([T::zero(), T::zero(), T::one()], omega, duration)
    }

    pub fn axis(&self) -> [T; 3] {
        self.axis
    }

    pub fn omega(&self) -> T {
        self.omega
    }

    pub fn duration(&self) -> T {
        self.duration
    }

    /// Rotation angle `θ = ωτ` on the Bloch sphere.
    pub fn angle(&self) -> T {
        self.omega * self.duration
    }

    /// Same axis and frequency, different duration.
    pub fn with_duration(&self, duration: T) -> Result<Self> {
        Self::new(self.axis, self.omega, duration)
    }

    /// Same axis and duration, different frequency.
    pub fn with_omega(&self, omega: T) -> Result<Self> {
        Self::new(self.axis, omega, self.duration)
    }

    /// `H = (ω/2)(n·σ)`.
    pub fn hamiltonian(&self) -> CMatrix2<T> {
        CMatrix2::pauli_dot(self.axis).scale((self.omega * T::half()).into())
    }

    /// `⟨ψ|H|ψ⟩ = (ω/2)(n·r)` where `r` is the Bloch vector of `ψ`.
    pub fn energy(&self, state: &QubitState<T>) -> T {
        let r = state.bloch_vector();
        let n = BlochVector::new(self.axis[0], self.axis[1], self.axis[2]);
        self.omega * T::half() * n.dot(&r)
    }

    /// Propagator after the first `t` time units of this segment (`t` may
    /// exceed the duration; it is not clamped).
    pub fn partial_unitary(&self, t: T) -> Unitary2<T> {
        rotation(self.axis, self.omega * t)
    }

    pub fn unitary(&self) -> Unitary2<T> {
        self.partial_unitary(self.duration)
    }
}

/// `exp(−i(θ/2)(n·σ))` for a unit axis `n`.
pub fn rotation<T: Real>(axis: [T; 3], theta: T) -> Unitary2<T> {
    let (s, c) = (theta * T::half()).sin_cos();
    let [nx, ny, nz] = axis;
    let m = CMatrix2::new(
        Complex::new(c, -s * nz),
        Complex::new(-s * ny, -s * nx),
        Complex::new(s * ny, -s * nx),
        Complex::new(c, s * nz),
    );
    Unitary2::new_unchecked(m)
}

/// Free-function form of [`ControlSegment::unitary`].
pub fn segment_unitary<T: Real>(seg: &ControlSegment<T>) -> Unitary2<T> {
    seg.unitary()
}

/// Ordered sequence of segments; the first segment is applied first.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Schedule<T> {
    pub segments: Vec<ControlSegment<T>>,
    pub label: String,
}

impl<T: Real> Schedule<T> {
    pub fn new(segments: Vec<ControlSegment<T>>, label: impl Into<String>) -> Self {
        Self { segments, label: label.into() }
    }

    pub fn empty() -> Self {
        Self { segments: Vec::new(), label: String::new() }
    }

    pub fn total_duration(&self) -> T {
        self.segments.iter().map(|s| s.duration).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    /// `U_n ⋯ U_2 U_1`; the identity for an empty schedule.
    pub fn unitary(&self) -> Unitary2<T> {
        self.segments
            .iter()
            .fold(Unitary2::identity(), |acc, seg| seg.unitary() * acc)
    }

    /// State after the whole schedule.
    pub fn propagate(&self, initial: &QubitState<T>) -> QubitState<T> {
        self.states(initial).last().copied().unwrap_or(*initial)
    }

    /// States at every segment boundary: the initial state followed by the
    /// state after each segment (`len() + 1` entries).
    pub fn states(&self, initial: &QubitState<T>) -> Vec<QubitState<T>> {
        let mut out = Vec::with_capacity(self.segments.len() + 1);
        let mut psi = *initial;
        out.push(psi);
        for seg in &self.segments {
            psi = apply(&seg.unitary(), &psi);
            out.push(psi);
        }
        out
    }
}

pub fn schedule_unitary<T: Real>(sched: &Schedule<T>) -> Unitary2<T> {
    sched.unitary()
}

pub fn propagate<T: Real>(sched: &Schedule<T>, initial: &QubitState<T>) -> QubitState<T> {
    sched.propagate(initial)
}

/// Applies a unitary to a state. The result is renormalized to absorb
/// rounding so that long schedules keep the state on the unit sphere.
pub fn apply<T: Real>(u: &Unitary2<T>, psi: &QubitState<T>) -> QubitState<T> {
    let [a, b] = u.apply(&psi.amplitudes());
    QubitState::renormalized(a, b)
}
