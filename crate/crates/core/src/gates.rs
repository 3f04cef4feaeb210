//! Single-loop schedules, closed-form single-qubit gates and gate metrics.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::{CMatrix2, SquareMatrix, Unitary2};
use crate::scalar::Real;
use crate::schedule::{ControlSegment, Schedule};

/// Gate determined by a pair of cyclic states at `(χ, φ)` that pick up
/// phases `e^{±iγ}`:
///
/// ```text
/// ⎡ e^{iγ}cos²(χ/2) + e^{−iγ}sin²(χ/2)    i e^{−iφ} sin γ sin χ             ⎤
/// ⎣ i e^{iφ} sin γ sin χ                   e^{iγ}sin²(χ/2) + e^{−iγ}cos²(χ/2) ⎦
/// ```
pub fn u_gate<T: Real>(gamma: T, chi: T, phi: T) -> Unitary2<T> {
    let eg = Complex::from_polar(T::one(), gamma);
    let eg_conj = eg.conj();
    let (s, c) = (chi * T::half()).sin_cos();
    let (s2, c2) = (s * s, c * c);
    let off = gamma.sin() * chi.sin();
    let m = CMatrix2::new(
        eg * c2 + eg_conj * s2,
        Complex::<T>::i() * Complex::from_polar(off, -phi),
        Complex::<T>::i() * Complex::from_polar(off, phi),
        eg * s2 + eg_conj * c2,
    );
    Unitary2::new_unchecked(m)
}

/// The single-loop gate
///
/// ```text
/// ⎡ −i cos χ   −i sin χ ⎤
/// ⎣ −i sin χ    i cos χ ⎦
/// ```
///
/// Accepts any `chi`, unlike [`single_loop_schedule`].
pub fn u_chi<T: Real>(chi: T) -> Unitary2<T> {
    let (s, c) = chi.sin_cos();
    let z = T::zero();
    Unitary2::new_unchecked(CMatrix2::new(
        Complex::new(z, -c),
        Complex::new(z, -s),
        Complex::new(z, -s),
        Complex::new(z, c),
    ))
}

pub(crate) fn check_chi<T: Real>(chi: T) -> Result<()> {
    if chi.is_finite() && chi >= T::zero() && chi <= T::FRAC_PI_2() {
        Ok(())
    } else {
        Err(Error::ChiOutOfRange(chi.to_f64().unwrap_or(f64::NAN)))
    }
}

/// Four-segment loop ABCDA that carries the cyclic state at polar angle `chi`
/// (azimuth 0) around a closed path with zero net dynamical phase:
///
/// 1. z axis, `omega`, `π/(2ω)`
/// 2. x axis, `omega2`, `π/ω₂`
/// 3. z axis, `omega`, `π/(2ω)`
/// 4. −y axis, `omega2`, `(π − 2χ)/ω₂`
///
/// The −y drive is a positive frequency about axis `(0, −1, 0)`. At
/// `chi = π/2` the last segment has zero duration.
pub fn single_loop_schedule<T: Real>(chi: T, omega: T, omega2: T) -> Result<Schedule<T>> {
    check_chi(chi)?;
    for w in [omega, omega2] {
        if !(w.is_finite() && w > T::zero()) {
            return Err(Error::InvalidOmega(w.to_f64().unwrap_or(f64::NAN)));
        }
    }
    let pi = T::PI();
    let (o, l) = (T::zero(), T::one());
    let quarter = pi / (T::two() * omega);
    // (π − 2χ) can round to a tiny negative number at χ = π/2
    let last = ((pi - T::two() * chi) / omega2).max(T::zero());
    let segments = vec![
        ControlSegment::along_z(omega, quarter)?,
        ControlSegment::along_x(omega2, pi / omega2)?,
        ControlSegment::along_z(omega, quarter)?,
        ControlSegment::new([o, -l, o], omega2, last)?,
    ];
    Ok(Schedule::new(segments, format!("single-loop chi={chi}")))
}

/// Comparison of two gate matrices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GateReport<T> {
    /// `max |u_ij − v_ij|`, sensitive to global phase.
    pub max_entry_deviation: T,
    /// `|tr(u†v)| / dim`, blind to global phase.
    pub trace_fidelity: T,
    /// Larger of the two matrices' `‖M†M − I‖_max`.
    pub unitarity_defect: T,
}

impl<T: Real> GateReport<T> {
    pub fn passes(&self, threshold: T) -> bool {
        self.max_entry_deviation <= threshold
    }
}

/// Entrywise comparison including global phase.
pub fn compare_gates<T, A, B>(u: &A, v: &B) -> Result<GateReport<T>>
where
    T: Real,
    A: SquareMatrix<T> + ?Sized,
    B: SquareMatrix<T> + ?Sized,
{
    let n = u.dim();
    if n != v.dim() {
        return Err(Error::DimensionMismatch(n, v.dim()));
    }
    let mut dev = T::zero();
    let mut tr = Complex::new(T::zero(), T::zero());
    for i in 0..n {
        for j in 0..n {
            dev = dev.max((u.entry(i, j) - v.entry(i, j)).norm());
            tr = tr + u.entry(j, i).conj() * v.entry(j, i);
        }
    }
    let dim = T::from_usize(n).unwrap();
    Ok(GateReport {
        max_entry_deviation: dev,
        trace_fidelity: tr.norm() / dim,
        unitarity_defect: defect(u).max(defect(v)),
    })
}

fn defect<T: Real, M: SquareMatrix<T> + ?Sized>(m: &M) -> T {
    let n = m.dim();
    let mut worst = T::zero();
    for i in 0..n {
        for j in 0..n {
            let mut acc = Complex::new(T::zero(), T::zero());
            for k in 0..n {
                acc = acc + m.entry(k, i).conj() * m.entry(k, j);
            }
            if i == j {
                acc = acc - T::one();
            }
            worst = worst.max(acc.norm());
        }
    }
    worst
}

/// Frobenius norm of `uv − vu`.
pub fn commutator_norm<T: Real>(u: &Unitary2<T>, v: &Unitary2<T>) -> T {
    u.matrix().commutator(v.matrix()).frobenius_norm()
}
