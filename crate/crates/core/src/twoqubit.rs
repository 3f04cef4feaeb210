//! Two coupled spins under an NMR-style Hamiltonian
//! `(ω_a σz^a + ω_b σz^b + πJ σz^a σz^b)/2`, driven so that qubit a evolves
//! conditionally on the state of qubit b.
//!
//! Two-qubit operators use the basis `|↑↑⟩, |↓↑⟩, |↑↓⟩, |↓↓⟩` (qubit a
//! first and varying fastest). Every operator built here is block diagonal
//! in qubit b, so evolution is simulated block by block in the effective
//! single-qubit picture for qubit a.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::gates::{check_chi, single_loop_schedule, u_chi};
use crate::linalg::{conditional_on_b, kron_ab, CMatrix2, CMatrix4, Unitary2, Unitary4};
use crate::scalar::Real;
use crate::schedule::{ControlSegment, Schedule};

/// Parameters of the two-spin Hamiltonian plus the optional accessory field
/// `ω′_a` applied to qubit a.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NmrParams<T> {
    pub omega_a: T,
    pub omega_b: T,
    pub coupling_j: T,
    pub accessory: Option<T>,
}

impl<T: Real> NmrParams<T> {
    pub fn new(omega_a: T, omega_b: T, coupling_j: T) -> Self {
        Self { omega_a, omega_b, coupling_j, accessory: None }
    }

    pub fn with_accessory(mut self, accessory: T) -> Self {
        self.accessory = Some(accessory);
        self
    }

    /// Accessory field `ω′_a = ω_a − πJ`, which switches qubit a's effective
    /// field off when b is down and to `2πJ` when b is up.
    pub fn with_conditional_accessory(self) -> Self {
        let acc = self.omega_a - T::PI() * self.coupling_j;
        self.with_accessory(acc)
    }
}

/// State of the control qubit b.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BState {
    Up,
    Down,
}

/// Lab-frame Hamiltonian as a 4×4 (diagonal, Hermitian) matrix.
pub fn nmr_hamiltonian<T: Real>(p: &NmrParams<T>) -> CMatrix4<T> {
    let z = CMatrix2::<T>::pauli_z();
    let id = CMatrix2::<T>::identity();
    let h = kron_ab(&z, &id).scale(p.omega_a.into())
        + kron_ab(&id, &z).scale(p.omega_b.into())
        + kron_ab(&z, &z).scale((T::PI() * p.coupling_j).into());
    h.scale(T::half().into())
}

/// σz coefficient `c` of qubit a's effective Hamiltonian `H_a = (c/2)σz`
/// with `c = ω_a − ω′_a ± πJ` (+ for b up, − for b down).
pub fn effective_field_a<T: Real>(p: &NmrParams<T>, b: BState) -> Result<T> {
    let acc = p.accessory.ok_or(Error::MissingAccessory)?;
    let pij = T::PI() * p.coupling_j;
    let detuning = p.omega_a - acc;
    Ok(match b {
        BState::Up => detuning + pij,
        BState::Down => detuning - pij,
    })
}

/// How single-qubit pulses on a act across the two blocks of qubit b.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Pulses act on qubit a regardless of b; only the coupling is conditional.
    Natural,
    /// Pulses and fields act on qubit a only when b is up.
    LineSelective,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConditionalStep<T> {
    /// Drive on qubit a.
    Pulse(ControlSegment<T>),
    /// Free evolution under the coupling with the accessory field on.
    Coupling { duration: T },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalSchedule<T> {
    pub steps: Vec<ConditionalStep<T>>,
    pub mode: Mode,
    /// Required when the schedule contains a coupling step.
    pub params: Option<NmrParams<T>>,
    pub label: String,
}

fn check_coupling<T: Real>(j: T) -> Result<()> {
    if j.is_finite() && j > T::zero() {
        Ok(())
    } else {
        Err(Error::InvalidCoupling(j.to_f64().unwrap_or(f64::NAN)))
    }
}

/// Three-step conditional sequence on qubit a: a y pulse for `π/(2ω)`, the
/// coupling for `1/(2J)`, and the same y pulse again.
///
/// When `p` has no accessory field, the conditional choice
/// [`NmrParams::with_conditional_accessory`] is filled in.
pub fn two_qubit_schedule<T: Real>(
    omega: T,
    p: &NmrParams<T>,
    mode: Mode,
) -> Result<ConditionalSchedule<T>> {
    check_coupling(p.coupling_j)?;
    if !(omega.is_finite() && omega > T::zero()) {
        return Err(Error::InvalidOmega(omega.to_f64().unwrap_or(f64::NAN)));
    }
    let params = match p.accessory {
        Some(_) => *p,
        None => p.with_conditional_accessory(),
    };
    let pulse = ControlSegment::along_y(omega, T::PI() / (T::two() * omega))?;
    let coupling = ConditionalStep::Coupling { duration: T::one() / (T::two() * p.coupling_j) };
    let label = match mode {
        Mode::Natural => "conditional natural",
        Mode::LineSelective => "conditional line-selective",
    };
    Ok(ConditionalSchedule {
        steps: vec![ConditionalStep::Pulse(pulse), coupling, ConditionalStep::Pulse(pulse)],
        mode,
        params: Some(params),
        label: label.to_string(),
    })
}

impl<T: Real> ConditionalSchedule<T> {
    /// Single-qubit schedule that qubit a experiences when b is held in state `b`.
    ///
    /// Coupling steps become z-axis segments with frequency `|c|` (axis −z for
    /// negative `c`); in line-selective mode the b-down schedule is empty.
    pub fn effective_schedule(&self, b: BState) -> Result<Schedule<T>> {
        let label = format!("{} (b {:?})", self.label, b);
        if self.mode == Mode::LineSelective && b == BState::Down {
            return Ok(Schedule::new(Vec::new(), label));
        }
        let mut segments = Vec::with_capacity(self.steps.len());
        for step in &self.steps {
            match *step {
                ConditionalStep::Pulse(seg) => segments.push(seg),
                ConditionalStep::Coupling { duration } => {
                    let p = self.params.as_ref().ok_or(Error::MissingAccessory)?;
                    check_coupling(p.coupling_j)?;
                    let c = effective_field_a(p, b)?;
                    let axis = if c < T::zero() { -T::one() } else { T::one() };
                    segments.push(ControlSegment::new([T::zero(), T::zero(), axis], c.abs(), duration)?);
                }
            }
        }
        Ok(Schedule::new(segments, label))
    }

    pub fn unitary(&self) -> Result<Unitary4<T>> {
        let up = self.effective_schedule(BState::Up)?.unitary();
        let down = self.effective_schedule(BState::Down)?.unitary();
        Ok(Unitary4::new_unchecked(conditional_on_b(up.matrix(), down.matrix())))
    }
}

pub fn two_qubit_unitary<T: Real>(sched: &ConditionalSchedule<T>) -> Result<Unitary4<T>> {
    sched.unitary()
}

/// The single-loop schedule of [`single_loop_schedule`] on qubit a, applied
/// only when b is up.
pub fn controlled_u_schedule<T: Real>(chi: T, omega: T, omega2: T) -> Result<ConditionalSchedule<T>> {
    let single = single_loop_schedule(chi, omega, omega2)?;
    Ok(ConditionalSchedule {
        steps: single.segments.into_iter().map(ConditionalStep::Pulse).collect(),
        mode: Mode::LineSelective,
        params: None,
        label: format!("controlled single-loop chi={chi}"),
    })
}

/// Propagated controlled gate: `u_chi(chi)` on the b-up block, identity on
/// the b-down block.
pub fn controlled_u<T: Real>(chi: T, omega: T, omega2: T) -> Result<Unitary4<T>> {
    check_chi(chi)?;
    controlled_u_schedule(chi, omega, omega2)?.unitary()
}

/// Block assembly `diag(u, I)` in the b basis.
pub fn controlled_gate<T: Real>(u: &Unitary2<T>) -> Unitary4<T> {
    Unitary4::new_unchecked(conditional_on_b(u.matrix(), &CMatrix2::identity()))
}

/// Closed-form target of the natural-mode sequence.
pub fn u2_gate<T: Real>() -> Unitary4<T> {
    let (o, l, i) = (Complex::new(T::zero(), T::zero()), Complex::new(T::one(), T::zero()), Complex::i());
    Unitary4::new_unchecked(CMatrix4::from_rows([
        [-i, o, o, o],
        [o, i, o, o],
        [o, o, o, -l],
        [o, o, l, o],
    ]))
}

/// Closed-form target of the line-selective sequence: `diag(−i, i, 1, 1)`.
pub fn u2_prime_gate<T: Real>() -> Unitary4<T> {
    let (l, i) = (Complex::new(T::one(), T::zero()), Complex::i());
    Unitary4::new_unchecked(CMatrix4::from_diagonal([-i, i, l, l]))
}

/// Closed-form controlled single-loop gate `diag(u_chi(chi), I)`.
pub fn controlled_u_gate<T: Real>(chi: T) -> Unitary4<T> {
    controlled_gate(&u_chi(chi))
}

/// Rank of the operator-Schmidt decomposition `U = Σ_k A_k ⊗ B_k`: 1 exactly
/// for product operators.
pub fn operator_schmidt_rank<T: Real>(u: &CMatrix4<T>, tol: T) -> usize {
    // realign U[(a_i + 2 b_i), (a_j + 2 b_j)] into R[(a_i, a_j), (b_i, b_j)]
    let mut r = [[Complex::new(T::zero(), T::zero()); 4]; 4];
    for ai in 0..2 {
        for aj in 0..2 {
            for bi in 0..2 {
                for bj in 0..2 {
                    r[ai * 2 + aj][bi * 2 + bj] = u[(ai + 2 * bi, aj + 2 * bj)];
                }
            }
        }
    }
    rank(&mut r, tol)
}

fn rank<T: Real>(m: &mut [[Complex<T>; 4]; 4], tol: T) -> usize {
    let mut rank = 0;
    for col in 0..4 {
        let pivot = (rank..4).max_by(|&a, &b| m[a][col].norm().partial_cmp(&m[b][col].norm()).unwrap());
        let Some(p) = pivot else { break };
        if m[p][col].norm() <= tol {
            continue;
        }
        m.swap(rank, p);
        for row in rank + 1..4 {
            let f = m[row][col] / m[rank][col];
            for c in col..4 {
                let sub = f * m[rank][c];
                m[row][c] = m[row][c] - sub;
            }
        }
        rank += 1;
    }
    rank
}
