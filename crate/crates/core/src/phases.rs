//! Phase bookkeeping for cyclic evolutions.
//!
//! For a state that returns to itself up to a phase, the total phase splits
//! into a dynamical part `−∫⟨ψ|H|ψ⟩dt` and a geometric remainder. On the
//! Bloch sphere the geometric part equals minus half the solid angle enclosed
//! by the traced path.

use crate::error::{Error, Result};
use crate::scalar::{wrap_phase, Real};
use crate::schedule::{apply, Schedule};
use crate::state::{BlochVector, QubitState};

/// Total, dynamical and geometric phase of a cyclic evolution.
///
/// `total` and `geometric` lie in `(−π, π]`; `dynamical` is the unreduced
/// value of the integral. `total ≡ dynamical + geometric (mod 2π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseDecomposition<T> {
    pub total: T,
    pub dynamical: T,
    pub geometric: T,
}

/// `|⟨ψ|U|ψ⟩| ≥ 1 − tol`.
pub fn is_cyclic<T: Real>(sched: &Schedule<T>, initial: &QubitState<T>, tol: T) -> Result<bool> {
    if !(tol > T::zero()) {
        return Err(Error::InvalidTolerance(tol.to_f64().unwrap_or(f64::NAN)));
    }
    let overlap = initial.inner(&sched.propagate(initial)).norm();
    Ok(overlap >= T::one() - tol)
}

/// `arg⟨ψ(0)|ψ(τ)⟩` in `(−π, π]`. Fails with [`Error::NonCyclic`] unless the
/// overlap modulus is within `Real::input_tol()` of one.
pub fn total_phase<T: Real>(sched: &Schedule<T>, initial: &QubitState<T>) -> Result<T> {
    let overlap = initial.inner(&sched.propagate(initial));
    if overlap.norm() < T::one() - T::input_tol() {
        return Err(Error::NonCyclic { overlap: overlap.norm().to_f64().unwrap_or(f64::NAN) });
    }
    Ok(wrap_phase(overlap.arg()))
}

/// Per-segment dynamical phases `−⟨ψ_k|H_k|ψ_k⟩·τ_k`, where `ψ_k` is the
/// state entering segment `k`. The energy is conserved within a segment of
/// constant Hamiltonian, so each term is the exact integral over that segment.
pub fn dynamical_contributions<T: Real>(sched: &Schedule<T>, initial: &QubitState<T>) -> Vec<T> {
    let mut psi = *initial;
    sched
        .segments
        .iter()
        .map(|seg| {
            let d = -seg.energy(&psi) * seg.duration();
            psi = apply(&seg.unitary(), &psi);
            d
        })
        .collect()
}

/// Dynamical phase `−∫⟨ψ(t)|H(t)|ψ(t)⟩dt` over the whole schedule. Defined
/// for any evolution, cyclic or not.
pub fn dynamical_phase<T: Real>(sched: &Schedule<T>, initial: &QubitState<T>) -> T {
    dynamical_contributions(sched, initial).into_iter().sum()
}

/// Splits the total phase of a cyclic evolution into dynamical and geometric
/// parts, with `geometric = total − dynamical` reduced to `(−π, π]`.
pub fn geometric_phase<T: Real>(
    sched: &Schedule<T>,
    initial: &QubitState<T>,
) -> Result<PhaseDecomposition<T>> {
    let total = total_phase(sched, initial)?;
    let dynamical = dynamical_phase(sched, initial);
    Ok(PhaseDecomposition { total, dynamical, geometric: wrap_phase(total - dynamical) })
}

/// Time-stamped samples of the Bloch vector along an evolution.
#[derive(Debug, Clone, PartialEq)]
pub struct BlochPath<T> {
    samples: Vec<(T, BlochVector<T>)>,
}

impl<T: Real> BlochPath<T> {
    /// Requires strictly increasing times and points on the unit sphere.
    pub fn new(samples: Vec<(T, BlochVector<T>)>) -> Result<Self> {
        if samples.windows(2).any(|w| !(w[1].0 > w[0].0)) {
            return Err(Error::InvalidPath("times must be strictly increasing"));
        }
        if samples
            .iter()
            .any(|(_, p)| !((p.norm() - T::one()).abs() <= T::input_tol()))
        {
            return Err(Error::InvalidPath("points must lie on the unit sphere"));
        }
        Ok(Self { samples })
    }

    pub fn samples(&self) -> &[(T, BlochVector<T>)] {
        &self.samples
    }

    pub fn points(&self) -> impl Iterator<Item = &BlochVector<T>> {
        self.samples.iter().map(|(_, p)| p)
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Reverses the traversal direction, keeping times increasing.
    pub fn reversed(&self) -> Self {
        let t_end = self.samples.last().map(|s| s.0).unwrap_or_else(T::zero);
        let samples = self.samples.iter().rev().map(|&(t, p)| (t_end - t, p)).collect();
        Self { samples }
    }
}

/// Samples the Bloch vector along the schedule.
///
/// Every segment with positive duration contributes `samples_per_segment`
/// equally spaced points including both of its endpoints; neighbouring
/// segments share their boundary point, and zero-duration segments contribute
/// nothing. A schedule with `m` positive-duration segments therefore yields
/// `1 + m·(samples_per_segment − 1)` samples; an empty schedule yields the
/// single point at `t = 0`. Interior points use the closed-form propagator
/// of the partial segment.
pub fn sample_path<T: Real>(
    sched: &Schedule<T>,
    initial: &QubitState<T>,
    samples_per_segment: usize,
) -> Result<BlochPath<T>> {
    if samples_per_segment < 2 {
        return Err(Error::TooFewSamples(samples_per_segment));
    }
    let steps = samples_per_segment - 1;
    let steps_t = T::from_usize(steps).expect("sample count fits in scalar");
    let mut samples = vec![(T::zero(), initial.bloch_vector())];
    let mut t0 = T::zero();
    let mut psi = *initial;
    for seg in &sched.segments {
        let tau = seg.duration();
        if tau <= T::zero() {
            continue;
        }
        let exit = apply(&seg.unitary(), &psi);
        for k in 1..=steps {
            let (t, point) = if k == steps {
                (t0 + tau, exit.bloch_vector())
            } else {
                let dt = tau * T::from_usize(k).unwrap() / steps_t;
                (t0 + dt, apply(&seg.partial_unitary(dt), &psi).bloch_vector())
            };
            // guard against collapsing timestamps for extremely short segments
            if t > samples.last().map(|s| s.0).unwrap() {
                samples.push((t, point));
            } else if k == steps {
                samples.last_mut().unwrap().1 = point;
            }
        }
        t0 = t0 + tau;
        psi = exit;
    }
    BlochPath::new(samples)
}

/// Signed solid angle enclosed by a closed sampled path, in `(−2π, 2π]`.
///
/// The polygon through the samples (joined by great-circle arcs) is fanned
/// into spherical triangles from a common apex and the signed triangle
/// excesses are summed.
/// Counterclockwise traversal seen from outside the sphere is positive.
///
/// The apex is the first point unless the path comes close to its antipode,
/// where the triangles degenerate; then the coordinate pole whose antipode
/// stays farthest from the path is used instead. The enclosed area does not
/// depend on the apex modulo 4π.
pub fn solid_angle<T: Real>(path: &BlochPath<T>) -> Result<T> {
    let pts: Vec<BlochVector<T>> = path.points().copied().collect();
    let (first, last) = match (pts.first(), pts.last()) {
        (Some(f), Some(l)) => (*f, *l),
        _ => return Err(Error::InvalidPath("empty path")),
    };
    let gap = first.max_diff(&last);
    let closure_tol = T::lit(1e-6).max(T::input_tol());
    if !(gap <= closure_tol) {
        return Err(Error::OpenPath { gap: gap.to_f64().unwrap_or(f64::NAN) });
    }

    let apex = choose_apex(&pts);
    let mut total = T::zero();
    for w in pts.windows(2) {
        total = total + signed_excess(&apex, &w[0], &w[1]);
    }
    total = total + signed_excess(&apex, &last, &first);

    let four_pi = T::TAU() + T::TAU();
    let mut r = total % four_pi;
    if r <= -T::TAU() {
        r = r + four_pi;
    } else if r > T::TAU() {
        r = r - four_pi;
    }
    Ok(r)
}

fn choose_apex<T: Real>(pts: &[BlochVector<T>]) -> BlochVector<T> {
    let clearance = |apex: &BlochVector<T>| {
        let anti = apex.neg();
        pts.iter().map(|p| anti.angle_to(p)).fold(T::PI(), T::min)
    };
    // largest chord between consecutive samples bounds how close an unsampled
    // stretch of the path can get to the antipode
    let max_chord = pts
        .windows(2)
        .map(|w| w[0].angle_to(&w[1]))
        .fold(T::zero(), T::max);
    let needed = T::lit(0.1).max(max_chord + max_chord);

    let first = pts[0];
    if clearance(&first) >= needed {
        return first;
    }
    let (o, l) = (T::zero(), T::one());
    [
        BlochVector::new(l, o, o),
        BlochVector::new(-l, o, o),
        BlochVector::new(o, l, o),
        BlochVector::new(o, -l, o),
        BlochVector::new(o, o, l),
        BlochVector::new(o, o, -l),
    ]
    .into_iter()
    .map(|c| (clearance(&c), c))
    .fold((clearance(&first), first), |best, cand| if cand.0 > best.0 { cand } else { best })
    .1
}

/// Signed excess of the spherical triangle `(a, b, c)`:
/// `tan(E/2) = a·(b×c) / (1 + a·b + b·c + c·a)`.
///
/// Unlike the half-perimeter form this stays accurate for the thin, nearly
/// collinear triangles that a densely sampled fan produces.
fn signed_excess<T: Real>(a: &BlochVector<T>, b: &BlochVector<T>, c: &BlochVector<T>) -> T {
    let det = a.dot(&b.cross(c));
    let den = T::one() + a.dot(b) + b.dot(c) + c.dot(a);
    T::two() * det.atan2(den)
}
