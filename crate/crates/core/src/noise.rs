//! Monte Carlo control-error sweeps.
//!
//! Each trial rescales every segment's frequency and duration by independent
//! Gaussian factors, `ω → ω(1 + ε)` and `τ → τ(1 + δ)`, leaving axes
//! untouched, and records the trace fidelity of the perturbed gate against a
//! target. This is an exploratory harness; the noise model is a choice, not
//! a reproduction of any particular robustness analysis.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal, StandardNormal};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gates::compare_gates;
use crate::linalg::Unitary2;
use crate::scalar::Real;
use crate::schedule::{ControlSegment, Schedule};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseSpec<T> {
    /// Relative standard deviation of each segment's angular frequency.
    pub sigma_omega: T,
    /// Relative standard deviation of each segment's duration.
    pub sigma_tau: T,
    pub trials: usize,
    pub seed: u64,
}

impl<T: Real> NoiseSpec<T> {
    pub fn new(sigma_omega: T, sigma_tau: T, trials: usize, seed: u64) -> Result<Self> {
        let spec = Self { sigma_omega, sigma_tau, trials, seed };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        for s in [self.sigma_omega, self.sigma_tau] {
            if !(s.is_finite() && s >= T::zero()) {
                return Err(Error::InvalidNoise("sigmas must be finite and nonnegative"));
            }
        }
        if self.trials == 0 {
            return Err(Error::InvalidNoise("at least one trial is required"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult<T> {
    /// Trace fidelity of each trial, ordered by trial index.
    pub fidelities: Vec<T>,
    pub mean: T,
    pub min: T,
    /// Population standard deviation.
    pub std: T,
    pub spec: NoiseSpec<T>,
}

/// Random stream for one trial: ChaCha8 keyed by the seed, one stream per
/// trial index, so trials can run in any order.
fn trial_rng(seed: u64, trial_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial_index);
    rng
}

/// Perturbed copy of `sched` for one trial. Draws `ε` then `δ` per segment,
/// in segment order; perturbed frequencies and durations are clamped at 0.
pub fn perturb_schedule<T>(sched: &Schedule<T>, spec: &NoiseSpec<T>, trial_index: u64) -> Result<Schedule<T>>
where
    T: Real,
    StandardNormal: Distribution<T>,
{
    spec.validate()?;
    let eps = Normal::new(T::zero(), spec.sigma_omega).map_err(|_| Error::InvalidNoise("sigma_omega"))?;
    let delta = Normal::new(T::zero(), spec.sigma_tau).map_err(|_| Error::InvalidNoise("sigma_tau"))?;
    let mut rng = trial_rng(spec.seed, trial_index);
    let segments = sched
        .segments
        .iter()
        .map(|seg| {
            let e = eps.sample(&mut rng);
            let d = delta.sample(&mut rng);
            let omega = (seg.omega() * (T::one() + e)).max(T::zero());
            let duration = (seg.duration() * (T::one() + d)).max(T::zero());
            ControlSegment::new(seg.axis(), omega, duration)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Schedule::new(segments, sched.label.clone()))
}

/// Trace fidelity `|tr(target†·U)|/2` of every perturbed trial.
///
/// Trials are evaluated in parallel; results are ordered by trial index and
/// summary statistics are accumulated sequentially, so the output does not
/// depend on thread scheduling.
pub fn fidelity_sweep<T>(sched: &Schedule<T>, target: &Unitary2<T>, spec: &NoiseSpec<T>) -> Result<SweepResult<T>>
where
    T: Real,
    StandardNormal: Distribution<T>,
{
    spec.validate()?;
    let fidelities = (0..spec.trials as u64)
        .into_par_iter()
        .map(|k| {
            let u = perturb_schedule(sched, spec, k)?.unitary();
            Ok(compare_gates(target, &u)?.trace_fidelity)
        })
        .collect::<Result<Vec<T>>>()?;

    let n = T::from_usize(fidelities.len()).unwrap();
    let mean = fidelities.iter().copied().sum::<T>() / n;
    let min = fidelities.iter().copied().fold(T::infinity(), T::min);
    let var = fidelities.iter().map(|&f| (f - mean) * (f - mean)).sum::<T>() / n;
    Ok(SweepResult { fidelities, mean, min, std: var.sqrt(), spec: *spec })
}
