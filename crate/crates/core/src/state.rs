//! Pure single-qubit states and their Bloch-sphere coordinates.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{wrap_phase, wrap_positive, Real};

/// Which member of the orthogonal pair of cyclic states to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Plus,
    Minus,
}

/// Normalized qubit state `amp_up·|↑⟩ + amp_down·|↓⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState<T> {
    amp_up: Complex<T>,
    amp_down: Complex<T>,
}

impl<T: Real> QubitState<T> {
    /// Builds a state from amplitudes whose squared norm is within
    /// `Real::input_tol()` of one; the result is renormalized exactly.
    pub fn new(amp_up: Complex<T>, amp_down: Complex<T>) -> Result<Self> {
        check_normalized(amp_up, amp_down)?;
        Ok(Self::renormalized(amp_up, amp_down))
    }

    /// Divides out the norm of an arbitrary nonzero pair of amplitudes.
    pub fn normalize(amp_up: Complex<T>, amp_down: Complex<T>) -> Result<Self> {
        let n2 = amp_up.norm_sqr() + amp_down.norm_sqr();
        if !n2.is_finite() || n2.is_zero() {
            return Err(Error::NotNormalized { norm_sqr: n2.to_f64().unwrap_or(f64::NAN) });
        }
        Ok(Self::renormalized(amp_up, amp_down))
    }

    pub(crate) fn renormalized(amp_up: Complex<T>, amp_down: Complex<T>) -> Self {
        let n = (amp_up.norm_sqr() + amp_down.norm_sqr()).sqrt();
        Self { amp_up: amp_up / n, amp_down: amp_down / n }
    }

    pub fn up() -> Self {
        Self { amp_up: Complex::new(T::one(), T::zero()), amp_down: Complex::zero() }
    }

    pub fn down() -> Self {
        Self { amp_up: Complex::zero(), amp_down: Complex::new(T::one(), T::zero()) }
    }

    /// One of the two cyclic states at polar angle `chi` and azimuth `phi`:
    ///
    /// ```text
    /// plus:  ( e^{-iφ/2} cos(χ/2),  e^{iφ/2} sin(χ/2) )
    /// minus: (-e^{-iφ/2} sin(χ/2),  e^{iφ/2} cos(χ/2) )
    /// ```
    ///
    /// Both angles are accepted on the whole real line: `chi` is reduced to
    /// `[0, 2π)` and `phi` to `(-π, π]` before use. Shifting either angle by
    /// 2π flips the sign of both amplitudes, so the reduction changes the
    /// result by at most a global factor of −1.
    pub fn from_angles(chi: T, phi: T, branch: Branch) -> Result<Self> {
        if !chi.is_finite() || !phi.is_finite() {
            return Err(Error::NonFinite("state angles"));
        }
        let chi = wrap_positive(chi);
        let phi = wrap_phase(phi);
        let half = T::half();
        let (s, c) = (chi * half).sin_cos();
        let e_minus = Complex::from_polar(T::one(), -phi * half);
        let e_plus = Complex::from_polar(T::one(), phi * half);
        let (up, down) = match branch {
            Branch::Plus => (e_minus * c, e_plus * s),
            Branch::Minus => (-(e_minus * s), e_plus * c),
        };
        Ok(Self::renormalized(up, down))
    }

    pub fn amp_up(&self) -> Complex<T> {
        self.amp_up
    }

    pub fn amp_down(&self) -> Complex<T> {
        self.amp_down
    }

    pub fn amplitudes(&self) -> [Complex<T>; 2] {
        [self.amp_up, self.amp_down]
    }

    pub fn norm_sqr(&self) -> T {
        self.amp_up.norm_sqr() + self.amp_down.norm_sqr()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Complex<T> {
        self.amp_up.conj() * other.amp_up + self.amp_down.conj() * other.amp_down
    }

    /// Multiplies by a global phase `e^{iα}`.
    pub fn with_phase(&self, alpha: T) -> Self {
        let p = Complex::from_polar(T::one(), alpha);
        Self { amp_up: self.amp_up * p, amp_down: self.amp_down * p }
    }

    pub fn bloch_vector(&self) -> BlochVector<T> {
        bloch_from_amplitudes(self.amp_up, self.amp_down)
    }
}

/// Point on the unit sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Real> BlochVector<T> {
    pub fn new(x: T, y: T, z: T) -> Self {
        Self { x, y, z }
    }

    /// Bloch vector of the amplitude pair `(a, b)`: `x = 2Re(a*b)`,
    /// `y = 2Im(a*b)`, `z = |a|² − |b|²`. Rejects pairs whose squared norm is
    /// off by more than `Real::input_tol()`.
    pub fn from_amplitudes(a: Complex<T>, b: Complex<T>) -> Result<Self> {
        check_normalized(a, b)?;
        Ok(bloch_from_amplitudes(a, b))
    }

    /// Polar angle and azimuth `(χ, φ)` with `z = cos χ`.
    pub fn angles(&self) -> (T, T) {
        let rho = self.x.hypot(self.y);
        (rho.atan2(self.z), self.y.atan2(self.x))
    }

    pub fn as_array(&self) -> [T; 3] {
        [self.x, self.y, self.z]
    }

    pub fn norm(&self) -> T {
        self.dot(self).sqrt()
    }

    pub fn dot(&self, o: &Self) -> T {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(&self, o: &Self) -> Self {
        Self {
            x: self.y * o.z - self.z * o.y,
            y: self.z * o.x - self.x * o.z,
            z: self.x * o.y - self.y * o.x,
        }
    }

    pub fn neg(&self) -> Self {
        Self { x: -self.x, y: -self.y, z: -self.z }
    }

    /// Great-circle angle between two unit vectors, accurate for both tiny and
    /// near-π separations.
    pub fn angle_to(&self, o: &Self) -> T {
        self.cross(o).norm().atan2(self.dot(o))
    }

    /// Largest coordinate difference.
    pub fn max_diff(&self, o: &Self) -> T {
        (self.x - o.x).abs().max((self.y - o.y).abs()).max((self.z - o.z).abs())
    }
}

fn check_normalized<T: Real>(a: Complex<T>, b: Complex<T>) -> Result<()> {
    let n2 = a.norm_sqr() + b.norm_sqr();
    if !n2.is_finite() || (n2 - T::one()).abs() > T::input_tol() {
        return Err(Error::NotNormalized { norm_sqr: n2.to_f64().unwrap_or(f64::NAN) });
    }
    Ok(())
}

fn bloch_from_amplitudes<T: Real>(a: Complex<T>, b: Complex<T>) -> BlochVector<T> {
    let ab = a.conj() * b;
    let two = T::two();
    BlochVector { x: two * ab.re, y: two * ab.im, z: a.norm_sqr() - b.norm_sqr() }
}
