//! Small dense complex matrices with compile-time dimension.
//!
//! Only 2×2 and 4×4 are used by the crate, so everything is stored inline in
//! arrays and multiplied with naive loops.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Square complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CMatrix<T, const N: usize> {
    data: [[Complex<T>; N]; N],
}

pub type CMatrix2<T> = CMatrix<T, 2>;
pub type CMatrix4<T> = CMatrix<T, 4>;

impl<T: Real, const N: usize> CMatrix<T, N> {
    pub fn from_rows(data: [[Complex<T>; N]; N]) -> Self {
        Self { data }
    }

    pub fn zeros() -> Self {
        Self { data: [[Complex::zero(); N]; N] }
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            m.data[i][i] = Complex::one();
        }
        m
    }

    pub fn from_diagonal(diag: [Complex<T>; N]) -> Self {
        let mut m = Self::zeros();
        for (i, d) in diag.into_iter().enumerate() {
            m.data[i][i] = d;
        }
        m
    }

    pub fn rows(&self) -> &[[Complex<T>; N]; N] {
        &self.data
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.data[i][j] = self.data[j][i].conj();
            }
        }
        m
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        let mut m = *self;
        m.data.iter_mut().flatten().for_each(|z| *z = *z * s);
        m
    }

    pub fn trace(&self) -> Complex<T> {
        (0..N).map(|i| self.data[i][i]).fold(Complex::zero(), |a, b| a + b)
    }

    /// Largest entrywise modulus.
    pub fn max_abs(&self) -> T {
        self.data
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(T::zero(), T::max)
    }

    pub fn frobenius_norm(&self) -> T {
        self.data.iter().flatten().map(|z| z.norm_sqr()).sum::<T>().sqrt()
    }

    /// `max |U†U − I|` over entries.
    pub fn unitarity_defect(&self) -> T {
        (self.adjoint() * *self - Self::identity()).max_abs()
    }

    pub fn is_hermitian(&self, tol: T) -> bool {
        (*self - self.adjoint()).max_abs() <= tol
    }

    pub fn apply(&self, v: &[Complex<T>; N]) -> [Complex<T>; N] {
        let mut out = [Complex::zero(); N];
        for (i, row) in self.data.iter().enumerate() {
            out[i] = row.iter().zip(v).fold(Complex::zero(), |acc, (a, b)| acc + *a * *b);
        }
        out
    }

    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }
}

impl<T: Real, const N: usize> Index<(usize, usize)> for CMatrix<T, N> {
    type Output = Complex<T>;
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i][j]
    }
}

impl<T: Real, const N: usize> IndexMut<(usize, usize)> for CMatrix<T, N> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i][j]
    }
}

impl<T: Real, const N: usize> Mul for CMatrix<T, N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                let mut acc = Complex::zero();
                for k in 0..N {
                    acc = acc + self.data[i][k] * rhs.data[k][j];
                }
                m.data[i][j] = acc;
            }
        }
        m
    }
}

impl<T: Real, const N: usize> Add for CMatrix<T, N> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (a, b) in self.data.iter_mut().flatten().zip(rhs.data.iter().flatten()) {
            *a = *a + *b;
        }
        self
    }
}

impl<T: Real, const N: usize> Sub for CMatrix<T, N> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for (a, b) in self.data.iter_mut().flatten().zip(rhs.data.iter().flatten()) {
            *a = *a - *b;
        }
        self
    }
}

impl<T: Real, const N: usize> Neg for CMatrix<T, N> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-Complex::one())
    }
}

impl<T: Real> CMatrix2<T> {
    pub fn new(a: Complex<T>, b: Complex<T>, c: Complex<T>, d: Complex<T>) -> Self {
        Self::from_rows([[a, b], [c, d]])
    }

    pub fn pauli_x() -> Self {
        let (o, l) = (Complex::zero(), Complex::one());
        Self::new(o, l, l, o)
    }

    pub fn pauli_y() -> Self {
        let (o, i) = (Complex::zero(), Complex::i());
        Self::new(o, -i, i, o)
    }

    pub fn pauli_z() -> Self {
        let (o, l) = (Complex::zero(), Complex::one());
        Self::new(l, o, o, -l)
    }

    /// `n·σ` for a real 3-vector `n`.
    pub fn pauli_dot(n: [T; 3]) -> Self {
        Self::pauli_x().scale(n[0].into())
            + Self::pauli_y().scale(n[1].into())
            + Self::pauli_z().scale(n[2].into())
    }
}

/// Two-qubit operator `A_a ⊗ B_b` in the basis `|↑↑⟩, |↓↑⟩, |↑↓⟩, |↓↓⟩`
/// (qubit a varies fastest), i.e. index `a + 2·b`.
pub fn kron_ab<T: Real>(on_a: &CMatrix2<T>, on_b: &CMatrix2<T>) -> CMatrix4<T> {
    let mut m = CMatrix4::zeros();
    for bi in 0..2 {
        for bj in 0..2 {
            for ai in 0..2 {
                for aj in 0..2 {
                    m[(ai + 2 * bi, aj + 2 * bj)] = on_a[(ai, aj)] * on_b[(bi, bj)];
                }
            }
        }
    }
    m
}

/// Block-diagonal 4×4 operator acting as `up` on the b=↑ block and `down` on
/// the b=↓ block.
pub fn conditional_on_b<T: Real>(up: &CMatrix2<T>, down: &CMatrix2<T>) -> CMatrix4<T> {
    let mut m = CMatrix4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            m[(i, j)] = up[(i, j)];
            m[(i + 2, j + 2)] = down[(i, j)];
        }
    }
    m
}

/// Extracts the 2×2 block of qubit a for a fixed state of qubit b.
pub fn block_for_b<T: Real>(m: &CMatrix4<T>, b_down: bool) -> CMatrix2<T> {
    let off = if b_down { 2 } else { 0 };
    let mut out = CMatrix2::zeros();
    for i in 0..2 {
        for j in 0..2 {
            out[(i, j)] = m[(i + off, j + off)];
        }
    }
    out
}

/// Square matrix known to be unitary to within the scalar's algebraic tolerance.
///
/// Products of unitaries are unitary, so multiplication stays inside the type;
/// other constructors go through [`Unitary::try_new`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Unitary<T, const N: usize>(CMatrix<T, N>);

pub type Unitary2<T> = Unitary<T, 2>;
pub type Unitary4<T> = Unitary<T, 4>;

impl<T: Real, const N: usize> Unitary<T, N> {
    /// Accepts `m` if `‖m†m − I‖_max ≤ Real::algebraic_tol()`.
    pub fn try_new(m: CMatrix<T, N>) -> Result<Self> {
        let defect = m.unitarity_defect();
        if defect.is_finite() && defect <= T::algebraic_tol() {
            Ok(Self(m))
        } else {
            Err(Error::NotUnitary { defect: defect.to_f64().unwrap_or(f64::NAN) })
        }
    }

    /// Wraps a matrix that is unitary by construction.
    pub(crate) fn new_unchecked(m: CMatrix<T, N>) -> Self {
        debug_assert!(m.unitarity_defect() <= T::lit(1e3) * T::algebraic_tol());
        Self(m)
    }

    pub fn identity() -> Self {
        Self(CMatrix::identity())
    }

    pub fn matrix(&self) -> &CMatrix<T, N> {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix<T, N> {
        self.0
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn apply(&self, v: &[Complex<T>; N]) -> [Complex<T>; N] {
        self.0.apply(v)
    }

    /// Multiplies by a global phase `e^{iα}`.
    pub fn with_phase(&self, alpha: T) -> Self {
        Self(self.0.scale(Complex::from_polar(T::one(), alpha)))
    }
}

impl<T: Real, const N: usize> Mul for Unitary<T, N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self(self.0 * rhs.0)
    }
}

impl<T: Real, const N: usize> Index<(usize, usize)> for Unitary<T, N> {
    type Output = Complex<T>;
    fn index(&self, idx: (usize, usize)) -> &Complex<T> {
        &self.0[idx]
    }
}

/// Read-only view of a square complex matrix of any supported dimension.
pub trait SquareMatrix<T: Real> {
    fn dim(&self) -> usize;
    fn entry(&self, i: usize, j: usize) -> Complex<T>;
}

impl<T: Real, const N: usize> SquareMatrix<T> for CMatrix<T, N> {
    fn dim(&self) -> usize {
        N
    }
    fn entry(&self, i: usize, j: usize) -> Complex<T> {
        self.data[i][j]
    }
}

impl<T: Real, const N: usize> SquareMatrix<T> for Unitary<T, N> {
    fn dim(&self) -> usize {
        N
    }
    fn entry(&self, i: usize, j: usize) -> Complex<T> {
        self.0.data[i][j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    #[test]
    fn pauli_algebra() {
        let (x, y, z) = (CMatrix2::<f64>::pauli_x(), CMatrix2::pauli_y(), CMatrix2::pauli_z());
        let i = C::i();
        assert!((x * y - z.scale(i)).max_abs() < 1e-15);
        assert!((x * x - CMatrix2::identity()).max_abs() < 1e-15);
        assert!((x.commutator(&z) + y.scale(C::new(0.0, 2.0))).max_abs() < 1e-15);
    }

    #[test]
    fn kron_basis_order() {
        // σz on qubit a flips the sign of |↓↑⟩ (index 1) and |↓↓⟩ (index 3)
        let m = kron_ab(&CMatrix2::<f64>::pauli_z(), &CMatrix2::identity());
        let d: Vec<f64> = (0..4).map(|k| m[(k, k)].re).collect();
        assert_eq!(d, vec![1.0, -1.0, 1.0, -1.0]);
        let m = kron_ab(&CMatrix2::<f64>::identity(), &CMatrix2::pauli_z());
        let d: Vec<f64> = (0..4).map(|k| m[(k, k)].re).collect();
        assert_eq!(d, vec![1.0, 1.0, -1.0, -1.0]);
    }

    #[test]
    fn unitary_rejects_non_unitary() {
        let m = CMatrix2::<f64>::identity().scale(C::new(2.0, 0.0));
        assert!(matches!(Unitary::try_new(m), Err(Error::NotUnitary { .. })));
        assert!(Unitary::try_new(CMatrix2::<f64>::pauli_y()).is_ok());
    }

    #[test]
    fn blocks_round_trip() {
        let up = CMatrix2::<f64>::pauli_x();
        let down = CMatrix2::<f64>::pauli_z();
        let m = conditional_on_b(&up, &down);
        assert_eq!(block_for_b(&m, false), up);
        assert_eq!(block_for_b(&m, true), down);
    }
}
