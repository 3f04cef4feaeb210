//! Reference computations for the integration tests. Nothing here calls the
//! crate's propagators or matrix types: states and matrices are plain arrays.
#![allow(dead_code)]

use num_complex::Complex64 as C;

pub type M2 = [[C; 2]; 2];
pub type M4 = [[C; 4]; 4];

pub fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

pub fn mul2(a: &M2, b: &M2) -> M2 {
    let mut m = [[C::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                m[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    m
}

pub fn add2(a: &M2, b: &M2, s: C) -> M2 {
    let mut m = *a;
    for i in 0..2 {
        for j in 0..2 {
            m[i][j] += s * b[i][j];
        }
    }
    m
}

pub fn id2() -> M2 {
    [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]]
}

pub fn sigma_x() -> M2 {
    [[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]]
}

pub fn sigma_y() -> M2 {
    [[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]]
}

pub fn sigma_z() -> M2 {
    [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(-1.0, 0.0)]]
}

/// `(ω/2)(n·σ)` assembled from the Pauli matrices.
pub fn hamiltonian(axis: [f64; 3], omega: f64) -> M2 {
    let z = [[C::new(0.0, 0.0); 2]; 2];
    let h = add2(&z, &sigma_x(), c(axis[0], 0.0));
    let h = add2(&h, &sigma_y(), c(axis[1], 0.0));
    let h = add2(&h, &sigma_z(), c(axis[2], 0.0));
    scale2(&h, c(omega / 2.0, 0.0))
}

pub fn scale2(a: &M2, s: C) -> M2 {
    let mut m = *a;
    m.iter_mut().flatten().for_each(|z| *z *= s);
    m
}

/// Matrix exponential by scaling and squaring of a truncated Taylor series.
pub fn expm2(a: &M2) -> M2 {
    let norm: f64 = a.iter().flatten().map(|z| z.norm()).sum();
    let mut s = 0;
    while norm / 2f64.powi(s) > 0.25 {
        s += 1;
    }
    let scaled = scale2(a, c(1.0 / 2f64.powi(s), 0.0));
    let mut term = id2();
    let mut sum = id2();
    for k in 1..=24 {
        term = scale2(&mul2(&term, &scaled), c(1.0 / k as f64, 0.0));
        sum = add2(&sum, &term, c(1.0, 0.0));
    }
    for _ in 0..s {
        sum = mul2(&sum, &sum);
    }
    sum
}

/// `exp(−iHτ)` for `H = (ω/2)(n·σ)` via the series.
pub fn series_propagator(axis: [f64; 3], omega: f64, tau: f64) -> M2 {
    expm2(&scale2(&hamiltonian(axis, omega), c(0.0, -tau)))
}

pub fn apply2(m: &M2, v: &[C; 2]) -> [C; 2] {
    [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
}

pub fn expect2(h: &M2, v: &[C; 2]) -> f64 {
    let hv = apply2(h, v);
    (v[0].conj() * hv[0] + v[1].conj() * hv[1]).re
}

/// `−∫⟨ψ|H|ψ⟩dt` over piecewise-constant segments `(axis, ω, τ)` by the
/// midpoint rule with `steps` points per segment; states are advanced with
/// series propagators.
pub fn dynamical_phase_quadrature(segments: &[([f64; 3], f64, f64)], psi0: [C; 2], steps: usize) -> f64 {
    let mut psi = psi0;
    let mut total = 0.0;
    for &(axis, omega, tau) in segments {
        if tau == 0.0 {
            continue;
        }
        let h = hamiltonian(axis, omega);
        let dt = tau / steps as f64;
        let half_step = series_propagator(axis, omega, dt / 2.0);
        let step = series_propagator(axis, omega, dt);
        let mut mid = apply2(&half_step, &psi);
        for _ in 0..steps {
            total -= expect2(&h, &mid) * dt;
            mid = apply2(&step, &mid);
        }
        psi = apply2(&series_propagator(axis, omega, tau), &psi);
    }
    total
}

pub fn max_dev2(a: &M2, b: &M2) -> f64 {
    a.iter().flatten().zip(b.iter().flatten()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Standard Kronecker product `a ⊗ b` (first factor varies slowest).
pub fn kron(a: &M2, b: &M2) -> M4 {
    let mut m = [[C::new(0.0, 0.0); 4]; 4];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    m[2 * i + k][2 * j + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    m
}

/// Closed-form single-loop gate written out entry by entry.
pub fn u_chi_entries(chi: f64) -> M2 {
    [[c(0.0, -chi.cos()), c(0.0, -chi.sin())], [c(0.0, -chi.sin()), c(0.0, chi.cos())]]
}

/// Deterministic pseudo-random stream (SplitMix64) for test inputs.
pub struct SplitMix(u64);

impl SplitMix {
    pub fn new(seed: u64) -> Self {
        Self(seed)
    }

    pub fn next_f64(&mut self) -> f64 {
        self.0 = self.0.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^= z >> 31;
        (z >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    pub fn unit_vector(&mut self) -> [f64; 3] {
        loop {
            let v = [self.uniform(-1.0, 1.0), self.uniform(-1.0, 1.0), self.uniform(-1.0, 1.0)];
            let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
            if n > 0.1 && n <= 1.0 {
                return [v[0] / n, v[1] / n, v[2] / n];
            }
        }
    }
}

fn angle3(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    let cr = [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]];
    let n = (cr[0] * cr[0] + cr[1] * cr[1] + cr[2] * cr[2]).sqrt();
    n.atan2(a[0] * b[0] + a[1] * b[1] + a[2] * b[2])
}

/// Signed area of a closed spherical polygon from l'Huilier's theorem,
/// fanned from `pts[0]`; orientation from the sign of `a·(b×c)`.
pub fn lhuilier_fan_area(pts: &[[f64; 3]]) -> f64 {
    let apex = pts[0];
    let mut total = 0.0;
    for w in pts.windows(2) {
        let (b, cc) = (w[0], w[1]);
        let det = apex[0] * (b[1] * cc[2] - b[2] * cc[1]) - apex[1] * (b[0] * cc[2] - b[2] * cc[0])
            + apex[2] * (b[0] * cc[1] - b[1] * cc[0]);
        let (x, y, z) = (angle3(&apex, &b), angle3(&b, &cc), angle3(&cc, &apex));
        let s = (x + y + z) / 2.0;
        let t = (s / 2.0).tan() * ((s - x) / 2.0).tan() * ((s - y) / 2.0).tan() * ((s - z) / 2.0).tan();
        total += 4.0 * t.max(0.0).sqrt().atan() * det.signum();
    }
    total
}
