//! Shared test oracles, implemented independently of the library's
//! propagation paths: explicit 2x2 matrix products, a Taylor-series matrix
//! exponential, a direct discrete Fourier transform, and a tiny
//! deterministic PRNG for seeded random draws.

#![allow(dead_code)]

use num_complex::Complex64;

pub type M2 = [[Complex64; 2]; 2];

pub fn m2_mul(a: &M2, b: &M2) -> M2 {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

/// One-period propagator of the gated two-level model at zero detuning,
/// built from the closed-form pulse and wait factors: the pulse is a
/// rotation by `pi (1 + eps)` about x, the wait a phase `phi` on the
/// excited state, applied pulse, wait, pulse, wait.
pub fn two_level_period_oracle(eps: f64, phi: f64) -> M2 {
    let theta = std::f64::consts::PI * (1.0 + eps);
    let c = Complex64::new((theta / 2.0).cos(), 0.0);
    let ms = Complex64::new(0.0, -(theta / 2.0).sin());
    let pulse = [[c, ms], [ms, c]];
    let wait = [
        [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        [
            Complex64::new(0.0, 0.0),
            Complex64::new(phi.cos(), -phi.sin()),
        ],
    ];
    m2_mul(&wait, &m2_mul(&pulse, &m2_mul(&wait, &pulse)))
}

/// Ground-state fidelity trace `F(kT)` for `k = 1..=n` from the closed-form
/// period propagator.
pub fn two_level_fidelity_oracle(eps: f64, phi: f64, n: usize) -> Vec<f64> {
    let u = two_level_period_oracle(eps, phi);
    let mut psi = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        psi = [
            u[0][0] * psi[0] + u[0][1] * psi[1],
            u[1][0] * psi[0] + u[1][1] * psi[1],
        ];
        out.push(psi[0].norm_sqr());
    }
    out
}

/// Matrix exponential `exp(-i H dt)` by scaling and squaring with a Taylor
/// series, on a flat row-major matrix.
pub fn expm_minus_i_h_dt(h: &[Complex64], dim: usize, dt: f64) -> Vec<Complex64> {
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    // a = -i H dt, scaled down until its max-norm is below 1/2.
    let mut a: Vec<Complex64> = h
        .iter()
        .map(|&x| Complex64::new(0.0, -1.0) * x * dt)
        .collect();
    let mut maxn: f64 = a.iter().map(|x| x.norm()).fold(0.0, f64::max) * dim as f64;
    let mut squarings = 0u32;
    while maxn > 0.5 {
        for x in &mut a {
            *x *= 0.5;
        }
        maxn /= 2.0;
        squarings += 1;
    }

    let mul = |x: &[Complex64], y: &[Complex64]| -> Vec<Complex64> {
        let mut out = vec![zero; dim * dim];
        for i in 0..dim {
            for k in 0..dim {
                let xik = x[i * dim + k];
                for j in 0..dim {
                    out[i * dim + j] += xik * y[k * dim + j];
                }
            }
        }
        out
    };

    let mut result = vec![zero; dim * dim];
    for i in 0..dim {
        result[i * dim + i] = one;
    }
    let mut term = result.clone();
    for k in 1..40 {
        term = mul(&term, &a);
        let scale = Complex64::new(1.0 / k as f64, 0.0);
        for x in &mut term {
            *x *= scale;
        }
        let mut largest: f64 = 0.0;
        for (r, t) in result.iter_mut().zip(term.iter()) {
            *r += *t;
            largest = largest.max(t.norm());
        }
        if largest < 1e-18 {
            break;
        }
    }
    for _ in 0..squarings {
        result = mul(&result, &result);
    }
    result
}

/// Direct `O(n^2)` DFT magnitudes `|X_k| / M` over the full bin range.
pub fn dft_magnitudes(values: &[f64]) -> Vec<f64> {
    let m = values.len();
    let mut out = Vec::with_capacity(m);
    for k in 0..m {
        let mut acc = Complex64::new(0.0, 0.0);
        for (n, &x) in values.iter().enumerate() {
            let ang = -2.0 * std::f64::consts::PI * (k as f64) * (n as f64) / m as f64;
            acc += Complex64::new(ang.cos(), ang.sin()) * x;
        }
        out.push(acc.norm() / m as f64);
    }
    out
}

/// Deterministic xorshift PRNG for seeded draws in tests.
pub struct XorShift64 {
    state: u64,
}

impl XorShift64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed.max(1) }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.state = x;
        x
    }

    /// Uniform draw in `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Uniform draw in `[lo, hi)`.
    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }
}
