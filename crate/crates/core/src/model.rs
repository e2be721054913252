//! Ring geometry, Fourier decoupling and the wave vectors imposed by the
//! twisted boundary conditions.
//!
//! Modes are indexed `k = 1..N-1`; the center of mass is not a mode.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::constants::{HBAR, K_B};
use crate::error::{invalid, Error, Result};

/// Physical configuration of the ring, SI units throughout.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RingParams {
    n: usize,
    mass: f64,
    kappa: f64,
    radius: f64,
    temperature: f64,
}

impl RingParams {
    pub fn new(n: usize, mass: f64, kappa: f64, radius: f64, temperature: f64) -> Result<Self> {
        if n < 3 {
            return Err(invalid(
                "N",
                format!("need at least 3 oscillators, got {n}"),
            ));
        }
        if !(mass.is_finite() && mass > 0.0) {
            return Err(invalid("mass", format!("must be positive, got {mass}")));
        }
        if !(kappa.is_finite() && kappa > 0.0) {
            return Err(invalid("kappa", format!("must be positive, got {kappa}")));
        }
        if !(radius.is_finite() && radius > 0.0) {
            return Err(invalid("R", format!("must be positive, got {radius}")));
        }
        if !(temperature.is_finite() && temperature >= 0.0) {
            return Err(invalid(
                "T",
                format!("must be non-negative, got {temperature}"),
            ));
        }
        Ok(Self {
            n,
            mass,
            kappa,
            radius,
            temperature,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn mass(&self) -> f64 {
        self.mass
    }
    pub fn kappa(&self) -> f64 {
        self.kappa
    }
    pub fn radius(&self) -> f64 {
        self.radius
    }
    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    pub fn with_n(&self, n: usize) -> Result<Self> {
        Self::new(n, self.mass, self.kappa, self.radius, self.temperature)
    }
    pub fn with_mass(&self, mass: f64) -> Result<Self> {
        Self::new(self.n, mass, self.kappa, self.radius, self.temperature)
    }
    pub fn with_kappa(&self, kappa: f64) -> Result<Self> {
        Self::new(self.n, self.mass, kappa, self.radius, self.temperature)
    }
    pub fn with_radius(&self, radius: f64) -> Result<Self> {
        Self::new(self.n, self.mass, self.kappa, radius, self.temperature)
    }
    pub fn with_temperature(&self, temperature: f64) -> Result<Self> {
        Self::new(self.n, self.mass, self.kappa, self.radius, temperature)
    }

    /// Perimeter `L = 2πR`.
    pub fn perimeter(&self) -> f64 {
        2.0 * PI * self.radius
    }

    /// `1/(k_B T)`; infinite at zero temperature.
    pub fn beta(&self) -> f64 {
        if self.temperature == 0.0 {
            f64::INFINITY
        } else {
            1.0 / (K_B * self.temperature)
        }
    }

    /// Center-of-mass kinetic energy quantum `ħ²/(2mNR²)`.
    pub fn kinetic_quantum(&self) -> f64 {
        HBAR * HBAR / (2.0 * self.mass * self.n as f64 * self.radius * self.radius)
    }

    /// Center-of-mass kinetic energy `n²ħ²/(2mNR²)` of momentum `P₀ = nħ/R`.
    pub fn kinetic_energy(&self, n: i64) -> f64 {
        let nf = n as f64;
        nf * nf * self.kinetic_quantum()
    }

    /// `2√(κ/m)`, the band-top mode frequency.
    pub fn omega_max(&self) -> f64 {
        2.0 * (self.kappa / self.mass).sqrt()
    }
}

/// Row-major `(N−1)×(N−1)` transform from oscillator displacements to
/// relative-mode displacements, `X_k = Σ_j M[k][j] x_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl TransformMatrix {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Entry `M[k][j]`, both indices 1-based.
    pub fn get(&self, k: usize, j: usize) -> f64 {
        assert!((1..=self.dim).contains(&k) && (1..=self.dim).contains(&j));
        self.data[(k - 1) * self.dim + (j - 1)]
    }

    pub fn row(&self, k: usize) -> &[f64] {
        &self.data[(k - 1) * self.dim..k * self.dim]
    }

    /// `M·Mᵀ` as a row-major matrix.
    pub fn gram(&self) -> Vec<f64> {
        let d = self.dim;
        let mut out = vec![0.0; d * d];
        for a in 1..=d {
            for b in a..=d {
                let v: f64 = self
                    .row(a)
                    .iter()
                    .zip(self.row(b))
                    .map(|(x, y)| x * y)
                    .sum();
                out[(a - 1) * d + (b - 1)] = v;
                out[(b - 1) * d + (a - 1)] = v;
            }
        }
        out
    }
}

/// Entry of the Fourier transformation for mode `k` and oscillator `j`:
/// cosine rows for `k ≤ N/2`, sine rows above.
pub fn transform_entry(n: usize, k: usize, j: usize) -> f64 {
    let nf = n as f64;
    let arg = 2.0 * PI * (k as f64) * (j as f64) / nf;
    let norm = (2.0 / nf).sqrt();
    if 2 * k <= n {
        norm * arg.cos()
    } else {
        norm * arg.sin()
    }
}

/// Builds the relative-mode transform; the `j = N` column is absorbed into the
/// center-of-mass coordinate.
pub fn build_transform_matrix(params: &RingParams) -> TransformMatrix {
    transform_for(params.n())
}

pub(crate) fn transform_for(n: usize) -> TransformMatrix {
    let dim = n - 1;
    let mut data = Vec::with_capacity(dim * dim);
    for k in 1..=dim {
        for j in 1..=dim {
            data.push(transform_entry(n, k, j));
        }
    }
    TransformMatrix { dim, data }
}

/// The full `N×N` transform: row 0 is the normalized center-of-mass row
/// `1/√N`, rows `1..N−1` follow [`transform_entry`], columns are `j = 1..N`.
/// Row-major.
pub fn augmented_transform(n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n * n);
    let com = 1.0 / (n as f64).sqrt();
    for k in 0..n {
        for j in 1..=n {
            out.push(if k == 0 {
                com
            } else {
                transform_entry(n, k, j)
            });
        }
    }
    out
}

/// `ω_k = 2√(κ/m)|sin(πk/N)|` for `k = 1..N−1`.
pub fn mode_frequencies(params: &RingParams) -> Vec<f64> {
    let nf = params.n() as f64;
    (1..params.n())
        .map(|k| params.omega_max() * (PI * k.min(params.n() - k) as f64 / nf).sin())
        .collect()
}

/// Quasi-momentum label reduced to `(−N/2, N/2]`.
pub fn reduce_momentum(n: i64, big_n: usize) -> i64 {
    let m = big_n as i64;
    let mut r = n.rem_euclid(m);
    if 2 * r > m {
        r -= m;
    }
    r
}

/// Boundary phase `θ_n = 2πn/N`, evaluated on the reduced label so that
/// `θ_{n+N} = θ_n` holds exactly.
pub fn theta_n(n: i64, big_n: usize) -> f64 {
    2.0 * PI * reduce_momentum(n, big_n) as f64 / big_n as f64
}

/// Closed-form wave vector for mode `k` at momentum label `n`.
pub fn wave_vector(params: &RingParams, k: usize, n: i64) -> f64 {
    let big_n = params.n();
    let q = std::f64::consts::SQRT_2 * n as f64 / ((big_n as f64).sqrt() * params.radius());
    if 2 * k < big_n {
        q
    } else if 2 * k == big_n {
        0.5 * q
    } else {
        0.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WaveVectors {
    /// `q_k` for `k = 1..N−1`, 1/m.
    pub q: Vec<f64>,
    /// `max_j |L Σ_k M[k][j] q_k + 2πn/N|`.
    pub residual: f64,
}

/// Solves the boundary-condition system for the wave vectors and checks the
/// closed form against it.
pub fn wave_vectors(params: &RingParams, n: i64) -> Result<WaveVectors> {
    let big_n = params.n();
    let q: Vec<f64> = (1..big_n).map(|k| wave_vector(params, k, n)).collect();
    let residual = system_residual(params, &q, n);
    if n != 0 {
        let theta = 2.0 * PI * n as f64 / big_n as f64;
        let tolerance = 1e-9 * theta.abs();
        if !(residual < tolerance) {
            return Err(Error::WaveVectorResidual {
                n,
                residual,
                tolerance,
            });
        }
    }
    Ok(WaveVectors { q, residual })
}

/// Infinity-norm residual of `L Mᵀ q + θ_n 1`. Each equation shifts one
/// oscillator by `L`, which moves `X_k` by `L·M[k][j]`, so the system runs
/// over columns of `M`.
pub fn system_residual(params: &RingParams, q: &[f64], n: i64) -> f64 {
    let big_n = params.n();
    let theta = 2.0 * PI * n as f64 / big_n as f64;
    let l = params.perimeter();
    (1..big_n)
        .map(|j| {
            let s: f64 = (1..big_n)
                .map(|k| transform_entry(big_n, k, j) * q[k - 1])
                .sum();
            (l * s + theta).abs()
        })
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RelativePeriods {
    /// Signed `l_k = L·M[k][1]`.
    pub l: Vec<f64>,
    pub degenerate: Vec<bool>,
}

/// Periods `l_k = L·M[k][1]` of the relative coordinates under a shift of
/// the first oscillator. `|l_k| < 1e−12 L` is flagged degenerate.
pub fn relative_periods(params: &RingParams, m: &TransformMatrix) -> RelativePeriods {
    let l_total = params.perimeter();
    let l: Vec<f64> = (1..=m.dim()).map(|k| l_total * m.get(k, 1)).collect();
    let degenerate = l.iter().map(|v| v.abs() < 1e-12 * l_total).collect();
    RelativePeriods { l, degenerate }
}

/// Folds a Bloch phase into `[0, π]`; the mode eigencondition only sees
/// `cos²(θ/2)` and `sin²(θ/2)`.
pub fn fold_phase(theta: f64) -> f64 {
    let r = theta.abs().rem_euclid(2.0 * PI);
    if r > PI {
        2.0 * PI - r
    } else {
        r
    }
}

/// Per-mode derived quantities.
#[derive(Debug, Clone)]
pub struct ModeTable {
    params: RingParams,
    transform: TransformMatrix,
    omega: Vec<f64>,
    periods: RelativePeriods,
}

impl ModeTable {
    pub fn new(params: &RingParams) -> Self {
        let transform = build_transform_matrix(params);
        let omega = mode_frequencies(params);
        let periods = relative_periods(params, &transform);
        Self {
            params: *params,
            transform,
            omega,
            periods,
        }
    }

    pub fn params(&self) -> &RingParams {
        &self.params
    }
    pub fn transform(&self) -> &TransformMatrix {
        &self.transform
    }
    pub fn n_modes(&self) -> usize {
        self.omega.len()
    }
    pub fn omegas(&self) -> &[f64] {
        &self.omega
    }
    pub fn omega(&self, k: usize) -> f64 {
        self.omega[k - 1]
    }
    pub fn period(&self, k: usize) -> f64 {
        self.periods.l[k - 1]
    }
    pub fn is_degenerate(&self, k: usize) -> bool {
        self.periods.degenerate[k - 1]
    }

    /// `M[k][1]`.
    pub fn first_column(&self, k: usize) -> f64 {
        self.transform.get(k, 1)
    }

    /// Oscillator length inverse `ξ_k = √(mω_k/ħ)`, 1/m.
    pub fn xi(&self, k: usize) -> f64 {
        (self.params.mass() * self.omega(k) / HBAR).sqrt()
    }

    /// Dimensionless cell size `λ_k = ξ_k |l_k|`.
    pub fn lambda(&self, k: usize) -> f64 {
        self.xi(k) * self.period(k).abs()
    }

    /// Whether the spectrum of mode `k` responds to the total momentum.
    pub fn is_twisted(&self, k: usize) -> bool {
        2 * k <= self.params.n() && !self.is_degenerate(k)
    }

    pub fn wave_vector(&self, k: usize, n: i64) -> f64 {
        wave_vector(&self.params, k, n)
    }

    /// Bloch phase `θ_k = q_k l_k` seen by mode `k` at momentum label `n`,
    /// folded into `[0, π]`. The wave vector is taken at the reduced label,
    /// so the result is `N`-periodic and even in `n`.
    pub fn twist(&self, k: usize, n: i64) -> f64 {
        if !self.is_twisted(k) {
            return 0.0;
        }
        let reduced = reduce_momentum(n, self.params.n());
        fold_phase(self.wave_vector(k, reduced) * self.period(k))
    }
}

/// Kelvin to `1/J`.
pub fn beta_of(temperature: f64) -> f64 {
    1.0 / (K_B * temperature)
}
