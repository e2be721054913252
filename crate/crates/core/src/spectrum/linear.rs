//! Linear and quadratic descriptions of the thin spectrum used by the
//! closed-form decoherence approximations.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::bands::BandStructure;
use super::thin::ThinSpectrum;
use crate::constants::HBAR;
use crate::error::Result;
use crate::model::ModeTable;

const RATIO_STEP: f64 = 1e-6;
const POOR_FIT: f64 = 0.2;
/// Bands narrower than this are indistinguishable from flat ones at the
/// solver tolerance.
const FLAT_BAND: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearizedCoeffs {
    /// Expansion branch `μ` per mode, around `θ = (½ + μ)π`.
    pub mu: Vec<i32>,
    /// Level `α′` solving `F(l, α′) = −1`, per `[k−1][α]`.
    pub alpha_prime: Vec<Vec<f64>>,
    /// Zero for harmonic and unresolvably narrow bands, as is `g1`.
    pub g0: Vec<Vec<f64>>,
    pub g1: Vec<Vec<f64>>,
    /// Quadratic coefficient of `Σ_k δ_k(n, 0)ħω_k`, J.
    pub delta_e: f64,
    /// `Δ_e + ħ²/(2mNR²)`, J.
    pub delta_e_prime: f64,
    /// `g₁(1, 1) − g₁(1, 0)`.
    pub delta_g: f64,
    /// `(ΔE(N/4) − ΔE(0)) / ħω₁`.
    pub g: f64,
    /// Largest fit residual relative to the fitted range.
    pub fit_residual: f64,
    pub quadratic_fit_poor: bool,
}

/// `F(l, ν)` and its `ν`-derivative.
pub fn ratio_and_slope(bands: &BandStructure, nu: f64) -> Result<(f64, f64)> {
    let f = bands.cell(nu)?.ratio();
    let up = bands.cell(nu + RATIO_STEP)?.ratio();
    let down = bands.cell(nu - RATIO_STEP)?.ratio();
    Ok((f, (up - down) / (2.0 * RATIO_STEP)))
}

/// Integer `μ` minimizing `|θ − (½ + μ)π|`.
pub fn expansion_branch(theta: f64) -> i32 {
    (theta / PI - 0.5).round() as i32
}

pub fn linearize(spec: &ThinSpectrum) -> Result<LinearizedCoeffs> {
    let params = *spec.params();
    let modes = ModeTable::new(&params);
    let big_n = params.n();
    let levels = spec.alpha_max() + 1;
    let norm = (2.0f64).sqrt() / (big_n as f64).sqrt();

    let mut mu = vec![0; spec.n_modes()];
    let mut alpha_prime = vec![vec![f64::NAN; levels]; spec.n_modes()];
    let mut g0 = vec![vec![0.0; levels]; spec.n_modes()];
    let mut g1 = vec![vec![0.0; levels]; spec.n_modes()];
    for k in 1..=spec.n_modes() {
        let Some(bands) = spec.band_structure(k) else {
            continue;
        };
        if bands.is_harmonic() {
            alpha_prime[k - 1] = (0..levels).map(|a| a as f64).collect();
            continue;
        }
        let theta_unit = modes.wave_vector(k, 1) * modes.period(k);
        let m = expansion_branch(theta_unit);
        let parity = if m.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        mu[k - 1] = m;
        for alpha in 0..levels {
            let ap = bands.level(alpha, PI / 2.0)?;
            let edges = bands.edges();
            if edges[2 * alpha + 1].nu - edges[2 * alpha].nu < FLAT_BAND {
                alpha_prime[k - 1][alpha] = ap;
                continue;
            }
            let (f, slope) = ratio_and_slope(bands, ap)?;
            alpha_prime[k - 1][alpha] = ap;
            g0[k - 1][alpha] = -(1.0 + f + parity * (1.0 + 2.0 * m as f64) * PI) / slope;
            g1[k - 1][alpha] = parity * 2.0 * PI * modes.first_column(k) / slope * norm;
        }
    }

    let (delta_e, fit_residual) = quadratic_fit(spec);
    let delta_e_prime = delta_e + params.kinetic_quantum();
    let delta_g = g1[0][1] - g1[0][0];
    let quarter = (big_n as f64 / 4.0).round() as i64;
    let g = (spec.delta_e(quarter) - spec.delta_e(0)) / (HBAR * spec.omega(1));
    Ok(LinearizedCoeffs {
        mu,
        alpha_prime,
        g0,
        g1,
        delta_e,
        delta_e_prime,
        delta_g,
        g,
        fit_residual,
        quadratic_fit_poor: fit_residual > POOR_FIT,
    })
}

/// Least-squares `y = c + Δ_e n²` over `n = 0..=max(1, N/8)`.
fn quadratic_fit(spec: &ThinSpectrum) -> (f64, f64) {
    let last = (spec.params().n() / 8).max(1) as i64;
    let pts: Vec<(f64, f64)> = (0..=last)
        .map(|n| ((n * n) as f64, spec.ground_shift(n)))
        .collect();
    let m = pts.len() as f64;
    let xbar = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let ybar = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = pts.iter().map(|p| (p.0 - xbar).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - xbar) * (p.1 - ybar)).sum();
    let slope = sxy / sxx;
    let icpt = ybar - slope * xbar;
    let (lo, hi) = pts
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
            (lo.min(p.1), hi.max(p.1))
        });
    let worst = pts
        .iter()
        .map(|p| (p.1 - icpt - slope * p.0).abs())
        .fold(0.0, f64::max);
    let range = hi - lo;
    let rel = if range > 0.0 { worst / range } else { 0.0 };
    (slope, rel)
}
