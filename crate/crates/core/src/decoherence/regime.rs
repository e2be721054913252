use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::constants::HBAR;
use crate::model::RingParams;
use crate::spectrum::LinearizedCoeffs;

/// `τ_spon / τ`.
pub fn tau_spon_ratio() -> f64 {
    (2.0 * (PI - 2.0) / PI).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegimeDiagnostics {
    /// Width of the thermal distribution over `n`.
    pub n_fwhm: f64,
    /// `n_fwhm / (N/4)`; below 1 a single period of the thin spectrum matters.
    pub r: f64,
    /// `4π²/(N²βΔ_e′)`.
    pub eta: f64,
    pub gamma_cutoff: u64,
    /// Gaussian decay time of the linear approximation, s; absent when `Δg = 0`.
    pub tau: Option<f64>,
    pub tau_spon: Option<f64>,
}

pub fn n_fwhm(params: &RingParams) -> f64 {
    let big_n = params.n() as f64;
    (2.0 * params.mass() * big_n * params.radius().powi(2) / (params.beta() * HBAR * HBAR)).sqrt()
}

pub fn r_ratio(params: &RingParams) -> f64 {
    n_fwhm(params) / (params.n() as f64 / 4.0)
}

pub fn eta(params: &RingParams, coeffs: &LinearizedCoeffs) -> f64 {
    let big_n = params.n() as f64;
    4.0 * PI * PI / (big_n * big_n * params.beta() * coeffs.delta_e_prime)
}

/// Smallest `Γ` with `e^{−ηΓ²} ≤ threshold`.
pub fn gamma_cutoff(eta: f64, threshold: f64) -> u64 {
    if !(eta > 0.0) {
        return u64::MAX;
    }
    let g = (-threshold.ln() / eta).sqrt().ceil();
    if g >= u64::MAX as f64 {
        u64::MAX
    } else {
        g as u64
    }
}

/// `τ = √(βN⁴mΔ_e′/(π²Δg²κ))`.
pub fn tau(params: &RingParams, coeffs: &LinearizedCoeffs) -> Option<f64> {
    if coeffs.delta_g == 0.0 || !coeffs.delta_g.is_finite() {
        return None;
    }
    let n4 = (params.n() as f64).powi(4);
    let t = (params.beta() * n4 * params.mass() * coeffs.delta_e_prime
        / (PI * PI * coeffs.delta_g * coeffs.delta_g * params.kappa()))
    .sqrt();
    t.is_finite().then_some(t)
}

pub fn regime(
    params: &RingParams,
    coeffs: &LinearizedCoeffs,
    gamma_threshold: f64,
) -> RegimeDiagnostics {
    let eta = eta(params, coeffs);
    let tau = tau(params, coeffs);
    RegimeDiagnostics {
        n_fwhm: n_fwhm(params),
        r: r_ratio(params),
        eta,
        gamma_cutoff: gamma_cutoff(eta, gamma_threshold),
        tau,
        tau_spon: tau.map(|t| tau_spon_ratio() * t),
    }
}
