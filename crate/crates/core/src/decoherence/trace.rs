use std::f64::consts::PI;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ensemble::ThermalEnsemble;
use super::regime::{eta, gamma_cutoff, tau};
use crate::constants::HBAR;
use crate::error::{invalid, Error, Result};
use crate::model::{mode_frequencies, reduce_momentum, RingParams};
use crate::specfun::{bessel_j, erfi_scaled_envelope, CompensatedSum};
use crate::spectrum::{LinearizedCoeffs, ThinSpectrum};

/// Largest Bessel order the series path accepts.
pub const MAX_GAMMA: u64 = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exact,
    Bessel,
    Erfi,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Exact, Method::Bessel, Method::Erfi];

    pub fn name(self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::Bessel => "bessel",
            Method::Erfi => "erfi",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Method::Exact),
            "bessel" => Ok(Method::Bessel),
            "erfi" => Ok(Method::Erfi),
            other => Err(invalid("method", format!("unknown method `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceMeta {
    pub params: RingParams,
    pub n_trunc: Option<i64>,
    pub gamma_cutoff: Option<u64>,
    pub tau: Option<f64>,
    pub note: Option<String>,
}

impl TraceMeta {
    fn new(params: &RingParams) -> Self {
        Self {
            params: *params,
            n_trunc: None,
            gamma_cutoff: None,
            tau: None,
            note: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecoherenceTrace {
    pub t: Vec<f64>,
    pub f: Vec<f64>,
    pub method: Method,
    pub meta: TraceMeta,
}

fn check_times(times: &[f64]) -> Result<()> {
    if times.iter().any(|t| !t.is_finite()) {
        return Err(invalid("times", "all times must be finite"));
    }
    Ok(())
}

/// Uniform grid of `points` samples on `[0, t_max]`.
pub fn uniform_times(t_max: f64, points: usize) -> Result<Vec<f64>> {
    if !(t_max > 0.0 && t_max.is_finite()) {
        return Err(invalid(
            "t_max",
            format!("must be positive and finite, got {t_max}"),
        ));
    }
    if points < 2 {
        return Err(invalid("points", format!("need at least 2, got {points}")));
    }
    let last = (points - 1) as f64;
    Ok((0..points).map(|i| t_max * i as f64 / last).collect())
}

/// Default window: `5τ` when the linear approximation defines `τ`,
/// otherwise `40/(gω₁)`.
pub fn auto_window(params: &RingParams, coeffs: &LinearizedCoeffs) -> Result<f64> {
    if let Some(t) = tau(params, coeffs) {
        return Ok(5.0 * t);
    }
    let w1 = mode_frequencies(params)[0];
    let t = 40.0 / (coeffs.g.abs() * w1);
    if t.is_finite() {
        Ok(t)
    } else {
        Err(invalid(
            "times",
            "neither τ nor g fixes a time scale; give t_max explicitly",
        ))
    }
}

fn phase_sum<I: Iterator<Item = (f64, f64)>>(terms: I, t: f64) -> f64 {
    let mut re = CompensatedSum::new();
    let mut im = CompensatedSum::new();
    for (w, de) in terms {
        let (s, c) = (-de * t / HBAR).sin_cos();
        re.add(w * c);
        im.add(w * s);
    }
    re.value().hypot(im.value())
}

/// `F(t) = |Σ_n w_n e^{−iΔE(n)t/ħ}|` with the tabulated splitting.
///
/// The splitting depends on `n` only through the reduced label, so weights
/// are pooled per label before the time loop.
pub fn decoherence_exact(
    ens: &ThermalEnsemble,
    spec: &ThinSpectrum,
    times: &[f64],
) -> Result<DecoherenceTrace> {
    check_times(times)?;
    let big_n = spec.params().n();
    let rows = big_n / 2 + 1;
    let mut pooled = vec![CompensatedSum::new(); rows];
    for (n, w) in ens.labels() {
        pooled[reduce_momentum(n, big_n).unsigned_abs() as usize].add(w);
    }
    let terms: Vec<(f64, f64)> = pooled
        .iter()
        .enumerate()
        .filter(|(_, w)| w.value() != 0.0)
        .map(|(r, w)| (w.value(), spec.delta_e(r as i64)))
        .collect();
    let f = times
        .par_iter()
        .map(|&t| phase_sum(terms.iter().copied(), t))
        .collect();
    let mut meta = TraceMeta::new(spec.params());
    meta.n_trunc = Some(ens.n_trunc);
    Ok(DecoherenceTrace {
        t: times.to_vec(),
        f,
        method: Method::Exact,
        meta,
    })
}

/// Exact sum with a caller-supplied splitting `ΔE(n)`, evaluated term by term.
pub fn decoherence_exact_with<S>(
    ens: &ThermalEnsemble,
    params: &RingParams,
    times: &[f64],
    splitting: S,
) -> Result<DecoherenceTrace>
where
    S: Fn(i64) -> f64 + Sync,
{
    check_times(times)?;
    let terms: Vec<(f64, f64)> = ens.labels().map(|(n, w)| (w, splitting(n))).collect();
    let f = times
        .par_iter()
        .map(|&t| phase_sum(terms.iter().copied(), t))
        .collect();
    let mut meta = TraceMeta::new(params);
    meta.n_trunc = Some(ens.n_trunc);
    Ok(DecoherenceTrace {
        t: times.to_vec(),
        f,
        method: Method::Exact,
        meta,
    })
}

/// Cosine model of the splitting, `−ħω₁(g/2)cos(4πn/N)`, J.
pub fn delta_e_cos(params: &RingParams, coeffs: &LinearizedCoeffs, n: i64) -> f64 {
    let w1 = mode_frequencies(params)[0];
    -HBAR * w1 * 0.5 * coeffs.g * (4.0 * PI * n as f64 / params.n() as f64).cos()
}

/// Jacobi–Anger series `|Σ_γ i^γ J_γ(gω₁t/2) e^{−ηγ²}|` of the cosine model
/// under a Gaussian thermal weight.
pub fn decoherence_bessel(
    coeffs: &LinearizedCoeffs,
    params: &RingParams,
    times: &[f64],
    gamma: Option<u64>,
    gamma_threshold: f64,
) -> Result<DecoherenceTrace> {
    check_times(times)?;
    if !(coeffs.delta_e_prime > 0.0) {
        return Err(invalid(
            "delta_e_prime",
            format!(
                "must be positive for a Gaussian ensemble, got {:e}",
                coeffs.delta_e_prime
            ),
        ));
    }
    let eta = eta(params, coeffs);
    let cutoff = gamma.unwrap_or_else(|| gamma_cutoff(eta, gamma_threshold));
    if cutoff > MAX_GAMMA {
        return Err(invalid(
            "gamma_cutoff",
            format!("{cutoff} Bessel orders needed; this regime calls for the exact sum"),
        ));
    }
    let w1 = mode_frequencies(params)[0];
    let damp: Vec<f64> = (0..=cutoff)
        .map(|g| (-eta * (g * g) as f64).exp())
        .collect();
    let f = times
        .par_iter()
        .map(|&t| {
            let z = 0.5 * coeffs.g * w1 * t;
            // i^{−γ} J_{−γ} = i^γ J_γ, so the two halves of the sum coincide.
            let mut re = CompensatedSum::new();
            let mut im = CompensatedSum::new();
            re.add(bessel_j(0, z)?);
            for g in 1..=cutoff {
                let term = 2.0 * bessel_j(g as i32, z)? * damp[g as usize];
                match g % 4 {
                    0 => re.add(term),
                    1 => im.add(term),
                    2 => re.add(-term),
                    _ => im.add(-term),
                }
            }
            Ok(re.value().hypot(im.value()))
        })
        .collect::<Result<Vec<f64>>>()?;
    let mut meta = TraceMeta::new(params);
    meta.gamma_cutoff = Some(cutoff);
    meta.note = Some("inner Jacobi-Anger index read as the summation index".into());
    Ok(DecoherenceTrace {
        t: times.to_vec(),
        f,
        method: Method::Bessel,
        meta,
    })
}

/// Envelope `e^{−u²}√(1 + erfi(u)²)`, `u = t/τ`, of the linear model.
pub fn decoherence_erfi(
    coeffs: &LinearizedCoeffs,
    params: &RingParams,
    times: &[f64],
) -> Result<DecoherenceTrace> {
    check_times(times)?;
    let tau = tau(params, coeffs).ok_or_else(|| {
        invalid(
            "delta_g",
            format!("τ is undefined for Δg = {:e}", coeffs.delta_g),
        )
    })?;
    let f = times
        .iter()
        .map(|t| erfi_scaled_envelope(t / tau))
        .collect();
    let mut meta = TraceMeta::new(params);
    meta.tau = Some(tau);
    Ok(DecoherenceTrace {
        t: times.to_vec(),
        f,
        method: Method::Erfi,
        meta,
    })
}

/// First time `F` drops below `threshold`, linearly interpolated; `+∞` if it
/// never does inside the trace.
pub fn first_decay_time(trace: &DecoherenceTrace, threshold: f64) -> Result<f64> {
    if trace.t.is_empty() || trace.t.len() != trace.f.len() {
        return Err(invalid("trace", "empty or ragged trace"));
    }
    if !(threshold > 0.0 && threshold < 1.0) {
        return Err(invalid(
            "threshold",
            format!("must lie in (0, 1), got {threshold}"),
        ));
    }
    if trace.f[0] < threshold {
        return Ok(trace.t[0]);
    }
    for i in 1..trace.t.len() {
        let (f0, f1) = (trace.f[i - 1], trace.f[i]);
        if f1 < threshold {
            let (t0, t1) = (trace.t[i - 1], trace.t[i]);
            return Ok(t0 + (t1 - t0) * (f0 - threshold) / (f0 - f1));
        }
    }
    Ok(f64::INFINITY)
}
