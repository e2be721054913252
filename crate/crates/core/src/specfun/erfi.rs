use std::f64::consts::PI;

use super::CompensatedSum;
use crate::error::{Error, Result};

const TAYLOR_LIMIT: f64 = 3.0;
const OVERFLOW_LIMIT: f64 = 26.0;
/// Node spacing of the odd-point rule for Dawson's integral; the
/// discretization error is of order `exp(−(π/2h)²)`.
const RYBICKI_STEP: f64 = 0.1;

/// Imaginary error function `erfi(x) = (2/√π)∫₀ˣ e^{s²} ds`.
pub fn erfi(x: f64) -> Result<f64> {
    let ax = x.abs();
    if !(ax <= OVERFLOW_LIMIT) {
        return Err(Error::ErfiOverflow { x });
    }
    if ax <= TAYLOR_LIMIT {
        return Ok(erfi_taylor(x));
    }
    Ok(2.0 / PI.sqrt() * (x * x).exp() * dawson(x))
}

fn erfi_taylor(x: f64) -> f64 {
    // (2/√π) Σ x^{2k+1} / (k! (2k+1)); all terms share the sign of x.
    let x2 = x * x;
    let mut pow = x;
    let mut sum = CompensatedSum::new();
    sum.add(x);
    let mut k = 0.0f64;
    loop {
        k += 1.0;
        pow *= x2 / k;
        let term = pow / (2.0 * k + 1.0);
        sum.add(term);
        if term.abs() <= 1e-17 * sum.value().abs() {
            break;
        }
    }
    2.0 / PI.sqrt() * sum.value()
}

/// Dawson's integral `D(x) = e^{−x²}∫₀ˣ e^{s²} ds`.
pub fn dawson(x: f64) -> f64 {
    let ax = x.abs();
    if ax < 0.5 {
        // D(x) = Σ (−1)^k 2^k x^{2k+1} / (2k+1)!!
        let x2 = x * x;
        let mut term = x;
        let mut sum = x;
        let mut k = 0.0f64;
        while term.abs() > 1e-18 * sum.abs() && term != 0.0 {
            k += 1.0;
            term *= -2.0 * x2 / (2.0 * k + 1.0);
            sum += term;
        }
        return sum;
    }
    if ax > 50.0 {
        dawson_asymptotic(x)
    } else {
        dawson_rybicki(x)
    }
}

/// `1/(2x) Σ (2k−1)!!/(2x²)^k`, for large `|x|`.
fn dawson_asymptotic(x: f64) -> f64 {
    let inv = 1.0 / (2.0 * x * x);
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..30 {
        term *= (2 * k - 1) as f64 * inv;
        sum += term;
    }
    sum / (2.0 * x)
}

fn dawson_rybicki(x: f64) -> f64 {
    // Odd-point midpoint rule for the principal-value representation
    // D(x) = (1/√π) Σ_{n odd} e^{−(x−nh)²}/n.
    let h = RYBICKI_STEP;
    let width = 8.0;
    let lo = ((x - width) / h).floor() as i64;
    let hi = ((x + width) / h).ceil() as i64;
    let mut sum = CompensatedSum::new();
    for n in lo..=hi {
        if n.rem_euclid(2) == 0 {
            continue;
        }
        let d = x - n as f64 * h;
        sum.add((-d * d).exp() / n as f64);
    }
    sum.value() / PI.sqrt()
}

/// `e^{−u²}·√(1 + erfi(u)²)` for `u ≥ 0`, without forming `erfi(u)`
/// when it would overflow. Uses `e^{−u²} erfi(u) = 2D(u)/√π`.
pub fn erfi_scaled_envelope(u: f64) -> f64 {
    let u = u.abs();
    let damp = (-u * u).exp();
    let scaled = if u <= TAYLOR_LIMIT {
        damp * erfi_taylor(u)
    } else {
        2.0 * dawson(u) / PI.sqrt()
    };
    (damp * damp + scaled * scaled).sqrt()
}
