use super::CompensatedSum;
use crate::error::{domain, Result};

const MAX_ORDER: i32 = 200;
const MAX_ARG: f64 = 1e4;
const SERIES_LIMIT: f64 = 12.0;

/// Integer-order Bessel function of the first kind `J_γ(z)`.
///
/// Ascending series for `|z| ≤ 12`, Miller's downward recurrence normalized
/// by `J₀ + 2ΣJ₂ₖ = 1` above.
pub fn bessel_j(order: i32, z: f64) -> Result<f64> {
    if order.abs() > MAX_ORDER {
        return Err(domain(
            "bessel_j",
            format!("|order| = {} exceeds {MAX_ORDER}", order.abs()),
        ));
    }
    if !z.is_finite() || z.abs() > MAX_ARG {
        return Err(domain(
            "bessel_j",
            format!("|z| = {} exceeds {MAX_ARG}", z.abs()),
        ));
    }
    let n = order.unsigned_abs();
    // J_{−n} = (−1)^n J_n and J_n(−z) = (−1)^n J_n(z).
    let mut sign = 1.0;
    if order < 0 && n % 2 == 1 {
        sign = -sign;
    }
    if z < 0.0 && n % 2 == 1 {
        sign = -sign;
    }
    let x = z.abs();
    if x == 0.0 {
        return Ok(if n == 0 { 1.0 } else { 0.0 });
    }
    let v = if x <= SERIES_LIMIT {
        ascending(n, x)
    } else {
        miller(n, x)
    };
    Ok(sign * v)
}

fn ln_factorial(n: u32) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

fn ascending(n: u32, x: f64) -> f64 {
    let half = 0.5 * x;
    let lead = (n as f64 * half.ln() - ln_factorial(n)).exp();
    if lead == 0.0 {
        return 0.0;
    }
    let q = -half * half;
    let mut term = lead;
    let mut sum = CompensatedSum::new();
    sum.add(term);
    for k in 1..200u32 {
        term *= q / (k as f64 * (k + n) as f64);
        sum.add(term);
        if term.abs() < 1e-17 * sum.value().abs() && k as f64 > half {
            break;
        }
    }
    sum.value()
}

fn miller(n: u32, x: f64) -> f64 {
    let start = {
        let m = (n as f64).max(x) + 20.0 + (160.0 * (n as f64).max(x)).sqrt();
        let m = m as u32;
        m + (m % 2)
    };
    let two_over_x = 2.0 / x;
    let mut jp1 = 0.0f64;
    let mut j = 1e-300f64;
    let mut norm = 0.0f64;
    let mut want = 0.0f64;
    for k in (1..=start).rev() {
        // j holds J_k, jp1 holds J_{k+1}
        let jm1 = k as f64 * two_over_x * j - jp1;
        jp1 = j;
        j = jm1;
        if k - 1 == n {
            want = j;
        }
        if (k - 1) % 2 == 0 && k - 1 > 0 {
            norm += 2.0 * j;
        }
        if j.abs() > 1e250 {
            j *= 1e-250;
            jp1 *= 1e-250;
            norm *= 1e-250;
            want *= 1e-250;
        }
    }
    // j now holds the unnormalized J_0
    norm += j;
    want / norm
}
