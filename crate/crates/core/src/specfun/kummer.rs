use serde::{Deserialize, Serialize};

use super::CompensatedSum;
use crate::error::{domain, invalid, Error, Result};

/// Truncation control for the hypergeometric series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesControl {
    pub rel_tol: f64,
    pub max_terms: usize,
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self {
            rel_tol: 1e-15,
            max_terms: 500,
        }
    }
}

impl SeriesControl {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol <= 1e-6) {
            return Err(invalid(
                "rel_tol",
                format!("must lie in (0, 1e-6], got {}", self.rel_tol),
            ));
        }
        if self.max_terms < 50 {
            return Err(invalid(
                "max_terms",
                format!("must be at least 50, got {}", self.max_terms),
            ));
        }
        Ok(())
    }
}

const MAX_ABS_Z: f64 = 200.0;

/// Confluent hypergeometric function `₁F₁(a; b; z)` (Kummer's `M`).
///
/// Non-negative `z` is summed directly; beyond the first few terms the
/// series is single-signed there, so it stays accurate even when the result
/// is exponentially large. Negative `z` goes through Kummer's transformation
/// `M(a,b,z) = e^z M(b−a,b,−z)` so that only positive-argument series are
/// ever summed.
pub fn kummer_1f1(a: f64, b: f64, z: f64, ctrl: &SeriesControl) -> Result<f64> {
    if !(a.is_finite() && b.is_finite() && z.is_finite()) {
        return Err(domain(
            "kummer_1f1",
            format!("non-finite input a={a} b={b} z={z}"),
        ));
    }
    if b <= 0.0 && b == b.round() {
        return Err(domain(
            "kummer_1f1",
            format!("b = {b} is a non-positive integer"),
        ));
    }
    if z.abs() > MAX_ABS_Z {
        return Err(domain(
            "kummer_1f1",
            format!("|z| = {} exceeds {MAX_ABS_Z}", z.abs()),
        ));
    }
    if z == 0.0 {
        return Ok(1.0);
    }
    if z < 0.0 {
        return Ok(z.exp() * series(b - a, b, -z, ctrl)?);
    }
    series(a, b, z, ctrl)
}

/// `d/dz ₁F₁(a; b; z) = (a/b)·₁F₁(a+1; b+1; z)`.
pub fn kummer_1f1_dz(a: f64, b: f64, z: f64, ctrl: &SeriesControl) -> Result<f64> {
    if b <= 0.0 && b == b.round() {
        return Err(domain(
            "kummer_1f1_dz",
            format!("b = {b} is a non-positive integer"),
        ));
    }
    if a == 0.0 {
        return Ok(0.0);
    }
    Ok(a / b * kummer_1f1(a + 1.0, b + 1.0, z, ctrl)?)
}

fn series(a: f64, b: f64, z: f64, ctrl: &SeriesControl) -> Result<f64> {
    let mut sum = CompensatedSum::new();
    let mut term = 1.0f64;
    let mut biggest = 1.0f64;
    sum.add(term);
    for k in 0..ctrl.max_terms {
        let kf = k as f64;
        let ratio = (a + kf) * z / ((b + kf) * (kf + 1.0));
        term *= ratio;
        if !term.is_finite() {
            return Err(domain(
                "kummer_1f1",
                format!("term overflow at k={k} (a={a}, b={b}, z={z})"),
            ));
        }
        sum.add(term);
        biggest = biggest.max(term.abs());
        if term == 0.0 {
            return Ok(sum.value());
        }
        // Only stop once the terms are shrinking for good.
        if ratio.abs() < 1.0 {
            let s = sum.value().abs();
            if term.abs() <= ctrl.rel_tol * s || term.abs() <= 1e-17 * biggest {
                return Ok(sum.value());
            }
        }
    }
    Err(Error::SeriesNotConverged {
        function: "kummer_1f1",
        partial: sum.value(),
        terms: ctrl.max_terms,
    })
}
