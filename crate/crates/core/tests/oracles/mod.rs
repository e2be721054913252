//! Direct quadratures of the Gaussian-weighted integrals behind the
//! closed-form decoherence factors.
#![allow(dead_code)]

use std::f64::consts::PI;

use ringdec_core::specfun::adaptive_quad;

const QUAD_TOL: f64 = 1e-12;

/// `∫_0^∞ e^{−a n²} (cos φ(n), sin φ(n)) dn`, truncated where the weight
/// drops below `e^{−45}`.
fn half_line(a: f64, phase: impl Fn(f64) -> f64 + Copy) -> (f64, f64) {
    let end = (45.0 / a).sqrt();
    let re = adaptive_quad(|n| (-a * n * n).exp() * phase(n).cos(), 0.0, end, QUAD_TOL).unwrap();
    let im = adaptive_quad(|n| (-a * n * n).exp() * phase(n).sin(), 0.0, end, QUAD_TOL).unwrap();
    (re, im)
}

/// `|∫ e^{−a n²} e^{i z cos(4πn/N)} dn| / ∫ e^{−a n²} dn`.
pub fn cosine_model(a: f64, big_n: usize, z: f64) -> f64 {
    let k = 4.0 * PI / big_n as f64;
    let (re, im) = half_line(a, move |n| z * (k * n).cos());
    2.0 * re.hypot(im) / (PI / a).sqrt()
}

/// `|∫ e^{−a n²} e^{−i c|n|t} dn| / ∫ e^{−a n²} dn`.
pub fn linear_model(a: f64, c: f64, t: f64) -> f64 {
    let (re, im) = half_line(a, move |n| -c * n * t);
    2.0 * re.hypot(im) / (PI / a).sqrt()
}
