use std::f64::consts::{E, PI};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use proptest::prelude::*;
use ringdec_core::specfun::{
    adaptive_quad, bessel_j, erfi, erfi_scaled_envelope, kummer_1f1, kummer_1f1_dz, SeriesControl,
};

fn ctrl() -> SeriesControl {
    SeriesControl::default()
}

fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact-rational partial sums of the Kummer series, stopped once the next
/// term is below `1e-30` of the running sum.
fn kummer_exact(a: &BigRational, b: &BigRational, z: &BigRational) -> f64 {
    let mut sum = BigRational::from_integer(1.into());
    let mut term = sum.clone();
    let cut = rational(1, 1_000_000_000_000_000) * rational(1, 1_000_000_000_000_000);
    for k in 0..2000i64 {
        let kk = BigRational::from_integer(k.into());
        term = term * (a + &kk) * z / ((b + &kk) * (&kk + BigRational::from_integer(1.into())));
        sum = &sum + &term;
        if term.is_zero() {
            break;
        }
        let z_abs = z.abs();
        if kk > z_abs && term.abs() < &cut * sum.abs() {
            break;
        }
    }
    sum.to_f64().unwrap()
}

#[test]
fn kummer_transformation_identity_on_grid() {
    let mut worst = 0.0f64;
    for ia in 0..=40 {
        let a = -5.0 + 0.25 * ia as f64;
        for b in [0.5, 1.5] {
            for iz in 0..=50 {
                let z = 0.5 * iz as f64;
                let lhs = kummer_1f1(a, b, z, &ctrl()).unwrap();
                let rhs = z.exp() * kummer_1f1(b - a, b, -z, &ctrl()).unwrap();
                let scale = lhs.abs().max(f64::MIN_POSITIVE);
                worst = worst.max((lhs - rhs).abs() / scale);
            }
        }
    }
    assert!(worst < 1e-10, "worst relative residual {worst:e}");
}

#[test]
fn kummer_matches_exact_rational_series() {
    // Alternating series in exact arithmetic carry no cancellation error,
    // so negative arguments are checked against the raw definition.
    let mut worst = 0.0f64;
    for (an, ad) in [(-7, 2), (-3, 4), (1, 3), (5, 2), (9, 2)] {
        for (bn, bd) in [(1, 2), (3, 2)] {
            for zi in [-25i64, -12, -3, 1, 7, 20] {
                let (a, b, z) = (rational(an, ad), rational(bn, bd), rational(zi, 1));
                let exact = kummer_exact(&a, &b, &z);
                let got = kummer_1f1(
                    an as f64 / ad as f64,
                    bn as f64 / bd as f64,
                    zi as f64,
                    &ctrl(),
                )
                .unwrap();
                let rel = (got - exact).abs() / exact.abs().max(1e-300);
                worst = worst.max(rel);
            }
        }
    }
    assert!(worst < 1e-12, "worst relative error {worst:e}");
}

#[test]
fn kummer_derivative_is_a_difference_quotient() {
    let (a, b, z, h) = (-0.7, 0.5, 2.0, 1e-6);
    let fd = (kummer_1f1(a, b, z + h, &ctrl()).unwrap()
        - kummer_1f1(a, b, z - h, &ctrl()).unwrap())
        / (2.0 * h);
    let d = kummer_1f1_dz(a, b, z, &ctrl()).unwrap();
    assert!((fd - d).abs() < 1e-6 * d.abs());
    assert!((kummer_1f1_dz(1.0, 1.0, 0.0, &ctrl()).unwrap() - 1.0).abs() < 1e-15);
    assert!((kummer_1f1_dz(-2.3, 1.5, 0.0, &ctrl()).unwrap() + 2.3 / 1.5).abs() < 1e-15);
    assert!((kummer_1f1(1.0, 1.0, 1.0, &ctrl()).unwrap() - E).abs() < 1e-15);
}

#[test]
fn bessel_three_term_recurrence() {
    let mut worst = 0.0f64;
    for gamma in 1..=30 {
        for iz in 0..=499 {
            let z = 0.1 + 0.1 * iz as f64;
            let lhs = bessel_j(gamma - 1, z).unwrap() + bessel_j(gamma + 1, z).unwrap();
            let rhs = 2.0 * gamma as f64 / z * bessel_j(gamma, z).unwrap();
            worst = worst.max((lhs - rhs).abs());
        }
    }
    assert!(worst < 1e-9, "worst recurrence residual {worst:e}");
}

fn jacobi_anger_residual(z: f64, phi: f64, cap: i32) -> f64 {
    let exact = Complex64::new(0.0, z * phi.cos()).exp();
    let mut sum = Complex64::new(0.0, 0.0);
    for g in -cap..=cap {
        let ig = Complex64::i().powi(g);
        sum += ig * bessel_j(g, z).unwrap() * Complex64::new(0.0, g as f64 * phi).exp();
    }
    (exact - sum).norm()
}

#[test]
fn jacobi_anger_expansion() {
    assert!(jacobi_anger_residual(5.0, 0.7, 40) < 1e-10);
    let z: f64 = 5.0;
    let start = (z.abs() + 10.0).ceil() as i32 + 1;
    let mut prev = f64::INFINITY;
    for cap in start..start + 6 {
        let r = jacobi_anger_residual(z, 0.7, cap);
        // Past the convergence floor the residual is pure rounding.
        if r < 1e-14 {
            break;
        }
        assert!(r < prev, "Γ = {cap}: {r:e} not below {prev:e}");
        prev = r;
    }
}

#[test]
fn bessel_reference_values() {
    assert_eq!(bessel_j(0, 0.0).unwrap(), 1.0);
    assert_eq!(bessel_j(3, 0.0).unwrap(), 0.0);
    assert!((bessel_j(1, 1.0).unwrap() - 0.440_050_585_744_933_5).abs() < 1e-14);
    assert!((bessel_j(-3, 2.0).unwrap() + bessel_j(3, 2.0).unwrap()).abs() < 1e-16);
    let q = adaptive_quad(|p| (5.0 * p.cos()).cos(), 0.0, PI, 1e-13).unwrap();
    assert!((q - PI * bessel_j(0, 5.0).unwrap()).abs() < 1e-11);
}

#[test]
fn erfi_matches_quadrature_on_zero_to_three() {
    let mut worst = 0.0f64;
    for i in 0..=60 {
        let x = 0.05 * i as f64;
        let q = 2.0 / PI.sqrt() * adaptive_quad(|s| (s * s).exp(), 0.0, x, 1e-13).unwrap();
        worst = worst.max((erfi(x).unwrap() - q).abs());
    }
    assert!(worst < 1e-10, "worst {worst:e}");
    assert!((erfi(1.0).unwrap() - 1.650_425_758_797_543_1).abs() < 1e-13);
    assert!((erfi(0.5).unwrap() - 0.614_952_094_696_511).abs() < 1e-13);
}

#[test]
fn envelope_limits() {
    assert_eq!(erfi_scaled_envelope(0.0), 1.0);
    let asym = 1.0 / (20.0 * PI.sqrt());
    assert!((erfi_scaled_envelope(20.0) - asym).abs() < 0.02 * asym);
    let direct = (-1.0f64).exp() * (1.0 + erfi(1.0).unwrap().powi(2)).sqrt();
    assert!((erfi_scaled_envelope(1.0) - direct).abs() < 1e-14);
}

#[test]
fn gaussian_quadrature() {
    let q = adaptive_quad(|x| (-x * x).exp(), -8.0, 8.0, 1e-12).unwrap();
    assert!((q - PI.sqrt()).abs() < 1e-10);
    assert!((adaptive_quad(|_| 1.0, 0.0, 1.0, 1e-12).unwrap() - 1.0).abs() < 1e-15);
}

proptest! {
    #[test]
    fn erfi_is_odd(x in -5.0f64..5.0) {
        let (p, m) = (erfi(x).unwrap(), erfi(-x).unwrap());
        prop_assert!((p + m).abs() <= 1e-15 * p.abs().max(1.0));
    }

    #[test]
    fn bessel_negative_order_symmetry(g in 0i32..60, z in 0.0f64..80.0) {
        let sign = if g % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert_eq!(bessel_j(-g, z).unwrap(), sign * bessel_j(g, z).unwrap());
    }

    #[test]
    fn envelope_is_bounded(u in 0.0f64..100.0) {
        let v = erfi_scaled_envelope(u);
        prop_assert!(v > 0.0 && v <= 1.0 + 1e-15);
    }

    #[test]
    fn kummer_contiguous_relation(a in -4.0f64..4.0, z in 0.0f64..20.0) {
        // (b−a)M(a−1) + (2a−b+z)M(a) − aM(a+1) = 0
        let b = 1.5;
        let m0 = kummer_1f1(a - 1.0, b, z, &ctrl()).unwrap();
        let m1 = kummer_1f1(a, b, z, &ctrl()).unwrap();
        let m2 = kummer_1f1(a + 1.0, b, z, &ctrl()).unwrap();
        let r = (b - a) * m0 + (2.0 * a - b + z) * m1 - a * m2;
        let scale = m0.abs().max(m1.abs()).max(m2.abs()) * (1.0 + z + a.abs());
        prop_assert!(r.abs() <= 1e-11 * scale, "residual {r:e} scale {scale:e}");
    }
}
