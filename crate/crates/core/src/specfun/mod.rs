//! Real-argument special functions: Kummer's ₁F₁, integer-order Bessel J,
//! the imaginary error function and Dawson's integral, plus an adaptive
//! Gauss–Kronrod integrator used by the oracle checks.

mod bessel;
mod erfi;
mod kummer;
mod quad;

pub use bessel::bessel_j;
pub use erfi::{dawson, erfi, erfi_scaled_envelope};
pub use kummer::{kummer_1f1, kummer_1f1_dz, SeriesControl};
pub use quad::{adaptive_quad, adaptive_quad_with_error, QuadEstimate};

/// Kahan–Babuška (Neumaier) running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl std::iter::FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::new();
        for x in iter {
            s.add(x);
        }
        s
    }
}
