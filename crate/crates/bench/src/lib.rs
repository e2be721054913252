//! Shared fixtures for the benchmarks.

use ringdec_core::{RingParams, M_P};

/// Ring used in the spectrum benchmarks.
pub fn fig3_ring() -> RingParams {
    RingParams::new(80, 40.0 * M_P, 1e-13, 0.5e-6, 1e-7).expect("valid parameters")
}
