//! Thin energy spectrum and spontaneous decoherence of harmonically coupled
//! oscillators on a ring.

pub mod config;
pub mod constants;
pub mod decoherence;
pub mod error;
pub mod model;
pub mod specfun;
pub mod spectrum;

pub use config::SolverConfig;
pub use constants::{PhysicalConstants, HBAR, K_B, M_P};
pub use decoherence::{DecoherenceTrace, Method, RegimeDiagnostics, ThermalEnsemble};
pub use error::{Error, Result};
pub use model::{ModeTable, RingParams, TransformMatrix};
pub use spectrum::{LinearizedCoeffs, ModeEigenProblem, ModeLevels, ThinSpectrum};
