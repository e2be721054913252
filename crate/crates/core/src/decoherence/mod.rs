//! Decoherence factor of the relative-motion qubit under a thermal
//! distribution of total momenta.

mod ensemble;
mod regime;
mod trace;

pub use ensemble::{build_ensemble, ThermalEnsemble};
pub use regime::{
    eta, gamma_cutoff, n_fwhm, r_ratio, regime, tau, tau_spon_ratio, RegimeDiagnostics,
};
pub use trace::{
    auto_window, decoherence_bessel, decoherence_erfi, decoherence_exact, decoherence_exact_with,
    delta_e_cos, first_decay_time, uniform_times, DecoherenceTrace, Method, TraceMeta, MAX_GAMMA,
};
