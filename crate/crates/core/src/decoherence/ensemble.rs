use serde::{Deserialize, Serialize};

use crate::config::SolverConfig;
use crate::error::{invalid, Result};
use crate::specfun::CompensatedSum;
use crate::spectrum::ThinSpectrum;

/// Boltzmann weights over the momentum labels `n ∈ [−n_trunc, n_trunc]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThermalEnsemble {
    pub beta: f64,
    pub n_trunc: i64,
    /// `w_n` for `n = −n_trunc..=n_trunc`.
    pub weights: Vec<f64>,
    /// `ln Z` with energies measured from `E(0, 0)`.
    pub ln_z_rel: f64,
    /// Set when the ensemble collapsed onto `n = 0` (zero temperature).
    pub collapsed: bool,
}

impl ThermalEnsemble {
    /// The single-momentum ensemble `w_0 = 1`.
    pub fn collapsed() -> Self {
        Self {
            beta: f64::INFINITY,
            n_trunc: 0,
            weights: vec![1.0],
            ln_z_rel: 0.0,
            collapsed: true,
        }
    }

    pub fn labels(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        (-self.n_trunc..=self.n_trunc).zip(self.weights.iter().copied())
    }

    pub fn weight(&self, n: i64) -> f64 {
        if n.abs() > self.n_trunc {
            0.0
        } else {
            self.weights[(n + self.n_trunc) as usize]
        }
    }
}

/// Thermal ensemble at the spectrum's temperature, truncated at the first
/// multiple of `N` whose relative weight drops below `cfg.ensemble_cut`.
pub fn build_ensemble(spec: &ThinSpectrum, cfg: &SolverConfig) -> Result<ThermalEnsemble> {
    let params = spec.params();
    let beta = params.beta();
    if beta.is_infinite() {
        return Ok(ThermalEnsemble::collapsed());
    }
    // Whole periods keep ε(n) periodic on the support, so E(μN) − E(0) is
    // purely kinetic.
    let period = params.n() as i64;
    let cut = -cfg.ensemble_cut.ln();
    let mut n_trunc = period;
    while beta * params.kinetic_energy(n_trunc) <= cut {
        n_trunc += period;
        if n_trunc > 1 << 40 {
            return Err(invalid(
                "temperature",
                "thermal ensemble does not fit in memory",
            ));
        }
    }
    let raw: Vec<f64> = (-n_trunc..=n_trunc)
        .map(|n| (-beta * spec.ground_excess(n)).exp())
        .collect();
    let z: f64 = raw.iter().copied().collect::<CompensatedSum>().value();
    Ok(ThermalEnsemble {
        beta,
        n_trunc,
        weights: raw.iter().map(|w| w / z).collect(),
        ln_z_rel: z.ln(),
        collapsed: false,
    })
}
