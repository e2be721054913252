use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::specfun::SeriesControl;

/// Numerical controls shared by the level solver, the oracles and the
/// decoherence evaluators.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverConfig {
    /// Scan step in `ν` used to bracket band edges.
    pub scan_step: f64,
    /// Bisection stops once the bracket is narrower than this.
    pub nu_tol: f64,
    /// Smallest cell size `λ` the level solver accepts.
    pub lambda_min: f64,
    /// Above this cell size the bands are narrower than double precision
    /// resolves and the oscillator levels `ν = α` are used directly.
    pub lambda_harmonic: f64,
    /// Grid points of the finite-difference oracle.
    pub fd_grid: usize,
    pub series_rel_tol: f64,
    pub series_max_terms: usize,
    /// Absolute tolerance of oracle quadratures.
    pub quad_tol: f64,
    /// Relative Boltzmann weight at which the ensemble is cut.
    pub ensemble_cut: f64,
    /// Gaussian factor `e^{−ηγ²}` below which Bessel orders are dropped.
    pub gamma_threshold: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            scan_step: 1e-3,
            nu_tol: 1e-10,
            lambda_min: 0.5,
            lambda_harmonic: 20.0,
            fd_grid: 4096,
            series_rel_tol: 1e-15,
            series_max_terms: 500,
            quad_tol: 1e-11,
            ensemble_cut: 1e-14,
            gamma_threshold: 1e-2,
        }
    }
}

impl SolverConfig {
    pub fn series(&self) -> SeriesControl {
        SeriesControl {
            rel_tol: self.series_rel_tol,
            max_terms: self.series_max_terms,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.scan_step > 0.0 && self.scan_step <= 0.05) {
            return Err(invalid(
                "scan_step",
                format!("must lie in (0, 0.05], got {}", self.scan_step),
            ));
        }
        if !(self.nu_tol > 0.0 && self.nu_tol < self.scan_step) {
            return Err(invalid(
                "nu_tol",
                format!("must lie in (0, scan_step), got {}", self.nu_tol),
            ));
        }
        if !(self.lambda_min > 0.0) {
            return Err(invalid(
                "lambda_min",
                format!("must be positive, got {}", self.lambda_min),
            ));
        }
        if !(self.lambda_harmonic > self.lambda_min && self.lambda_harmonic <= 28.0) {
            return Err(invalid(
                "lambda_harmonic",
                format!("must lie in (lambda_min, 28], got {}", self.lambda_harmonic),
            ));
        }
        if self.fd_grid < 512 {
            return Err(invalid(
                "fd_grid",
                format!("must be at least 512, got {}", self.fd_grid),
            ));
        }
        self.series().validate()?;
        if !(self.quad_tol > 0.0) {
            return Err(invalid(
                "quad_tol",
                format!("must be positive, got {}", self.quad_tol),
            ));
        }
        if !(self.ensemble_cut > 0.0 && self.ensemble_cut < 1e-6) {
            return Err(invalid(
                "ensemble_cut",
                format!("must lie in (0, 1e-6), got {}", self.ensemble_cut),
            ));
        }
        if !(self.gamma_threshold > 0.0 && self.gamma_threshold < 1.0) {
            return Err(invalid(
                "gamma_threshold",
                format!("must lie in (0, 1), got {}", self.gamma_threshold),
            ));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        SolverConfig::default().validate().unwrap();
    }

    #[test]
    fn rejects_bad_fields() {
        let mut c = SolverConfig::default();
        c.fd_grid = 100;
        assert!(c.validate().is_err());
        let mut c = SolverConfig::default();
        c.nu_tol = 1.0;
        assert!(c.validate().is_err());
    }
}
