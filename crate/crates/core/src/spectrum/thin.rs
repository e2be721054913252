//! Thin spectrum `ε(n, α)` over the total-momentum label `n`.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::bands::BandStructure;
use crate::config::SolverConfig;
use crate::constants::HBAR;
use crate::error::{invalid, Error, Result};
use crate::model::{reduce_momentum, ModeTable, RingParams};
use crate::specfun::CompensatedSum;

/// Energy `ε_k(n, α) = (ν_α + ½)ħω_k` and offset `δ_k = ν_α − α`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeEnergy {
    pub energy: f64,
    pub delta: f64,
}

/// Level table for one mode over the reduced labels `r = 0..=N/2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct ModeColumn {
    /// `nu[r][α]`; empty for modes whose spectrum ignores the momentum.
    nu: Vec<Vec<f64>>,
}

/// Thin spectrum of the ring. The mode levels depend on `n` only through the
/// reduced label `|n mod N|`, so one period is stored and every `n` is served.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThinSpectrum {
    params: RingParams,
    n_max: i64,
    alpha_max: usize,
    omega: Vec<f64>,
    columns: Vec<ModeColumn>,
    bands: Vec<Option<BandStructure>>,
    /// `Σ_k ε_k(r, α)` indexed `[r][α]`.
    total: Vec<Vec<f64>>,
    /// `Σ_k δ_k(r, 0)ħω_k` indexed `[r]`.
    ground: Vec<f64>,
}

impl ThinSpectrum {
    pub fn params(&self) -> &RingParams {
        &self.params
    }
    pub fn n_max(&self) -> i64 {
        self.n_max
    }
    pub fn alpha_max(&self) -> usize {
        self.alpha_max
    }
    pub fn n_modes(&self) -> usize {
        self.omega.len()
    }
    pub fn omega(&self, k: usize) -> f64 {
        self.omega[k - 1]
    }

    /// Band structure of mode `k`, present for momentum-dependent modes.
    pub fn band_structure(&self, k: usize) -> Option<&BandStructure> {
        self.bands[k - 1].as_ref()
    }

    fn row(&self, n: i64) -> usize {
        reduce_momentum(n, self.params.n()).unsigned_abs() as usize
    }

    fn check_alpha(&self, alpha: usize) {
        assert!(
            alpha <= self.alpha_max,
            "level {alpha} beyond alpha_max {}",
            self.alpha_max
        );
    }

    /// `ν_α` of mode `k` at label `n`.
    pub fn nu(&self, k: usize, n: i64, alpha: usize) -> f64 {
        self.check_alpha(alpha);
        let col = &self.columns[k - 1];
        if col.nu.is_empty() {
            alpha as f64
        } else {
            col.nu[self.row(n)][alpha]
        }
    }

    pub fn mode_energy(&self, k: usize, n: i64, alpha: usize) -> ModeEnergy {
        let nu = self.nu(k, n, alpha);
        ModeEnergy {
            energy: (nu + 0.5) * HBAR * self.omega(k),
            delta: nu - alpha as f64,
        }
    }

    /// `ε(n, α) = Σ_k ε_k(n, α)`, J.
    pub fn eps(&self, n: i64, alpha: usize) -> f64 {
        self.check_alpha(alpha);
        self.total[self.row(n)][alpha]
    }

    /// `E(n, α) = n²ħ²/(2mNR²) + ε(n, α)`, J.
    pub fn energy(&self, n: i64, alpha: usize) -> f64 {
        self.params.kinetic_energy(n) + self.eps(n, alpha)
    }

    /// Qubit splitting `ΔE(n) = ε₁(n, 1) − ε₁(n, 0)`, J.
    pub fn delta_e(&self, n: i64) -> f64 {
        self.mode_energy(1, n, 1).energy - self.mode_energy(1, n, 0).energy
    }

    /// `Σ_k δ_k(n, 0)ħω_k`, J.
    pub fn ground_shift(&self, n: i64) -> f64 {
        self.ground[self.row(n)]
    }

    /// `E(n, 0) − E(0, 0)`, formed without the zero-point energies.
    pub fn ground_excess(&self, n: i64) -> f64 {
        self.params.kinetic_energy(n) + (self.ground[self.row(n)] - self.ground[0])
    }

    /// A copy whose `ε_k` no longer depends on `n`: every mode keeps its
    /// `n = 0` levels.
    pub fn frozen(&self) -> Self {
        let mut out = self.clone();
        for col in &mut out.columns {
            if let Some(first) = col.nu.first().cloned() {
                for row in &mut col.nu {
                    *row = first.clone();
                }
            }
        }
        let first = out.total[0].clone();
        for row in &mut out.total {
            *row = first.clone();
        }
        let g0 = out.ground[0];
        out.ground.iter_mut().for_each(|g| *g = g0);
        out
    }
}

/// Assembles the thin spectrum, caching mode levels by folded Bloch phase.
pub fn assemble_thin_spectrum(
    params: &RingParams,
    n_max: i64,
    alpha_max: usize,
    cfg: &SolverConfig,
) -> Result<ThinSpectrum> {
    assemble(params, n_max, alpha_max, cfg, true)
}

/// As [`assemble_thin_spectrum`], solving every `(k, n)` independently.
pub fn assemble_thin_spectrum_uncached(
    params: &RingParams,
    n_max: i64,
    alpha_max: usize,
    cfg: &SolverConfig,
) -> Result<ThinSpectrum> {
    assemble(params, n_max, alpha_max, cfg, false)
}

fn assemble(
    params: &RingParams,
    n_max: i64,
    alpha_max: usize,
    cfg: &SolverConfig,
    cached: bool,
) -> Result<ThinSpectrum> {
    if n_max < 1 {
        return Err(invalid("n_max", format!("must be at least 1, got {n_max}")));
    }
    if alpha_max < 1 {
        return Err(invalid(
            "alpha_max",
            format!("must be at least 1, got {alpha_max}"),
        ));
    }
    cfg.validate()?;
    let modes = ModeTable::new(params);
    let rows = params.n() / 2 + 1;

    let solved: Vec<(ModeColumn, Option<BandStructure>)> = (1..=modes.n_modes())
        .into_par_iter()
        .map(|k| solve_column(&modes, k, rows, alpha_max, cfg, cached))
        .collect::<Result<_>>()?;

    let omega = modes.omegas().to_vec();
    let mut total = vec![vec![0.0; alpha_max + 1]; rows];
    for (r, row) in total.iter_mut().enumerate() {
        for (alpha, cell) in row.iter_mut().enumerate() {
            let mut sum = CompensatedSum::new();
            for (k, (col, _)) in solved.iter().enumerate() {
                let nu = if col.nu.is_empty() {
                    alpha as f64
                } else {
                    col.nu[r][alpha]
                };
                sum.add((nu + 0.5) * HBAR * omega[k]);
            }
            *cell = sum.value();
        }
    }
    let ground = (0..rows)
        .map(|r| {
            let mut sum = CompensatedSum::new();
            for (k, (col, _)) in solved.iter().enumerate() {
                if !col.nu.is_empty() {
                    sum.add(col.nu[r][0] * HBAR * omega[k]);
                }
            }
            sum.value()
        })
        .collect();
    let (columns, bands) = solved.into_iter().unzip();
    Ok(ThinSpectrum {
        params: *params,
        n_max,
        alpha_max,
        omega,
        columns,
        bands,
        total,
        ground,
    })
}

fn solve_column(
    modes: &ModeTable,
    k: usize,
    rows: usize,
    alpha_max: usize,
    cfg: &SolverConfig,
    cached: bool,
) -> Result<(ModeColumn, Option<BandStructure>)> {
    if !modes.is_twisted(k) {
        return Ok((ModeColumn { nu: Vec::new() }, None));
    }
    let wrap = |theta: f64, e: Error| Error::ModeSolve {
        k,
        theta,
        source: Box::new(e),
    };
    let lambda = modes.lambda(k);
    let bands = BandStructure::compute(lambda, alpha_max + 1, cfg).map_err(|e| wrap(0.0, e))?;
    let mut cache: HashMap<u64, Vec<f64>> = HashMap::new();
    let mut nu = Vec::with_capacity(rows);
    for r in 0..rows {
        let theta = modes.twist(k, r as i64);
        let levels = if cached {
            if let Some(v) = cache.get(&theta.to_bits()) {
                v.clone()
            } else {
                let v = bands.levels(theta).map_err(|e| wrap(theta, e))?.nu;
                cache.insert(theta.to_bits(), v.clone());
                v
            }
        } else {
            bands.levels(theta).map_err(|e| wrap(theta, e))?.nu
        };
        nu.push(levels);
    }
    Ok((ModeColumn { nu }, Some(bands)))
}
