//! Band edges and Bloch levels of the periodically continued oscillator.
//!
//! Writing the eigencondition as `G(ν) = (D(ν) − cos θ)/2`, with `D` the Hill
//! discriminant, each level `ν_α(θ)` lives in band `α` bounded by one
//! periodic (`D = 1`) and one antiperiodic (`D = −1`) edge. The edges are the
//! simple zeros of `f_e′, f_o` and `f_e, f_o′` at the cell boundary, so they
//! can be bracketed one function at a time.

use serde::{Deserialize, Serialize};

use super::cell::CellValues;
use crate::config::SolverConfig;
use crate::error::{invalid, Error, Result};
use crate::model::fold_phase;
use crate::specfun::SeriesControl;

const NU_START: f64 = -0.5;
const NU_CAP: f64 = 1e4;

/// One mode's oscillator on a cell of size `λ` with Bloch phase `θ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeEigenProblem {
    pub lambda: f64,
    pub theta: f64,
    pub omega: f64,
}

impl ModeEigenProblem {
    pub fn new(lambda: f64, theta: f64, omega: f64) -> Self {
        Self {
            lambda,
            theta,
            omega,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModeLevels {
    pub nu: Vec<f64>,
    pub residuals: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EdgeKind {
    Periodic,
    Antiperiodic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BandEdge {
    pub nu: f64,
    pub kind: EdgeKind,
}

/// Band edges for a fixed cell size; levels at any phase are then found by
/// bisection inside a single band.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandStructure {
    lambda: f64,
    edges: Vec<BandEdge>,
    ctrl: SeriesControl,
    nu_tol: f64,
    harmonic: bool,
}

#[derive(Clone, Copy)]
enum EdgeFn {
    EvenValue,
    EvenSlope,
    OddValue,
    OddSlope,
}

impl EdgeFn {
    const ALL: [EdgeFn; 4] = [
        EdgeFn::EvenSlope,
        EdgeFn::OddValue,
        EdgeFn::EvenValue,
        EdgeFn::OddSlope,
    ];

    fn eval(self, v: &CellValues) -> f64 {
        match self {
            EdgeFn::EvenValue => v.fe,
            EdgeFn::EvenSlope => v.fe_d,
            EdgeFn::OddValue => v.fo,
            EdgeFn::OddSlope => v.fo_d,
        }
    }

    fn kind(self) -> EdgeKind {
        match self {
            EdgeFn::EvenSlope | EdgeFn::OddValue => EdgeKind::Periodic,
            EdgeFn::EvenValue | EdgeFn::OddSlope => EdgeKind::Antiperiodic,
        }
    }
}

fn sign(x: f64) -> i8 {
    if x > 0.0 {
        1
    } else if x < 0.0 {
        -1
    } else {
        0
    }
}

impl BandStructure {
    /// Brackets and refines the edges of the lowest `bands` bands.
    pub fn compute(lambda: f64, bands: usize, cfg: &SolverConfig) -> Result<Self> {
        if !(lambda >= cfg.lambda_min) || !lambda.is_finite() {
            return Err(invalid(
                "lambda",
                format!(
                    "cell size {lambda} is below the solver minimum {}",
                    cfg.lambda_min
                ),
            ));
        }
        if bands == 0 {
            return Err(invalid("alpha_max", "at least one band is required"));
        }
        let ctrl = cfg.series();
        if lambda > cfg.lambda_harmonic {
            let edges = (0..bands)
                .flat_map(|a| {
                    let nu = a as f64;
                    [
                        BandEdge {
                            nu,
                            kind: EdgeKind::Periodic,
                        },
                        BandEdge {
                            nu,
                            kind: EdgeKind::Antiperiodic,
                        },
                    ]
                })
                .collect();
            return Ok(Self {
                lambda,
                edges,
                ctrl,
                nu_tol: cfg.nu_tol,
                harmonic: true,
            });
        }
        let needed = 2 * bands;
        let mut edges: Vec<BandEdge> = Vec::with_capacity(needed + 4);
        let mut nu = NU_START;
        let mut prev = CellValues::at(lambda, nu, &ctrl)?;
        while edges.len() < needed {
            if nu > NU_CAP {
                return Err(Error::MissingLevels {
                    lambda,
                    theta: f64::NAN,
                    requested: bands,
                    found: edges.iter().map(|e| e.nu).collect(),
                });
            }
            let next_nu = nu + cfg.scan_step * nu.abs().max(1.0);
            let next = CellValues::at(lambda, next_nu, &ctrl)?;
            for f in EdgeFn::ALL {
                let (a, b) = (f.eval(&prev), f.eval(&next));
                let (sa, sb) = (sign(a), sign(b));
                if sa == 0 && nu == NU_START {
                    edges.push(BandEdge { nu, kind: f.kind() });
                }
                if sb == 0 {
                    edges.push(BandEdge {
                        nu: next_nu,
                        kind: f.kind(),
                    });
                } else if sa != 0 && sa != sb {
                    let root = refine(lambda, f, nu, next_nu, sa, &ctrl, cfg.nu_tol)?;
                    edges.push(BandEdge {
                        nu: root,
                        kind: f.kind(),
                    });
                }
            }
            nu = next_nu;
            prev = next;
        }
        edges.sort_by(|a, b| a.nu.total_cmp(&b.nu));
        edges.truncate(needed);
        for (alpha, pair) in edges.chunks(2).enumerate() {
            if pair[0].kind == pair[1].kind {
                return Err(Error::AmbiguousBracket {
                    lambda,
                    theta: f64::NAN,
                    lo: pair[0].nu,
                    hi: pair[1].nu,
                    reason: format!("band {alpha} has two edges of the same kind"),
                });
            }
        }
        Ok(Self {
            lambda,
            edges,
            ctrl,
            nu_tol: cfg.nu_tol,
            harmonic: false,
        })
    }

    /// Whether the levels were taken as those of the free oscillator.
    pub fn is_harmonic(&self) -> bool {
        self.harmonic
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn bands(&self) -> usize {
        self.edges.len() / 2
    }

    pub fn edges(&self) -> &[BandEdge] {
        &self.edges
    }

    /// Level of band `alpha` at Bloch phase `theta`.
    pub fn level(&self, alpha: usize, theta: f64) -> Result<f64> {
        if alpha >= self.bands() {
            return Err(Error::MissingLevels {
                lambda: self.lambda,
                theta,
                requested: alpha + 1,
                found: self.edges.iter().map(|e| e.nu).collect(),
            });
        }
        let theta = fold_phase(theta);
        let (e0, e1) = (self.edges[2 * alpha], self.edges[2 * alpha + 1]);
        let (per, anti) = match e0.kind {
            EdgeKind::Periodic => (e0.nu, e1.nu),
            EdgeKind::Antiperiodic => (e1.nu, e0.nu),
        };
        if theta == 0.0 {
            return Ok(per);
        }
        if theta == std::f64::consts::PI {
            return Ok(anti);
        }
        // G ≥ 0 at the periodic edge and ≤ 0 at the antiperiodic one.
        let (mut pos, mut neg) = (per, anti);
        while (pos - neg).abs() > self.nu_tol {
            let mid = 0.5 * (pos + neg);
            if mid == pos || mid == neg {
                break;
            }
            let g = CellValues::at(self.lambda, mid, &self.ctrl)?.condition(theta);
            if g > 0.0 {
                pos = mid;
            } else if g < 0.0 {
                neg = mid;
            } else {
                return Ok(mid);
            }
        }
        Ok(0.5 * (pos + neg))
    }

    pub fn levels(&self, theta: f64) -> Result<ModeLevels> {
        let mut nu = Vec::with_capacity(self.bands());
        let mut residuals = Vec::with_capacity(self.bands());
        for alpha in 0..self.bands() {
            let v = self.level(alpha, theta)?;
            let residual = if self.harmonic {
                0.0
            } else {
                CellValues::at(self.lambda, v, &self.ctrl)?
                    .condition(theta)
                    .abs()
            };
            residuals.push(residual);
            nu.push(v);
        }
        Ok(ModeLevels { nu, residuals })
    }

    pub fn cell(&self, nu: f64) -> Result<CellValues> {
        CellValues::at(self.lambda, nu, &self.ctrl)
    }
}

fn refine(
    lambda: f64,
    f: EdgeFn,
    mut lo: f64,
    mut hi: f64,
    sign_lo: i8,
    ctrl: &SeriesControl,
    tol: f64,
) -> Result<f64> {
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        let s = sign(f.eval(&CellValues::at(lambda, mid, ctrl)?));
        if s == 0 {
            return Ok(mid);
        }
        if s == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Lowest `alpha_max + 1` levels of one mode.
pub fn solve_mode_levels(
    prob: &ModeEigenProblem,
    alpha_max: usize,
    cfg: &SolverConfig,
) -> Result<ModeLevels> {
    let bands = BandStructure::compute(prob.lambda, alpha_max + 1, cfg)?;
    bands.levels(prob.theta).map_err(|e| match e {
        Error::MissingLevels {
            lambda,
            requested,
            found,
            ..
        } => Error::MissingLevels {
            lambda,
            theta: prob.theta,
            requested,
            found,
        },
        other => other,
    })
}
