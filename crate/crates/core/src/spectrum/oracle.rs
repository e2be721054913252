//! Finite-difference reference for the mode levels: the twisted boundary
//! condition is traded for a constant vector potential `q` on a periodic
//! grid, `H = (P + ħq)²/2m + mω²X²/2`, with Peierls phases on the links.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::bands::ModeEigenProblem;
use crate::error::{invalid, Error, Result};

const COUNT_TOL: f64 = 1e-13;

/// Lowest `alpha_max + 1` finite-difference levels `ν = ε/ħω − ½`.
pub fn fd_bloch_oracle(
    prob: &ModeEigenProblem,
    alpha_max: usize,
    grid_points: usize,
) -> Result<Vec<f64>> {
    let op = PeriodicOperator::new(prob, grid_points)?;
    (0..=alpha_max)
        .map(|i| op.eigenvalue(i).map(|e| e - 0.5))
        .collect()
}

/// Oracle levels together with the change observed on doubling the grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReference {
    pub lambda: f64,
    pub theta: f64,
    pub grid: usize,
    pub nu: Vec<f64>,
    pub richardson_err: Vec<f64>,
}

pub fn fd_bloch_reference(
    prob: &ModeEigenProblem,
    alpha_max: usize,
    grid_points: usize,
) -> Result<OracleReference> {
    let coarse = fd_bloch_oracle(prob, alpha_max, grid_points)?;
    let fine = fd_bloch_oracle(prob, alpha_max, 2 * grid_points)?;
    let richardson_err = coarse
        .iter()
        .zip(&fine)
        .map(|(a, b)| (a - b).abs())
        .collect();
    Ok(OracleReference {
        lambda: prob.lambda,
        theta: prob.theta,
        grid: grid_points,
        nu: coarse,
        richardson_err,
    })
}

/// Hermitian cyclic tridiagonal matrix in units of `ħω`.
struct PeriodicOperator {
    diag: Vec<f64>,
    /// `A[j][j+1]`, with `A[n−1][0]` stored last.
    off: Vec<Complex64>,
}

impl PeriodicOperator {
    fn new(prob: &ModeEigenProblem, grid_points: usize) -> Result<Self> {
        if grid_points < 512 {
            return Err(invalid(
                "grid_points",
                format!("must be at least 512, got {grid_points}"),
            ));
        }
        if !(prob.lambda > 0.0 && prob.lambda.is_finite()) {
            return Err(invalid(
                "lambda",
                format!("must be positive, got {}", prob.lambda),
            ));
        }
        let n = grid_points;
        let h = prob.lambda / n as f64;
        let potential = prob.theta / prob.lambda;
        let hop = 0.5 / (h * h);
        let link = Complex64::from_polar(hop, potential * h);
        let diag = (0..n)
            .map(|j| {
                let s = -0.5 * prob.lambda + j as f64 * h;
                2.0 * hop + 0.5 * s * s
            })
            .collect();
        let off = vec![-link; n];
        let op = Self { diag, off };
        op.check_hermitian()?;
        Ok(op)
    }

    fn check_hermitian(&self) -> Result<()> {
        if self.diag.iter().all(|d| d.is_finite())
            && self
                .off
                .iter()
                .all(|o| o.re.is_finite() && o.im.is_finite())
        {
            Ok(())
        } else {
            Err(Error::Internal(
                "finite-difference operator has non-finite entries".into(),
            ))
        }
    }

    /// Number of eigenvalues below `sigma`, from the signs of the pivots of
    /// an `LDLᴴ` factorization of `A − σ`.
    fn count_below(&self, sigma: f64) -> usize {
        let n = self.diag.len();
        let last = n - 1;
        let tiny = f64::EPSILON * self.diag[0].abs();
        let mut d: Vec<f64> = self.diag.iter().map(|v| v - sigma).collect();
        // col[j] = A[j][last] during elimination
        let mut col = vec![Complex64::new(0.0, 0.0); last];
        col[0] = self.off[last].conj();
        col[last - 1] += self.off[last - 1];
        let mut negatives = 0;
        for j in 0..last {
            let mut p = d[j];
            if p == 0.0 {
                p = -tiny;
            }
            if p < 0.0 {
                negatives += 1;
            }
            let cj = col[j];
            if j + 1 < last {
                let u = self.off[j];
                d[j + 1] -= u.norm_sqr() / p;
                col[j + 1] -= u.conj() * cj / p;
            }
            d[last] -= cj.norm_sqr() / p;
        }
        if d[last] < 0.0 {
            negatives += 1;
        }
        negatives
    }

    /// `i`-th eigenvalue (0-based) by bisection on the inertia count.
    fn eigenvalue(&self, i: usize) -> Result<f64> {
        let mut lo = 0.0;
        let mut hi = i as f64 + 1.0;
        while self.count_below(hi) <= i {
            hi *= 2.0;
            if hi > 1e12 {
                return Err(Error::Internal("eigenvalue bracket did not close".into()));
            }
        }
        while hi - lo > COUNT_TOL * hi.max(1.0) {
            let mid = 0.5 * (lo + hi);
            if self.count_below(mid) > i {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }
}
