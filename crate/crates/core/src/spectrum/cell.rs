//! Even/odd Kummer solutions of the mode oscillator on one cell, in the
//! dimensionless coordinate `s = ξX` with energy `(ν + ½)ħω`.

use crate::error::Result;
use crate::specfun::{kummer_1f1, kummer_1f1_dz, SeriesControl};

/// Values and `s`-derivatives of the even and odd solutions at the cell
/// boundary `s = λ/2`. Both are normalized so that their Wronskian is 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellValues {
    pub fe: f64,
    pub fe_d: f64,
    pub fo: f64,
    pub fo_d: f64,
}

impl CellValues {
    pub fn at(lambda: f64, nu: f64, ctrl: &SeriesControl) -> Result<Self> {
        let s = 0.5 * lambda;
        let z = s * s;
        let damp = (-0.5 * z).exp();
        let a_e = -0.5 * nu;
        let a_o = 0.5 * (1.0 - nu);
        let me = kummer_1f1(a_e, 0.5, z, ctrl)?;
        let me_d = kummer_1f1_dz(a_e, 0.5, z, ctrl)?;
        let mo = kummer_1f1(a_o, 1.5, z, ctrl)?;
        let mo_d = kummer_1f1_dz(a_o, 1.5, z, ctrl)?;
        Ok(Self {
            fe: damp * me,
            fe_d: damp * s * (2.0 * me_d - me),
            fo: damp * s * mo,
            fo_d: damp * ((1.0 - z) * mo + 2.0 * z * mo_d),
        })
    }

    /// Hill discriminant `½ tr(monodromy)`; levels satisfy `D = cos θ`.
    pub fn discriminant(&self) -> f64 {
        self.fe * self.fo_d + self.fe_d * self.fo
    }

    pub fn wronskian(&self) -> f64 {
        self.fe * self.fo_d - self.fe_d * self.fo
    }

    /// `f_o f_e′ cos²(θ/2) + f_e f_o′ sin²(θ/2)`.
    pub fn condition(&self, theta: f64) -> f64 {
        let c = (0.5 * theta).cos();
        let s = (0.5 * theta).sin();
        self.fo * self.fe_d * c * c + self.fe * self.fo_d * s * s
    }

    /// `F = f_o f_e′ / (f_e f_o′)`; the condition reads `tan²(θ/2) = −F`.
    pub fn ratio(&self) -> f64 {
        self.fo * self.fe_d / (self.fe * self.fo_d)
    }
}

/// Eigencondition `G(ν)` of a mode with cell size `λ` and Bloch phase `θ`.
pub fn eigencondition(nu: f64, lambda: f64, theta: f64, ctrl: &SeriesControl) -> Result<f64> {
    Ok(CellValues::at(lambda, nu, ctrl)?.condition(theta))
}
