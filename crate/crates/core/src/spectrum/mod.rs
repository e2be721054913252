//! Mode levels under twisted boundary conditions and the assembled thin
//! spectrum.

mod bands;
mod cell;
mod linear;
mod oracle;
mod thin;

pub use bands::{
    solve_mode_levels, BandEdge, BandStructure, EdgeKind, ModeEigenProblem, ModeLevels,
};
pub use cell::{eigencondition, CellValues};
pub use linear::{expansion_branch, linearize, ratio_and_slope, LinearizedCoeffs};
pub use oracle::{fd_bloch_oracle, fd_bloch_reference, OracleReference};
pub use thin::{assemble_thin_spectrum, assemble_thin_spectrum_uncached, ModeEnergy, ThinSpectrum};
