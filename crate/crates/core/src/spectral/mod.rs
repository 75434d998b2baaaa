//! Fourier pseudospectral substrate: grids, fields, multipliers and the
//! entire functions ψ₁, ψ₂.

pub mod field;
pub mod grid;
pub mod multiplier;
pub mod psi;

pub use field::SpectralField;
pub use grid::Grid;
pub use multiplier::{a_multiplier, bracket_c, Multiplier};
pub use psi::{psi1, psi2, sinc};
