//! Fourier multipliers: diagonal operators m(κ) acting mode by mode.
//!
//! All differential and exponential operators used by the schemes are
//! multipliers.  The regularized operator ⟨∂x²⟩_c = √(∂x⁴ − ∂x² + c) acts as
//! b(κ) = √(c + κ² + κ⁴); the bounded difference A = ∂x² + ⟨∂x²⟩_c acts as
//! A(κ) = b(κ) − κ², with 0 < A(κ) ≤ max{1, c}.
//!
//! Antiderivative multipliers drop the zero mode (there is nothing to invert
//! there; the schemes account for it with explicit resonance terms), and the
//! odd-symmetry first antiderivative also drops the unpaired Nyquist mode so
//! that real data stays real.

use std::sync::Arc;

use num_complex::Complex64;

use crate::spectral::grid::Grid;
use crate::spectral::psi::{psi1, psi2};

/// b(κ) = √(c + κ² + κ⁴), the symbol of ⟨∂x²⟩_c.
pub fn bracket_c(kappa: f64, c: f64) -> f64 {
    (c + kappa * kappa + kappa.powi(4)).sqrt()
}

/// A(κ) = √(c + κ² + κ⁴) − κ², evaluated in the cancellation-free form
/// (c + κ²)/(b(κ) + κ²).  Satisfies 0 < A(κ) ≤ max{1, c}.
pub fn a_multiplier(kappa: f64, c: f64) -> f64 {
    let k2 = kappa * kappa;
    (c + k2) / (bracket_c(kappa, c) + k2)
}

#[derive(Clone, Debug)]
pub struct Multiplier {
    grid: Arc<Grid>,
    factors: Vec<Complex64>,
}

impl Multiplier {
    /// Builds a multiplier from its symbol, given (integer k, scaled κ).
    pub fn from_fn(grid: &Arc<Grid>, f: impl Fn(i64, f64) -> Complex64) -> Self {
        let factors = grid
            .k()
            .iter()
            .zip(grid.kappa())
            .map(|(&k, &kappa)| f(k, kappa))
            .collect();
        Multiplier { grid: grid.clone(), factors }
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn factors(&self) -> &[Complex64] {
        &self.factors
    }

    /// Pointwise composition (this ∘ other).
    pub fn compose(&self, other: &Multiplier) -> Multiplier {
        assert!(self.grid.same_as(&other.grid), "multiplier grid mismatch");
        let factors = self
            .factors
            .iter()
            .zip(&other.factors)
            .map(|(&a, &b)| a * b)
            .collect();
        Multiplier { grid: self.grid.clone(), factors }
    }

    pub fn scaled(&self, a: Complex64) -> Multiplier {
        let factors = self.factors.iter().map(|&f| f * a).collect();
        Multiplier { grid: self.grid.clone(), factors }
    }

    pub fn identity(grid: &Arc<Grid>) -> Self {
        Self::from_fn(grid, |_, _| Complex64::new(1.0, 0.0))
    }

    /// ∂x²: −κ².
    pub fn dx2(grid: &Arc<Grid>) -> Self {
        Self::from_fn(grid, |_, kappa| Complex64::new(-kappa * kappa, 0.0))
    }

    /// ∂x⁻¹: 1/(iκ) away from k = 0; zero at k = 0 and at the unpaired
    /// Nyquist mode (odd symbol, realness hygiene).
    pub fn dx_inv(grid: &Arc<Grid>) -> Self {
        let nyq = -(grid.m() as i64) / 2;
        Self::from_fn(grid, |k, kappa| {
            if k == 0 || k == nyq {
                Complex64::new(0.0, 0.0)
            } else {
                Complex64::new(0.0, -1.0 / kappa)
            }
        })
    }

    /// ∂x⁻²: −1/κ² away from k = 0, zero at k = 0.  Even symbol, so the
    /// Nyquist mode is kept.
    pub fn dx_inv2(grid: &Arc<Grid>) -> Self {
        Self::from_fn(grid, |k, kappa| {
            if k == 0 {
                Complex64::new(0.0, 0.0)
            } else {
                Complex64::new(-1.0 / (kappa * kappa), 0.0)
            }
        })
    }

    /// ⟨∂x²⟩_c.
    pub fn bracket(grid: &Arc<Grid>, c: f64) -> Self {
        Self::from_fn(grid, |_, kappa| Complex64::new(bracket_c(kappa, c), 0.0))
    }

    /// ⟨∂x²⟩_c⁻¹ (bounded by 1/√c).
    pub fn bracket_inv(grid: &Arc<Grid>, c: f64) -> Self {
        Self::from_fn(grid, |_, kappa| Complex64::new(1.0 / bracket_c(kappa, c), 0.0))
    }

    /// A = ∂x² + ⟨∂x²⟩_c.
    pub fn a_op(grid: &Arc<Grid>, c: f64) -> Self {
        Self::from_fn(grid, |_, kappa| Complex64::new(a_multiplier(kappa, c), 0.0))
    }

    /// e^{it∂x²}: e^{−itκ²}.
    pub fn exp_lap(grid: &Arc<Grid>, t: f64) -> Self {
        Self::from_fn(grid, |_, kappa| Complex64::new(0.0, -t * kappa * kappa).exp())
    }

    /// e^{it⟨∂x²⟩_c}.
    pub fn exp_bracket(grid: &Arc<Grid>, t: f64, c: f64) -> Self {
        Self::from_fn(grid, |_, kappa| Complex64::new(0.0, t * bracket_c(kappa, c)).exp())
    }

    /// e^{itA}.
    pub fn exp_a(grid: &Arc<Grid>, t: f64, c: f64) -> Self {
        Self::from_fn(grid, |_, kappa| Complex64::new(0.0, t * a_multiplier(kappa, c)).exp())
    }

    /// ψ₁(2iτ∂x²), i.e. ψ₁ evaluated at −2iτκ².
    pub fn psi1_two_lap(grid: &Arc<Grid>, tau: f64) -> Self {
        Self::from_fn(grid, |_, kappa| psi1(Complex64::new(0.0, -2.0 * tau * kappa * kappa)))
    }

    /// ψ₂(2iτ∂x²).
    pub fn psi2_two_lap(grid: &Arc<Grid>, tau: f64) -> Self {
        Self::from_fn(grid, |_, kappa| psi2(Complex64::new(0.0, -2.0 * tau * kappa * kappa)))
    }
}
