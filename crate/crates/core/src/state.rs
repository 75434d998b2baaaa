//! Problem state: the real pair (z, z_t) and its complex one-field form.
//!
//! With ⟨∂x²⟩_c = √(∂x⁴ − ∂x² + c) the substitution
//!
//! ```text
//!     u = z − i⟨∂x²⟩_c⁻¹ z_t
//! ```
//!
//! turns the second-order equation into a first-order system for u alone;
//! real data corresponds to recovering z and z_t through
//!
//! ```text
//!     z = (u + ū)/2,    z_t = (i/2)⟨∂x²⟩_c (u − ū),
//! ```
//!
//! which produces conjugate-symmetric coefficients exactly, by construction.

use num_complex::Complex64;

use crate::error::Error;
use crate::spectral::{Multiplier, SpectralField};

/// Parameters shared by the exponential schemes: the regularization constant
/// c > 0, the step size τ > 0, and the dealiasing switch for products.
#[derive(Clone, Copy, Debug)]
pub struct SchemeParams {
    pub c: f64,
    pub tau: f64,
    pub dealias: bool,
}

impl SchemeParams {
    pub fn validate(&self) -> Result<(), Error> {
        if !(self.c.is_finite() && self.c > 0.0) {
            return Err(Error::invalid("c", format!("must be positive, got {}", self.c)));
        }
        if !(self.tau.is_finite() && self.tau > 0.0) {
            return Err(Error::invalid("tau", format!("must be positive, got {}", self.tau)));
        }
        Ok(())
    }
}

/// Real solution pair (z, z_t) plus the regularization constant used to form
/// the complex variable.  Realness (conjugate symmetry to 1e−10) and grid
/// agreement are enforced at construction.
#[derive(Clone, Debug)]
pub struct GBState {
    z: SpectralField,
    zt: SpectralField,
    c: f64,
}

/// Realness tolerance applied when states are constructed from the outside.
pub const STATE_REALNESS_TOL: f64 = 1e-10;

impl GBState {
    pub fn new(z: SpectralField, zt: SpectralField, c: f64) -> Result<Self, Error> {
        if !z.grid().same_as(zt.grid()) {
            return Err(Error::invalid("grid", "z and z_t live on different grids"));
        }
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::invalid("c", format!("must be positive, got {c}")));
        }
        if !z.is_real(STATE_REALNESS_TOL) {
            return Err(Error::NonRealField { what: "z", deviation: z.realness_deviation() });
        }
        if !zt.is_real(STATE_REALNESS_TOL) {
            return Err(Error::NonRealField { what: "z_t", deviation: zt.realness_deviation() });
        }
        Ok(GBState { z, zt, c })
    }

    pub fn z(&self) -> &SpectralField {
        &self.z
    }

    pub fn zt(&self) -> &SpectralField {
        &self.zt
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn grid(&self) -> &std::sync::Arc<crate::spectral::Grid> {
        self.z.grid()
    }

    /// Same physical pair under a different transform shift.
    pub fn with_c(&self, c: f64) -> Result<Self, Error> {
        GBState::new(self.z.clone(), self.zt.clone(), c)
    }
}

/// The complex variable u together with its c and the current time.
#[derive(Clone, Debug)]
pub struct ComplexState {
    u: SpectralField,
    c: f64,
    t: f64,
}

impl ComplexState {
    pub fn new(u: SpectralField, c: f64, t: f64) -> Result<Self, Error> {
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::invalid("c", format!("must be positive, got {c}")));
        }
        Ok(ComplexState { u, c, t })
    }

    pub fn u(&self) -> &SpectralField {
        &self.u
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn t(&self) -> f64 {
        self.t
    }
}

/// u = z − i⟨∂x²⟩_c⁻¹ z_t.
pub fn to_u(s: &GBState) -> ComplexState {
    let binv = Multiplier::bracket_inv(s.grid(), s.c);
    let u = &s.z - &s.zt.apply(&binv).scale(Complex64::new(0.0, 1.0));
    ComplexState { u, c: s.c, t: 0.0 }
}

/// z = (u + ū)/2, z_t = (i/2)⟨∂x²⟩_c(u − ū).  The reconstruction is
/// conjugate-symmetric exactly, so validation in `GBState::new` only guards
/// against implementation errors.
pub fn from_u(cs: &ComplexState) -> Result<GBState, Error> {
    let ubar = cs.u.conj_field();
    let z = (&cs.u + &ubar).scale(Complex64::new(0.5, 0.0));
    let b = Multiplier::bracket(cs.u.grid(), cs.c);
    let zt = (&cs.u - &ubar).apply(&b).scale(Complex64::new(0.0, 0.5));
    GBState::new(z, zt, cs.c)
}
