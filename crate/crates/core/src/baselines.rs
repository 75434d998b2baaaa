//! Classical trigonometric integrators applied mode-wise to the second-order
//! equation z_tt = −z_xxxx + z_xx + (z²)_xx, used as comparison schemes.
//!
//! Per Fourier mode the equation is ẑ'' = −ω²ẑ + ĝ(z) with ω = √(κ⁴ + κ²)
//! and g(z) = ∂x²(z²).  Freezing g over the step and integrating the forced
//! oscillator exactly gives the Gautschi-type one-force update; evaluating
//! the force at both endpoints gives the symmetric Deuflhard-type update.
//! Both are exact on the linear problem; neither sees the low-regularity
//! resonances the exponential schemes integrate exactly, which is what the
//! order-reduction experiments exhibit.

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::Error;
use crate::spectral::{sinc, Grid, Multiplier, SpectralField};
use crate::state::GBState;

fn omega(kappa: f64) -> f64 {
    kappa.abs() * (1.0 + kappa * kappa).sqrt()
}

fn real_table(grid: &Arc<Grid>, f: impl Fn(f64) -> f64) -> Multiplier {
    Multiplier::from_fn(grid, |_, kappa| Complex64::new(f(omega(kappa)), 0.0))
}

fn check_tau(tau: f64) -> Result<(), Error> {
    if !tau.is_finite() {
        return Err(Error::invalid("tau", format!("must be finite, got {tau}")));
    }
    Ok(())
}

/// One-force trigonometric update (first order on the nonlinear problem):
///   ẑ⁺  = cos(τω) ẑ + τ sinc(τω) ẑ_t + (τ²/2) sinc²(τω/2) ĝ(z)
///   ẑ_t⁺ = −ω sin(τω) ẑ + cos(τω) ẑ_t + τ sinc(τω) ĝ(z)
pub struct Gautschi {
    dealias: bool,
    forced: bool,
    cos_t: Multiplier,   // cos(τω)
    tsinc: Multiplier,   // τ sinc(τω)
    wsin: Multiplier,    // ω sin(τω)
    kick_z: Multiplier,  // (τ²/2) sinc²(τω/2) ∂x², applied to z²
    kick_zt: Multiplier, // τ sinc(τω) ∂x², applied to z²
}

impl Gautschi {
    pub fn new(grid: &Arc<Grid>, tau: f64, dealias: bool) -> Result<Self, Error> {
        check_tau(tau)?;
        let dx2 = Multiplier::dx2(grid);
        let tsinc = real_table(grid, |w| tau * sinc(tau * w));
        Ok(Gautschi {
            dealias,
            forced: true,
            cos_t: real_table(grid, |w| (tau * w).cos()),
            wsin: real_table(grid, |w| w * (tau * w).sin()),
            kick_z: real_table(grid, |w| {
                let s = sinc(0.5 * tau * w);
                0.5 * tau * tau * s * s
            })
            .compose(&dx2),
            kick_zt: tsinc.compose(&dx2),
            tsinc,
        })
    }

    pub fn step_fields(&self, z: &SpectralField, zt: &SpectralField) -> (SpectralField, SpectralField) {
        let mut z_new = &z.apply(&self.cos_t) + &zt.apply(&self.tsinc);
        let mut zt_new = &zt.apply(&self.cos_t) - &z.apply(&self.wsin);
        if self.forced {
            let z2 = z.product(z, self.dealias);
            z_new += &z2.apply(&self.kick_z);
            zt_new += &z2.apply(&self.kick_zt);
        }
        (z_new, zt_new)
    }
}

/// Two-force symmetric trigonometric update (second order on smooth data):
///   ẑ⁺  = cos(τω) ẑ + τ sinc(τω) ẑ_t + (τ²/2) sinc(τω) ĝ(z)
///   ẑ_t⁺ = −ω sin(τω) ẑ + cos(τω) ẑ_t + (τ/2)[cos(τω) ĝ(z) + ĝ(z⁺)]
pub struct Deuflhard {
    dealias: bool,
    forced: bool,
    cos_t: Multiplier,
    tsinc: Multiplier,
    wsin: Multiplier,
    kick_z: Multiplier,    // (τ²/2) sinc(τω) ∂x²
    kick_old: Multiplier,  // (τ/2) cos(τω) ∂x²
    kick_new: Multiplier,  // (τ/2) ∂x²
}

impl Deuflhard {
    pub fn new(grid: &Arc<Grid>, tau: f64, dealias: bool) -> Result<Self, Error> {
        check_tau(tau)?;
        let dx2 = Multiplier::dx2(grid);
        Ok(Deuflhard {
            dealias,
            forced: true,
            cos_t: real_table(grid, |w| (tau * w).cos()),
            tsinc: real_table(grid, |w| tau * sinc(tau * w)),
            wsin: real_table(grid, |w| w * (tau * w).sin()),
            kick_z: real_table(grid, |w| 0.5 * tau * tau * sinc(tau * w)).compose(&dx2),
            kick_old: real_table(grid, |w| 0.5 * tau * (tau * w).cos()).compose(&dx2),
            kick_new: dx2.scaled(Complex64::new(0.5 * tau, 0.0)),
        })
    }

    pub fn step_fields(&self, z: &SpectralField, zt: &SpectralField) -> (SpectralField, SpectralField) {
        let mut z_new = &z.apply(&self.cos_t) + &zt.apply(&self.tsinc);
        let mut zt_new = &zt.apply(&self.cos_t) - &z.apply(&self.wsin);
        if self.forced {
            let z2 = z.product(z, self.dealias);
            z_new += &z2.apply(&self.kick_z);
            let z2_new = z_new.product(&z_new, self.dealias);
            zt_new += &z2.apply(&self.kick_old);
            zt_new += &z2_new.apply(&self.kick_new);
        }
        (z_new, zt_new)
    }
}

fn wrap_state(z: SpectralField, zt: SpectralField, c: f64) -> Result<GBState, Error> {
    if !(z.all_finite() && zt.all_finite()) {
        return Err(Error::NonFinite { what: "trigonometric scheme step" });
    }
    // Project off the conjugate-asymmetric FFT noise before validating.
    GBState::new(z.symmetrized(), zt.symmetrized(), c)
}

pub fn gautschi_step(s: &GBState, tau: f64) -> Result<GBState, Error> {
    let scheme = Gautschi::new(s.grid(), tau, false)?;
    let (z, zt) = scheme.step_fields(s.z(), s.zt());
    wrap_state(z, zt, s.c())
}

pub fn deuflhard_step(s: &GBState, tau: f64) -> Result<GBState, Error> {
    let scheme = Deuflhard::new(s.grid(), tau, false)?;
    let (z, zt) = scheme.step_fields(s.z(), s.zt());
    wrap_state(z, zt, s.c())
}
