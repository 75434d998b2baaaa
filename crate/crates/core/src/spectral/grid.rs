//! Uniform periodic grid on (−L, L) with shared FFT plans.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use rustfft::{Fft, FftPlanner};

use crate::error::Error;

/// Collocation grid for the torus (−L, L) discretized with M equispaced
/// points x_j = −L + 2Lj/M, j = 0..M−1.
///
/// Wavenumbers are stored in FFT order: index m holds the integer mode
/// k = m for m < M/2 and k = m − M otherwise, together with the scaled value
/// κ_k = πk/L that all differential multipliers are built from.  The grid
/// owns the forward/inverse FFT plans so every field on it reuses them.
pub struct Grid {
    m: usize,
    l: f64,
    x: Vec<f64>,
    k: Vec<i64>,
    kappa: Vec<f64>,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
}

impl Grid {
    /// Builds a grid with M points (even, ≥ 4) on (−L, L), L > 0.
    pub fn new(m: usize, l: f64) -> Result<Arc<Grid>, Error> {
        if m < 4 || m % 2 != 0 {
            return Err(Error::invalid("M", format!("must be even and ≥ 4, got {m}")));
        }
        if !(l.is_finite() && l > 0.0) {
            return Err(Error::invalid("L", format!("must be positive and finite, got {l}")));
        }
        let x = (0..m).map(|j| -l + 2.0 * l * j as f64 / m as f64).collect();
        let k: Vec<i64> = (0..m)
            .map(|idx| if idx < m / 2 { idx as i64 } else { idx as i64 - m as i64 })
            .collect();
        let kappa = k.iter().map(|&k| PI * k as f64 / l).collect();
        let mut planner = FftPlanner::new();
        let fwd = planner.plan_fft_forward(m);
        let inv = planner.plan_fft_inverse(m);
        Ok(Arc::new(Grid { m, l, x, k, kappa, fwd, inv }))
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn l(&self) -> f64 {
        self.l
    }

    /// Collocation points in physical order.
    pub fn x(&self) -> &[f64] {
        &self.x
    }

    /// Integer wavenumbers in FFT storage order.
    pub fn k(&self) -> &[i64] {
        &self.k
    }

    /// Scaled wavenumbers κ_k = πk/L in FFT storage order.
    pub fn kappa(&self) -> &[f64] {
        &self.kappa
    }

    /// Storage index of integer mode k (k may be any representative mod M).
    pub fn index_of(&self, k: i64) -> usize {
        k.rem_euclid(self.m as i64) as usize
    }

    /// Storage index of the unpaired Nyquist mode k = −M/2.
    pub fn nyquist_index(&self) -> usize {
        self.m / 2
    }

    pub(crate) fn fft_forward(&self) -> &Arc<dyn Fft<f64>> {
        &self.fwd
    }

    pub(crate) fn fft_inverse(&self) -> &Arc<dyn Fft<f64>> {
        &self.inv
    }

    /// Grids are interchangeable iff they share M and L.
    pub fn same_as(&self, other: &Grid) -> bool {
        self.m == other.m && self.l == other.l
    }
}

impl fmt::Debug for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Grid").field("m", &self.m).field("l", &self.l).finish()
    }
}
