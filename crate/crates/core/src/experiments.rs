//! Initial data, time-stepping drivers, error norms, and convergence studies.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::baselines::{Deuflhard, Gautschi};
use crate::error::Error;
use crate::lri1::Lri1;
use crate::lri2::Lri2;
use crate::spectral::{Grid, SpectralField};
use crate::state::{from_u, to_u, ComplexState, GBState, SchemeParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Lri1,
    Lri2,
    Gautschi,
    Deuflhard,
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Scheme::Lri1 => "lri1",
            Scheme::Lri2 => "lri2",
            Scheme::Gautschi => "gautschi",
            Scheme::Deuflhard => "deuflhard",
        };
        f.write_str(name)
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "lri1" => Ok(Scheme::Lri1),
            "lri2" => Ok(Scheme::Lri2),
            "gautschi" => Ok(Scheme::Gautschi),
            "deuflhard" => Ok(Scheme::Deuflhard),
            other => Err(Error::invalid(
                "scheme",
                format!("unknown scheme {other:?}; expected lri1, lri2, gautschi or deuflhard"),
            )),
        }
    }
}

/// Solitary wave z(x,t) = −(3/2)λ² sech²[(λ/2)(x − vt − x₀)], v = ±√(1−λ²),
/// sampled at time t together with the matching z_t = −v ∂x z.
pub fn solitary_wave(
    grid: &Arc<Grid>,
    t: f64,
    lambda: f64,
    x0: f64,
    sign: f64,
) -> Result<GBState, Error> {
    if !(lambda > 0.0 && lambda <= 1.0) {
        return Err(Error::invalid("lambda", format!("must lie in (0, 1], got {lambda}")));
    }
    if sign.abs() != 1.0 {
        return Err(Error::invalid("sign", format!("direction must be +1 or -1, got {sign}")));
    }
    if !(t.is_finite() && x0.is_finite()) {
        return Err(Error::invalid("t", "time and offset must be finite"));
    }
    let v = sign * (1.0 - lambda * lambda).sqrt();
    let amp = -1.5 * lambda * lambda;
    let profile = move |x: f64| {
        let xi = 0.5 * lambda * (x - v * t - x0);
        let sech = 1.0 / xi.cosh();
        (amp * sech * sech, amp * lambda * v * sech * sech * xi.tanh())
    };
    let z = SpectralField::from_fn_real(grid, |x| profile(x).0);
    let zt = SpectralField::from_fn_real(grid, |x| profile(x).1);
    GBState::new(z, zt, 1.0)
}

/// White uniform samples shaped to |k|^{−θ} in coefficient space (zero at
/// k = 0, integer wavenumbers), real part taken, normalized to unit L² norm.
/// Deterministic in the seed.
pub fn rough_field(grid: &Arc<Grid>, theta: f64, seed: u64) -> Result<SpectralField, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vals: Vec<f64> = (0..grid.m())
        .map(|_| (rng.next_u64() >> 11) as f64 * (1.0 / 9007199254740992.0))
        .collect();
    let mut f = SpectralField::from_real_values(grid, &vals);
    for (coeff, &k) in f.coeffs_mut().iter_mut().zip(grid.k()) {
        *coeff *= if k == 0 { 0.0 } else { (k.unsigned_abs() as f64).powf(-theta) };
    }
    let re: Vec<f64> = f.values().iter().map(|v| v.re).collect();
    let f = SpectralField::from_real_values(grid, &re);
    let n = f.l2_norm();
    if !(n.is_finite() && n > 0.0) {
        return Err(Error::NonFinite { what: "rough initial field" });
    }
    Ok(f.scale(Complex64::new(1.0 / n, 0.0)))
}

/// H^θ-type rough initial state: z from [`rough_field`], z_t = 0.
pub fn rough_initial(grid: &Arc<Grid>, theta: f64, seed: u64) -> Result<GBState, Error> {
    let z = rough_field(grid, theta, seed)?;
    GBState::new(z, SpectralField::zeros(grid), 1.0)
}

/// Variant with a rough velocity as well: z_t is an independent unit-norm
/// H^{θ−2}-type field drawn from seed+1.
pub fn rough_initial_with_zt(grid: &Arc<Grid>, theta: f64, seed: u64) -> Result<GBState, Error> {
    let z = rough_field(grid, theta, seed)?;
    let zt = rough_field(grid, theta - 2.0, seed.wrapping_add(1))?;
    GBState::new(z, zt, 1.0)
}

/// Split error between two states: ‖Δz‖_r and ‖Δz_t‖_{r−2}.
#[derive(Clone, Copy, Debug)]
pub struct ErrorNorm {
    pub z: f64,
    pub zt: f64,
}

impl ErrorNorm {
    pub fn combined(&self) -> f64 {
        self.z + self.zt
    }
}

pub fn error_norm(a: &GBState, b: &GBState, r: f64) -> Result<ErrorNorm, Error> {
    if !a.grid().same_as(b.grid()) {
        return Err(Error::invalid("grid", "states live on different grids"));
    }
    Ok(ErrorNorm {
        z: (a.z() - b.z()).sobolev_norm(r),
        zt: (a.zt() - b.zt()).sobolev_norm(r - 2.0),
    })
}

fn mark_blowup(e: Error, step: usize, tau: f64) -> Error {
    match e {
        Error::NonFinite { .. } => Error::BlowUp { step, time: step as f64 * tau },
        other => other,
    }
}

/// Advance state0 to time T with fixed step p.tau.  T/τ must be an integer
/// number of steps (up to a relative slack of 1e−12 for binary-decimal τ).
/// The exponential schemes run in the complex variable and transform back at
/// the end; the trigonometric schemes step (z, z_t) directly.
pub fn run(scheme: Scheme, state0: &GBState, p: &SchemeParams, t_final: f64) -> Result<GBState, Error> {
    p.validate()?;
    if state0.c() != p.c {
        return Err(Error::invalid(
            "c",
            format!("state carries c={}, scheme params say c={}", state0.c(), p.c),
        ));
    }
    if !(t_final.is_finite() && t_final >= 0.0) {
        return Err(Error::invalid("T", format!("final time must be nonnegative, got {t_final}")));
    }
    let steps_f = t_final / p.tau;
    let steps = steps_f.round();
    if (steps_f - steps).abs() > 1e-12 * steps.max(1.0) {
        return Err(Error::invalid("T", format!("T/tau = {steps_f} is not an integer step count")));
    }
    let n = steps as usize;
    if n == 0 {
        return Ok(state0.clone());
    }
    let grid = state0.grid();

    match scheme {
        Scheme::Lri1 => {
            let stepper = Lri1::new(grid, *p)?;
            let mut u = to_u(state0).u().clone();
            for i in 0..n {
                u = stepper.step(&u).map_err(|e| mark_blowup(e, i + 1, p.tau))?;
            }
            from_u(&ComplexState::new(u, p.c, t_final)?)
        }
        Scheme::Lri2 => {
            let stepper = Lri2::new(grid, *p)?;
            let mut u = to_u(state0).u().clone();
            for i in 0..n {
                u = stepper.step(&u).map_err(|e| mark_blowup(e, i + 1, p.tau))?;
            }
            from_u(&ComplexState::new(u, p.c, t_final)?)
        }
        Scheme::Gautschi => {
            let stepper = Gautschi::new(grid, p.tau, p.dealias)?;
            run_pair(state0, n, p.tau, |z, zt| stepper.step_fields(z, zt))
        }
        Scheme::Deuflhard => {
            let stepper = Deuflhard::new(grid, p.tau, p.dealias)?;
            run_pair(state0, n, p.tau, |z, zt| stepper.step_fields(z, zt))
        }
    }
}

fn run_pair(
    state0: &GBState,
    n: usize,
    tau: f64,
    step: impl Fn(&SpectralField, &SpectralField) -> (SpectralField, SpectralField),
) -> Result<GBState, Error> {
    let (mut z, mut zt) = (state0.z().clone(), state0.zt().clone());
    for i in 0..n {
        (z, zt) = step(&z, &zt);
        if !(z.all_finite() && zt.all_finite()) {
            return Err(Error::BlowUp { step: i + 1, time: (i + 1) as f64 * tau });
        }
        // Keep the pair on the real subspace: the step map commutes with
        // conjugation, but the complex product FFTs shed asymmetric noise
        // that the ω-multipliers amplify by κ² (see symmetrized()).
        z = z.symmetrized();
        zt = zt.symmetrized();
    }
    GBState::new(z, zt, state0.c())
}

/// Reference solution a convergence study measures against.
pub enum Reference {
    /// Known closed-form state at the final time.
    Analytic(GBState),
    /// Run this scheme at τ_ref = min(τ)/100 and treat the result as exact;
    /// the τ_ref vs 2τ_ref difference is kept as an accuracy-floor estimate.
    Fine(Scheme),
}

#[derive(Clone, Debug, Serialize)]
pub struct StudyRow {
    pub tau: f64,
    pub error_z: f64,
    pub error_zt: f64,
    pub combined: f64,
    pub diverged: bool,
    pub real_ok: bool,
    pub saturated: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceRecord {
    pub scheme: Scheme,
    /// z-errors are measured in H^r, z_t-errors in H^{r−2}.
    pub norm_r: f64,
    /// Estimated accuracy floor of the reference (0 when analytic).
    pub ref_error_estimate: f64,
    /// Least-squares slope of ln(error_z) against ln(τ), over rows that
    /// neither diverged nor saturated at the reference floor.
    pub fitted_slope: f64,
    pub r_squared: f64,
    pub rows: Vec<StudyRow>,
}

/// Least-squares slope and R² of ln(e) against ln(τ).  NaN with fewer than
/// two points.
pub fn fit_slope(points: &[(f64, f64)]) -> (f64, f64) {
    if points.len() < 2 {
        return (f64::NAN, f64::NAN);
    }
    let n = points.len() as f64;
    let (xs, ys): (Vec<f64>, Vec<f64>) = points.iter().map(|&(t, e)| (t.ln(), e.ln())).unzip();
    let xm = xs.iter().sum::<f64>() / n;
    let ym = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - xm) * (x - xm)).sum();
    let syy: f64 = ys.iter().map(|y| (y - ym) * (y - ym)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - xm) * (y - ym)).sum();
    let slope = sxy / sxx;
    let r2 = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    (slope, r2)
}

/// Run `scheme` from `initial` for every τ in the (strictly decreasing,
/// length ≥ 3) list, measure against the reference at time T, and fit the
/// convergence order.  Blown-up runs are recorded as diverged rows and left
/// out of the fit, as are errors that saturated below 10× the reference
/// accuracy floor.
pub fn convergence_study(
    scheme: Scheme,
    initial: &GBState,
    t_final: f64,
    tau_list: &[f64],
    r: f64,
    dealias: bool,
    reference: &Reference,
) -> Result<ConvergenceRecord, Error> {
    if tau_list.len() < 3 {
        return Err(Error::invalid("tau", "need at least 3 step sizes for a slope fit"));
    }
    if !tau_list.iter().all(|t| t.is_finite() && *t > 0.0) {
        return Err(Error::invalid("tau", "step sizes must be positive and finite"));
    }
    if tau_list.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::invalid("tau", "step sizes must be strictly decreasing"));
    }
    let c = initial.c();

    let (reference_state, ref_error_estimate) = match reference {
        Reference::Analytic(state) => {
            if !state.grid().same_as(initial.grid()) {
                return Err(Error::invalid("reference", "analytic reference is on a different grid"));
            }
            (state.clone(), 0.0)
        }
        Reference::Fine(ref_scheme) => {
            let tau_ref = tau_list[tau_list.len() - 1] / 100.0;
            let fine = run(*ref_scheme, initial, &SchemeParams { c, tau: tau_ref, dealias }, t_final)?;
            let coarse =
                run(*ref_scheme, initial, &SchemeParams { c, tau: 2.0 * tau_ref, dealias }, t_final)?;
            let est = error_norm(&fine, &coarse, r)?.z;
            (fine, est)
        }
    };

    let mut rows = Vec::with_capacity(tau_list.len());
    for &tau in tau_list {
        let p = SchemeParams { c, tau, dealias };
        match run(scheme, initial, &p, t_final) {
            Ok(state) => {
                let e = error_norm(&state, &reference_state, r)?;
                let diverged = !e.z.is_finite();
                rows.push(StudyRow {
                    tau,
                    error_z: e.z,
                    error_zt: e.zt,
                    combined: e.combined(),
                    diverged,
                    real_ok: state.z().is_real(1e-8) && state.zt().is_real(1e-8),
                    saturated: !diverged && e.z < 10.0 * ref_error_estimate,
                });
            }
            Err(Error::BlowUp { .. }) => rows.push(StudyRow {
                tau,
                error_z: f64::NAN,
                error_zt: f64::NAN,
                combined: f64::NAN,
                diverged: true,
                real_ok: false,
                saturated: false,
            }),
            Err(other) => return Err(other),
        }
    }

    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|row| !row.diverged && !row.saturated && row.error_z.is_finite() && row.error_z > 0.0)
        .map(|row| (row.tau, row.error_z))
        .collect();
    let (fitted_slope, r_squared) = fit_slope(&pts);

    Ok(ConvergenceRecord {
        scheme,
        norm_r: r,
        ref_error_estimate,
        fitted_slope,
        r_squared,
        rows,
    })
}
