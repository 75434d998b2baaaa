//! Independent oracles for the acceptance suite.
//!
//! The closed-form oscillatory integrals in the library are checked against
//! three implementations that share no code with them:
//!
//! * direct O(M²) double sums over Fourier pairs with per-pair scalar time
//!   integrals (resonant pairs take the exact polynomial value);
//! * adaptive Simpson quadrature of the defining field-valued integrands,
//!   evaluated node by node with grid operators;
//! * per-mode multiplier sums with scalar quadrature for the integrals that
//!   are plain multipliers.
//!
//! Random fields are band-limited to |k| ≤ M/4 − 1 so quadratic products are
//! alias-free and the double sums over integer pairs match the grid product
//! exactly.

use std::sync::Arc;

use gboussinesq::spectral::{Grid, Multiplier, SpectralField};
use gboussinesq::Complex64;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

pub fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn uniform_pm1(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (2.0 / 9007199254740992.0) - 1.0
}

/// Random complex field supported on |k| ≤ band, zero elsewhere (and in
/// particular at the Nyquist mode).
pub fn random_band_field(grid: &Arc<Grid>, band: i64, seed: u64) -> SpectralField {
    assert!(2 * band < grid.m() as i64 / 2, "band too wide for alias-free products");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut f = SpectralField::zeros(grid);
    for k in -band..=band {
        f.set_mode(k, cx(uniform_pm1(&mut rng), uniform_pm1(&mut rng)));
    }
    f
}

/// ∫₀^τ e^{ias} ds, exactly τ at the resonance a = 0.
pub fn kernel_plain(a: f64, tau: f64) -> Complex64 {
    if a == 0.0 {
        cx(tau, 0.0)
    } else {
        let ia = cx(0.0, a);
        ((ia * tau).exp() - 1.0) / ia
    }
}

/// ∫₀^τ s e^{ias} ds, exactly τ²/2 at the resonance a = 0.
pub fn kernel_s_weighted(a: f64, tau: f64) -> Complex64 {
    if a == 0.0 {
        cx(0.5 * tau * tau, 0.0)
    } else {
        let ia = cx(0.0, a);
        let e = (ia * tau).exp();
        e * tau / ia + (e - 1.0) / (a * a)
    }
}

#[derive(Clone, Copy)]
pub enum Kernel {
    /// ∫₀^τ e^{ias} ds
    Plain,
    /// ∫₀^τ s e^{ias} ds
    SWeighted,
}

#[derive(Clone, Copy)]
pub enum SecondSlot {
    /// pair f̂_{k₁} ĝ_{k₂}, phase a = κ₁² + κ₂² − κ_out² (both slots twisted
    /// backward)
    Direct,
    /// pair f̂_{k₁} (ḡ)_{k₂}, phase a = κ₁² − κ₂² − κ_out² (conjugate slot
    /// twisted forward)
    ConjugateBar,
}

/// Direct double sum Σ_{k₁+k₂=k} coeff·kernel(a) over the exact integer
/// pairs.  For band-limited inputs this is the defining Fourier-series sum
/// of the corresponding time integral.
pub fn double_sum(
    f: &SpectralField,
    g: &SpectralField,
    tau: f64,
    kernel: Kernel,
    slot: SecondSlot,
) -> SpectralField {
    let grid = f.grid();
    let m = grid.m() as i64;
    let scale = std::f64::consts::PI / grid.l();
    let mut out = SpectralField::zeros(grid);
    for &k1 in grid.k() {
        let a1 = f.mode(k1);
        if a1 == cx(0.0, 0.0) {
            continue;
        }
        for &k2 in grid.k() {
            let a2 = match slot {
                SecondSlot::Direct => g.mode(k2),
                SecondSlot::ConjugateBar => g.mode(-k2).conj(),
            };
            if a2 == cx(0.0, 0.0) {
                continue;
            }
            let k_out = k1 + k2;
            assert!(k_out.abs() < m / 2, "pair {k1}+{k2} would alias");
            let (kap1, kap2, kap_out) =
                (scale * k1 as f64, scale * k2 as f64, scale * k_out as f64);
            let a = match slot {
                SecondSlot::Direct => kap1 * kap1 + kap2 * kap2 - kap_out * kap_out,
                SecondSlot::ConjugateBar => kap1 * kap1 - kap2 * kap2 - kap_out * kap_out,
            };
            let w = match kernel {
                Kernel::Plain => kernel_plain(a, tau),
                Kernel::SWeighted => kernel_s_weighted(a, tau),
            };
            out.add_to_mode(k_out, a1 * a2 * w);
        }
    }
    out
}

/// Adaptive Simpson quadrature of a complex scalar integrand.
pub fn quad_scalar(f: &impl Fn(f64) -> Complex64, a: f64, b: f64, tol: f64) -> Complex64 {
    fn simpson(fa: Complex64, fm: Complex64, fb: Complex64, h: f64) -> Complex64 {
        (fa + fm * 4.0 + fb) * (h / 6.0)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &impl Fn(f64) -> Complex64,
        a: f64,
        b: f64,
        fa: Complex64,
        fm: Complex64,
        fb: Complex64,
        whole: Complex64,
        tol: f64,
        depth: u32,
    ) -> Complex64 {
        let m = 0.5 * (a + b);
        let (fl, fr) = (f(0.5 * (a + m)), f(0.5 * (m + b)));
        let left = simpson(fa, fl, fm, m - a);
        let right = simpson(fm, fr, fb, b - m);
        let refined = left + right;
        if depth == 0 || (refined - whole).norm() < 15.0 * tol {
            return refined + (refined - whole) / 15.0;
        }
        recurse(f, a, m, fa, fl, fm, left, 0.5 * tol, depth - 1)
            + recurse(f, m, b, fm, fr, fb, right, 0.5 * tol, depth - 1)
    }
    let (fa, fm, fb) = (f(a), f(0.5 * (a + b)), f(b));
    let whole = simpson(fa, fm, fb, b - a);
    recurse(f, a, b, fa, fm, fb, whole, tol, 24)
}

/// Adaptive Simpson quadrature of a field-valued integrand, refined until
/// the l² norm of the Richardson defect is below `tol`.
pub fn quad_field(f: &impl Fn(f64) -> SpectralField, a: f64, b: f64, tol: f64) -> SpectralField {
    fn simpson(
        fa: &SpectralField,
        fm: &SpectralField,
        fb: &SpectralField,
        h: f64,
    ) -> SpectralField {
        let sum = &(fa + &fm.scale(cx(4.0, 0.0))) + fb;
        sum.scale(cx(h / 6.0, 0.0))
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &impl Fn(f64) -> SpectralField,
        a: f64,
        b: f64,
        fa: &SpectralField,
        fm: &SpectralField,
        fb: &SpectralField,
        whole: &SpectralField,
        tol: f64,
        depth: u32,
    ) -> SpectralField {
        let m = 0.5 * (a + b);
        let (fl, fr) = (f(0.5 * (a + m)), f(0.5 * (m + b)));
        let left = simpson(fa, &fl, fm, m - a);
        let right = simpson(fm, &fr, fb, b - m);
        let refined = &left + &right;
        let defect = &refined - whole;
        if depth == 0 || defect.l2_norm() < 15.0 * tol {
            return &refined + &defect.scale(cx(1.0 / 15.0, 0.0));
        }
        let l = recurse(f, a, m, fa, &fl, fm, &left, 0.5 * tol, depth - 1);
        let r = recurse(f, m, b, fm, &fr, fb, &right, 0.5 * tol, depth - 1);
        &l + &r
    }
    let (fa, fm, fb) = (f(a), f(0.5 * (a + b)), f(b));
    let whole = simpson(&fa, &fm, &fb, b - a);
    recurse(f, a, b, &fa, &fm, &fb, &whole, tol, 20)
}

/// ∫₀^τ e^{is∂²}[(e^{−is∂²}f)(e^{−is∂²}g)] ds by quadrature.
pub fn quad_direct_pair(f: &SpectralField, g: &SpectralField, tau: f64, s_weight: bool) -> SpectralField {
    let grid = f.grid().clone();
    let (f, g) = (f.clone(), g.clone());
    quad_field(
        &move |s| {
            let back = Multiplier::exp_lap(&grid, -s);
            let fwd = Multiplier::exp_lap(&grid, s);
            let prod = f.apply(&back).product(&g.apply(&back), false).apply(&fwd);
            if s_weight {
                prod.scale(cx(s, 0.0))
            } else {
                prod
            }
        },
        0.0,
        tau,
        1e-13,
    )
}

/// ∫₀^τ e^{is∂²}[(e^{−is∂²}f)(e^{is∂²}ḡ)] ds by quadrature.
pub fn quad_conj_pair(f: &SpectralField, g: &SpectralField, tau: f64, s_weight: bool) -> SpectralField {
    let grid = f.grid().clone();
    let (f, gbar) = (f.clone(), g.conj_field());
    quad_field(
        &move |s| {
            let back = Multiplier::exp_lap(&grid, -s);
            let fwd = Multiplier::exp_lap(&grid, s);
            let prod = f.apply(&back).product(&gbar.apply(&fwd), false).apply(&fwd);
            if s_weight {
                prod.scale(cx(s, 0.0))
            } else {
                prod
            }
        },
        0.0,
        tau,
        1e-13,
    )
}

/// O(M²) cyclic convolution of coefficient vectors.
pub fn direct_convolution(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let m = a.len();
    let mut out = vec![cx(0.0, 0.0); m];
    for i in 0..m {
        if a[i] == cx(0.0, 0.0) {
            continue;
        }
        for j in 0..m {
            out[(i + j) % m] += a[i] * b[j];
        }
    }
    out
}

fn conj_coeffs(f: &SpectralField) -> Vec<Complex64> {
    let m = f.grid().m();
    (0..m).map(|idx| f.coeffs()[(m - idx) % m].conj()).collect()
}

/// Defining multiplier sum ∫₀^τ e^{2is∂²}(f̄)² ds: per-mode scalar
/// quadrature times the directly convolved square of the conjugate.
pub fn multiplier_sum_conj_square(f: &SpectralField, tau: f64) -> SpectralField {
    let grid = f.grid();
    let fb = conj_coeffs(f);
    let sq = direct_convolution(&fb, &fb);
    let coeffs = sq
        .iter()
        .zip(grid.kappa())
        .map(|(&c, &kappa)| {
            let q = quad_scalar(&|s| cx(0.0, -2.0 * s * kappa * kappa).exp(), 0.0, tau, 1e-15);
            c * q
        })
        .collect();
    SpectralField::from_coeffs(grid.clone(), coeffs)
}

/// Defining multiplier sum ∫₀^τ s e^{2is∂²}(f̄ḡ) ds with the resonant
/// output mode k = 0 removed (it carries the (τ²/2)(f̄,g) constant).
pub fn multiplier_sum_s_weighted(f: &SpectralField, g: &SpectralField, tau: f64) -> SpectralField {
    let grid = f.grid();
    let prod = direct_convolution(&conj_coeffs(f), &conj_coeffs(g));
    let coeffs = prod
        .iter()
        .zip(grid.kappa().iter().zip(grid.k()))
        .map(|(&c, (&kappa, &k))| {
            if k == 0 {
                return cx(0.0, 0.0);
            }
            let q = quad_scalar(
                &|s| cx(s, 0.0) * cx(0.0, -2.0 * s * kappa * kappa).exp(),
                0.0,
                tau,
                1e-15,
            );
            c * q
        })
        .collect();
    SpectralField::from_coeffs(grid.clone(), coeffs)
}

/// Mode-0 resonance Σ_k conj(f̂_k) conj(ĝ_{−k}) of the conjugate pairing.
pub fn conj_pair_resonance(f: &SpectralField, g: &SpectralField) -> Complex64 {
    f.grid()
        .k()
        .iter()
        .map(|&k| f.mode(k).conj() * g.mode(-k).conj())
        .sum()
}

/// Relative l² deviation against an oracle field.
pub fn relative_error(got: &SpectralField, oracle: &SpectralField) -> f64 {
    (got - oracle).l2_norm() / oracle.l2_norm().max(1e-8)
}
