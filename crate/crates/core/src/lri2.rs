//! Second-order exponential integrator for the complex one-field form.
//!
//! One step expands the Duhamel integral to second order around the free
//! flow.  With B = ⟨∂x²⟩_c, A = ∂x² + B and the first-order correction field
//!
//! ```text
//!     𝓟(f) = A f − (1/4) B⁻¹ [ 2c (f + f̄) + ∂x² (f + f̄)² ],
//! ```
//!
//! the step reads
//!
//! ```text
//!     Ψ^τ(f) = e^{iτB} f + 𝓛(f) + (∂x²/4) B⁻¹ e^{iτB} S(f),
//!
//!     𝓛(f) = −(icτ/2) B⁻¹ e^{iτB} [ f − (iτ/2)(Af − 𝓟(f))
//!              + ψ₁(2iτ∂x²) f̄ − iτ ψ₂(2iτ∂x²) (A f̄ + conj 𝓟(f)) ],
//!
//!     S(f) = −i [ I₁(f) + conj I₁(f) + 2 I₂(f) + I₃(f) − τ f̄² ]
//!            − A [ J₁(f,f) + 2 J₂(f,f) + J₃(f,f) ]
//!            + 2 [ J₁(f,𝓟f) + J₂(𝓟f,f) ] − 2 [ J₃(f,𝓟f) + J₂(f,𝓟f) ],
//! ```
//!
//! all integrals from [`crate::integrals`].  Since the S-prefactor carries a
//! factor ∂x², the constant separating J₃ from J₄ is annihilated and J₄ can
//! be used throughout S; `step_with_j3` below exists to pin that equivalence
//! down in tests.

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::Error;
use crate::integrals::IntegralOps;
use crate::spectral::{Grid, Multiplier, SpectralField};
use crate::state::SchemeParams;

fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// 𝓟(f) = Af − (1/4)B⁻¹[2c(f + f̄) + ∂x²(f + f̄)²], the O(τ) drift of the
/// twisted variable.
pub fn p_op(f: &SpectralField, c: f64, dealias: bool) -> SpectralField {
    let grid = f.grid();
    let s = f + &f.conj_field();
    let mut bracket = s.scale(cx(2.0 * c, 0.0));
    bracket += &s.product(&s, dealias).apply(&Multiplier::dx2(grid));
    &f.apply(&Multiplier::a_op(grid, c))
        - &bracket
            .apply(&Multiplier::bracket_inv(grid, c))
            .scale(cx(0.25, 0.0))
}

pub struct Lri2 {
    params: SchemeParams,
    ops: IntegralOps,
    exp_b: Multiplier,    // e^{iτB}
    lin: Multiplier,      // −(icτ/2) B⁻¹ e^{iτB}
    quad: Multiplier,     // (∂x²/4) B⁻¹ e^{iτB}
    a_op: Multiplier,     // A = ∂x² + B
    psi1_2: Multiplier,   // ψ₁(2iτ∂x²)
    psi2_2: Multiplier,   // ψ₂(2iτ∂x²)
}

impl Lri2 {
    pub fn new(grid: &Arc<Grid>, params: SchemeParams) -> Result<Self, Error> {
        params.validate()?;
        let (c, tau) = (params.c, params.tau);
        let exp_b = Multiplier::exp_bracket(grid, tau, c);
        let binv_exp_b = Multiplier::bracket_inv(grid, c).compose(&exp_b);
        Ok(Lri2 {
            params,
            ops: IntegralOps::new(grid, tau, params.dealias),
            lin: binv_exp_b.scaled(cx(0.0, -0.5 * c * tau)),
            quad: Multiplier::dx2(grid).compose(&binv_exp_b).scaled(cx(0.25, 0.0)),
            a_op: Multiplier::a_op(grid, c),
            psi1_2: Multiplier::psi1_two_lap(grid, tau),
            psi2_2: Multiplier::psi2_two_lap(grid, tau),
            exp_b,
        })
    }

    pub fn params(&self) -> &SchemeParams {
        &self.params
    }

    /// 𝓛 applied to f, reusing the precomputed 𝓟(f).
    fn l_op(&self, f: &SpectralField, p: &SpectralField) -> SpectralField {
        let tau = self.params.tau;
        let fbar = f.conj_field();
        // Af − 𝓟(f); the A-parts cancel analytically but forming it this way
        // keeps one code path for 𝓟.
        let q = &f.apply(&self.a_op) - p;
        let mut inner = f - &q.scale(cx(0.0, 0.5 * tau));
        inner += &fbar.apply(&self.psi1_2);
        let af_p = &fbar.apply(&self.a_op) + &p.conj_field();
        inner -= &af_p.apply(&self.psi2_2).scale(cx(0.0, tau));
        inner.apply(&self.lin)
    }

    fn step_inner(&self, u: &SpectralField, j3_constants: bool) -> Result<SpectralField, Error> {
        let tau = self.params.tau;
        let dealias = self.params.dealias;
        let ops = &self.ops;
        let p = p_op(u, self.params.c, dealias);
        let ubar = u.conj_field();

        let i1 = ops.i1(u);
        let mut s_field = &(&i1 + &i1.conj_field()) + &ops.i2(u).scale(cx(2.0, 0.0));
        s_field += &ops.i3(u);
        s_field -= &ubar.product(&ubar, dealias).scale(cx(tau, 0.0));
        let mut s = s_field.scale(cx(0.0, -1.0));

        let jff = if j3_constants { ops.j3(u, u) } else { ops.j4(u, u) };
        let mut j_self = &ops.j1(u, u) + &ops.j2(u, u).scale(cx(2.0, 0.0));
        j_self += &jff;
        s -= &j_self.apply(&self.a_op);

        let jfp = if j3_constants { ops.j3(u, &p) } else { ops.j4(u, &p) };
        s += &(&ops.j1(u, &p) + &ops.j2(&p, u)).scale(cx(2.0, 0.0));
        s -= &(&jfp + &ops.j2(u, &p)).scale(cx(2.0, 0.0));

        let mut out = u.apply(&self.exp_b);
        out += &self.l_op(u, &p);
        out += &s.apply(&self.quad);
        if !out.all_finite() {
            return Err(Error::NonFinite { what: "second-order scheme step" });
        }
        Ok(out)
    }

    pub fn step(&self, u: &SpectralField) -> Result<SpectralField, Error> {
        self.step_inner(u, false)
    }

    /// Same step with the resonant J₃ constants kept; the ∂x² prefactor must
    /// make this bit-for-bit irrelevant.
    #[cfg(test)]
    pub fn step_with_j3(&self, u: &SpectralField) -> Result<SpectralField, Error> {
        self.step_inner(u, true)
    }
}
