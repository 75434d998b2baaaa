//! Entire functions ψ₁, ψ₂ used by the exponential integrators, plus sinc.
//!
//! ψ₁(z) = (e^z − 1)/z = ∫₀¹ e^{zs} ds
//! ψ₂(z) = (e^z (z − 1) + 1)/z² = ∫₀¹ s e^{zs} ds
//!
//! The closed forms cancel catastrophically near z = 0 (the ψ₂ numerator is
//! ~z²/2, assembled from O(1) terms), so below |z| = 1/2 both switch to a
//! Taylor expansion summed to machine precision; at the switch point the
//! closed forms are good to ~1e−15 again, so the branches join smoothly.

use num_complex::Complex64;

/// Magnitude below which the Taylor branch is used.
pub const PSI_TAYLOR_THRESHOLD: f64 = 0.5;

/// ψ₁(z) = (e^z − 1)/z, continuously extended by ψ₁(0) = 1.
pub fn psi1(z: Complex64) -> Complex64 {
    if z.norm() > PSI_TAYLOR_THRESHOLD {
        (z.exp() - 1.0) / z
    } else {
        // Σ_{n≥0} z^n / (n+1)!
        let mut acc = Complex64::new(1.0, 0.0);
        let mut term = Complex64::new(1.0, 0.0);
        for n in 1..40u32 {
            term = term * z / ((n + 1) as f64);
            acc += term;
            if term.norm() < 1e-18 {
                break;
            }
        }
        acc
    }
}

/// ψ₂(z) = (e^z (z − 1) + 1)/z², continuously extended by ψ₂(0) = 1/2.
pub fn psi2(z: Complex64) -> Complex64 {
    if z.norm() > PSI_TAYLOR_THRESHOLD {
        (z.exp() * (z - 1.0) + 1.0) / (z * z)
    } else {
        // Σ_{n≥0} z^n / (n! (n+2))
        let mut acc = Complex64::new(0.5, 0.0);
        let mut zp_over_fact = Complex64::new(1.0, 0.0);
        for n in 1..40u32 {
            zp_over_fact = zp_over_fact * z / (n as f64);
            let term = zp_over_fact / ((n + 2) as f64);
            acc += term;
            if term.norm() < 1e-18 {
                break;
            }
        }
        acc
    }
}

/// sinc(x) = sin(x)/x with sinc(0) = 1.  Unlike ψ₁/ψ₂ there is no
/// cancellation: sin(x)/x is accurate for every nonzero x.
pub fn sinc(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        x.sin() / x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    // 64-point Gauss–Legendre quadrature of ∫₀¹ w(s) e^{zs} ds, used as an
    // implementation-independent oracle for both branches.  Nodes are found by
    // Newton iteration on the Legendre polynomial.
    fn gauss_legendre_01(n: usize) -> Vec<(f64, f64)> {
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            // Initial guess (Chebyshev-like) for the i-th root on (−1, 1).
            let mut t = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                // Evaluate P_n and P_n' by recurrence.
                let (mut p0, mut p1) = (1.0, t);
                for j in 2..=n {
                    let p2 = ((2 * j - 1) as f64 * t * p1 - (j - 1) as f64 * p0) / j as f64;
                    p0 = p1;
                    p1 = p2;
                }
                let dp = n as f64 * (t * p1 - p0) / (t * t - 1.0);
                let dt = p1 / dp;
                t -= dt;
                if dt.abs() < 1e-15 {
                    break;
                }
            }
            let (mut p0, mut p1) = (1.0, t);
            for j in 2..=n {
                let p2 = ((2 * j - 1) as f64 * t * p1 - (j - 1) as f64 * p0) / j as f64;
                p0 = p1;
                p1 = p2;
            }
            let dp = n as f64 * (t * p1 - p0) / (t * t - 1.0);
            let w = 2.0 / ((1.0 - t * t) * dp * dp);
            // Map from (−1, 1) to (0, 1).
            out.push((0.5 * (t + 1.0), 0.5 * w));
        }
        out
    }

    fn quad_psi(z: Complex64, s_weight: bool) -> Complex64 {
        gauss_legendre_01(64)
            .iter()
            .map(|&(s, w)| (z * s).exp() * w * if s_weight { s } else { 1.0 })
            .sum()
    }

    #[test]
    fn point_values() {
        assert_relative_eq!(psi1(Complex64::new(0.0, 0.0)).re, 1.0);
        assert_relative_eq!(psi2(Complex64::new(0.0, 0.0)).re, 0.5);
        let v = psi1(Complex64::new(0.0, PI));
        assert_relative_eq!(v.re, 0.0, epsilon = 1e-15);
        assert_relative_eq!(v.im, 2.0 / PI, epsilon = 1e-15);
        assert_relative_eq!(sinc(0.0), 1.0);
        assert_relative_eq!(sinc(PI / 2.0), 2.0 / PI, epsilon = 1e-15);
    }

    #[test]
    fn both_branches_match_quadrature() {
        // Purely imaginary arguments (the only ones the schemes use) spanning
        // the Taylor branch, the switch point, and the closed-form branch.
        for &mag in &[0.0, 1e-6, 1e-3, 0.3, 0.499, 0.501, 2.0, 10.0] {
            for &sign in &[1.0, -1.0] {
                let z = Complex64::new(0.0, sign * mag);
                let q1 = quad_psi(z, false);
                let q2 = quad_psi(z, true);
                assert!((psi1(z) - q1).norm() < 1e-12, "psi1 at {z}");
                assert!((psi2(z) - q2).norm() < 1e-12, "psi2 at {z}");
            }
        }
        // A few general complex arguments.
        for &z in &[
            Complex64::new(0.5, -1.3),
            Complex64::new(-2.0, 0.7),
            Complex64::new(3e-5, -4e-5),
        ] {
            assert!((psi1(z) - quad_psi(z, false)).norm() < 1e-12);
            assert!((psi2(z) - quad_psi(z, true)).norm() < 1e-12);
        }
    }

    #[test]
    fn branches_agree_at_the_switch() {
        // Evaluate both formulas just inside and outside the threshold; the
        // jump across the switch must be far below the scheme tolerances.
        for &mag in &[0.4999, 0.5001] {
            let z = Complex64::new(0.0, mag);
            let closed1 = (z.exp() - 1.0) / z;
            let closed2 = (z.exp() * (z - 1.0) + 1.0) / (z * z);
            assert!((psi1(z) - closed1).norm() < 1e-13);
            assert!((psi2(z) - closed2).norm() < 1e-13);
        }
    }

    #[test]
    fn sinc_values() {
        for i in 1..2000 {
            let x = i as f64 * 0.01;
            assert_relative_eq!(sinc(x), x.sin() / x, epsilon = 1e-15);
            assert_relative_eq!(sinc(-x), sinc(x));
        }
        // Continuity through the 0/0 guard.
        assert!((sinc(1e-300) - 1.0).abs() < 1e-15);
        assert!((sinc(-1e-9) - 1.0).abs() < 1e-15);
    }
}
