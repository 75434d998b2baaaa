//! Periodic spectral fields stored as Fourier coefficients.
//!
//! A field on the grid (−L, L) is kept as the coefficient vector of
//! f(x) = Σ_k f̂_k e^{iκ_k x}, κ_k = πk/L, in FFT storage order.  The
//! normalization is f̂_k = (1/M) Σ_j f(x_j) e^{−iκ_k x_j}: the forward
//! transform carries the 1/M, the inverse is plain synthesis.  Because the
//! collocation points start at x = −L rather than 0, the raw FFT picks up a
//! phase e^{iκ_k L} = (−1)^k that both transforms fold back in.
//!
//! Pointwise products of trig interpolants correspond to cyclic (mod M)
//! convolution of coefficient vectors; `product` evaluates them
//! pseudospectrally with an optional 2/3-rule dealias step.

use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_complex::Complex64;

use crate::spectral::grid::Grid;
use crate::spectral::multiplier::Multiplier;

#[derive(Clone, Debug)]
pub struct SpectralField {
    grid: Arc<Grid>,
    coeffs: Vec<Complex64>,
}

fn assert_same_grid(a: &SpectralField, b: &SpectralField) {
    assert!(
        a.grid.same_as(&b.grid),
        "fields live on different grids: {:?} vs {:?}",
        a.grid,
        b.grid
    );
}

impl SpectralField {
    pub fn from_coeffs(grid: Arc<Grid>, coeffs: Vec<Complex64>) -> Self {
        assert_eq!(coeffs.len(), grid.m(), "coefficient count must equal M");
        SpectralField { grid, coeffs }
    }

    pub fn zeros(grid: &Arc<Grid>) -> Self {
        SpectralField {
            grid: grid.clone(),
            coeffs: vec![Complex64::new(0.0, 0.0); grid.m()],
        }
    }

    /// The constant field f ≡ a (single coefficient at k = 0).
    pub fn constant(grid: &Arc<Grid>, a: Complex64) -> Self {
        let mut f = Self::zeros(grid);
        f.coeffs[0] = a;
        f
    }

    /// Single-mode field amp·e^{iκ_k x}.
    pub fn from_mode(grid: &Arc<Grid>, k: i64, amp: Complex64) -> Self {
        let mut f = Self::zeros(grid);
        let idx = grid.index_of(k);
        f.coeffs[idx] = amp;
        f
    }

    /// Forward transform of complex samples at the collocation points.
    pub fn from_values(grid: &Arc<Grid>, values: &[Complex64]) -> Self {
        assert_eq!(values.len(), grid.m());
        let mut buf = values.to_vec();
        grid.fft_forward().process(&mut buf);
        let minv = 1.0 / grid.m() as f64;
        for (idx, v) in buf.iter_mut().enumerate() {
            *v *= if idx % 2 == 0 { minv } else { -minv };
        }
        SpectralField { grid: grid.clone(), coeffs: buf }
    }

    pub fn from_real_values(grid: &Arc<Grid>, values: &[f64]) -> Self {
        let v: Vec<Complex64> = values.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::from_values(grid, &v)
    }

    /// Samples a real function at the collocation points and transforms.
    pub fn from_fn_real(grid: &Arc<Grid>, f: impl Fn(f64) -> f64) -> Self {
        let v: Vec<Complex64> = grid.x().iter().map(|&x| Complex64::new(f(x), 0.0)).collect();
        Self::from_values(grid, &v)
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    /// Values at the collocation points (inverse transform).
    pub fn values(&self) -> Vec<Complex64> {
        let mut buf: Vec<Complex64> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(idx, &c)| if idx % 2 == 0 { c } else { -c })
            .collect();
        self.grid.fft_inverse().process(&mut buf);
        buf
    }

    pub fn real_values(&self) -> Vec<f64> {
        self.values().iter().map(|v| v.re).collect()
    }

    /// Coefficient of integer mode k.
    pub fn mode(&self, k: i64) -> Complex64 {
        self.coeffs[self.grid.index_of(k)]
    }

    pub fn set_mode(&mut self, k: i64, v: Complex64) {
        let idx = self.grid.index_of(k);
        self.coeffs[idx] = v;
    }

    pub fn add_to_mode(&mut self, k: i64, v: Complex64) {
        let idx = self.grid.index_of(k);
        self.coeffs[idx] += v;
    }

    /// Zero-mode coefficient f̂₀ (the mean of the interpolant).
    pub fn mean(&self) -> Complex64 {
        self.coeffs[0]
    }

    /// Applies a Fourier multiplier.
    pub fn apply(&self, m: &Multiplier) -> Self {
        assert!(self.grid.same_as(m.grid()), "multiplier grid mismatch");
        let coeffs = self
            .coeffs
            .iter()
            .zip(m.factors())
            .map(|(&c, &f)| c * f)
            .collect();
        SpectralField { grid: self.grid.clone(), coeffs }
    }

    /// Complex conjugate of the interpolant: coefficients conj(f̂_{−k}).
    ///
    /// The Nyquist mode is its own reflection (−(−M/2) ≡ −M/2 mod M), so it
    /// maps to its own conjugate and conjugate symmetry is preserved exactly.
    pub fn conj_field(&self) -> Self {
        let m = self.grid.m();
        let coeffs = (0..m)
            .map(|idx| self.coeffs[(m - idx) % m].conj())
            .collect();
        SpectralField { grid: self.grid.clone(), coeffs }
    }

    /// Projection onto the conjugate-symmetric (real-data) subspace:
    /// ½(f̂_k + conj(f̂_{−k})).  The result is exactly real in the `is_real`
    /// sense.  Complex round-trip FFTs leave white conjugate-asymmetric
    /// noise of relative size ~ε that high-order multipliers (ω ~ κ²)
    /// amplify; real-to-complex transforms never represent that component,
    /// and this projection restores their semantics.
    pub fn symmetrized(&self) -> Self {
        let m = self.grid.m();
        let coeffs = (0..m)
            .map(|idx| {
                let c = self.coeffs[idx];
                let r = self.coeffs[(m - idx) % m].conj();
                Complex64::new(0.5 * (c.re + r.re), 0.5 * (c.im + r.im))
            })
            .collect();
        SpectralField { grid: self.grid.clone(), coeffs }
    }

    /// Pointwise product of the interpolants, i.e. cyclic convolution of
    /// coefficients.  With `dealias` on, modes with 3|k| ≥ M are zeroed in
    /// both inputs and in the result (2/3 rule), which makes the surviving
    /// band exactly alias-free for quadratic products.
    pub fn product(&self, other: &Self, dealias: bool) -> Self {
        assert_same_grid(self, other);
        let (a, b);
        let (fa, fb) = if dealias {
            a = self.band_truncated();
            b = other.band_truncated();
            (&a, &b)
        } else {
            (self, other)
        };
        let va = fa.values();
        let vb = fb.values();
        let prod: Vec<Complex64> = va.iter().zip(&vb).map(|(&x, &y)| x * y).collect();
        let mut out = Self::from_values(&self.grid, &prod);
        if dealias {
            out.truncate_band();
        }
        out
    }

    fn band_truncated(&self) -> Self {
        let mut f = self.clone();
        f.truncate_band();
        f
    }

    fn truncate_band(&mut self) {
        let m = self.grid.m() as i64;
        for (idx, &k) in self.grid.k().iter().enumerate() {
            if 3 * k.abs() >= m {
                self.coeffs[idx] = Complex64::new(0.0, 0.0);
            }
        }
    }

    /// Max deviation from conjugate symmetry, relative to max(1, max|f̂_k|).
    pub fn realness_deviation(&self) -> f64 {
        let m = self.grid.m();
        let scale = self
            .coeffs
            .iter()
            .map(|c| c.norm())
            .fold(0.0_f64, f64::max)
            .max(1.0);
        let dev = (0..m)
            .map(|idx| (self.coeffs[idx] - self.coeffs[(m - idx) % m].conj()).norm())
            .fold(0.0_f64, f64::max);
        dev / scale
    }

    /// True when the coefficients are conjugate-symmetric to `tol`
    /// (relative to max(1, max|f̂_k|)), i.e. the field represents real data.
    pub fn is_real(&self, tol: f64) -> bool {
        self.realness_deviation() <= tol
    }

    /// Sobolev norm ‖f‖_m = (Σ_k (1+κ_k²)^m |f̂_k|²)^{1/2}; m may be any real
    /// number (negative orders are used for the velocity component).
    pub fn sobolev_norm(&self, m: f64) -> f64 {
        self.coeffs
            .iter()
            .zip(self.grid.kappa())
            .map(|(c, &kappa)| (1.0 + kappa * kappa).powf(m) * c.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn l2_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Hermitian inner product (f, g) = Σ_k f̂_k conj(ĝ_k).
    pub fn inner_product(&self, other: &Self) -> Complex64 {
        assert_same_grid(self, other);
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| a * b.conj())
            .sum()
    }

    pub fn all_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    pub fn scale(&self, a: Complex64) -> Self {
        let coeffs = self.coeffs.iter().map(|&c| c * a).collect();
        SpectralField { grid: self.grid.clone(), coeffs }
    }
}

impl Add for &SpectralField {
    type Output = SpectralField;
    fn add(self, rhs: &SpectralField) -> SpectralField {
        assert_same_grid(self, rhs);
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(&a, &b)| a + b).collect();
        SpectralField { grid: self.grid.clone(), coeffs }
    }
}

impl Sub for &SpectralField {
    type Output = SpectralField;
    fn sub(self, rhs: &SpectralField) -> SpectralField {
        assert_same_grid(self, rhs);
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(&a, &b)| a - b).collect();
        SpectralField { grid: self.grid.clone(), coeffs }
    }
}

impl Neg for &SpectralField {
    type Output = SpectralField;
    fn neg(self) -> SpectralField {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

impl AddAssign<&SpectralField> for SpectralField {
    fn add_assign(&mut self, rhs: &SpectralField) {
        assert_same_grid(self, rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl SubAssign<&SpectralField> for SpectralField {
    fn sub_assign(&mut self, rhs: &SpectralField) {
        assert_same_grid(self, rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
    }
}
