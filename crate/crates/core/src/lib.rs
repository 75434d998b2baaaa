//! Time integrators for the "good" Boussinesq equation
//!
//! ```text
//!     z_tt + z_xxxx − z_xx − (z²)_xx = 0
//! ```
//!
//! on the periodic interval (−L, L), discretized by a Fourier pseudospectral
//! method.  The equation is rewritten as a first-order complex system for
//! u = z − i⟨∂x²⟩_c⁻¹ z_t with ⟨∂x²⟩_c = √(∂x⁴ − ∂x² + c), and integrated by
//! exponential-type schemes that evaluate the dominant oscillatory integrals
//! in closed form, which keeps full convergence order for data of low Sobolev
//! regularity:
//!
//! * [`lri1`] — first-order scheme Φ^τ,
//! * [`lri2`] — second-order scheme Ψ^τ,
//! * [`baselines`] — classical trigonometric integrators (Gautschi and
//!   Deuflhard type) used for comparison,
//! * [`experiments`] — solitary-wave and rough-data initial states, time
//!   propagation, error norms and convergence studies,
//! * [`study`] — the study driver behind the command-line binary (config
//!   resolution, CSV/JSON output).

pub mod baselines;
pub mod error;
pub mod experiments;
pub mod integrals;
pub mod lri1;
pub mod lri2;
pub mod spectral;
pub mod state;
pub mod study;

pub use error::Error;
pub use num_complex::Complex64;
pub use spectral::{Grid, Multiplier, SpectralField};
pub use state::{from_u, to_u, ComplexState, GBState, SchemeParams};
