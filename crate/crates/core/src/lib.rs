//! Numerical evaluation of the specialized Grassmannian (parabolic) Whittaker
//! function `Ψ^{(m,N)}_λ(x, 0, …, 0)`.
//!
//! Two independent evaluators are provided:
//!
//! * [`mb`]: direct trapezoid quadrature of the Mellin-Barnes integral over
//!   `(ε + iℝ)^m`, with measure `Π dγ_i / (2πi)`;
//! * [`residue`]: the residue-lattice series obtained by closing the contours
//!   to the left (valid for `x < 0`);
//!
//! plus the leading `x → -∞` asymptotics ([`asymptotics`]) and numerical
//! checks of the Gelfand-Zetlin difference-operator scaffolding behind the
//! integral ([`gz`]).
//!
//! All values are carried as [`LogComplex`] so that magnitudes like
//! `e^{|x|λ/ħ}` never overflow.

pub mod asymptotics;
pub mod error;
pub mod gz;
pub mod logcomplex;
pub mod mb;
pub mod oracle;
pub mod residue;
pub mod special;
pub mod spectral;

pub use asymptotics::{coset_coefficient, enumerate_cosets, leading_asymptotic, CosetRep, RootSet};
pub use error::{Error, Result};
pub use logcomplex::{LogAccumulator, LogComplex};
pub use mb::{auto_contour, eval_mb, evaluate, integrand, ContourConfig, MbEstimate};
pub use residue::{
    enumerate_terms, eval_residue_series, residue_term, PoleAssignment, SeriesConfig,
    SeriesEstimate,
};
pub use special::{gamma1, log_gamma, recip_gamma1, Hbar};
pub use spectral::SpectralData;

pub use num_complex::Complex64;

/// Crate version, echoed into result records.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
