//! Finite-volume heat-kernel traces and the Bogoliubov-model quantities built
//! from them, together with the free Bose gas condensation expansion and an
//! empirical harness for thermodynamic-limit convergence rates.
//!
//! Module map:
//!
//! | module | contents |
//! |--------|----------|
//! | [`specfun`] | scaled Bessel functions, `K_ν`, Bose functions, integral-identity residuals |
//! | [`geometry`] | convex domains, inner parallel volumes, co-area integrals |
//! | [`heat_kernel`] | interval/box heat traces and diagonal kernels (Neumann/Dirichlet) |
//! | [`free_gas`] | particle-number sums, fugacity inversion, condensate decomposition |
//! | [`bogoliubov`] | ground-state energy, zero- and finite-temperature depletion |
//! | [`bounds`] | inequality envelopes, Brown-constant estimation, convergence sweeps |
//! | [`quad`] | adaptive Gauss–Kronrod quadrature used throughout |
//!
//! Units: lengths are in units where the kinetic operator is `-Δ`, so diffusion
//! times carry dimension length² and the coupling `a = u₀n₀` is an inverse
//! length².

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod bogoliubov;
pub mod bounds;
mod error;
pub mod free_gas;
pub mod geometry;
pub mod heat_kernel;
pub mod quad;
pub mod specfun;

pub use error::{Error, Result};
pub use geometry::ConvexDomain;
