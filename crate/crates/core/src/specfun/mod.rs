//! Special functions: scaled `I_ν`, `K_ν`, Bose functions, and residuals of
//! the integral identities that the heat-kernel bounds rely on.

mod bessel;
mod bose;
mod gamma;
mod identities;

pub use bessel::{bessel_i_scaled, bessel_k};
pub use bose::{bose_g, bose_g_with};
pub use gamma::gamma;
pub use identities::{
    k_integral_reps, residual_gr6682, residual_gr6682_with, residual_i1_identity,
    residual_i1_identity_with, residual_k_integral_rep, residual_k_integral_rep_with,
};

pub(crate) use bessel::scaled_i;

use crate::error::{invalid, Result};

/// Tolerances and term caps shared by the series and quadrature routines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecFunConfig {
    pub series_rel_tol: f64,
    pub quad_rel_tol: f64,
    pub max_terms: usize,
}

impl Default for SpecFunConfig {
    fn default() -> Self {
        Self {
            series_rel_tol: 1e-15,
            quad_rel_tol: 1e-10,
            max_terms: 1_000_000,
        }
    }
}

impl SpecFunConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.series_rel_tol > 0.0 && self.quad_rel_tol > 0.0) {
            return Err(invalid("tolerances must be strictly positive"));
        }
        if self.max_terms < 10 {
            return Err(invalid("max_terms must be at least 10"));
        }
        Ok(())
    }
}
