//! Bogoliubov ground-state energy and condensate depletion in a Neumann box,
//! expressed through the primed heat trace `Tr′ e^{sΔ}` (zero mode removed),
//! together with their flat-space counterparts.
//!
//! Finite-volume quantities are evaluated as `bulk + deviation`, where the
//! deviation integrates the difference between the box trace per volume and
//! the flat kernel `(4πs)^{-3/2}`. The difference integrand is regular at
//! `t = 0`, so deviations are accurate even when they are many orders of
//! magnitude below the bulk value.

mod depletion;
mod energy;
mod finite_t;

pub use depletion::{bulk_depletion_zero_t, depletion_zero_t, depletion_zero_t_deviation, XI};
pub use energy::{
    bulk_energy_density, energy_density_deviation, ground_state_energy, ground_state_energy_density,
    phi, J,
};
pub use finite_t::{
    bulk_depletion_finite_t, depletion_finite_t, FiniteTemperatureDepletion,
};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, require_positive, Error, Result};
use crate::geometry::ConvexDomain;
use crate::quad::{self, QuadOptions};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BogoliubovParams {
    pub u0: f64,
    pub n0: f64,
    /// Inverse temperature; required by the finite-temperature depletion.
    pub beta: Option<f64>,
}

impl BogoliubovParams {
    pub fn new(u0: f64, n0: f64) -> Result<Self> {
        let p = Self { u0, n0, beta: None };
        p.validate()?;
        Ok(p)
    }

    /// Parameters with `u₀ = a`, `n₀ = 1`.
    pub fn from_coupling(a: f64) -> Result<Self> {
        Self::new(a, 1.0)
    }

    pub fn with_beta(mut self, beta: f64) -> Result<Self> {
        require_positive("beta", beta)?;
        self.beta = Some(beta);
        Ok(self)
    }

    /// `a = u₀n₀`, an inverse length².
    pub fn a(&self) -> f64 {
        self.u0 * self.n0
    }

    pub fn validate(&self) -> Result<()> {
        require_positive("u0", self.u0)?;
        require_positive("n0", self.n0)?;
        if let Some(b) = self.beta {
            require_positive("beta", b)?;
        }
        Ok(())
    }

    fn beta(&self) -> Result<f64> {
        self.beta
            .ok_or_else(|| invalid("finite-temperature depletion needs beta"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    /// Boundary between the logarithmic small-`t` walk and the direct range.
    pub t_split: f64,
    /// Truncation point in e-folds of the slowest box mode.
    pub tail_cut_factor: f64,
    /// Cap on the number of terms in the finite-temperature `k`-sum.
    pub k_max: usize,
    /// Include the constant mode in the first finite-temperature term.
    pub include_zero_mode: bool,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-8,
            t_split: 1.0,
            tail_cut_factor: 40.0,
            k_max: 1_000_000,
            include_zero_mode: true,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        require_positive("rel_tol", self.rel_tol)?;
        require_positive("t_split", self.t_split)?;
        require_positive("tail_cut_factor", self.tail_cut_factor)?;
        if self.k_max == 0 {
            return Err(invalid("k_max must be positive"));
        }
        Ok(())
    }

    fn opts(&self) -> QuadOptions {
        QuadOptions::with_rel_tol(self.rel_tol)
    }
}

/// `F(t, x) = √(1−x²)(2 − e^{−t(1−x)} − e^{−t(1+x)})`.
pub fn f_kernel(t: f64, x: f64) -> Result<f64> {
    require_positive("t", t)?;
    if !(0.0..=1.0).contains(&x) {
        return Err(invalid(format!("x must lie in [0, 1], got {x}")));
    }
    Ok((1.0 - x * x).sqrt() * (2.0 - (-t * (1.0 - x)).exp() - (-t * (1.0 + x)).exp()))
}

/// Which integral a time variable belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum TimeConvention {
    /// The energy integral evaluates the trace at `t/a`.
    Energy,
    /// The depletion integrals evaluate the trace at `t`.
    Depletion,
}

/// Diffusion time at which the trace is evaluated for integration variable `t`.
pub(crate) fn trace_time(conv: TimeConvention, t: f64, a: f64) -> f64 {
    match conv {
        TimeConvention::Energy => t / a,
        TimeConvention::Depletion => t,
    }
}

/// Inverse of [`trace_time`].
pub(crate) fn integration_time(conv: TimeConvention, s: f64, a: f64) -> f64 {
    match conv {
        TimeConvention::Energy => s * a,
        TimeConvention::Depletion => s,
    }
}

/// Box sides and the smallest nonzero Neumann eigenvalue `(π/L_max)²`.
pub(crate) fn box_spectrum(domain: &ConvexDomain) -> Result<([f64; 3], f64)> {
    domain.validate()?;
    let sides = domain
        .box_sides()
        .ok_or_else(|| invalid("the Bogoliubov quantities are implemented for boxes and cubes"))?;
    let lmax = sides.iter().cloned().fold(0.0, f64::max);
    Ok((sides, (std::f64::consts::PI / lmax).powi(2)))
}

/// Flat kernel `(4πs)^{-3/2}`.
pub(crate) fn flat(s: f64) -> f64 {
    (4.0 * std::f64::consts::PI * s).powf(-1.5)
}

/// `∫₀^{end} f`: logarithmic panels below `split`, then doubling ranges.
pub(crate) fn integrate_up_to<F: Fn(f64) -> f64 + Sync>(
    f: &F,
    end: f64,
    split: f64,
    opts: &QuadOptions,
) -> Result<f64> {
    if end <= 0.0 {
        return Ok(0.0);
    }
    let first = split.min(end);
    let mut total = quad::to_zero(f, first, opts)?.value;
    let mut lo = first;
    while lo < end {
        let hi = (2.0 * lo).min(end);
        let piece_opts = QuadOptions {
            abs_tol: 1e-3 * opts.rel_tol * total.abs(),
            ..*opts
        };
        total += quad::adaptive(f, lo, hi, &piece_opts)?.value;
        lo = hi;
    }
    Ok(total)
}

pub(crate) fn nonfinite(what: &str) -> Error {
    Error::Divergent(format!("{what} is not finite"))
}
