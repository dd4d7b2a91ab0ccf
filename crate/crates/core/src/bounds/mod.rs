//! Inequality checks, decay envelopes, and the convergence-sweep harness.
//!
//! Every constant multiplying an envelope is treated as unknown: checks
//! calibrate a single dominance constant on the smallest domain and test it on
//! the larger ones.

mod brown;
mod envelopes;
mod sweep;

pub use brown::{brown_violations, estimate_brown_constant, BrownEstimate, BrownGrid};
pub use envelopes::{
    angelescu_nenciu_check, area_envelope_density, depletion_envelope_finite_t,
    depletion_envelope_zero_t, energy_envelope, AnCheck, FiniteTEnvelope,
};
pub use sweep::{convergence_sweep, fit_power_law, ConvergenceReport, PowerFit, SweepParams, SweepQuantity};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Exponent parameter `η ∈ (0, 1)` of the boundary envelopes.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct EtaParameter(f64);

impl EtaParameter {
    pub fn new(eta: f64) -> Result<Self> {
        if eta > 0.0 && eta < 1.0 {
            Ok(Self(eta))
        } else {
            Err(invalid(format!("eta must lie in (0, 1), got {eta}")))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for EtaParameter {
    type Error = crate::Error;

    fn try_from(v: f64) -> Result<Self> {
        Self::new(v)
    }
}

impl From<EtaParameter> for f64 {
    fn from(e: EtaParameter) -> f64 {
        e.0
    }
}
