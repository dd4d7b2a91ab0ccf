use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::EtaParameter;
use crate::error::{require_positive, Result};
use crate::geometry::ConvexDomain;
use crate::heat_kernel::{box_trace, TraceQuery};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// Dirichlet trace against its Weyl term:
/// `|Tr e^{sΔ_D} − V(4πs)^{-3/2}| ≤ e^{3/2}·A/(2·4πs)`.
pub fn angelescu_nenciu_check(domain: &ConvexDomain, s: f64) -> Result<AnCheck> {
    let trace = box_trace(domain, &TraceQuery::dirichlet(s)?)?;
    let weyl = domain.volume() * (4.0 * PI * s).powf(-1.5);
    let lhs = (trace - weyl).abs();
    let rhs = 1.5f64.exp() * domain.area() / (2.0 * 4.0 * PI * s);
    Ok(AnCheck {
        lhs,
        rhs,
        holds: lhs <= rhs,
    })
}

/// `a^{2+η/4}·A·D^{η/2}`; per volume it decays like `D^{η/2−1}`.
pub fn energy_envelope(domain: &ConvexDomain, a: f64, eta: EtaParameter) -> Result<f64> {
    require_positive("a", a)?;
    domain.validate()?;
    let e = eta.value();
    Ok(a.powf(2.0 + 0.25 * e) * domain.area() * domain.diameter().powf(0.5 * e))
}

/// `a^{1+η/2}·A·D^{η/2}/V`.
pub fn depletion_envelope_zero_t(domain: &ConvexDomain, a: f64, eta: EtaParameter) -> Result<f64> {
    require_positive("a", a)?;
    domain.validate()?;
    let e = eta.value();
    Ok(a.powf(1.0 + 0.5 * e) * domain.area() * domain.diameter().powf(0.5 * e) / domain.volume())
}

/// `A·D^{η/2}/V`, the geometric factor shared by the envelopes.
pub fn area_envelope_density(domain: &ConvexDomain, eta: EtaParameter) -> Result<f64> {
    domain.validate()?;
    Ok(domain.area() * domain.diameter().powf(0.5 * eta.value()) / domain.volume())
}

/// `(a + a²/β)·D^{−(1−η/4)}` with both free constants set to one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FiniteTEnvelope {
    /// `a·D^{−(1−η/4)}`.
    pub coupling_part: f64,
    /// `(a²/β)·D^{−(1−η/4)}`.
    pub thermal_part: f64,
    pub total: f64,
}

pub fn depletion_envelope_finite_t(
    domain: &ConvexDomain,
    a: f64,
    beta: f64,
    eta: EtaParameter,
) -> Result<FiniteTEnvelope> {
    require_positive("a", a)?;
    require_positive("beta", beta)?;
    domain.validate()?;
    let decay = domain.diameter().powf(-(1.0 - 0.25 * eta.value()));
    let coupling_part = a * decay;
    let thermal_part = a * a / beta * decay;
    Ok(FiniteTEnvelope {
        coupling_part,
        thermal_part,
        total: coupling_part + thermal_part,
    })
}
