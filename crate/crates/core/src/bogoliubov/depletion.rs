use std::f64::consts::PI;

use super::{
    box_spectrum, flat, integrate_up_to, integration_time, nonfinite, trace_time,
    BogoliubovParams, QuadratureConfig, TimeConvention,
};
use crate::error::Result;
use crate::geometry::ConvexDomain;
use crate::heat_kernel::trace_prime_excess_from_sides;
use crate::quad;
use crate::specfun::scaled_i;

/// `Ξ = ∫₀^∞ u^{-3/2} e^{-u} I₁(u) du = 4√2/(3√π)`.
#[allow(clippy::excessive_precision)]
pub const XI: f64 = 1.063_846_081_070_487_1;

/// Flat-space zero-temperature depletion `(a/2)(4π)^{-3/2} a^{1/2} Ξ`,
/// equal to `√2·a^{3/2}/(12π²)`.
pub fn bulk_depletion_zero_t(p: &BogoliubovParams) -> Result<f64> {
    p.validate()?;
    let a = p.a();
    Ok(0.5 * a * (4.0 * PI).powf(-1.5) * a.sqrt() * XI)
}

/// `n_e(0) − bulk`:
/// `(a/2)∫₀^∞ [Tr′e^{tΔ}/V − (4πt)^{-3/2}] e^{-at}I₁(at) dt`.
pub fn depletion_zero_t_deviation(
    domain: &ConvexDomain,
    p: &BogoliubovParams,
    q: &QuadratureConfig,
) -> Result<f64> {
    p.validate()?;
    q.validate()?;
    let (sides, lambda1) = box_spectrum(domain)?;
    let a = p.a();
    let conv = TimeConvention::Depletion;
    let t_cut = integration_time(conv, q.tail_cut_factor / lambda1, a);
    let opts = q.opts();
    let diff = |t: f64| {
        trace_prime_excess_from_sides(&sides, trace_time(conv, t, a)) * scaled_i(1.0, a * t)
    };
    let inner = integrate_up_to(&diff, t_cut, q.t_split, &opts)?;
    let flat_tail = |t: f64| flat(trace_time(conv, t, a)) * scaled_i(1.0, a * t);
    let outer = quad::to_infinity(&flat_tail, t_cut, &opts)?.value;
    let d = 0.5 * a * (inner - outer);
    if d.is_finite() {
        Ok(d)
    } else {
        Err(nonfinite("depletion deviation"))
    }
}

/// Zero-temperature depletion density in a box,
/// `(a/2)∫₀^∞ Tr′e^{tΔ}/V · e^{-at}I₁(at) dt`.
pub fn depletion_zero_t(
    domain: &ConvexDomain,
    p: &BogoliubovParams,
    q: &QuadratureConfig,
) -> Result<f64> {
    Ok(bulk_depletion_zero_t(p)? + depletion_zero_t_deviation(domain, p, q)?)
}
