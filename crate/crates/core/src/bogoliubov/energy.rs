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

/// `∫₀^∞ t^{-3/2} ∫₀¹ F(t,x) dx dt = 32√(2π)/15`.
#[allow(clippy::excessive_precision)]
pub const J: f64 = 5.347_473_652_546_134_4;

/// `Φ(t) = ∫₀¹ F(t,x) dx = (π/2)(1 − 2e^{-t}I₁(t)/t)`.
pub fn phi(t: f64) -> f64 {
    if t <= 1.0 {
        // 2I₁(t)/t = Σ (t²/4)^k / (k!(k+1)!) = 1 + S
        let q = 0.25 * t * t;
        let mut term = 1.0;
        let mut s = 0.0;
        for k in 1..30 {
            let k = k as f64;
            term *= q / (k * (k + 1.0));
            s += term;
            if term < 1e-17 * s {
                break;
            }
        }
        0.5 * PI * (-(-t).exp_m1() - (-t).exp() * s)
    } else {
        0.5 * PI * (1.0 - 2.0 * scaled_i(1.0, t) / t)
    }
}

/// Flat-space energy density `u₀n₀²/2 − (a/2π)(a/4π)^{3/2}·J`.
pub fn bulk_energy_density(p: &BogoliubovParams) -> Result<f64> {
    p.validate()?;
    let a = p.a();
    Ok(0.5 * p.u0 * p.n0 * p.n0 - a / (2.0 * PI) * (a / (4.0 * PI)).powf(1.5) * J)
}

/// `E/V − bulk_energy_density`:
/// `−(a/2π)∫₀^∞ Φ(t)[Tr′e^{(t/a)Δ}/V − (a/4πt)^{3/2}] dt`.
///
/// The box part is cut at `t_c`, where the slowest mode has decayed by
/// `tail_cut_factor` e-folds; the flat part beyond `t_c` is integrated to
/// infinity separately.
pub fn energy_density_deviation(
    domain: &ConvexDomain,
    p: &BogoliubovParams,
    q: &QuadratureConfig,
) -> Result<f64> {
    p.validate()?;
    q.validate()?;
    let (sides, lambda1) = box_spectrum(domain)?;
    let a = p.a();
    let conv = TimeConvention::Energy;
    let t_cut = integration_time(conv, q.tail_cut_factor / lambda1, a);
    let opts = q.opts();
    let diff = |t: f64| phi(t) * trace_prime_excess_from_sides(&sides, trace_time(conv, t, a));
    let inner = integrate_up_to(&diff, t_cut, q.t_split, &opts)?;
    let flat_tail = |t: f64| phi(t) * flat(trace_time(conv, t, a));
    let outer = quad::to_infinity(&flat_tail, t_cut, &opts)?.value;
    let d = -a / (2.0 * PI) * (inner - outer);
    if d.is_finite() {
        Ok(d)
    } else {
        Err(nonfinite("energy deviation"))
    }
}

/// Ground-state energy per volume in a box.
pub fn ground_state_energy_density(
    domain: &ConvexDomain,
    p: &BogoliubovParams,
    q: &QuadratureConfig,
) -> Result<f64> {
    Ok(bulk_energy_density(p)? + energy_density_deviation(domain, p, q)?)
}

/// `E_gr = u₀n₀²V/2 − (aV/2π)∫₀^∞ dt ∫₀¹ dx F(t,x) Tr′e^{(t/a)Δ}/V`.
pub fn ground_state_energy(
    domain: &ConvexDomain,
    p: &BogoliubovParams,
    q: &QuadratureConfig,
) -> Result<f64> {
    Ok(domain.volume() * ground_state_energy_density(domain, p, q)?)
}
