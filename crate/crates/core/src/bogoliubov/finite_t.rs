use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    box_spectrum, flat, integrate_up_to, nonfinite, BogoliubovParams, QuadratureConfig,
};
use crate::error::{Error, Result};
use crate::geometry::ConvexDomain;
use crate::heat_kernel::{trace_prime_excess_from_sides, trace_prime_from_sides};
use crate::quad::{self, QuadOptions};
use crate::specfun::{bose_g, scaled_i};

/// Terms summed explicitly before the Euler–Maclaurin tail of the flat sum.
const EXPLICIT_TERMS: usize = 64;

/// Finite-temperature depletion and its pieces:
/// `Σ_k [Tr e^{kβΔ}/V · e^{-kβa} + a∫₀^∞ Tr′e^{σΔ}/V · e^{-aσ}I₁(at) dt]`,
/// `σ = √((kβ)² + t²)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FiniteTemperatureDepletion {
    pub total: f64,
    /// `Σ_k Tr′e^{kβΔ}/V · e^{-kβa}`.
    pub thermal_term: f64,
    /// `Σ_k a∫ Tr′e^{σΔ}/V · e^{-aσ}I₁(at) dt`.
    pub integral_term: f64,
    /// Constant-mode part of the first term, `1/(V(e^{βa} − 1))`.
    pub zero_mode_term: f64,
    pub zero_mode_included: bool,
    /// Number of `k` terms summed in the box.
    pub k_terms: usize,
    /// `total − bulk_depletion_finite_t`.
    pub deviation: f64,
}

/// Flat-space `k`-th integral term `a∫₀^∞ (4πσ)^{-3/2} e^{-aσ} I₁(at) dt`
/// at `κ = kβ`, and its derivative in `κ`.
fn flat_integral(kappa: f64, a: f64, opts: &QuadOptions) -> Result<f64> {
    let f = |t: f64| {
        let sigma = kappa.hypot(t);
        flat(sigma) * (-a * kappa * kappa / (sigma + t)).exp() * scaled_i(1.0, a * t)
    };
    Ok(a * quad::positive_axis(&f, kappa, opts)?.value)
}

fn flat_integral_dkappa(kappa: f64, a: f64, opts: &QuadOptions) -> Result<f64> {
    let f = |t: f64| {
        let sigma = kappa.hypot(t);
        let d = -(1.5 / sigma + a) * kappa / sigma;
        flat(sigma) * (-a * kappa * kappa / (sigma + t)).exp() * scaled_i(1.0, a * t) * d
    };
    Ok(a * quad::positive_axis(&f, kappa, opts)?.value)
}

/// `Σ_{k≥k0}` of the flat-space summand.
fn flat_sum_from(k0: usize, a: f64, beta: f64, opts: &QuadOptions) -> Result<f64> {
    let z = (-beta * a).exp();
    let head: f64 = (1..k0)
        .map(|k| (k as f64).powf(-1.5) * z.powi(k as i32))
        .sum();
    let thermal = (4.0 * std::f64::consts::PI * beta).powf(-1.5) * (bose_g(1.5, z)? - head);

    let n = k0 + EXPLICIT_TERMS;
    let explicit: Vec<f64> = (k0..n)
        .into_par_iter()
        .map(|k| flat_integral(k as f64 * beta, a, opts))
        .collect::<Result<_>>()?;
    let explicit: f64 = explicit.iter().sum();
    // Σ_{k≥N} f(k) ≈ ∫_N^∞ f + f(N)/2 − f′(N)/12
    let nf = n as f64;
    let f_n = flat_integral(nf * beta, a, opts)?;
    let tail_opts = QuadOptions {
        abs_tol: 1e-3 * opts.rel_tol * f_n.abs(),
        ..*opts
    };
    let f_of_k = |k: f64| flat_integral(k * beta, a, &tail_opts).unwrap_or(f64::NAN);
    let integral = quad::to_infinity(&f_of_k, nf, &tail_opts)?.value;
    let tail = integral + 0.5 * f_n - beta * flat_integral_dkappa(nf * beta, a, opts)? / 12.0;
    let total = thermal + explicit + tail;
    if total.is_finite() {
        Ok(total)
    } else {
        Err(nonfinite("flat finite-temperature sum"))
    }
}

/// Flat-space finite-temperature depletion
/// `Σ_k [(4πkβ)^{-3/2}e^{-kβa} + a∫₀^∞ (4πσ)^{-3/2} e^{-aσ}I₁(at) dt]`.
///
/// The first sum is `(4πβ)^{-3/2} g_{3/2}(e^{-βa})`. The second decays like
/// `1/k²`; it is summed explicitly over 64 terms and completed with an
/// Euler–Maclaurin tail.
pub fn bulk_depletion_finite_t(p: &BogoliubovParams) -> Result<f64> {
    p.validate()?;
    let beta = p.beta()?;
    flat_sum_from(1, p.a(), beta, &inner_opts(&QuadratureConfig::default()))
}

fn inner_opts(q: &QuadratureConfig) -> QuadOptions {
    QuadOptions::with_rel_tol((1e-2 * q.rel_tol).max(1e-12))
}

/// Finite-temperature depletion density in a box.
///
/// The `k`-th box term is computed as its difference from the flat-space
/// term, and terms are summed until `kβ` passes the point where the slowest
/// box mode has decayed by `tail_cut_factor` e-folds. The flat-space sum
/// beyond that point is subtracted in closed form, so
/// `total = bulk + Σ_k (box_k − flat_k) − Σ_{k>K} flat_k`.
///
/// The primed trace is used in the integral term because the constant mode
/// makes that integral diverge at large `t`. The constant mode of the first
/// term, `1/(V(e^{βa}−1))`, is reported separately and added to `total` when
/// `include_zero_mode` is set.
pub fn depletion_finite_t(
    domain: &ConvexDomain,
    p: &BogoliubovParams,
    q: &QuadratureConfig,
) -> Result<FiniteTemperatureDepletion> {
    p.validate()?;
    q.validate()?;
    let beta = p.beta()?;
    let (sides, lambda1) = box_spectrum(domain)?;
    let volume = domain.volume();
    let a = p.a();
    let opts = inner_opts(q);
    let sigma_cut = q.tail_cut_factor / lambda1;
    let k_end = (sigma_cut / beta).floor() as usize;
    if k_end > q.k_max {
        return Err(Error::TermCap(q.k_max));
    }

    let deviations: Vec<(f64, f64)> = (1..=k_end)
        .into_par_iter()
        .map(|k| {
            let kappa = k as f64 * beta;
            let decay = (-kappa * a).exp();
            let thermal = trace_prime_from_sides(&sides, kappa) / volume * decay;
            let first = trace_prime_excess_from_sides(&sides, kappa) * decay;
            let t_cut = (sigma_cut * sigma_cut - kappa * kappa).max(0.0).sqrt();
            let weight = |t: f64, sigma: f64| (-a * kappa * kappa / (sigma + t)).exp() * scaled_i(1.0, a * t);
            let box_part = |t: f64| {
                let sigma = kappa.hypot(t);
                trace_prime_excess_from_sides(&sides, sigma) * weight(t, sigma)
            };
            let flat_part = |t: f64| {
                let sigma = kappa.hypot(t);
                flat(sigma) * weight(t, sigma)
            };
            let inner = integrate_up_to(&box_part, t_cut, q.t_split.max(kappa), &opts)?;
            let outer = if t_cut > 0.0 {
                quad::to_infinity(&flat_part, t_cut, &opts)?.value
            } else {
                quad::positive_axis(&flat_part, kappa, &opts)?.value
            };
            Ok((thermal, first + a * (inner - outer)))
        })
        .collect::<Result<_>>()?;

    let thermal_term: f64 = deviations.iter().map(|d| d.0).sum();
    let summed: f64 = deviations.iter().map(|d| d.1).sum();
    let bulk = flat_sum_from(1, a, beta, &opts)?;
    let remainder = flat_sum_from(k_end + 1, a, beta, &opts)?;
    let zero_mode_term = 1.0 / (volume * (beta * a).exp_m1());
    let mut deviation = summed - remainder;
    if q.include_zero_mode {
        deviation += zero_mode_term;
    }
    let total = bulk + deviation;
    if !total.is_finite() {
        return Err(nonfinite("finite-temperature depletion"));
    }
    let zero_part = if q.include_zero_mode { zero_mode_term } else { 0.0 };
    Ok(FiniteTemperatureDepletion {
        total,
        thermal_term,
        integral_term: total - thermal_term - zero_part,
        zero_mode_term,
        zero_mode_included: q.include_zero_mode,
        k_terms: k_end,
        deviation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vanishing_coupling_reduces_to_thermal_zeta() {
        let beta = 1.0;
        // both corrections to the free-gas value are O(√a)
        let p = BogoliubovParams::new(1e-16, 1.0).unwrap().with_beta(beta).unwrap();
        let n = bulk_depletion_finite_t(&p).unwrap();
        let zeta = 2.612_375_348_685_488_3 * (4.0 * std::f64::consts::PI * beta).powf(-1.5);
        assert!(((n - zeta) / zeta).abs() < 1e-7, "{n} vs {zeta}");
    }

    #[test]
    fn missing_beta_is_rejected() {
        let p = BogoliubovParams::new(1.0, 1.0).unwrap();
        assert!(bulk_depletion_finite_t(&p).is_err());
    }
}
