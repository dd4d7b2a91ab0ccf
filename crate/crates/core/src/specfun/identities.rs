//! Residuals of the integral identities used in the depletion and energy
//! bounds. Each residual integrates one side numerically and compares with the
//! closed form built from [`bessel_i_scaled`](super::bessel_i_scaled) or
//! [`bessel_k`](super::bessel_k).

use std::f64::consts::{FRAC_PI_2, PI};

use super::bessel::{bessel_k_unchecked, scaled_i};
use super::gamma::gamma;
use super::SpecFunConfig;
use crate::error::{invalid, require_positive, Error, Result};
use crate::quad::{self, QuadOptions};

/// Orders accepted by the scaled-I evaluator used in the 6.682 residual.
const REDUCED_ORDERS: [f64; 5] = [-1.0, -0.5, 0.0, 0.5, 1.0];
const MAX_HALF_PERIODS: usize = 400;

pub fn residual_i1_identity(u: f64) -> Result<f64> {
    residual_i1_identity_with(u, &SpecFunConfig::default())
}

/// `|(2/π)∫₀¹ √(1-y²) cosh(uy) dy − I₁(u)/u| / (I₁(u)/u)`.
///
/// With `y = sin θ` the integrand becomes `cos²θ·cosh(u sin θ)`, smooth on
/// `[0, π/2]`; both sides are multiplied by `e^{-u}`.
pub fn residual_i1_identity_with(u: f64, cfg: &SpecFunConfig) -> Result<f64> {
    require_positive("u", u)?;
    cfg.validate()?;
    let f = |theta: f64| {
        let (s, c) = theta.sin_cos();
        c * c * 0.5 * ((-u * (1.0 - s)).exp() + (-u * (1.0 + s)).exp())
    };
    let lhs = 2.0 / PI * quad::adaptive(&f, 0.0, FRAC_PI_2, &quad_opts(cfg))?.value;
    let rhs = scaled_i(1.0, u) / u;
    Ok(((lhs - rhs) / rhs).abs())
}

pub fn residual_k_integral_rep(order: f64, x: f64) -> Result<f64> {
    residual_k_integral_rep_with(order, x, &SpecFunConfig::default())
}

/// Larger of the two relative residuals returned by [`k_integral_reps`].
pub fn residual_k_integral_rep_with(order: f64, x: f64, cfg: &SpecFunConfig) -> Result<f64> {
    let (exp_rep, cos_rep) = k_integral_reps(order, x, cfg)?;
    let k = bessel_k_unchecked(order, x);
    let r1 = ((exp_rep - k) / k).abs();
    let r2 = ((cos_rep - k) / k).abs();
    Ok(r1.max(r2))
}

/// `K_ν(x)` from two integral representations, `0 < ν < 1`:
///
/// * `√(π/2x)·e^{-x}/Γ(ν+½) ∫₀^∞ e^{-s} s^{ν-½} (1 + s/2x)^{ν-½} ds`
/// * `Γ(ν+½)·2^ν/(√π·x^ν) ∫₀^∞ cos(xt) (1+t²)^{-ν-½} dt`
///
/// The oscillatory integral is summed over the half-periods between the zeros
/// of `cos(xt)` and the partial sums are accelerated with Wynn's epsilon
/// algorithm.
pub fn k_integral_reps(order: f64, x: f64, cfg: &SpecFunConfig) -> Result<(f64, f64)> {
    if !(order > 0.0 && order < 1.0) {
        return Err(invalid(format!("order must lie in (0, 1), got {order}")));
    }
    require_positive("x", x)?;
    cfg.validate()?;
    let opts = quad_opts(cfg);
    let g = gamma(order + 0.5);

    let p = order - 0.5;
    let f = |s: f64| (-s).exp() * s.powf(p) * (1.0 + s / (2.0 * x)).powf(p);
    let exp_int = quad::positive_axis(&f, 1.0, &opts)?.value;
    let exp_rep = (PI / (2.0 * x)).sqrt() * (-x).exp() / g * exp_int;

    let cos_int = oscillatory_cosine(order, x, cfg)?;
    let cos_rep = g * 2f64.powf(order) / (PI.sqrt() * x.powf(order)) * cos_int;
    Ok((exp_rep, cos_rep))
}

fn oscillatory_cosine(order: f64, x: f64, cfg: &SpecFunConfig) -> Result<f64> {
    let power = -order - 0.5;
    let f = |t: f64| (x * t).cos() * (1.0 + t * t).powf(power);
    let piece_opts = QuadOptions {
        rel_tol: 1e-12,
        abs_tol: 1e-16,
        ..QuadOptions::default()
    };
    let zero = |k: usize| (k as f64 + 0.5) * PI / x;
    let mut partial = Vec::with_capacity(MAX_HALF_PERIODS);
    let mut running = quad::adaptive(&f, 0.0, zero(0), &piece_opts)?.value;
    partial.push(running);
    let mut last = f64::NAN;
    let mut agreed = 0;
    for k in 0..MAX_HALF_PERIODS {
        running += quad::adaptive(&f, zero(k), zero(k + 1), &piece_opts)?.value;
        partial.push(running);
        if partial.len() < 8 {
            continue;
        }
        let est = wynn_epsilon(&partial);
        if (est - last).abs() <= 0.1 * cfg.quad_rel_tol * est.abs() {
            agreed += 1;
            if agreed >= 2 {
                return Ok(est);
            }
        } else {
            agreed = 0;
        }
        last = est;
    }
    Err(Error::Tolerance {
        requested: cfg.quad_rel_tol,
        estimated: ((wynn_epsilon(&partial) - last) / last).abs(),
    })
}

/// Wynn's epsilon algorithm; returns the deepest even-column entry.
fn wynn_epsilon(sums: &[f64]) -> f64 {
    let mut prev = vec![0.0; sums.len() + 1];
    let mut cur = sums.to_vec();
    let mut best = *sums.last().unwrap_or(&0.0);
    let mut column = 0;
    while cur.len() > 1 {
        let mut next = Vec::with_capacity(cur.len() - 1);
        for i in 0..cur.len() - 1 {
            let d = cur[i + 1] - cur[i];
            if d == 0.0 || !d.is_finite() {
                return best;
            }
            next.push(prev[i + 1] + 1.0 / d);
        }
        column += 1;
        prev = cur;
        cur = next;
        if column % 2 == 0 {
            best = *cur.last().unwrap_or(&best);
        }
    }
    best
}

pub fn residual_gr6682(mu: f64, nu: f64, x: f64) -> Result<f64> {
    residual_gr6682_with(mu, nu, x, &SpecFunConfig::default())
}

/// Relative residual of
/// `∫₀^{π/2} cos(2μθ) I_{2ν}(2x cos θ) dθ = (π/2) I_{ν-μ}(x) I_{ν+μ}(x)`,
/// both sides scaled by `e^{-2x}`. The orders `2ν`, `ν-μ`, `ν+μ` must lie in
/// `{-1, -1/2, 0, 1/2, 1}` with `2ν ≥ 0`.
pub fn residual_gr6682_with(mu: f64, nu: f64, x: f64, cfg: &SpecFunConfig) -> Result<f64> {
    require_positive("x", x)?;
    cfg.validate()?;
    if !(mu >= 0.0 && nu >= 0.0) {
        return Err(invalid("mu and nu must be non-negative"));
    }
    let supported = |o: f64| REDUCED_ORDERS.contains(&o);
    let inner = 2.0 * nu;
    if !(supported(inner) && supported(nu - mu) && supported(nu + mu)) {
        return Err(invalid(format!(
            "orders 2ν={inner}, ν-μ={}, ν+μ={} not in the supported set",
            nu - mu,
            nu + mu
        )));
    }
    let f = |theta: f64| {
        let c = theta.cos();
        (2.0 * mu * theta).cos() * scaled_i(inner, 2.0 * x * c) * (-2.0 * x * (1.0 - c)).exp()
    };
    // cos(2μθ) may cancel most of the integrand; the scaled integrand is
    // bounded by one, so an absolute floor near machine precision is safe
    let opts = QuadOptions {
        abs_tol: 1e-13,
        ..quad_opts(cfg)
    };
    let lhs = quad::adaptive(&f, 0.0, FRAC_PI_2, &opts)?.value;
    let rhs = FRAC_PI_2 * scaled_i(nu - mu, x) * scaled_i(nu + mu, x);
    Ok(((lhs - rhs) / rhs).abs())
}

fn quad_opts(cfg: &SpecFunConfig) -> QuadOptions {
    QuadOptions {
        rel_tol: cfg.quad_rel_tol.min(1e-12),
        ..QuadOptions::default()
    }
}
