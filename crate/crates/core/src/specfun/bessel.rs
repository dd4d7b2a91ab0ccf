use std::f64::consts::PI;

use super::gamma::temme_gammas;
use crate::error::{invalid, require_nonneg, require_positive, Result};

/// Power series is used up to this argument, the asymptotic expansion beyond.
const SERIES_LIMIT: f64 = 30.0;

/// Below this argument `K_ν` uses Temme's series, above it Steed's
/// continued fraction.
const TEMME_LIMIT: f64 = 2.0;

/// `e^{-x}·I_ν(x)` for `ν ∈ {0, 1/2, 1}`.
///
/// The unscaled function overflows near `x ≈ 710`; every integrand that needs
/// `I_ν` pairs it with a decaying exponential, so only the scaled form is
/// exposed.
pub fn bessel_i_scaled(order: f64, x: f64) -> Result<f64> {
    if !(order == 0.0 || order == 0.5 || order == 1.0) {
        return Err(invalid(format!(
            "bessel_i_scaled supports orders 0, 1/2 and 1, got {order}"
        )));
    }
    require_nonneg("x", x)?;
    Ok(scaled_i(order, x))
}

/// Scaled `I_ν` for the reduced order set `{-1, -1/2, 0, 1/2, 1}`; callers
/// validate the order.
pub(crate) fn scaled_i(order: f64, x: f64) -> f64 {
    let order = if order == -1.0 { 1.0 } else { order };
    if order == 0.5 {
        if x == 0.0 {
            return 0.0;
        }
        return (2.0 / (PI * x)).sqrt() * (-0.5 * (-2.0 * x).exp_m1());
    }
    if order == -0.5 {
        return (2.0 / (PI * x)).sqrt() * 0.5 * (1.0 + (-2.0 * x).exp());
    }
    if x == 0.0 {
        return if order == 0.0 { 1.0 } else { 0.0 };
    }
    if x <= SERIES_LIMIT {
        series_i(order, x) * (-x).exp()
    } else {
        asymptotic_scaled_i(order, x)
    }
}

fn series_i(order: f64, x: f64) -> f64 {
    let half = 0.5 * x;
    let q = half * half;
    // (x/2)^ν / Γ(ν+1) for ν ∈ {0, 1}
    let mut term = if order == 0.0 { 1.0 } else { half };
    let mut sum = term;
    for k in 1..500 {
        let k = k as f64;
        term *= q / (k * (k + order));
        sum += term;
        if term < 1e-17 * sum {
            break;
        }
    }
    sum
}

fn asymptotic_scaled_i(order: f64, x: f64) -> f64 {
    let mu = 4.0 * order * order;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        let next = -term * (mu - odd * odd) / (8.0 * k as f64 * x);
        if next.abs() > term.abs() {
            break;
        }
        term = next;
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    sum / (2.0 * PI * x).sqrt()
}

/// Modified Bessel function of the second kind `K_ν(x)` for `0 < ν ≤ 1`.
///
/// Temme's series (x < 2) or Steed's continued fraction (x ≥ 2) give `K_μ`
/// and `K_{μ+1}` for `|μ| ≤ 1/2`; orders above one half are reached as
/// `K_{μ+1}` with `μ = ν - 1`.
pub fn bessel_k(order: f64, x: f64) -> Result<f64> {
    if !(order > 0.0 && order <= 1.0) {
        return Err(invalid(format!("bessel_k supports 0 < ν ≤ 1, got {order}")));
    }
    require_positive("x", x)?;
    Ok(bessel_k_unchecked(order, x))
}

pub(crate) fn bessel_k_unchecked(order: f64, x: f64) -> f64 {
    let shift = (order + 0.5).floor();
    let mu = order - shift;
    let (k_mu, k_mu1) = if x < TEMME_LIMIT {
        temme_pair(mu, x)
    } else {
        steed_pair(mu, x)
    };
    if shift == 0.0 {
        k_mu
    } else {
        k_mu1
    }
}

fn temme_pair(mu: f64, x: f64) -> (f64, f64) {
    let mu2 = mu * mu;
    let x2 = 0.5 * x;
    let pimu = PI * mu;
    let fact = if pimu.abs() < 1e-16 { 1.0 } else { pimu / pimu.sin() };
    let d = -x2.ln();
    let e = mu * d;
    let fact2 = if e.abs() < 1e-16 { 1.0 } else { e.sinh() / e };
    let (gam1, gam2) = temme_gammas(mu);
    // 1/Γ(1+μ) and 1/Γ(1-μ)
    let gampl = gam2 - mu * gam1;
    let gammi = gam2 + mu * gam1;
    let mut ff = fact * (gam1 * e.cosh() + gam2 * fact2 * d);
    let mut sum = ff;
    let ee = e.exp();
    let mut p = 0.5 * ee / gampl;
    let mut q = 0.5 / (ee * gammi);
    let mut c = 1.0;
    let dd = x2 * x2;
    let mut sum1 = p;
    for i in 1..10_000 {
        let fi = i as f64;
        ff = (fi * ff + p + q) / (fi * fi - mu2);
        c *= dd / fi;
        p /= fi - mu;
        q /= fi + mu;
        let del = c * ff;
        sum += del;
        let del1 = c * (p - fi * ff);
        sum1 += del1;
        if del.abs() < sum.abs() * 1e-17 {
            break;
        }
    }
    (sum, sum1 * 2.0 / x)
}

fn steed_pair(mu: f64, x: f64) -> (f64, f64) {
    let mu2 = mu * mu;
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut delh = d;
    let mut h = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let a1 = 0.25 - mu2;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..100_000 {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < 1e-17 {
            break;
        }
    }
    h *= a1;
    let k_mu = (PI / (2.0 * x)).sqrt() * (-x).exp() / s;
    let k_mu1 = k_mu * (mu + x + 0.5 - h) / x;
    (k_mu, k_mu1)
}
