use super::gamma::gamma;
use super::SpecFunConfig;
use crate::error::{invalid, Error, Result};

/// Above this fugacity the direct sum is replaced by Euler–Maclaurin.
const DIRECT_LIMIT: f64 = 0.99;
/// Number of explicit terms before the Euler–Maclaurin tail.
const EM_START: usize = 64;
/// `B_{2k} / (2k)!` for `k = 1..=6`.
const BERNOULLI_OVER_FACT: [f64; 6] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30_240.0,
    -1.0 / 1_209_600.0,
    1.0 / 47_900_160.0,
    -691.0 / 1_307_674_368_000.0,
];
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Bose function `g_s(z) = Σ_{j≥1} z^j / j^s` with default tolerances.
pub fn bose_g(s: f64, z: f64) -> Result<f64> {
    bose_g_with(s, z, &SpecFunConfig::default())
}

/// Bose function with explicit tolerances.
///
/// For `z ≤ 0.99` the series is summed directly until the tail bound
/// `z^{J+1}(J+1)^{-s}·min(1/(1-z), 1 + (J+1)/(s-1))` falls below
/// `series_rel_tol` times the partial sum. Closer to `z = 1` the first 63 terms
/// are summed explicitly and the remainder is the Euler–Maclaurin tail, whose
/// integral part is `N^{1-s}E_s(wN)` with `w = -ln z`.
pub fn bose_g_with(s: f64, z: f64, cfg: &SpecFunConfig) -> Result<f64> {
    cfg.validate()?;
    if !(s > 1.0 && s.is_finite()) {
        return Err(invalid(format!("bose_g requires s > 1, got {s}")));
    }
    if !(0.0..=1.0).contains(&z) {
        return Err(invalid(format!("bose_g requires 0 ≤ z ≤ 1, got {z}")));
    }
    if z == 0.0 {
        return Ok(0.0);
    }
    if z <= DIRECT_LIMIT || s >= 20.0 {
        direct(s, z, cfg)
    } else {
        Ok(euler_maclaurin(s, -z.ln()))
    }
}

fn direct(s: f64, z: f64, cfg: &SpecFunConfig) -> Result<f64> {
    let mut sum = 0.0;
    let mut zj = 1.0;
    for j in 1..=cfg.max_terms {
        zj *= z;
        let jf = j as f64;
        sum += zj / jf.powf(s);
        let next = jf + 1.0;
        let head = zj * z / next.powf(s);
        let tail = if z < 1.0 {
            head * (1.0 / (1.0 - z)).min(1.0 + next / (s - 1.0))
        } else {
            head * (1.0 + next / (s - 1.0))
        };
        if tail < cfg.series_rel_tol * sum {
            return Ok(sum);
        }
    }
    Err(Error::TermCap(cfg.max_terms))
}

fn euler_maclaurin(s: f64, w: f64) -> f64 {
    let n = EM_START as f64;
    let head: f64 = (1..EM_START)
        .map(|j| {
            let j = j as f64;
            (-w * j).exp() * j.powf(-s)
        })
        .sum();
    let integral = n.powf(1.0 - s) * exp_integral_e(s, w * n);
    let mut tail = integral + 0.5 * (-w * n).exp() * n.powf(-s);
    for (k, c) in BERNOULLI_OVER_FACT.iter().enumerate() {
        tail -= c * derivative(s, w, n, 2 * k + 1);
    }
    head + tail
}

/// `d^m/dx^m [e^{-wx} x^{-s}]` by the Leibniz rule.
fn derivative(s: f64, w: f64, x: f64, m: usize) -> f64 {
    let mut binom = 1.0;
    let mut power_part = x.powf(-s);
    let mut total = 0.0;
    for i in 0..=m {
        // C(m,i) (-w)^{m-i} d^i/dx^i x^{-s}
        total += binom * (-w).powi((m - i) as i32) * power_part;
        binom *= (m - i) as f64 / (i + 1) as f64;
        power_part *= (-s - i as f64) / x;
    }
    total * (-w * x).exp()
}

/// Generalized exponential integral `E_s(y) = ∫_1^∞ e^{-yt} t^{-s} dt` for
/// `s > 1` and small `y ≥ 0`.
fn exp_integral_e(s: f64, y: f64) -> f64 {
    if y == 0.0 {
        return 1.0 / (s - 1.0);
    }
    let nearest = s.round();
    if (s - nearest).abs() < 1e-8 {
        return exp_integral_e_integer(nearest as usize, y);
    }
    let mut sum = 0.0;
    let mut term = 1.0; // (-y)^k / k!
    for k in 0..200 {
        let kf = k as f64;
        if k > 0 {
            term *= -y / kf;
        }
        let add = term / (1.0 - s + kf);
        sum += add;
        if kf > s && add.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    gamma(1.0 - s) * y.powf(s - 1.0) - sum
}

fn exp_integral_e_integer(n: usize, y: f64) -> f64 {
    let m = n - 1;
    let psi = -EULER_GAMMA + (1..n).map(|k| 1.0 / k as f64).sum::<f64>();
    let mut sum = 0.0;
    let mut term = 1.0;
    let mut singular = 0.0;
    for k in 0..200 {
        let kf = k as f64;
        if k > 0 {
            term *= -y / kf;
        }
        if k == m {
            singular = term;
            continue;
        }
        let add = term / (kf - m as f64);
        sum += add;
        if k > m && add.abs() < 1e-18 * sum.abs().max(1e-300) {
            break;
        }
    }
    singular * (psi - y.ln()) - sum
}
