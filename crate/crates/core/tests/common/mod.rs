#![allow(dead_code)]
//! Reference quadrature for tests: double-exponential (tanh-sinh and
//! exp-sinh) rules, independent of the library's Gauss–Kronrod code.

use std::f64::consts::FRAC_PI_2;

/// `∫_a^b f` by tanh-sinh with step halving until two levels agree.
pub fn tanh_sinh<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel: f64) -> f64 {
    let half = 0.5 * (b - a);
    let eval = |t: f64| {
        let u = FRAC_PI_2 * t.sinh();
        let w = FRAC_PI_2 * t.cosh() / u.cosh().powi(2);
        // distance to the nearer endpoint, computed without cancellation
        let d = half / (u.abs().exp() * u.cosh());
        if d == 0.0 || !w.is_finite() || w == 0.0 {
            return 0.0;
        }
        let x = if t >= 0.0 { b - d } else { a + d };
        f(x) * w * half
    };
    let sum_level = |h: f64, odd_only: bool| {
        let mut s = 0.0;
        let mut k = 1usize;
        loop {
            if odd_only && k.is_multiple_of(2) {
                k += 1;
                continue;
            }
            let t = k as f64 * h;
            if t > 6.5 {
                break;
            }
            s += eval(t) + eval(-t);
            k += 1;
        }
        s
    };
    let mut h = 0.5;
    let mut total = eval(0.0) + sum_level(h, false);
    let mut prev = total * h;
    for _ in 0..12 {
        h *= 0.5;
        total += sum_level(h, true);
        let est = total * h;
        if (est - prev).abs() <= rel * est.abs() {
            return est;
        }
        prev = est;
    }
    prev
}

/// `∫_0^∞ f` by the substitution `x = e^{π/2·sinh t}` (exp-sinh).
pub fn exp_sinh<F: Fn(f64) -> f64>(f: F, rel: f64) -> f64 {
    let eval = |t: f64| {
        let u = FRAC_PI_2 * t.sinh();
        if u.abs() > 700.0 {
            return 0.0;
        }
        let x = u.exp();
        let w = FRAC_PI_2 * t.cosh() * x;
        let v = f(x) * w;
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    let mut h = 0.5;
    let range = 6.0;
    let level = |h: f64, odd_only: bool| {
        let mut s = 0.0;
        let n = (range / h) as i64;
        for k in 1..=n {
            if odd_only && k % 2 == 0 {
                continue;
            }
            let t = k as f64 * h;
            s += eval(t) + eval(-t);
        }
        s
    };
    let mut total = eval(0.0) + level(h, false);
    let mut prev = total * h;
    for _ in 0..12 {
        h *= 0.5;
        total += level(h, true);
        let est = total * h;
        if (est - prev).abs() <= rel * est.abs() {
            return est;
        }
        prev = est;
    }
    prev
}

/// `e^{-x}I₁(x)` from `I₁(x) = (x/π)∫₀^π e^{x cos θ} sin²θ dθ`.
pub fn scaled_i1_oracle(x: f64) -> f64 {
    x * scaled_i1_over_x_oracle(x)
}

/// `e^{-x}I₁(x)/x` from the same angular integral.
pub fn scaled_i1_over_x_oracle(x: f64) -> f64 {
    tanh_sinh(
        |th| (x * (th.cos() - 1.0)).exp() * th.sin().powi(2),
        0.0,
        std::f64::consts::PI,
        1e-14,
    ) / std::f64::consts::PI
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64))
        .collect()
}

/// `∫₀^∞ t^{-3/2}∫₀^1 F(t,x) dx dt` by nested double-exponential quadrature,
/// with `F` written cancellation-free at small `t`.
pub fn energy_constant_oracle() -> f64 {
    let f = |t: f64, x: f64| (1.0 - x * x).sqrt() * (-(-t * (1.0 - x)).exp_m1() - (-t * (1.0 + x)).exp_m1());
    let inner = |t: f64| tanh_sinh(|x| f(t, x), 0.0, 1.0, 1e-13);
    exp_sinh(|t| t.powf(-1.5) * inner(t), 1e-11)
}

/// `∫₀^∞ u^{-3/2}e^{-u}I₁(u) du` with the Bessel factor from its angular
/// integral. Split at `u = 1`; the tail is mapped by `u = 1/v` up to
/// `u = 1e8`, beyond which `e^{-u}I₁(u) ≈ (2πu)^{-1/2}(1 + 3/(8u))`.
pub fn depletion_constant_oracle() -> f64 {
    use std::f64::consts::PI;
    let f = |u: f64| scaled_i1_over_x_oracle(u) / u.sqrt();
    let head = tanh_sinh(f, 0.0, 1.0, 1e-13);
    let cut = 1e-8;
    let tail = tanh_sinh(|v| f(1.0 / v) / (v * v), cut, 1.0, 1e-13);
    let rest = cut / (2.0 * PI).sqrt() * (1.0 + 3.0 * cut / 16.0);
    head + tail + rest
}

/// `ζ(3/2) = (2/√π)∫₀^∞ √t/(e^t − 1) dt`.
pub fn zeta_three_halves_oracle() -> f64 {
    2.0 / std::f64::consts::PI.sqrt() * exp_sinh(|t| t.sqrt() / t.exp_m1(), 1e-14)
}
