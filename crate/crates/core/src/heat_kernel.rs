//! Heat traces and diagonal heat kernels of `-Δ` on intervals and boxes.
//!
//! On `[0, L]` the Neumann spectrum is `(πn/L)²`, `n ≥ 0`, and the Dirichlet
//! spectrum the same with `n ≥ 1`. Every quantity has a spectral series, fast
//! for `s ≳ L²`, and a method-of-images series, fast for `s ≲ L²`; the two
//! are exchanged by Poisson summation.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, require_positive, Result};
use crate::geometry::ConvexDomain;

/// Relative size of the first omitted term.
const SERIES_TOL: f64 = 1e-16;
const MAX_TERMS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Boundary {
    Neumann,
    Dirichlet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Representation {
    Spectral,
    Image,
    /// Spectral for `s ≥ L²/π`, images otherwise.
    #[default]
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceQuery {
    pub bc: Boundary,
    /// Diffusion time, in length².
    pub s: f64,
    pub representation: Representation,
}

impl TraceQuery {
    pub fn new(bc: Boundary, s: f64) -> Result<Self> {
        require_positive("s", s)?;
        Ok(Self {
            bc,
            s,
            representation: Representation::Auto,
        })
    }

    pub fn neumann(s: f64) -> Result<Self> {
        Self::new(Boundary::Neumann, s)
    }

    pub fn dirichlet(s: f64) -> Result<Self> {
        Self::new(Boundary::Dirichlet, s)
    }

    pub fn with_representation(mut self, representation: Representation) -> Self {
        self.representation = representation;
        self
    }

    fn validate(&self) -> Result<()> {
        require_positive("s", self.s)
    }
}

/// A series value together with an analytic bound on the omitted terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelValue {
    pub value: f64,
    pub truncation_bound: f64,
}

impl KernelValue {
    fn scale(self, c: f64) -> Self {
        Self {
            value: c * self.value,
            truncation_bound: c.abs() * self.truncation_bound,
        }
    }

    fn shift(self, c: f64) -> Self {
        Self {
            value: self.value + c,
            truncation_bound: self.truncation_bound,
        }
    }
}

fn use_spectral(repr: Representation, s: f64, l: f64) -> bool {
    match repr {
        Representation::Spectral => true,
        Representation::Image => false,
        Representation::Auto => s >= l * l / PI,
    }
}

/// `Σ_{n≥1} e^{-c n²}` with the bound `e^{-c(n+1)²}/(1 - e^{-c(2n+3)})` on the
/// omitted terms. `reference` sets the scale against which terms are dropped.
pub(crate) fn gaussian_tail_sum(c: f64, reference: f64) -> KernelValue {
    let mut sum = 0.0;
    for n in 1..MAX_TERMS {
        let nf = n as f64;
        sum += (-c * nf * nf).exp();
        let next = (-c * (nf + 1.0).powi(2)).exp();
        if next <= SERIES_TOL * (reference + sum) {
            let ratio = (-c * (2.0 * nf + 3.0)).exp();
            return KernelValue {
                value: sum,
                truncation_bound: next / (1.0 - ratio),
            };
        }
    }
    KernelValue {
        value: sum,
        truncation_bound: f64::INFINITY,
    }
}

/// Dirichlet interval trace `ε = Σ_{n≥1} e^{-s(πn/L)²}`.
pub(crate) fn dirichlet_sum(l: f64, s: f64, repr: Representation) -> KernelValue {
    if use_spectral(repr, s, l) {
        gaussian_tail_sum(s * (PI / l).powi(2), 0.0)
    } else {
        let pref = l / (4.0 * PI * s).sqrt();
        let images = gaussian_tail_sum(l * l / s, 0.5);
        images.scale(2.0).shift(1.0).scale(pref).shift(-0.5)
    }
}

/// Heat trace of the interval `[0, L]`.
pub fn interval_trace(l: f64, q: &TraceQuery) -> Result<f64> {
    Ok(interval_trace_value(l, q)?.value)
}

pub fn interval_trace_value(l: f64, q: &TraceQuery) -> Result<KernelValue> {
    require_positive("L", l)?;
    q.validate()?;
    let eps = dirichlet_sum(l, q.s, q.representation);
    Ok(match q.bc {
        Boundary::Dirichlet => eps,
        Boundary::Neumann => eps.shift(1.0),
    })
}

fn require_box(domain: &ConvexDomain) -> Result<[f64; 3]> {
    domain.validate()?;
    domain
        .box_sides()
        .ok_or_else(|| invalid("heat traces are implemented for boxes and cubes only"))
}

/// Product of the three interval traces.
pub fn box_trace(domain: &ConvexDomain, q: &TraceQuery) -> Result<f64> {
    let sides = require_box(domain)?;
    sides
        .iter()
        .try_fold(1.0, |acc, &l| Ok(acc * interval_trace(l, q)?))
}

/// Neumann box trace with the constant mode removed, `∏(1+εᵢ) − 1`,
/// expanded so that no cancellation occurs when every `εᵢ` is small.
pub fn box_trace_prime(domain: &ConvexDomain, s: f64) -> Result<f64> {
    let sides = require_box(domain)?;
    require_positive("s", s)?;
    Ok(trace_prime_from_sides(&sides, s))
}

pub(crate) fn trace_prime_from_sides(sides: &[f64; 3], s: f64) -> f64 {
    let e = sides.map(|l| dirichlet_sum(l, s, Representation::Auto).value);
    e[0] + e[1] + e[2] + e[0] * e[1] + e[1] * e[2] + e[2] * e[0] + e[0] * e[1] * e[2]
}

/// `Tr′ e^{sΔ}/V − (4πs)^{-3/2}` for a Neumann box.
///
/// When every side is in the image regime each factor is written as
/// `(4πs)^{-1/2} + δᵢ` and the product is expanded in the `δᵢ`, so the flat
/// part cancels exactly instead of numerically.
pub fn box_trace_prime_excess(domain: &ConvexDomain, s: f64) -> Result<f64> {
    let sides = require_box(domain)?;
    require_positive("s", s)?;
    Ok(trace_prime_excess_from_sides(&sides, s))
}

pub(crate) fn trace_prime_excess_from_sides(sides: &[f64; 3], s: f64) -> f64 {
    let f = (4.0 * PI * s).powf(-0.5);
    let volume: f64 = sides.iter().product();
    if sides.iter().any(|&l| use_spectral(Representation::Auto, s, l)) {
        return trace_prime_from_sides(sides, s) / volume - f * f * f;
    }
    let d = sides.map(|l| 2.0 * f * gaussian_tail_sum(l * l / s, 0.5).value + 0.5 / l);
    f * f * (d[0] + d[1] + d[2])
        + f * (d[0] * d[1] + d[1] * d[2] + d[2] * d[0])
        + d[0] * d[1] * d[2]
        - 1.0 / volume
}

/// Distance from `x` to the boundary of a box; negative outside.
pub fn boundary_distance(domain: &ConvexDomain, x: &[f64; 3]) -> Result<f64> {
    let sides = require_box(domain)?;
    Ok(sides
        .iter()
        .zip(x)
        .map(|(&l, &xi)| xi.min(l - xi))
        .fold(f64::INFINITY, f64::min))
}

/// Diagonal heat kernel `K_s(X, X)` of a box as the product of 1D kernels.
///
/// Points closer to the boundary than `1e-12·L` are refused.
pub fn diag_kernel_box(x: &[f64; 3], domain: &ConvexDomain, q: &TraceQuery) -> Result<KernelValue> {
    let sides = require_box(domain)?;
    q.validate()?;
    let mut value = 1.0;
    let mut rel_bound = 0.0;
    for (&l, &xi) in sides.iter().zip(x) {
        if !(xi > 1e-12 * l && xi < l * (1.0 - 1e-12)) {
            return Err(invalid(format!(
                "point coordinate {xi} is not interior to [0, {l}]"
            )));
        }
        let k = interval_diag(l, xi, q);
        value *= k.value;
        rel_bound += k.truncation_bound / k.value.abs();
    }
    Ok(KernelValue {
        value,
        truncation_bound: rel_bound * value.abs(),
    })
}

/// 1D diagonal kernel at `x ∈ (0, L)`.
pub fn interval_diag(l: f64, x: f64, q: &TraceQuery) -> KernelValue {
    let sign = match q.bc {
        Boundary::Neumann => 1.0,
        Boundary::Dirichlet => -1.0,
    };
    let s = q.s;
    if use_spectral(q.representation, s, l) {
        // (1/L)[1 + Σ (1 + cos 2nπx/L) e^{-s(nπ/L)²}] for Neumann,
        // (1/L)Σ (1 − cos 2nπx/L) e^{-s(nπ/L)²} for Dirichlet
        let c = s * (PI / l).powi(2);
        let base = match q.bc {
            Boundary::Neumann => 1.0,
            Boundary::Dirichlet => 0.0,
        };
        let mut sum = base;
        let mut bound = f64::INFINITY;
        for n in 1..MAX_TERMS {
            let nf = n as f64;
            let w = (-c * nf * nf).exp();
            sum += w * (1.0 + sign * (2.0 * nf * PI * x / l).cos());
            let next = 2.0 * (-c * (nf + 1.0).powi(2)).exp();
            if next <= SERIES_TOL * sum.abs() {
                bound = next / (1.0 - (-c * (2.0 * nf + 3.0)).exp());
                break;
            }
        }
        KernelValue {
            value: sum / l,
            truncation_bound: bound / l,
        }
    } else {
        let pref = 1.0 / (4.0 * PI * s).sqrt();
        let direct = gaussian_tail_sum(l * l / s, 0.5).scale(2.0).shift(1.0);
        let mut refl = 0.0;
        let mut m = 0usize;
        let mut bound = f64::INFINITY;
        while m < MAX_TERMS {
            let mf = m as f64;
            let up = (-(x + mf * l).powi(2) / s).exp();
            let down = if m > 0 {
                (-(x - mf * l).powi(2) / s).exp()
            } else {
                0.0
            };
            refl += up + down;
            let nf = mf + 1.0;
            // both next image terms are bounded by this Gaussian
            let next = 2.0 * (-((nf - 1.0) * l).powi(2) / s).exp();
            if m >= 1 && next <= SERIES_TOL * (direct.value + refl) {
                bound = next / (1.0 - (-l * l / s).exp());
                break;
            }
            m += 1;
        }
        KernelValue {
            value: pref * (direct.value + sign * refl),
            truncation_bound: pref * (direct.truncation_bound + bound),
        }
    }
}

/// `(K_s(X,X)/(4πs)^{-3/2} − 1)·e^{z²/s}` for the Neumann box kernel, where
/// `z` is the boundary distance of `X`.
///
/// In the image regime every 1D factor is `1 + δ_i` with `δ_i` a sum of
/// Gaussians `e^{-d²/s}`, `d ≥ z`, so the scaled excess is assembled from the
/// `δ_i e^{z²/s}` without cancellation or underflow.
pub fn neumann_diag_scaled_excess(domain: &ConvexDomain, x: &[f64; 3], s: f64) -> Result<f64> {
    let sides = require_box(domain)?;
    require_positive("s", s)?;
    let z = boundary_distance(domain, x)?;
    if !(z > 0.0) {
        return Err(invalid("point is not interior to the box"));
    }
    let w = z * z / s;
    if sides.iter().any(|&l| use_spectral(Representation::Auto, s, l)) {
        let k = diag_kernel_box(x, domain, &TraceQuery::neumann(s)?)?.value;
        return Ok((k / bulk_kernel(s, 3)? - 1.0) * w.exp());
    }
    let mut d = [0.0; 3];
    for ((di, &l), &xi) in d.iter_mut().zip(&sides).zip(x) {
        let term = |dist: f64| (w - dist * dist / s).exp();
        let mut sum = term(xi);
        for m in 1..MAX_TERMS {
            let mf = m as f64;
            let t = 2.0 * term(mf * l) + term(xi + mf * l) + term(mf * l - xi);
            sum += t;
            if t <= SERIES_TOL * sum {
                break;
            }
        }
        *di = sum;
    }
    let e = (-w).exp();
    let pairs = d[0] * d[1] + d[0] * d[2] + d[1] * d[2];
    Ok(d.iter().sum::<f64>() + e * pairs + e * e * d[0] * d[1] * d[2])
}

/// Flat-space diagonal kernel `(4πs)^{-d/2}`.
pub fn bulk_kernel(s: f64, d: u32) -> Result<f64> {
    require_positive("s", s)?;
    if d == 0 {
        return Err(invalid("dimension must be positive"));
    }
    Ok((4.0 * PI * s).powf(-0.5 * d as f64))
}

/// `(z/√s)^η e^{-z²/s} (4πs)^{-3/2}`: the pointwise envelope of
/// `|K_s(X,X) − (4πs)^{-3/2}|` at boundary distance `z`, without its constant.
pub fn brown_envelope(z: f64, s: f64, eta: f64) -> Result<f64> {
    require_positive("z", z)?;
    require_positive("s", s)?;
    if !(eta > 0.0 && eta < 1.0) {
        return Err(invalid(format!("eta must lie in (0, 1), got {eta}")));
    }
    Ok((z / s.sqrt()).powf(eta) * (-z * z / s).exp() * (4.0 * PI * s).powf(-1.5))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(bc: Boundary, s: f64, r: Representation) -> TraceQuery {
        TraceQuery::new(bc, s).unwrap().with_representation(r)
    }

    #[test]
    fn unit_interval_values() {
        let n = interval_trace(1.0, &TraceQuery::neumann(0.01).unwrap()).unwrap();
        assert!((n - 3.320_947_917_738_781_5).abs() < 1e-13, "{n}");
        let d = interval_trace(1.0, &TraceQuery::dirichlet(0.01).unwrap()).unwrap();
        assert!((d - 2.320_947_917_738_781_5).abs() < 1e-13);
        let frozen = interval_trace(1.0, &TraceQuery::neumann(100.0).unwrap()).unwrap();
        assert_eq!(frozen, 1.0);
    }

    #[test]
    fn representations_agree() {
        for s in [0.05, 0.3, 1.0, 3.0] {
            let a = interval_trace(2.0, &q(Boundary::Neumann, s, Representation::Spectral)).unwrap();
            let b = interval_trace(2.0, &q(Boundary::Neumann, s, Representation::Image)).unwrap();
            assert!(((a - b) / a).abs() < 1e-13, "s={s}: {a} vs {b}");
        }
    }

    #[test]
    fn primed_trace_removes_zero_mode() {
        let c = ConvexDomain::cube(1.0).unwrap();
        let full = box_trace(&c, &TraceQuery::neumann(0.01).unwrap()).unwrap();
        let prime = box_trace_prime(&c, 0.01).unwrap();
        assert!((full - 1.0 - prime).abs() < 1e-12);
        assert_eq!(box_trace_prime(&c, 100.0).unwrap(), 0.0);
    }

    #[test]
    fn excess_matches_direct_difference() {
        let b = ConvexDomain::cuboid(1.0, 2.0, 3.0).unwrap();
        for s in [0.01, 0.1, 0.3, 0.5, 2.0] {
            let direct = box_trace_prime(&b, s).unwrap() / 6.0 - bulk_kernel(s, 3).unwrap();
            let ex = box_trace_prime_excess(&b, s).unwrap();
            assert!((direct - ex).abs() < 1e-12 * (1.0 + direct.abs()), "s={s}: {direct} vs {ex}");
        }
    }

    #[test]
    fn ball_is_rejected() {
        let b = ConvexDomain::ball(1.0).unwrap();
        assert!(box_trace(&b, &TraceQuery::neumann(1.0).unwrap()).is_err());
    }

    #[test]
    fn diagonal_representations_agree() {
        for bc in [Boundary::Neumann, Boundary::Dirichlet] {
            for (x, s) in [(0.3, 0.1), (0.01, 0.05), (0.5, 0.5), (0.9, 2.0)] {
                let a = interval_diag(1.0, x, &q(bc, s, Representation::Spectral));
                let b = interval_diag(1.0, x, &q(bc, s, Representation::Image));
                assert!(
                    (a.value - b.value).abs() < 1e-13 * a.value.abs().max(1.0),
                    "{bc:?} x={x} s={s}: {} vs {}",
                    a.value,
                    b.value
                );
            }
        }
    }

    #[test]
    fn scaled_excess_matches_direct_difference() {
        let c = ConvexDomain::cuboid(1.5, 2.0, 2.5).unwrap();
        let x = [0.2, 0.9, 1.1];
        for s in [0.01, 0.05, 0.3, 2.0] {
            let k = diag_kernel_box(&x, &c, &TraceQuery::neumann(s).unwrap()).unwrap().value;
            let z = boundary_distance(&c, &x).unwrap();
            let direct = (k / bulk_kernel(s, 3).unwrap() - 1.0) * (z * z / s).exp();
            let scaled = neumann_diag_scaled_excess(&c, &x, s).unwrap();
            assert!((scaled - direct).abs() < 1e-9 * direct.abs().max(1.0), "{s}: {scaled} {direct}");
        }
        let deep = neumann_diag_scaled_excess(&c, &[0.75, 1.0, 1.25], 1e-4).unwrap();
        assert!(deep.is_finite() && deep > 0.0);
    }

    #[test]
    fn boundary_points_are_refused() {
        let c = ConvexDomain::cube(1.0).unwrap();
        let q = TraceQuery::neumann(0.1).unwrap();
        assert!(diag_kernel_box(&[0.0, 0.5, 0.5], &c, &q).is_err());
        assert!(diag_kernel_box(&[0.5, 1.2, 0.5], &c, &q).is_err());
        assert!(diag_kernel_box(&[0.5, 0.5, 0.5], &c, &q).is_ok());
    }

    #[test]
    fn bulk_and_envelope() {
        assert!((bulk_kernel(1.0, 3).unwrap() - 0.022_448_390_2).abs() < 1e-10);
        assert!((bulk_kernel(1.0 / (4.0 * PI), 3).unwrap() - 1.0).abs() < 1e-14);
        let e = brown_envelope(1.0, 1.0, 0.5).unwrap();
        assert!((e - (-1.0f64).exp() * (4.0 * PI).powf(-1.5)).abs() < 1e-16);
        assert!(brown_envelope(1.0, 1.0, 1.0).is_err());
    }
}
