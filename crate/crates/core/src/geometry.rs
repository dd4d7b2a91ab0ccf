//! Convex domains with closed-form inner parallel volumes.
//!
//! For a point `X` let `∂(X)` be its distance to the boundary. The inner
//! parallel volume `V(z)` is the measure of `{X : ∂(X) ≥ z}` and
//! `f(z) = -dV/dz` is the distance density, so that
//! `∫_Ω g(∂(X)) dX = ∫₀ g(z) f(z) dz`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, require_nonneg, require_positive, Result};
use crate::quad::{self, QuadOptions};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "shape")]
pub enum ConvexDomain {
    Interval { length: f64 },
    Box { sides: [f64; 3] },
    Cube { side: f64 },
    Ball { radius: f64 },
}

impl ConvexDomain {
    pub fn interval(length: f64) -> Result<Self> {
        require_positive("length", length)?;
        Ok(Self::Interval { length })
    }

    pub fn cuboid(l1: f64, l2: f64, l3: f64) -> Result<Self> {
        for l in [l1, l2, l3] {
            require_positive("side", l)?;
        }
        Ok(Self::Box { sides: [l1, l2, l3] })
    }

    pub fn cube(side: f64) -> Result<Self> {
        require_positive("side", side)?;
        Ok(Self::Cube { side })
    }

    pub fn ball(radius: f64) -> Result<Self> {
        require_positive("radius", radius)?;
        Ok(Self::Ball { radius })
    }

    /// Checks the stored lengths; needed after deserialization.
    pub fn validate(&self) -> Result<()> {
        match *self {
            Self::Interval { length } => require_positive("length", length),
            Self::Box { sides } => sides.iter().try_for_each(|&l| require_positive("side", l)),
            Self::Cube { side } => require_positive("side", side),
            Self::Ball { radius } => require_positive("radius", radius),
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            Self::Interval { .. } => 1,
            _ => 3,
        }
    }

    /// Side lengths of a box-shaped domain; `None` for the ball.
    pub fn box_sides(&self) -> Option<[f64; 3]> {
        match *self {
            Self::Box { sides } => Some(sides),
            Self::Cube { side } => Some([side; 3]),
            _ => None,
        }
    }

    pub fn volume(&self) -> f64 {
        match *self {
            Self::Interval { length } => length,
            Self::Box { sides } => sides.iter().product(),
            Self::Cube { side } => side.powi(3),
            Self::Ball { radius } => 4.0 / 3.0 * PI * radius.powi(3),
        }
    }

    /// Boundary measure; for the interval this is the number of endpoints.
    pub fn area(&self) -> f64 {
        match *self {
            Self::Interval { .. } => 2.0,
            Self::Box { sides: [a, b, c] } => 2.0 * (a * b + b * c + c * a),
            Self::Cube { side } => 6.0 * side * side,
            Self::Ball { radius } => 4.0 * PI * radius * radius,
        }
    }

    pub fn diameter(&self) -> f64 {
        match *self {
            Self::Interval { length } => length,
            Self::Box { sides } => sides.iter().map(|l| l * l).sum::<f64>().sqrt(),
            Self::Cube { side } => 3f64.sqrt() * side,
            Self::Ball { radius } => 2.0 * radius,
        }
    }

    /// Largest boundary distance attained in the domain.
    pub fn inradius(&self) -> f64 {
        match *self {
            Self::Interval { length } => 0.5 * length,
            Self::Box { sides } => 0.5 * sides.iter().cloned().fold(f64::INFINITY, f64::min),
            Self::Cube { side } => 0.5 * side,
            Self::Ball { radius } => radius,
        }
    }

    /// Copy with every length multiplied by `c`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        require_positive("scale", c)?;
        Ok(match *self {
            Self::Interval { length } => Self::Interval { length: c * length },
            Self::Box { sides } => Self::Box {
                sides: sides.map(|l| c * l),
            },
            Self::Cube { side } => Self::Cube { side: c * side },
            Self::Ball { radius } => Self::Ball { radius: c * radius },
        })
    }

    pub fn distance_profile(&self) -> DistanceProfile {
        DistanceProfile { domain: *self }
    }
}

/// `V(z)` and `f(z)` of one domain, supported on `[0, D/2]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceProfile {
    domain: ConvexDomain,
}

impl DistanceProfile {
    pub fn inner_volume(&self, z: f64) -> f64 {
        inner_volume(&self.domain, z)
    }

    pub fn density(&self, z: f64) -> f64 {
        density(&self.domain, z)
    }

    pub fn support(&self) -> (f64, f64) {
        (0.0, 0.5 * self.domain.diameter())
    }
}

pub fn inner_parallel_volume(domain: &ConvexDomain, z: f64) -> Result<f64> {
    require_nonneg("z", z)?;
    Ok(inner_volume(domain, z))
}

fn inner_volume(domain: &ConvexDomain, z: f64) -> f64 {
    let shrink = |l: f64| (l - 2.0 * z).max(0.0);
    match *domain {
        ConvexDomain::Interval { length } => shrink(length),
        ConvexDomain::Box { sides } => sides.iter().map(|&l| shrink(l)).product(),
        ConvexDomain::Cube { side } => shrink(side).powi(3),
        ConvexDomain::Ball { radius } => 4.0 / 3.0 * PI * (radius - z).max(0.0).powi(3),
    }
}

/// `|dV/dz|`; zero beyond the inradius.
pub fn distance_density(domain: &ConvexDomain, z: f64) -> Result<f64> {
    require_nonneg("z", z)?;
    if z > 0.5 * domain.diameter() {
        return Err(invalid(format!(
            "z = {z} exceeds half the diameter {}",
            0.5 * domain.diameter()
        )));
    }
    Ok(density(domain, z))
}

fn density(domain: &ConvexDomain, z: f64) -> f64 {
    if z >= domain.inradius() {
        return 0.0;
    }
    match *domain {
        ConvexDomain::Interval { .. } => 2.0,
        ConvexDomain::Box { sides } => {
            let s = sides.map(|l| l - 2.0 * z);
            2.0 * (s[0] * s[1] + s[1] * s[2] + s[2] * s[0])
        }
        ConvexDomain::Cube { side } => 6.0 * (side - 2.0 * z).powi(2),
        ConvexDomain::Ball { radius } => 4.0 * PI * (radius - z).powi(2),
    }
}

fn coarea_opts() -> QuadOptions {
    QuadOptions::with_rel_tol(1e-10)
}

/// `∫_Ω g(∂(X)) dX = ∫₀^{r} g(z) f(z) dz`, `r` the inradius.
///
/// The lower half of the range is integrated in the logarithmic variable so
/// that integrable singularities of `g` at zero are resolved; a
/// non-integrable singularity is reported as divergent.
pub fn coarea_integral<G: Fn(f64) -> f64>(domain: &ConvexDomain, g: G) -> Result<f64> {
    domain.validate()?;
    let r = domain.inradius();
    let h = |z: f64| g(z) * density(domain, z);
    let lower = quad::to_zero(&h, 0.5 * r, &coarea_opts())?;
    let upper = quad::adaptive(&h, 0.5 * r, r, &coarea_opts())?;
    Ok(lower.value + upper.value)
}

/// `A(∂Ω)·∫₀^{D/2} g(z) dz`, which exceeds [`coarea_integral`] because
/// `f(z) ≤ A(∂Ω)` on convex domains and `f` vanishes beyond the inradius.
pub fn coarea_upper_bound<G: Fn(f64) -> f64>(domain: &ConvexDomain, g: G) -> Result<f64> {
    domain.validate()?;
    let half_d = 0.5 * domain.diameter();
    let lower = quad::to_zero(&g, 0.5 * half_d, &coarea_opts())?;
    let upper = quad::adaptive(&g, 0.5 * half_d, half_d, &coarea_opts())?;
    Ok(domain.area() * (lower.value + upper.value))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_and_ball_measures() {
        let c = ConvexDomain::cube(2.0).unwrap();
        assert_eq!(c.volume(), 8.0);
        assert_eq!(c.area(), 24.0);
        assert!((c.diameter() - 2.0 * 3f64.sqrt()).abs() < 1e-15);
        let b = ConvexDomain::ball(1.0).unwrap();
        assert!((b.volume() - 4.188_790_204_786_391).abs() < 1e-14);
        assert_eq!(b.diameter(), 2.0);
    }

    #[test]
    fn inner_volumes() {
        let c = ConvexDomain::cube(2.0).unwrap();
        assert_eq!(inner_parallel_volume(&c, 0.5).unwrap(), 1.0);
        assert_eq!(inner_parallel_volume(&c, 1.5).unwrap(), 0.0);
        let b = ConvexDomain::ball(1.0).unwrap();
        assert!((inner_parallel_volume(&b, 0.0).unwrap() - 4.0 * PI / 3.0).abs() < 1e-15);
    }

    #[test]
    fn densities() {
        let b = ConvexDomain::ball(1.0).unwrap();
        assert!((distance_density(&b, 0.0).unwrap() - 4.0 * PI).abs() < 1e-15);
        let c = ConvexDomain::cube(1.0).unwrap();
        assert_eq!(distance_density(&c, 0.5).unwrap(), 0.0);
        assert_eq!(distance_density(&c, 0.0).unwrap(), 6.0);
        assert!(distance_density(&c, 0.9).is_err());
    }

    #[test]
    fn box_density_is_derivative_of_volume() {
        let d = ConvexDomain::cuboid(1.0, 2.0, 3.0).unwrap();
        let z = 0.2;
        let h = 1e-6;
        let fd = (inner_volume(&d, z - h) - inner_volume(&d, z + h)) / (2.0 * h);
        assert!((fd - density(&d, z)).abs() < 1e-7);
    }

    #[test]
    fn rejects_bad_lengths() {
        assert!(ConvexDomain::cube(0.0).is_err());
        assert!(ConvexDomain::cuboid(1.0, -1.0, 1.0).is_err());
        assert!(ConvexDomain::ball(f64::NAN).is_err());
    }
}
