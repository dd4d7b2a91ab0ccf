use serde::{Deserialize, Serialize};

use super::EtaParameter;
use crate::error::{invalid, Result};
use crate::geometry::ConvexDomain;
use crate::heat_kernel::{boundary_distance, neumann_diag_scaled_excess};

/// Interior points, as fractions of the box sides, and absolute diffusion
/// times.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BrownGrid {
    pub points: Vec<[f64; 3]>,
    pub times: Vec<f64>,
}

impl Default for BrownGrid {
    /// 20 points approaching a face and a corner, boundary distances from 2%
    /// to 50% of the side, and 20 times log-spaced over `[1e-3, 1]`.
    fn default() -> Self {
        let points = (0..20)
            .map(|i| {
                let f = 0.02 * 25f64.powf((i / 2) as f64 / 9.0);
                if i % 2 == 0 {
                    [f, f, f]
                } else {
                    [f, 0.5, 0.5]
                }
            })
            .collect();
        let times = (0..20).map(|i| 1e-3 * 1e3f64.powf(i as f64 / 19.0)).collect();
        Self { points, times }
    }
}

impl BrownGrid {
    fn validate(&self) -> Result<()> {
        if self.points.len() < 20 || self.times.len() < 20 {
            return Err(invalid("the grid needs at least 20 points and 20 times"));
        }
        for p in &self.points {
            if p.iter().any(|&f| !(f > 0.0 && f < 1.0)) {
                return Err(invalid(format!("grid point {p:?} is not interior")));
            }
        }
        if self.times.iter().any(|&s| !(s > 0.0 && s.is_finite())) {
            return Err(invalid("grid times must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BrownEstimate {
    /// `max |K_s(X,X) − (4πs)^{-3/2}| / envelope` over the grid.
    pub constant: f64,
    /// Point and time where the maximum is attained.
    pub point: [f64; 3],
    pub s: f64,
}

fn ratios(
    domain: &ConvexDomain,
    eta: EtaParameter,
    grid: &BrownGrid,
) -> Result<Vec<([f64; 3], f64, f64)>> {
    grid.validate()?;
    let sides = domain
        .box_sides()
        .ok_or_else(|| invalid("diagonal kernels are implemented for boxes only"))?;
    let mut out = Vec::with_capacity(grid.points.len() * grid.times.len());
    for frac in &grid.points {
        let x = [frac[0] * sides[0], frac[1] * sides[1], frac[2] * sides[2]];
        let z = boundary_distance(domain, &x)?;
        for &s in &grid.times {
            // both sides carry the factor e^{-z²/s}(4πs)^{-3/2}, which is divided out
            let excess = neumann_diag_scaled_excess(domain, &x, s)?.abs();
            out.push((x, s, excess / (z / s.sqrt()).powf(eta.value())));
        }
    }
    Ok(out)
}

/// Smallest constant for which the diagonal-kernel envelope holds on the grid.
pub fn estimate_brown_constant(
    domain: &ConvexDomain,
    eta: EtaParameter,
    grid: &BrownGrid,
) -> Result<BrownEstimate> {
    let all = ratios(domain, eta, grid)?;
    let (point, s, constant) = all
        .into_iter()
        .fold(([0.0; 3], 0.0, f64::NEG_INFINITY), |best, r| if r.2 > best.2 { r } else { best });
    if !constant.is_finite() {
        return Err(invalid("envelope ratio is not finite on the grid"));
    }
    Ok(BrownEstimate { constant, point, s })
}

/// Grid entries `(point, s, ratio)` whose ratio exceeds `constant`.
pub fn brown_violations(
    domain: &ConvexDomain,
    eta: EtaParameter,
    grid: &BrownGrid,
    constant: f64,
) -> Result<Vec<([f64; 3], f64, f64)>> {
    Ok(ratios(domain, eta, grid)?
        .into_iter()
        .filter(|r| r.2 > constant * (1.0 + 1e-12))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid_is_interior_and_large_enough() {
        let g = BrownGrid::default();
        assert!(g.validate().is_ok());
        assert_eq!(g.points.len(), 20);
        assert!((g.times[19] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn boundary_grid_point_is_rejected() {
        let mut g = BrownGrid::default();
        g.points[0] = [0.0, 0.5, 0.5];
        let c = ConvexDomain::cube(2.0).unwrap();
        assert!(estimate_brown_constant(&c, EtaParameter::new(0.5).unwrap(), &g).is_err());
    }
}
