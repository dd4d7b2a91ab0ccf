use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::envelopes::{
    area_envelope_density, depletion_envelope_finite_t, depletion_envelope_zero_t, energy_envelope,
};
use super::EtaParameter;
use crate::bogoliubov::{
    bulk_depletion_finite_t, bulk_depletion_zero_t, bulk_energy_density, depletion_finite_t,
    depletion_zero_t_deviation, energy_density_deviation, BogoliubovParams, QuadratureConfig,
};
use crate::error::{invalid, require_positive, Result};
use crate::free_gas::{condensate_decomposition, critical_number};
use crate::geometry::ConvexDomain;
use crate::heat_kernel::{box_trace_prime_excess, bulk_kernel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepQuantity {
    /// `Tr′e^{sΔ}/V` against `(4πs)^{-3/2}`.
    TraceDensity,
    EnergyDensity,
    DepletionZeroT,
    DepletionFiniteT,
    /// Free-gas residual `N − n_bulk − N₀` per volume; sizes are `L/λ`.
    FreeGasResidual,
}

impl SweepQuantity {
    pub const ALL: [SweepQuantity; 5] = [
        Self::TraceDensity,
        Self::EnergyDensity,
        Self::DepletionZeroT,
        Self::DepletionFiniteT,
        Self::FreeGasResidual,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::TraceDensity => "trace_density",
            Self::EnergyDensity => "energy_density",
            Self::DepletionZeroT => "depletion_zero_T",
            Self::DepletionFiniteT => "depletion_finite_T",
            Self::FreeGasResidual => "free_gas_residual",
        }
    }
}

/// Parameters held fixed along a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepParams {
    /// Coupling `a = u₀n₀`.
    pub a: f64,
    pub n0: f64,
    pub beta: f64,
    /// Diffusion time for the trace-density sweep.
    pub s: f64,
    /// Free-gas density in units of the bulk critical density.
    pub density_ratio: f64,
    pub quadrature: QuadratureConfig,
}

impl Default for SweepParams {
    fn default() -> Self {
        Self {
            a: 0.5,
            n0: 1.0,
            beta: 1.0,
            s: 0.01,
            density_ratio: 2.0,
            quadrature: QuadratureConfig::default(),
        }
    }
}

impl SweepParams {
    fn bogoliubov(&self) -> Result<BogoliubovParams> {
        require_positive("n0", self.n0)?;
        BogoliubovParams::new(self.a / self.n0, self.n0)?.with_beta(self.beta)
    }
}

/// Least-squares fit of `ln y = c − p·ln x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerFit {
    pub exponent: f64,
    pub r2: f64,
}

pub fn fit_power_law(x: &[f64], y: &[f64]) -> Result<PowerFit> {
    if x.len() != y.len() || x.len() < 2 {
        return Err(invalid("a power-law fit needs at least two points"));
    }
    if x.iter().chain(y).any(|&v| !(v > 0.0 && v.is_finite())) {
        return Err(invalid("power-law fit needs positive finite data"));
    }
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|v| (v - mx).powi(2)).sum();
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let syy: f64 = ly.iter().map(|v| (v - my).powi(2)).sum();
    let slope = sxy / sxx;
    let r2 = if syy == 0.0 { 1.0 } else { (sxy * sxy / (sxx * syy)).clamp(0.0, 1.0) };
    Ok(PowerFit {
        exponent: -slope,
        r2,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub quantity: SweepQuantity,
    pub eta: f64,
    pub sizes: Vec<f64>,
    pub values: Vec<f64>,
    pub bulk_ref: f64,
    pub abs_diffs: Vec<f64>,
    pub envelopes: Vec<f64>,
    /// `abs_diff / envelope` per size.
    pub ratios: Vec<f64>,
    /// Decay exponent `p` of `abs_diff ∝ size^{-p}` over the pre-floor range.
    pub fitted_exponent: f64,
    pub fit_r2: f64,
    /// Number of leading sizes used in the fit.
    pub fit_points: usize,
    /// Dominance constant calibrated at the smallest size.
    pub envelope_constant: f64,
    pub max_ratio: f64,
    /// Indices of sizes (beyond the first) where `ratio > envelope_constant`.
    pub violations: Vec<usize>,
    pub noise_floor: f64,
    pub floor_limited: bool,
    pub monotone: bool,
    /// Free-gas sweeps only: `residual·λ²/L²` and `μβ` per size.
    pub c_estimates: Option<Vec<f64>>,
    pub mu_betas: Option<Vec<f64>>,
}

impl ConvergenceReport {
    pub fn dominance_holds(&self) -> bool {
        self.violations.is_empty()
    }
}

struct Point {
    value: f64,
    diff: f64,
    envelope: f64,
    extra: Option<(f64, f64)>,
}

/// Evaluates one quantity on a family of cubes, subtracts its bulk value, fits
/// the decay exponent, and checks envelope dominance beyond the smallest size.
///
/// Differences below `10·rel_tol·scale` are treated as noise: the fit uses the
/// sizes before the first such point and the report is marked floor-limited.
/// The scale is `|bulk_ref|`, or the fixed density for the free gas.
pub fn convergence_sweep(
    quantity: SweepQuantity,
    sizes: &[f64],
    params: &SweepParams,
    eta: EtaParameter,
) -> Result<ConvergenceReport> {
    if sizes.len() < 3 {
        return Err(invalid("a sweep needs at least three sizes"));
    }
    if sizes.windows(2).any(|w| !(w[1] > w[0])) || !(sizes[0] > 0.0) {
        return Err(invalid("sizes must be positive and strictly increasing"));
    }
    params.quadrature.validate()?;
    let p = params.bogoliubov()?;
    let q = &params.quadrature;
    let a = params.a;

    let (bulk_ref, floor_scale, floor_tol) = match quantity {
        SweepQuantity::TraceDensity => {
            let b = bulk_kernel(params.s, 3)?;
            (b, b, 1e-13)
        }
        SweepQuantity::EnergyDensity => {
            let b = bulk_energy_density(&p)?;
            (b, b.abs(), q.rel_tol)
        }
        SweepQuantity::DepletionZeroT => {
            let b = bulk_depletion_zero_t(&p)?;
            (b, b, q.rel_tol)
        }
        SweepQuantity::DepletionFiniteT => {
            let b = bulk_depletion_finite_t(&p)?;
            (b, b, q.rel_tol)
        }
        SweepQuantity::FreeGasResidual => {
            require_positive("density_ratio", params.density_ratio)?;
            let density = params.density_ratio * critical_number(1.0, 1.0);
            (0.0, density, 1e-8)
        }
    };

    let points: Vec<Point> = sizes
        .par_iter()
        .map(|&l| -> Result<Point> {
            let cube = ConvexDomain::cube(l)?;
            let v = cube.volume();
            let (value, diff, extra) = match quantity {
                SweepQuantity::TraceDensity => {
                    let d = box_trace_prime_excess(&cube, params.s)?;
                    (bulk_ref + d, d, None)
                }
                SweepQuantity::EnergyDensity => {
                    let d = energy_density_deviation(&cube, &p, q)?;
                    (bulk_ref + d, d, None)
                }
                SweepQuantity::DepletionZeroT => {
                    let d = depletion_zero_t_deviation(&cube, &p, q)?;
                    (bulk_ref + d, d, None)
                }
                SweepQuantity::DepletionFiniteT => {
                    let r = depletion_finite_t(&cube, &p, q)?;
                    (r.total, r.deviation, None)
                }
                SweepQuantity::FreeGasResidual => {
                    let n = params.density_ratio * critical_number(l, 1.0);
                    let dec = condensate_decomposition(n, l, 1.0)?;
                    let r = dec.residual / v;
                    (r, r, Some((dec.c_estimate, dec.mu_beta)))
                }
            };
            let envelope = match quantity {
                SweepQuantity::EnergyDensity => energy_envelope(&cube, a, eta)? / v,
                SweepQuantity::DepletionZeroT => depletion_envelope_zero_t(&cube, a, eta)?,
                SweepQuantity::DepletionFiniteT => {
                    depletion_envelope_finite_t(&cube, a, params.beta, eta)?.total
                }
                _ => area_envelope_density(&cube, eta)?,
            };
            Ok(Point {
                value,
                diff: diff.abs(),
                envelope,
                extra,
            })
        })
        .collect::<Result<_>>()?;

    let values: Vec<f64> = points.iter().map(|p| p.value).collect();
    let abs_diffs: Vec<f64> = points.iter().map(|p| p.diff).collect();
    let envelopes: Vec<f64> = points.iter().map(|p| p.envelope).collect();
    let ratios: Vec<f64> = abs_diffs.iter().zip(&envelopes).map(|(d, e)| d / e).collect();

    let noise_floor = 10.0 * floor_tol * floor_scale;
    let fit_points = abs_diffs
        .iter()
        .position(|&d| d <= noise_floor)
        .unwrap_or(abs_diffs.len());
    let fit = if fit_points >= 2 {
        fit_power_law(&sizes[..fit_points], &abs_diffs[..fit_points])?
    } else {
        PowerFit {
            exponent: f64::NAN,
            r2: 0.0,
        }
    };
    let envelope_constant = ratios[0];
    let violations = ratios
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, &r)| r > envelope_constant * (1.0 + 1e-9))
        .map(|(i, _)| i)
        .collect();
    let monotone = abs_diffs.windows(2).all(|w| w[1] < w[0]);
    let extras: Option<Vec<(f64, f64)>> = points.iter().map(|p| p.extra).collect();

    Ok(ConvergenceReport {
        quantity,
        eta: eta.value(),
        sizes: sizes.to_vec(),
        values,
        bulk_ref,
        abs_diffs,
        envelopes,
        max_ratio: ratios.iter().cloned().fold(0.0, f64::max),
        ratios,
        fitted_exponent: fit.exponent,
        fit_r2: fit.r2,
        fit_points,
        envelope_constant,
        violations,
        noise_floor,
        floor_limited: fit_points < sizes.len(),
        monotone,
        c_estimates: extras.as_ref().map(|e| e.iter().map(|x| x.0).collect()),
        mu_betas: extras.as_ref().map(|e| e.iter().map(|x| x.1).collect()),
    })
}
