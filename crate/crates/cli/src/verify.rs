use std::path::Path;

use anyhow::{bail, Context, Result};
use bogotherm::bogoliubov::{
    bulk_depletion_zero_t, depletion_zero_t_deviation, energy_density_deviation, BogoliubovParams,
    QuadratureConfig, J, XI,
};
use bogotherm::bounds::{angelescu_nenciu_check, estimate_brown_constant, BrownGrid, EtaParameter};
use bogotherm::free_gas::{particle_number_direct, particle_number_poisson, FreeGasState};
use bogotherm::heat_kernel::{interval_trace, Boundary, Representation, TraceQuery};
use bogotherm::specfun::{
    bessel_i_scaled, bessel_k, bose_g, residual_gr6682_with, residual_i1_identity_with,
    residual_k_integral_rep_with, SpecFunConfig,
};
use bogotherm::ConvexDomain;
use serde::{Deserialize, Serialize};

use crate::config::{Check, VerifyConfig};
use crate::output::{Cell, Table};

const SHIPPED_GOLDEN: &str = include_str!("../data/golden.toml");

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRow {
    pub check: &'static str,
    pub item: String,
    /// Worst residual or relative error; NaN when the computation failed.
    pub value: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub rows: Vec<CheckRow>,
    pub passed: bool,
}

impl VerifyReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckRow> {
        self.rows.iter().filter(|r| !r.pass)
    }

    pub fn table(&self) -> Table {
        Table {
            columns: vec!["check", "item", "value", "tolerance", "pass", "detail"],
            rows: self
                .rows
                .iter()
                .map(|r| {
                    vec![
                        Cell::Text(r.check.to_string()),
                        Cell::Text(r.item.clone()),
                        Cell::Num(r.value),
                        Cell::Num(r.tolerance),
                        Cell::Bool(r.pass),
                        Cell::Text(r.detail.replace(',', ";")),
                    ]
                })
                .collect(),
            notes: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct GoldenFile {
    schema_version: u32,
    entry: Vec<GoldenEntry>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct GoldenEntry {
    quantity: String,
    args: Vec<f64>,
    value: f64,
    rel_tol: f64,
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let r = (hi / lo).ln();
    (0..n).map(|i| lo * (r * i as f64 / (n - 1) as f64).exp()).collect()
}

fn rel_diff(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

/// Maximum of `f` over `points`; the first error aborts the family.
fn worst<P: std::fmt::Debug>(
    points: impl IntoIterator<Item = P>,
    f: impl Fn(&P) -> bogotherm::Result<f64>,
) -> (f64, String) {
    let mut max = 0.0f64;
    let mut at = String::new();
    for p in points {
        match f(&p) {
            Ok(v) if v.is_nan() => return (f64::NAN, format!("non-finite value at {p:?}")),
            Ok(v) => {
                if v > max {
                    max = v;
                    at = format!("max at {p:?}");
                }
            }
            Err(e) => return (f64::NAN, format!("at {p:?}: {e}")),
        }
    }
    (max, at)
}

fn row(check: Check, item: &str, (value, detail): (f64, String), tolerance: f64) -> CheckRow {
    CheckRow {
        check: check.name(),
        item: item.to_string(),
        value,
        tolerance,
        pass: value <= tolerance,
        detail,
    }
}

fn identities(cfg: &VerifyConfig) -> Result<Vec<CheckRow>> {
    let sf = SpecFunConfig {
        quad_rel_tol: cfg.quad_rel_tol,
        ..SpecFunConfig::default()
    };
    sf.validate()?;
    let c = Check::Identities;
    let i1 = worst(log_grid(1e-3, 1e3, 20), |&u| residual_i1_identity_with(u, &sf));
    let k_points: Vec<(f64, f64)> = [0.1, 0.25, 0.5, 0.75, 0.9]
        .iter()
        .flat_map(|&nu| log_grid(1e-2, 10.0, 20).into_iter().map(move |x| (nu, x)))
        .collect();
    let krep = worst(k_points, |&(nu, x)| residual_k_integral_rep_with(nu, x, &sf));
    let gr_points: Vec<(f64, f64, f64)> = [(0.0, 0.0), (0.0, 0.5), (0.5, 0.0), (0.5, 0.5), (1.0, 0.0)]
        .iter()
        .flat_map(|&(mu, nu)| log_grid(1e-2, 1e2, 20).into_iter().map(move |x| (mu, nu, x)))
        .collect();
    let gr = worst(gr_points, |&(mu, nu, x)| residual_gr6682_with(mu, nu, x, &sf));
    Ok(vec![
        row(c, "i1_identity", i1, 1e-8),
        row(c, "k_integral_rep", krep, 1e-7),
        row(c, "gr6682", gr, 1e-8),
    ])
}

fn duality() -> Vec<CheckRow> {
    let c = Check::Duality;
    let gas_points: Vec<(f64, f64)> = [1.0, 3.0, 5.0, 10.0, 20.0]
        .iter()
        .flat_map(|&r| [-1e-4, -0.01, -0.1, -1.0, -2.0].map(|mb| (r, mb)))
        .collect();
    let gas = worst(gas_points, |&(r, mb)| {
        let s = FreeGasState::new(r, 1.0, mb)?;
        Ok(rel_diff(particle_number_direct(&s)?, particle_number_poisson(&s)?))
    });
    let trace_points: Vec<(f64, f64)> = [0.5, 1.0, 2.0, 4.0]
        .iter()
        .flat_map(|&l| log_grid(1e-4, 1e2, 25).into_iter().map(move |s| (l, s)))
        .collect();
    let trace = worst(trace_points, |&(l, s)| {
        let q = TraceQuery::new(Boundary::Neumann, s)?;
        let a = interval_trace(l, &q.with_representation(Representation::Spectral))?;
        let b = interval_trace(l, &q.with_representation(Representation::Image))?;
        Ok(rel_diff(a, b))
    });
    vec![
        row(c, "particle_number", gas, 1e-10),
        row(c, "interval_trace", trace, 1e-12),
    ]
}

fn dirichlet_weyl() -> Result<Vec<CheckRow>> {
    let mut rows = Vec::new();
    for (name, sides) in [
        ("cube", [1.0, 1.0, 1.0]),
        ("box_1x2x4", [1.0, 2.0, 4.0]),
        ("box_0.5x1x3", [0.5, 1.0, 3.0]),
    ] {
        let mut points = Vec::new();
        for l in [1.0, 2.0, 4.0] {
            for s in log_grid(1e-3, 10.0, 30) {
                points.push((l, s));
            }
        }
        // lhs/rhs, which must not exceed one
        let w = worst(points, |&(l, s)| {
            let d = ConvexDomain::cuboid(l * sides[0], l * sides[1], l * sides[2])?;
            let c = angelescu_nenciu_check(&d, s)?;
            Ok(c.lhs / c.rhs)
        });
        rows.push(row(Check::DirichletWeyl, name, w, 1.0));
    }
    Ok(rows)
}

fn load_golden(path: Option<&Path>) -> Result<GoldenFile> {
    let text = match path {
        Some(p) => std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?,
        None => SHIPPED_GOLDEN.to_string(),
    };
    let g: GoldenFile = toml::from_str(&text).context("parsing golden data")?;
    if g.schema_version != 1 {
        bail!("unsupported golden schema_version {}", g.schema_version);
    }
    for e in &g.entry {
        let arity = golden_arity(&e.quantity)
            .with_context(|| format!("unknown golden quantity '{}'", e.quantity))?;
        if e.args.len() != arity {
            bail!("golden quantity '{}' takes {arity} arguments, got {}", e.quantity, e.args.len());
        }
        if !(e.rel_tol > 0.0) {
            bail!("golden entry '{}' needs a positive rel_tol", e.quantity);
        }
    }
    Ok(g)
}

fn golden_arity(quantity: &str) -> Option<usize> {
    Some(match quantity {
        "energy_constant" | "depletion_constant" => 0,
        "bulk_depletion_zero_t" => 1,
        "bessel_k" | "bessel_i_scaled" | "bose_g" | "particle_number" | "energy_density_deviation"
        | "depletion_zero_t_deviation" | "brown_constant" => 2,
        _ => return None,
    })
}

fn golden_value(quantity: &str, args: &[f64]) -> bogotherm::Result<f64> {
    let q = QuadratureConfig::default();
    match quantity {
        "energy_constant" => Ok(J),
        "depletion_constant" => Ok(XI),
        "bulk_depletion_zero_t" => bulk_depletion_zero_t(&BogoliubovParams::from_coupling(args[0])?),
        "bessel_k" => bessel_k(args[0], args[1]),
        "bessel_i_scaled" => bessel_i_scaled(args[0], args[1]),
        "bose_g" => bose_g(args[0], args[1]),
        "particle_number" => particle_number_direct(&FreeGasState::new(args[0], 1.0, args[1])?),
        "energy_density_deviation" => energy_density_deviation(
            &ConvexDomain::cube(args[1])?,
            &BogoliubovParams::from_coupling(args[0])?,
            &q,
        ),
        "depletion_zero_t_deviation" => depletion_zero_t_deviation(
            &ConvexDomain::cube(args[1])?,
            &BogoliubovParams::from_coupling(args[0])?,
            &q,
        ),
        "brown_constant" => Ok(estimate_brown_constant(
            &ConvexDomain::cube(args[0])?,
            EtaParameter::new(args[1])?,
            &BrownGrid::default(),
        )?
        .constant),
        _ => unreachable!("quantities are validated on load"),
    }
}

fn golden(cfg: &VerifyConfig) -> Result<Vec<CheckRow>> {
    let g = load_golden(cfg.golden.as_deref())?;
    Ok(g.entry
        .iter()
        .map(|e| {
            let item = if e.args.is_empty() {
                e.quantity.clone()
            } else {
                let args: Vec<String> = e.args.iter().map(|a| a.to_string()).collect();
                format!("{}({})", e.quantity, args.join(" "))
            };
            let (value, detail) = match golden_value(&e.quantity, &e.args) {
                Ok(v) => (rel_diff(v, e.value), format!("computed {v:.16e}, reference {:.16e}", e.value)),
                Err(err) => (f64::NAN, err.to_string()),
            };
            row(Check::Golden, &item, (value, detail), e.rel_tol)
        })
        .collect())
}

/// Runs the selected checks in the configured order.
///
/// Configuration problems (bad golden file, invalid tolerances) are errors;
/// numerical failures become failing rows.
pub fn run(cfg: &VerifyConfig) -> Result<VerifyReport> {
    cfg.validate()?;
    let mut rows = Vec::new();
    for check in &cfg.checks {
        match check {
            Check::Identities => rows.extend(identities(cfg)?),
            Check::Duality => rows.extend(duality()),
            Check::DirichletWeyl => rows.extend(dirichlet_weyl()?),
            Check::Golden => rows.extend(golden(cfg)?),
        }
    }
    let passed = rows.iter().all(|r| r.pass);
    Ok(VerifyReport { rows, passed })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_golden_file_parses() {
        let g = load_golden(None).unwrap();
        assert!(g.entry.len() >= 10);
    }

    #[test]
    fn unknown_golden_quantity_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("g.toml");
        std::fs::write(&p, "schema_version = 1\n[[entry]]\nquantity = \"nope\"\nargs = []\nvalue = 1.0\nrel_tol = 1e-3\n")
            .unwrap();
        assert!(load_golden(Some(&p)).is_err());
    }
}
