use anyhow::Result;
use bogotherm::bounds::{convergence_sweep, ConvergenceReport, EtaParameter, SweepQuantity};
use rayon::prelude::*;

use crate::config::SweepConfig;
use crate::output::{Cell, Table};

/// One report per `(quantity, η)` pair, in configuration order.
pub fn run(cfg: &SweepConfig, etas: &[EtaParameter]) -> Result<Vec<ConvergenceReport>> {
    let jobs: Vec<(SweepQuantity, EtaParameter)> = cfg
        .quantities
        .iter()
        .flat_map(|&q| etas.iter().map(move |&e| (q, e)))
        .collect();
    let reports = jobs
        .par_iter()
        .map(|&(q, e)| convergence_sweep(q, &cfg.sizes, &cfg.params, e))
        .collect::<bogotherm::Result<Vec<_>>>()?;
    Ok(reports)
}

pub fn file_stem(r: &ConvergenceReport) -> String {
    format!("sweep_{}_eta{}", r.quantity.name(), r.eta)
}

pub fn table(r: &ConvergenceReport) -> Table {
    let mut columns = vec!["size", "value", "bulk_ref", "abs_diff", "envelope", "ratio"];
    if r.c_estimates.is_some() {
        columns.extend(["c_estimate", "mu_beta"]);
    }
    let rows = (0..r.sizes.len())
        .map(|i| {
            let mut row = vec![
                Cell::Num(r.sizes[i]),
                Cell::Num(r.values[i]),
                Cell::Num(r.bulk_ref),
                Cell::Num(r.abs_diffs[i]),
                Cell::Num(r.envelopes[i]),
                Cell::Num(r.ratios[i]),
            ];
            if let (Some(c), Some(m)) = (&r.c_estimates, &r.mu_betas) {
                row.push(Cell::Num(c[i]));
                row.push(Cell::Num(m[i]));
            }
            row
        })
        .collect();
    let notes = vec![
        format!("quantity: {}", r.quantity.name()),
        format!("eta: {}", r.eta),
        format!("fitted_exponent: {:.16e}", r.fitted_exponent),
        format!("fit_r2: {:.16e}", r.fit_r2),
        format!("fit_points: {}", r.fit_points),
        format!("envelope_constant: {:.16e}", r.envelope_constant),
        format!("noise_floor: {:.16e}", r.noise_floor),
        format!("floor_limited: {}", r.floor_limited),
        format!("violations: {:?}", r.violations),
    ];
    Table { columns, rows, notes }
}

/// Human-readable offending rows of a dominance failure.
pub fn violation_lines(r: &ConvergenceReport) -> Vec<String> {
    r.violations
        .iter()
        .map(|&i| {
            format!(
                "{} eta {}: size {} ratio {:.6e} exceeds calibrated {:.6e}",
                r.quantity.name(),
                r.eta,
                r.sizes[i],
                r.ratios[i],
                r.envelope_constant
            )
        })
        .collect()
}
