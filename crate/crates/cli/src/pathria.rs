use anyhow::Result;
use bogotherm::free_gas::{
    critical_number, decompose, particle_number_direct, particle_number_poisson, solve_fugacity,
    FreeGasState,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::PathriaConfig;
use crate::output::{Cell, Table};

/// Largest direct-vs-Poisson relative difference accepted.
pub const DUALITY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PathriaRow {
    pub l_over_lambda: f64,
    pub density_ratio: f64,
    pub n_target: f64,
    pub mu_beta: f64,
    pub n_condensate: f64,
    pub condensate_fraction: f64,
    pub n_bulk: f64,
    pub residual: f64,
    pub c_estimate: f64,
    /// Relative difference of the direct and Poisson particle numbers at `μβ`.
    pub duality: f64,
    pub condensed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct PathriaReport {
    pub rows: Vec<PathriaRow>,
    pub max_duality: f64,
    pub duality_tolerance: f64,
}

fn point(lambda: f64, r: f64, ratio: f64) -> bogotherm::Result<PathriaRow> {
    let l = r * lambda;
    let n = ratio * critical_number(l, lambda);
    let sol = solve_fugacity(n, l, lambda)?;
    let d = decompose(n, l, lambda, sol.mu_beta)?;
    let state = FreeGasState::new(l, lambda, sol.mu_beta)?;
    let direct = particle_number_direct(&state)?;
    let dual = particle_number_poisson(&state)?;
    Ok(PathriaRow {
        l_over_lambda: r,
        density_ratio: ratio,
        n_target: n,
        mu_beta: d.mu_beta,
        n_condensate: d.n_condensate,
        condensate_fraction: d.n_condensate / n,
        n_bulk: d.n_bulk,
        residual: d.residual,
        c_estimate: d.c_estimate,
        duality: (direct - dual).abs() / direct,
        condensed: sol.condensed,
    })
}

pub fn run(cfg: &PathriaConfig) -> Result<PathriaReport> {
    let grid: Vec<(f64, f64)> = cfg
        .density_ratios
        .iter()
        .flat_map(|&d| cfg.l_over_lambda.iter().map(move |&r| (r, d)))
        .collect();
    let rows = grid
        .par_iter()
        .map(|&(r, d)| point(cfg.lambda, r, d))
        .collect::<bogotherm::Result<Vec<_>>>()?;
    let max_duality = rows.iter().map(|r| r.duality).fold(0.0, f64::max);
    Ok(PathriaReport {
        rows,
        max_duality,
        duality_tolerance: DUALITY_TOL,
    })
}

impl PathriaReport {
    pub fn passed(&self) -> bool {
        self.max_duality <= self.duality_tolerance
    }

    pub fn table(&self) -> Table {
        Table {
            columns: vec![
                "l_over_lambda",
                "density_ratio",
                "n_target",
                "mu_beta",
                "n_condensate",
                "condensate_fraction",
                "n_bulk",
                "residual",
                "c_estimate",
                "duality",
                "condensed",
            ],
            rows: self
                .rows
                .iter()
                .map(|r| {
                    vec![
                        Cell::Num(r.l_over_lambda),
                        Cell::Num(r.density_ratio),
                        Cell::Num(r.n_target),
                        Cell::Num(r.mu_beta),
                        Cell::Num(r.n_condensate),
                        Cell::Num(r.condensate_fraction),
                        Cell::Num(r.n_bulk),
                        Cell::Num(r.residual),
                        Cell::Num(r.c_estimate),
                        Cell::Num(r.duality),
                        Cell::Bool(r.condensed),
                    ]
                })
                .collect(),
            notes: vec![format!("max_duality: {:.16e}", self.max_duality)],
        }
    }
}
