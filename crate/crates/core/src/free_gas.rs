//! Ideal Bose gas in a Neumann cube of side `L` at thermal wavelength `λ`.
//!
//! With `α = λ²/L²` and `θ(α) = Σ_{n≥0} e^{-παn²}` the particle number is
//! `N = Σ_{j≥1} z^j θ(jα)³`, `z = e^{μβ}`. Poisson summation of each θ factor,
//! `θ(α) = 1/2 + (1 + 2Σ_{m≥1} e^{-πm²/α}) / (2√α)`, separates the bulk term
//! `(L/2λ)³ g_{3/2}(z)` from boundary and image corrections.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, require_positive, Error, Result};
use crate::heat_kernel::{dirichlet_sum, gaussian_tail_sum, Representation};
use crate::specfun::bose_g;

const SUM_TOL: f64 = 1e-16;
const MAX_J: usize = 10_000_000;
/// Bisection bracket for `|μβ|`.
pub const MU_BETA_MIN: f64 = 1e-16;
pub const MU_BETA_MAX: f64 = 50.0;
const ZETA_3_2: f64 = 2.612_375_348_685_488_3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FreeGasState {
    pub l: f64,
    pub lambda: f64,
    /// `μβ ≤ 0`.
    pub mu_beta: f64,
}

impl FreeGasState {
    pub fn new(l: f64, lambda: f64, mu_beta: f64) -> Result<Self> {
        let s = Self { l, lambda, mu_beta };
        s.validate()?;
        Ok(s)
    }

    fn validate(&self) -> Result<()> {
        require_positive("L", self.l)?;
        require_positive("lambda", self.lambda)?;
        if self.mu_beta > 0.0 || self.mu_beta.is_nan() {
            return Err(invalid(format!("mu_beta must be ≤ 0, got {}", self.mu_beta)));
        }
        if self.mu_beta == 0.0 {
            return Err(Error::Divergent(
                "particle number diverges at mu_beta = 0; use excited_number_at_zero".into(),
            ));
        }
        Ok(())
    }

    fn alpha(&self) -> f64 {
        (self.lambda / self.l).powi(2)
    }

    fn fugacity(&self) -> f64 {
        self.mu_beta.exp()
    }
}

/// `θ(a) − 1 = Σ_{n≥1} e^{-πan²}`.
fn theta_excess(a: f64) -> f64 {
    dirichlet_sum(1.0, a / std::f64::consts::PI, Representation::Auto).value
}

/// `θ(a)` from its Poisson dual, returned as `(θ, u)` with `u = 1/(2√a)`.
fn theta_dual(a: f64) -> (f64, f64) {
    let u = 0.5 / a.sqrt();
    let psi = gaussian_tail_sum(std::f64::consts::PI / a, 0.5).value;
    (0.5 + u * (1.0 + 2.0 * psi), u)
}

/// `Σ_j z^j (θ(jα)³ − 1)`, the excited-mode part of the eigen-sum.
fn excited_sum(alpha: f64, z: f64) -> Result<f64> {
    let mut sum = 0.0;
    let mut zj = 1.0;
    let decay = (-std::f64::consts::PI * alpha).exp();
    for j in 1..=MAX_J {
        zj *= z;
        let a = j as f64 * alpha;
        let e = theta_excess(a);
        let excess = e * (3.0 + e * (3.0 + e));
        sum += zj * excess;
        if a >= 1.0 {
            // θ³ − 1 ≤ 7.001 e^{-πa} once a ≥ 1, and z^j ≤ 1
            let by_theta = 7.001 * (-std::f64::consts::PI * (a + alpha)).exp() / (1.0 - decay);
            let by_z = if z < 1.0 { excess / (1.0 - z) } else { f64::INFINITY };
            let tail = zj * z * by_theta.min(by_z);
            if tail <= SUM_TOL * sum {
                return Ok(sum);
            }
        }
    }
    Err(Error::TermCap(MAX_J))
}

/// `N` summed over eigenmodes: `z/(1−z) + Σ_j z^j (θ(jα)³ − 1)`.
pub fn particle_number_direct(state: &FreeGasState) -> Result<f64> {
    state.validate()?;
    let ground = 1.0 / (-state.mu_beta).exp_m1();
    Ok(ground + excited_sum(state.alpha(), state.fugacity())?)
}

/// Excited-mode number at `μβ = 0`: the eigen-sum with the ground mode cut
/// out, `Σ_j (θ(jα)³ − 1)`.
pub fn excited_number_at_zero(l: f64, lambda: f64) -> Result<f64> {
    require_positive("L", l)?;
    require_positive("lambda", lambda)?;
    excited_sum((lambda / l).powi(2), 1.0)
}

/// `N` in the Poisson-resummed form
/// `(L/2λ)³ g_{3/2}(z) + Σ_j z^j [θ(jα)³ − u_j³]`, `u_j = L/(2λ√j)`, with
/// every θ evaluated through its dual series.
pub fn particle_number_poisson(state: &FreeGasState) -> Result<f64> {
    state.validate()?;
    let z = state.fugacity();
    let alpha = state.alpha();
    let bulk = bulk_prefactor(state.l, state.lambda) * bose_g(1.5, z)?;
    let mut rest = 0.0;
    let mut zj = 1.0;
    for j in 1..=MAX_J {
        zj *= z;
        let (theta, u) = theta_dual(j as f64 * alpha);
        let v = theta - u;
        rest += zj * v * (3.0 * u * u + v * (3.0 * u + v));
        // later terms are bounded by z^k θ(jα)³
        let tail = zj * z * theta.powi(3) / (1.0 - z);
        if tail <= SUM_TOL * (bulk + rest) {
            return Ok(bulk + rest);
        }
    }
    Err(Error::TermCap(MAX_J))
}

/// `(L/2λ)³`, the coefficient of `g_{3/2}(z)` in the bulk term.
pub fn bulk_prefactor(l: f64, lambda: f64) -> f64 {
    (0.5 * l / lambda).powi(3)
}

/// Bulk critical number `(L/2λ)³ ζ(3/2)`.
pub fn critical_number(l: f64, lambda: f64) -> f64 {
    bulk_prefactor(l, lambda) * ZETA_3_2
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FugacitySolution {
    pub mu_beta: f64,
    /// Particle number at the returned `μβ`.
    pub n: f64,
    /// The target exceeds `N(−1e-16)` and `μβ` is pinned to the bracket end.
    pub saturated: bool,
    /// The target exceeds the bulk critical number.
    pub condensed: bool,
}

/// Solves `N(μβ) = N_target` by bisection in `ln|μβ|` over
/// `[1e-16, 50]`, to relative accuracy `1e-8` in `N`.
pub fn solve_fugacity(n_target: f64, l: f64, lambda: f64) -> Result<FugacitySolution> {
    require_positive("N_target", n_target)?;
    let number = |mb: f64| particle_number_direct(&FreeGasState::new(l, lambda, mb)?);
    let condensed = n_target > critical_number(l, lambda);
    let n_hi = number(-MU_BETA_MIN)?;
    if n_target >= n_hi {
        return Ok(FugacitySolution {
            mu_beta: -MU_BETA_MIN,
            n: n_hi,
            saturated: true,
            condensed,
        });
    }
    let n_lo = number(-MU_BETA_MAX)?;
    if n_target <= n_lo {
        return Err(Error::Regime(format!(
            "target {n_target:e} is below N(μβ = -{MU_BETA_MAX}) = {n_lo:e}"
        )));
    }
    // x = ln|μβ|; N decreases in x
    let (mut lo, mut hi) = (MU_BETA_MIN.ln(), MU_BETA_MAX.ln());
    let mut best = (-(0.5 * (lo + hi)).exp(), f64::NAN);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let mb = -mid.exp();
        let n = number(mb)?;
        best = (mb, n);
        if (n - n_target).abs() <= 1e-8 * n_target * 1e-2 || hi - lo < 1e-15 {
            break;
        }
        if n > n_target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(FugacitySolution {
        mu_beta: best.0,
        n: best.1,
        saturated: false,
        condensed,
    })
}

/// `N = n_bulk + n_condensate + residual` at the solved fugacity, with
/// `c_estimate = residual·λ²/L²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CondensateDecomposition {
    pub mu_beta: f64,
    pub n_target: f64,
    pub n_bulk: f64,
    pub n_condensate: f64,
    pub residual: f64,
    pub c_estimate: f64,
}

pub fn condensate_decomposition(n_target: f64, l: f64, lambda: f64) -> Result<CondensateDecomposition> {
    let sol = solve_fugacity(n_target, l, lambda)?;
    if !sol.condensed {
        return Err(Error::Regime(format!(
            "N = {n_target:e} is below the bulk critical number {:e}",
            critical_number(l, lambda)
        )));
    }
    decompose(n_target, l, lambda, sol.mu_beta)
}

/// Decomposition at a given `μβ`, without the regime check.
pub fn decompose(n_target: f64, l: f64, lambda: f64, mu_beta: f64) -> Result<CondensateDecomposition> {
    let n_bulk = bulk_prefactor(l, lambda) * bose_g(1.5, mu_beta.exp())?;
    let n_condensate = 1.0 / (-mu_beta).exp_m1();
    let residual = n_target - n_bulk - n_condensate;
    Ok(CondensateDecomposition {
        mu_beta,
        n_target,
        n_bulk,
        n_condensate,
        residual,
        c_estimate: residual * (lambda / l).powi(2),
    })
}
