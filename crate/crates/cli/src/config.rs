use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use bogotherm::bounds::{EtaParameter, SweepParams, SweepQuantity};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// The full run configuration. Every field has a default, so an empty file
/// (or no file) is valid; unknown keys are rejected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub format: Format,
    pub out: PathBuf,
    pub verify: VerifyConfig,
    pub sweep: SweepConfig,
    pub pathria: PathriaConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            format: Format::Csv,
            out: PathBuf::from("."),
            verify: VerifyConfig::default(),
            sweep: SweepConfig::default(),
            pathria: PathriaConfig::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    /// Residuals of the Bessel integral identities on log grids.
    Identities,
    /// Direct vs Poisson-dual particle numbers and interval traces.
    Duality,
    /// The Dirichlet trace inequality on cubes and boxes.
    DirichletWeyl,
    /// Library values against the golden data file.
    Golden,
}

impl Check {
    pub const ALL: [Check; 4] = [Check::Identities, Check::Duality, Check::DirichletWeyl, Check::Golden];

    pub fn name(self) -> &'static str {
        match self {
            Check::Identities => "identities",
            Check::Duality => "duality",
            Check::DirichletWeyl => "dirichlet_weyl",
            Check::Golden => "golden",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VerifyConfig {
    pub checks: Vec<Check>,
    /// Quadrature tolerance of the integral representations.
    pub quad_rel_tol: f64,
    /// Golden data file; the copy shipped with the binary when unset.
    pub golden: Option<PathBuf>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            checks: Check::ALL.to_vec(),
            quad_rel_tol: 1e-10,
            golden: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepConfig {
    pub quantities: Vec<SweepQuantity>,
    pub etas: Vec<f64>,
    /// Cube sides, or `L/λ` for the free gas.
    pub sizes: Vec<f64>,
    pub params: SweepParams,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            quantities: vec![SweepQuantity::EnergyDensity],
            etas: vec![0.25],
            sizes: vec![4.0, 8.0, 16.0, 32.0],
            params: SweepParams::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PathriaConfig {
    pub lambda: f64,
    pub l_over_lambda: Vec<f64>,
    /// Particle numbers in units of the bulk critical number.
    pub density_ratios: Vec<f64>,
}

impl Default for PathriaConfig {
    fn default() -> Self {
        Self {
            lambda: 1.0,
            l_over_lambda: vec![10.0, 20.0, 40.0, 80.0],
            density_ratios: vec![2.0],
        }
    }
}

impl RunConfig {
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("configuration serializes")
    }
}

impl VerifyConfig {
    pub fn validate(&self) -> Result<()> {
        if self.checks.is_empty() {
            bail!("verify.checks is empty; select at least one check");
        }
        if !(self.quad_rel_tol > 0.0) {
            bail!("verify.quad_rel_tol must be positive");
        }
        Ok(())
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<Vec<EtaParameter>> {
        if self.quantities.is_empty() {
            bail!("sweep.quantities is empty");
        }
        if self.sizes.len() < 3 {
            bail!("a sweep needs at least three sizes, got {}", self.sizes.len());
        }
        if self.sizes.windows(2).any(|w| !(w[1] > w[0])) || !(self.sizes[0] > 0.0) {
            bail!("sweep.sizes must be positive and strictly increasing");
        }
        if self.etas.is_empty() {
            bail!("sweep.etas is empty");
        }
        self.params.quadrature.validate()?;
        self.etas
            .iter()
            .map(|&e| EtaParameter::new(e).map_err(Into::into))
            .collect()
    }
}

impl PathriaConfig {
    pub fn validate(&self) -> Result<()> {
        if self.l_over_lambda.is_empty() || self.density_ratios.is_empty() {
            bail!("pathria needs at least one L/lambda and one density ratio");
        }
        if !(self.lambda > 0.0) {
            bail!("pathria.lambda must be positive");
        }
        if self.l_over_lambda.iter().chain(&self.density_ratios).any(|&v| !(v > 0.0)) {
            bail!("pathria grid values must be positive");
        }
        Ok(())
    }
}
