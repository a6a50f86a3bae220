//! Strict JSON schemas, one per command. Unknown keys are rejected.

use serde::Deserialize;

use crate::CliError;

pub const DEFAULT_QUADRATURE_NODES: usize = 300;

/// Evenly spaced axis (`start`, `stop`, `step`) or an explicit `values` list.
#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Axis {
    pub start: Option<f64>,
    pub stop: Option<f64>,
    pub step: Option<f64>,
    pub values: Option<Vec<f64>>,
}

impl Axis {
    pub fn points(&self, field: &str) -> Result<Vec<f64>, CliError> {
        match (self.start, self.stop, self.step, &self.values) {
            (None, None, None, Some(v)) if !v.is_empty() => Ok(v.clone()),
            (Some(a), Some(b), Some(h), None) => {
                if !(h > 0.0) || !(b >= a) || !a.is_finite() || !b.is_finite() {
                    return Err(CliError::config(format!(
                        "{field}: need finite start <= stop and step > 0"
                    )));
                }
                let count = ((b - a) / h + 1e-9).floor() as usize + 1;
                if count > 1_000_000 {
                    return Err(CliError::config(format!("{field}: too many points")));
                }
                Ok((0..count).map(|i| a + i as f64 * h).collect())
            }
            _ => Err(CliError::config(format!(
                "{field}: give either start, stop and step, or a nonempty values list"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Bound {
    Upper,
    Lower,
}

#[derive(Debug, Clone, Copy, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub fraction: f64,
    pub power: f64,
}

/// Either `path_loss_levels` or explicit `weights` with `probabilities`.
#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FadingSpec {
    pub path_loss_levels: Option<usize>,
    pub weights: Option<Vec<f64>>,
    pub probabilities: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct PowerGridSpec {
    /// Smallest candidate power; derived from the single-user threshold if absent.
    pub p_min: Option<f64>,
    pub count: Option<usize>,
    pub span_db: Option<f64>,
}

#[derive(Debug, Clone, Copy, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Uniform,
    Logit,
}

#[derive(Debug, Clone, Copy, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    /// Received power (weights equal to the fading gains).
    Weighted,
    /// Transmit power.
    Unit,
}

/// Linear-program settings shared by `optimize` and `tradeoff`.
#[derive(Debug, Clone, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct LpSettings {
    pub epsilon: Option<f64>,
    pub grid_points: Option<usize>,
    pub grid_spacing: Option<Spacing>,
    pub bisection_steps: Option<usize>,
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct PeCurveConfig {
    pub command: Option<String>,
    pub seed: Option<u64>,
    pub quadrature_nodes: Option<usize>,
    pub bits: Vec<u32>,
    pub ebno_db: Axis,
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct EvolveConfig {
    pub command: Option<String>,
    pub seed: Option<u64>,
    pub quadrature_nodes: Option<usize>,
    pub bits: u32,
    pub n: f64,
    pub profile: Vec<GroupSpec>,
    pub bound: Bound,
    pub max_iter: Option<usize>,
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct OptimizeConfig {
    pub command: Option<String>,
    pub seed: Option<u64>,
    pub quadrature_nodes: Option<usize>,
    pub bits: u32,
    pub n: f64,
    pub target_pe: f64,
    pub bound: Bound,
    pub fading: Option<FadingSpec>,
    pub objective: Option<Objective>,
    pub power_grid: Option<PowerGridSpec>,
    pub lp: Option<LpSettings>,
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct TradeoffConfig {
    pub command: Option<String>,
    pub seed: Option<u64>,
    pub quadrature_nodes: Option<usize>,
    pub bits: u32,
    pub rates: Axis,
    pub target_pe: f64,
    pub fading: Option<FadingSpec>,
    pub lp: Option<LpSettings>,
}

#[derive(Debug, Clone, Copy, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Codebook {
    Gaussian,
    Orthogonal,
}

#[derive(Debug, Clone, Copy, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Estimate {
    Posterior,
    Genie,
}

#[derive(Debug, Clone, Copy, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Renorm {
    None,
    Group,
    Double,
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SimulateConfig {
    pub command: Option<String>,
    pub seed: Option<u64>,
    pub users: usize,
    pub bits: u32,
    pub n: f64,
    pub profile: Vec<GroupSpec>,
    pub trials: usize,
    pub max_iterations: Option<usize>,
    pub eta_tol: Option<f64>,
    pub codebook: Option<Codebook>,
    pub estimate: Option<Estimate>,
    pub renormalization: Option<Renorm>,
    pub noiseless: Option<bool>,
    pub memory_budget: Option<usize>,
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct MarcumConfig {
    pub command: Option<String>,
    pub seed: Option<u64>,
    /// Values of `M`.
    pub users: Vec<f64>,
    /// Order scale `a`; the order is `a M`.
    pub order_scale: Option<f64>,
    /// Offset `e` in the noncentrality `M - e`.
    pub offset: Option<f64>,
}

pub(crate) fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::config(format!("invalid config: {e}")))
}
