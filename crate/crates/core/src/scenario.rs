//! Scenario files: the JSON schema the CLI reads.
//!
//! Powers are given in decibels (`snr_s_db`, `snr_max_db`) and converted to
//! linear scale on load; path losses are linear. Unknown keys are rejected.
//! A scenario may carry default Monte Carlo settings under `mc`.
//!
//! An `analyze --json` report embeds its scenario under a `scenario` key;
//! [`load`] accepts either a bare scenario or such a report, so reports can
//! be fed back in as scenarios.

use serde::{Deserialize, Serialize};
use std::fs;
use std::path::Path;
use thiserror::Error;

use crate::params::{from_db, to_db, ParamError, SystemConfig, SystemParams};

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("cannot read scenario: {0}")]
    Io(#[from] std::io::Error),
    #[error("scenario is not valid JSON for the schema: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Param(#[from] ParamError),
}

/// Monte Carlo settings carried by a scenario.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct McScenario {
    pub trials: u64,
    pub seed: u64,
}

/// On-disk scenario. See `scenarios/default.json` for a template.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub n_r: u32,
    pub w_hz: f64,
    pub rho: f64,
    pub epsilon: f64,
    /// Source SNR in dB: `p_s = 10^(snr_s_db/10)`.
    pub snr_s_db: f64,
    /// Relay power ceiling in dB: `p_max = 10^(snr_max_db/10)`.
    pub snr_max_db: f64,
    pub alpha_sr: f64,
    pub alpha_rd: f64,
    pub alpha_re: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mc: Option<McScenario>,
}

impl ScenarioFile {
    /// Validate and convert to linear-scale system parameters.
    pub fn to_params(&self) -> Result<SystemParams, ParamError> {
        SystemParams::new(SystemConfig {
            n_r: self.n_r,
            w_hz: self.w_hz,
            rho: self.rho,
            epsilon: self.epsilon,
            p_s: from_db(self.snr_s_db),
            p_max: from_db(self.snr_max_db),
            alpha_sr: self.alpha_sr,
            alpha_rd: self.alpha_rd,
            alpha_re: self.alpha_re,
        })
    }

    /// Express validated parameters back in scenario form (dB powers).
    pub fn from_params(params: &SystemParams, mc: Option<McScenario>) -> Self {
        Self {
            n_r: params.n_r(),
            w_hz: params.w_hz(),
            rho: params.rho(),
            epsilon: params.epsilon(),
            snr_s_db: to_db(params.p_s()),
            snr_max_db: to_db(params.p_max()),
            alpha_sr: params.alpha_sr(),
            alpha_rd: params.alpha_rd(),
            alpha_re: params.alpha_re(),
            mc,
        }
    }
}

/// Load a scenario from `path`. Accepts a bare scenario object or an
/// `analyze --json` report wrapping one under `"scenario"`.
pub fn load(path: &Path) -> Result<ScenarioFile, ScenarioError> {
    let text = fs::read_to_string(path)?;
    let value: serde_json::Value = serde_json::from_str(&text)?;
    let scenario_value = match value.get("scenario") {
        Some(inner) => inner.clone(),
        None => value,
    };
    Ok(serde_json::from_value(scenario_value)?)
}
