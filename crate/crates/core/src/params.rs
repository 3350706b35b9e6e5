//! System constants and the derived shorthand used by every closed form.
//!
//! All powers are stored on a linear scale with the noise variance
//! normalized to 1; decibels appear only at the CLI boundary via
//! [`from_db`]/[`to_db`].

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Validation failure while constructing [`SystemParams`] or deriving
/// shorthand constants from it.
#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum ParamError {
    #[error("{field} = {value} violates {constraint}")]
    OutOfRange {
        field: &'static str,
        value: f64,
        constraint: &'static str,
    },
    /// `rho = 0`: the CSI estimate carries no information about the true
    /// channel, so beamforming gain and the relative path loss are undefined.
    #[error("degenerate CSI: rho = 0 makes the relative path loss undefined")]
    DegenerateCsi,
}

/// Convert a decibel power value to linear scale: `10^(db/10)`.
pub fn from_db(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Convert a linear power value to decibels: `10·log10(linear)`.
pub fn to_db(linear: f64) -> f64 {
    10.0 * linear.log10()
}

/// Unvalidated inputs for [`SystemParams::new`].
///
/// `Default` is the operating point used throughout the experiment suite:
/// 100 relay antennas, 10 kHz bandwidth, rho = 0.9, epsilon = 0.01,
/// source SNR 10 dB, relay ceiling 15 dB, unit path losses except
/// `alpha_re = 5`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemConfig {
    /// Antenna count at the relay.
    pub n_r: u32,
    /// Spectral bandwidth in hertz.
    pub w_hz: f64,
    /// Correlation between estimated and true relay-destination fading,
    /// in `[0, 1]`.
    pub rho: f64,
    /// Outage probability bound, in `(0, 1)`.
    pub epsilon: f64,
    /// Source transmit power, linear.
    pub p_s: f64,
    /// Relay transmit power ceiling, linear.
    pub p_max: f64,
    /// Source-to-relay path-loss gain, linear.
    pub alpha_sr: f64,
    /// Relay-to-destination path-loss gain, linear.
    pub alpha_rd: f64,
    /// Relay-to-eavesdropper path-loss gain, linear.
    pub alpha_re: f64,
}

impl Default for SystemConfig {
    fn default() -> Self {
        Self {
            n_r: 100,
            w_hz: 1.0e4,
            rho: 0.9,
            epsilon: 0.01,
            p_s: 10.0,
            p_max: from_db(15.0),
            alpha_sr: 1.0,
            alpha_rd: 1.0,
            alpha_re: 5.0,
        }
    }
}

/// Validated, immutable system constants.
///
/// Construction rejects out-of-range values instead of clamping them, so
/// any instance in circulation satisfies every field invariant. Safe to
/// share across threads.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SystemConfig", into = "SystemConfig")]
pub struct SystemParams {
    n_r: u32,
    w_hz: f64,
    rho: f64,
    epsilon: f64,
    p_s: f64,
    p_max: f64,
    alpha_sr: f64,
    alpha_rd: f64,
    alpha_re: f64,
}

/// Shorthand constants derived from [`SystemParams`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DerivedConstants {
    /// `rho · alpha_rd · n_r`: hardened relay-destination beamforming gain.
    pub a: f64,
    /// `p_s · alpha_sr · n_r`: hardened source-relay SNR.
    pub b: f64,
    /// `(-alpha_re · ln epsilon) / (rho · alpha_rd · n_r)`: relative
    /// distance-dependent path loss. Positive secrecy requires `r_l < 1`.
    pub r_l: f64,
}

fn check_range(
    field: &'static str,
    value: f64,
    constraint: &'static str,
    ok: bool,
) -> Result<(), ParamError> {
    if ok && value.is_finite() {
        Ok(())
    } else {
        Err(ParamError::OutOfRange {
            field,
            value,
            constraint,
        })
    }
}

impl SystemParams {
    /// Validate `config` and freeze it into an immutable parameter set.
    pub fn new(config: SystemConfig) -> Result<Self, ParamError> {
        Self::try_from(config)
    }

    /// The operating point of [`SystemConfig::default`].
    pub fn defaults() -> Self {
        Self::new(SystemConfig::default()).expect("default configuration is valid")
    }

    /// Copy out the raw field values, e.g. to build a modified parameter set.
    pub fn config(&self) -> SystemConfig {
        SystemConfig::from(*self)
    }

    /// Shorthand constants `A`, `B`, `r_l`.
    ///
    /// Fails with [`ParamError::DegenerateCsi`] when `rho = 0`, where the
    /// relative path loss has no finite value.
    pub fn derived(&self) -> Result<DerivedConstants, ParamError> {
        if self.rho == 0.0 {
            return Err(ParamError::DegenerateCsi);
        }
        let a = self.rho * self.alpha_rd * f64::from(self.n_r);
        Ok(DerivedConstants {
            a,
            b: self.p_s * self.alpha_sr * f64::from(self.n_r),
            r_l: -self.alpha_re * self.epsilon.ln() / a,
        })
    }

    pub fn n_r(&self) -> u32 {
        self.n_r
    }

    pub fn w_hz(&self) -> f64 {
        self.w_hz
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn p_s(&self) -> f64 {
        self.p_s
    }

    pub fn p_max(&self) -> f64 {
        self.p_max
    }

    pub fn alpha_sr(&self) -> f64 {
        self.alpha_sr
    }

    pub fn alpha_rd(&self) -> f64 {
        self.alpha_rd
    }

    pub fn alpha_re(&self) -> f64 {
        self.alpha_re
    }
}

impl TryFrom<SystemConfig> for SystemParams {
    type Error = ParamError;

    fn try_from(c: SystemConfig) -> Result<Self, ParamError> {
        check_range("n_r", f64::from(c.n_r), "n_r >= 1", c.n_r >= 1)?;
        check_range("w_hz", c.w_hz, "w_hz > 0", c.w_hz > 0.0)?;
        check_range("rho", c.rho, "0 <= rho <= 1", (0.0..=1.0).contains(&c.rho))?;
        check_range(
            "epsilon",
            c.epsilon,
            "0 < epsilon < 1",
            c.epsilon > 0.0 && c.epsilon < 1.0,
        )?;
        check_range("p_s", c.p_s, "p_s >= 0", c.p_s >= 0.0)?;
        check_range("p_max", c.p_max, "p_max > 0", c.p_max > 0.0)?;
        check_range("alpha_sr", c.alpha_sr, "alpha_sr > 0", c.alpha_sr > 0.0)?;
        check_range("alpha_rd", c.alpha_rd, "alpha_rd > 0", c.alpha_rd > 0.0)?;
        check_range("alpha_re", c.alpha_re, "alpha_re > 0", c.alpha_re > 0.0)?;
        Ok(Self {
            n_r: c.n_r,
            w_hz: c.w_hz,
            rho: c.rho,
            epsilon: c.epsilon,
            p_s: c.p_s,
            p_max: c.p_max,
            alpha_sr: c.alpha_sr,
            alpha_rd: c.alpha_rd,
            alpha_re: c.alpha_re,
        })
    }
}

impl From<SystemParams> for SystemConfig {
    fn from(p: SystemParams) -> Self {
        Self {
            n_r: p.n_r,
            w_hz: p.w_hz,
            rho: p.rho,
            epsilon: p.epsilon,
            p_s: p.p_s,
            p_max: p.p_max,
            alpha_sr: p.alpha_sr,
            alpha_rd: p.alpha_rd,
            alpha_re: p.alpha_re,
        }
    }
}
