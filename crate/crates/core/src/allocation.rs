//! Relay power allocation strategies compared by the experiment suite:
//! capacity-maximizing, interception-minimizing, and a fixed baseline.

use serde::Serialize;
use std::fmt;
use thiserror::Error;

use crate::analytics::{self, AllocationResult, AnalyticsError, PowerRegime};
use crate::params::SystemParams;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum AllocationError {
    #[error(transparent)]
    Analytics(#[from] AnalyticsError),
    #[error("fixed relay power {p_r} outside (0, p_max = {p_max}]")]
    FixedPowerOutOfRange { p_r: f64, p_max: f64 },
}

/// How the relay chooses its transmit power.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// Maximize the secrecy outage capacity.
    SocMax,
    /// Minimize the interception probability; operates at the upper end of
    /// the optimal region, which also maximizes the secrecy outage capacity.
    IpMin,
    /// A constant power (linear scale) regardless of channel conditions.
    Fixed(f64),
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::SocMax => write!(f, "soc_max"),
            Strategy::IpMin => write!(f, "ip_min"),
            Strategy::Fixed(_) => write!(f, "fixed"),
        }
    }
}

/// Evaluate `strategy` on `params`.
///
/// `SocMax` and `IpMin` both pick `min(p_s·alpha_sr/(rho·alpha_rd), p_max)`.
/// The objective value is the clamped secrecy outage capacity for `SocMax`
/// and `Fixed` (zero when the system is infeasible, matching how an
/// infeasible scheme performs), and the minimum interception probability
/// for `IpMin`.
pub fn allocate(strategy: Strategy, params: &SystemParams) -> Result<AllocationResult, AllocationError> {
    params.derived().map_err(AnalyticsError::from)?; // rejects rho = 0 before the division below
    let matched = params.p_s() * params.alpha_sr() / (params.rho() * params.alpha_rd());
    let regime = if matched <= params.p_max() {
        PowerRegime::SourceLimited
    } else {
        PowerRegime::CeilingLimited
    };

    match strategy {
        Strategy::SocMax => {
            let p_r_star = matched.min(params.p_max());
            let soc = analytics::secrecy_outage_capacity(params, p_r_star)?;
            Ok(AllocationResult {
                p_r_star,
                regime,
                objective_value: soc.clamped,
            })
        }
        Strategy::IpMin => {
            let opt = analytics::optimal_power_ip(params)?;
            Ok(AllocationResult {
                p_r_star: opt.region_upper,
                regime,
                objective_value: opt.p_0_min,
            })
        }
        Strategy::Fixed(p_r) => {
            if !(p_r.is_finite() && p_r > 0.0 && p_r <= params.p_max()) {
                return Err(AllocationError::FixedPowerOutOfRange {
                    p_r,
                    p_max: params.p_max(),
                });
            }
            let soc = analytics::secrecy_outage_capacity(params, p_r)?;
            Ok(AllocationResult {
                p_r_star: p_r,
                regime,
                objective_value: soc.clamped,
            })
        }
    }
}
