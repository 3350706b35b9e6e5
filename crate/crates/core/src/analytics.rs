//! Closed-form secrecy analysis for the hardened massive-MIMO relay link:
//! secrecy outage capacity, feasibility, interception probability, the
//! optimal relay power for each objective, and the high-source-power limit.
//!
//! Every function here is pure over an immutable [`SystemParams`]; the
//! `montecarlo` module provides the independent check on each expression.

use serde::Serialize;
use thiserror::Error;

use crate::params::{ParamError, SystemParams};

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum AnalyticsError {
    #[error(transparent)]
    Param(#[from] ParamError),
    /// `r_l >= 1`: no relay power yields a nonnegative secrecy outage
    /// capacity (the raw value can still be evaluated).
    #[error("no nonnegative secrecy outage capacity: r_l = {r_l} >= 1")]
    Infeasible { r_l: f64 },
    #[error("relay power {p_r} violates {constraint}")]
    InvalidRelayPower { p_r: f64, constraint: &'static str },
    /// `p_s = 0` leaves no relay power with a nonzero legitimate capacity.
    #[error("optimal-power region is empty: p_s = 0")]
    EmptyPowerRegion,
}

/// Secrecy outage capacity at one operating point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SocValue {
    /// Raw value in bits/s; negative when the outage constraint cannot be
    /// met with a positive rate.
    pub c_soc: f64,
    /// `max(c_soc, 0)`: the value a scheduler would actually use.
    pub clamped: f64,
    /// Whether `r_l < 1`, i.e. some relay power attains a nonnegative
    /// secrecy outage capacity.
    pub feasible: bool,
}

/// Which argument of `min(p_s·alpha_sr/(rho·alpha_rd), p_max)` limits the
/// optimal relay power.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PowerRegime {
    SourceLimited,
    CeilingLimited,
}

/// Optimal relay power together with the value of the objective there.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AllocationResult {
    /// Optimal relay power, linear scale.
    pub p_r_star: f64,
    pub regime: PowerRegime,
    /// Bits/s for the secrecy-capacity objective, a probability for the
    /// interception objective.
    pub objective_value: f64,
}

/// Solution of the interception-probability minimization: every relay power
/// in `(0, region_upper]` attains the same minimum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IpOptimum {
    /// Upper endpoint of the optimal region; also the recommended operating
    /// point, since it simultaneously maximizes the secrecy outage capacity.
    pub region_upper: f64,
    /// The constant minimum interception probability
    /// `exp(-rho·alpha_rd·n_r/alpha_re)`.
    pub p_0_min: f64,
}

fn require_nonnegative_power(p_r: f64) -> Result<(), AnalyticsError> {
    if p_r.is_finite() && p_r >= 0.0 {
        Ok(())
    } else {
        Err(AnalyticsError::InvalidRelayPower {
            p_r,
            constraint: "p_r >= 0 and finite",
        })
    }
}

/// Relay power that gives both hops the same hardened capacity:
/// `p_s·alpha_sr/(rho·alpha_rd)`. Callers guarantee `rho > 0`.
fn hop_matched_power(p: &SystemParams) -> f64 {
    p.p_s() * p.alpha_sr() / (p.rho() * p.alpha_rd())
}

/// Secrecy outage capacity at relay power `p_r` (bits/s), raw and clamped.
///
/// `W·log2(1 + min(B, p_r·A)) - W·log2(1 - p_r·alpha_re·ln(epsilon))`,
/// with `A = rho·alpha_rd·n_r` and `B = p_s·alpha_sr·n_r`.
pub fn secrecy_outage_capacity(
    p: &SystemParams,
    p_r: f64,
) -> Result<SocValue, AnalyticsError> {
    require_nonnegative_power(p_r)?;
    let d = p.derived()?;
    let hop = f64::min(d.b, p_r * d.a);
    let c_soc = p.w_hz()
        * ((1.0 + hop).log2() - (1.0 - p_r * p.alpha_re() * p.epsilon().ln()).log2());
    Ok(SocValue {
        c_soc,
        clamped: c_soc.max(0.0),
        feasible: d.r_l < 1.0,
    })
}

/// Hardened legitimate channel capacity
/// `W·log2(1 + min(p_s·alpha_sr·n_r, p_r·rho·alpha_rd·n_r))` in bits/s.
pub fn legitimate_capacity_cf(p: &SystemParams, p_r: f64) -> Result<f64, AnalyticsError> {
    require_nonnegative_power(p_r)?;
    let n = f64::from(p.n_r());
    let hop = f64::min(
        p.p_s() * p.alpha_sr() * n,
        p_r * p.rho() * p.alpha_rd() * n,
    );
    Ok(p.w_hz() * (1.0 + hop).log2())
}

/// Whether any relay power attains a nonnegative secrecy outage capacity,
/// i.e. `r_l < 1`.
pub fn feasibility(p: &SystemParams) -> Result<bool, AnalyticsError> {
    Ok(p.derived()?.r_l < 1.0)
}

/// Smallest antenna count that makes the system feasible: the least integer
/// strictly greater than `-alpha_re·ln(epsilon)/(rho·alpha_rd)`.
///
/// The bound is strict, so an exactly integral bound still rounds up.
pub fn min_antennas(p: &SystemParams) -> Result<u64, AnalyticsError> {
    if p.rho() == 0.0 {
        return Err(ParamError::DegenerateCsi.into());
    }
    let bound = -p.alpha_re() * p.epsilon().ln() / (p.rho() * p.alpha_rd());
    Ok(bound.floor() as u64 + 1)
}

/// Relay power maximizing the secrecy outage capacity:
/// `min(p_s·alpha_sr/(rho·alpha_rd), p_max)`, with the capacity attained
/// there as the objective value.
///
/// Fails with [`AnalyticsError::Infeasible`] when `r_l >= 1`; the raw
/// (negative) capacity can still be inspected via
/// [`secrecy_outage_capacity`].
pub fn optimal_power_soc(p: &SystemParams) -> Result<AllocationResult, AnalyticsError> {
    let d = p.derived()?;
    if d.r_l >= 1.0 {
        return Err(AnalyticsError::Infeasible { r_l: d.r_l });
    }
    let matched = hop_matched_power(p);
    let p_r_star = matched.min(p.p_max());
    let regime = if matched <= p.p_max() {
        PowerRegime::SourceLimited
    } else {
        PowerRegime::CeilingLimited
    };
    let soc = secrecy_outage_capacity(p, p_r_star)?;
    Ok(AllocationResult {
        p_r_star,
        regime,
        objective_value: soc.c_soc,
    })
}

/// Interception probability `exp(-(2^(C_D/W) - 1)/(p_r·alpha_re))` at relay
/// power `p_r > 0`, with the hardened legitimate capacity as `C_D`.
pub fn interception_probability_cf(p: &SystemParams, p_r: f64) -> Result<f64, AnalyticsError> {
    if !(p_r.is_finite() && p_r > 0.0) {
        return Err(AnalyticsError::InvalidRelayPower {
            p_r,
            constraint: "p_r > 0 and finite (no interception without transmission)",
        });
    }
    let c_d = legitimate_capacity_cf(p, p_r)?;
    Ok((-((2f64.powf(c_d / p.w_hz()) - 1.0) / (p_r * p.alpha_re()))).exp())
}

/// Solution of the interception-probability minimization.
///
/// Any relay power in `(0, region_upper]` attains `p_0_min`; the upper
/// endpoint is the recommended operating point because it also maximizes
/// the secrecy outage capacity.
pub fn optimal_power_ip(p: &SystemParams) -> Result<IpOptimum, AnalyticsError> {
    if p.rho() == 0.0 {
        return Err(ParamError::DegenerateCsi.into());
    }
    if p.p_s() == 0.0 {
        return Err(AnalyticsError::EmptyPowerRegion);
    }
    let region_upper = hop_matched_power(p).min(p.p_max());
    let p_0_min = (-(p.rho() * p.alpha_rd() * f64::from(p.n_r()) / p.alpha_re())).exp();
    Ok(IpOptimum {
        region_upper,
        p_0_min,
    })
}

/// High-source-power limit of the maximum secrecy outage capacity:
/// `W·log2(1 + p_max·A) - W·log2(1 + p_max·A·r_l)` in bits/s.
///
/// The maximum equals this limit exactly once
/// `p_s·alpha_sr/(rho·alpha_rd) >= p_max`.
pub fn soc_saturation_limit(p: &SystemParams) -> Result<f64, AnalyticsError> {
    let d = p.derived()?;
    if d.r_l >= 1.0 {
        return Err(AnalyticsError::Infeasible { r_l: d.r_l });
    }
    let cap = p.p_max() * d.a;
    Ok(p.w_hz() * ((1.0 + cap).log2() - (1.0 + cap * d.r_l).log2()))
}
