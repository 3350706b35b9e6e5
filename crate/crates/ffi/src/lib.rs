//! C ABI for the relay-secrecy library.
//!
//! Conventions:
//! - `RsParams` is an opaque handle created by [`rs_params_new`] and
//!   released by [`rs_params_free`]; it is immutable and may be shared
//!   across threads.
//! - Every fallible call returns an [`RsStatus`]; outputs are written
//!   through pointers only on `RS_STATUS_OK`.
//! - [`rs_status_message`] maps a status to a static, NUL-terminated
//!   description.
//!
//! The matching header is generated into `include/relay_secrecy.h` at
//! build time.

use std::ffi::c_char;

use relay_secrecy::analytics::{self, AnalyticsError, PowerRegime};
use relay_secrecy::montecarlo::{self, McError};
use relay_secrecy::params::{from_db, to_db, ParamError, SystemConfig, SystemParams};

/// Opaque handle around a validated parameter set.
pub struct RsParams(SystemParams);

/// Status code returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RsStatus {
    Ok = 0,
    /// A required pointer argument was NULL.
    NullPointer = 1,
    /// A parameter violates its range constraint.
    InvalidParams = 2,
    /// rho = 0: the relative path loss is undefined.
    DegenerateCsi = 3,
    /// r_l >= 1: no relay power gives a nonnegative secrecy capacity.
    Infeasible = 4,
    /// Relay power outside its valid domain.
    InvalidRelayPower = 5,
    /// p_s = 0: the optimal-power region is empty.
    EmptyPowerRegion = 6,
    /// Too few Monte Carlo trials for the requested estimate.
    InsufficientTrials = 7,
}

/// Which bound limits the optimal relay power.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RsRegime {
    SourceLimited = 0,
    CeilingLimited = 1,
}

/// Monte Carlo estimate with its reproducibility record.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RsMcEstimate {
    pub value: f64,
    pub std_error: f64,
    pub n_trials: u64,
    pub seed: u64,
}

impl From<ParamError> for RsStatus {
    fn from(err: ParamError) -> Self {
        match err {
            ParamError::OutOfRange { .. } => RsStatus::InvalidParams,
            ParamError::DegenerateCsi => RsStatus::DegenerateCsi,
        }
    }
}

impl From<AnalyticsError> for RsStatus {
    fn from(err: AnalyticsError) -> Self {
        match err {
            AnalyticsError::Param(e) => e.into(),
            AnalyticsError::Infeasible { .. } => RsStatus::Infeasible,
            AnalyticsError::InvalidRelayPower { .. } => RsStatus::InvalidRelayPower,
            AnalyticsError::EmptyPowerRegion => RsStatus::EmptyPowerRegion,
        }
    }
}

impl From<McError> for RsStatus {
    fn from(err: McError) -> Self {
        match err {
            McError::NoTrials | McError::InsufficientTrials { .. } => RsStatus::InsufficientTrials,
            McError::InvalidRelayPower { .. } => RsStatus::InvalidRelayPower,
            McError::InvalidEpsilon { .. } | McError::DimensionMismatch { .. } => {
                RsStatus::InvalidParams
            }
        }
    }
}

/// Borrow the parameter set behind `ptr`, or fail with `NullPointer`.
///
/// # Safety
/// `ptr` must be NULL or a live handle from `rs_params_new`.
unsafe fn params<'a>(ptr: *const RsParams) -> Result<&'a SystemParams, RsStatus> {
    // SAFETY: caller guarantees validity per the function contract.
    unsafe { ptr.as_ref() }.map(|p| &p.0).ok_or(RsStatus::NullPointer)
}

/// Write `value` through `out`, or fail with `NullPointer`.
///
/// # Safety
/// `out` must be NULL or valid for a write of `T`.
unsafe fn write_out<T>(out: *mut T, value: T) -> RsStatus {
    if out.is_null() {
        return RsStatus::NullPointer;
    }
    // SAFETY: checked non-NULL; caller guarantees writability.
    unsafe { out.write(value) };
    RsStatus::Ok
}

/// Convert a decibel power value to linear scale.
#[no_mangle]
pub extern "C" fn rs_from_db(db: f64) -> f64 {
    from_db(db)
}

/// Convert a linear power value to decibels.
#[no_mangle]
pub extern "C" fn rs_to_db(linear: f64) -> f64 {
    to_db(linear)
}

/// Create a validated parameter set. On success writes a handle that must
/// be released with [`rs_params_free`].
///
/// # Safety
/// `out` must be valid for a pointer write.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn rs_params_new(
    n_r: u32,
    w_hz: f64,
    rho: f64,
    epsilon: f64,
    p_s: f64,
    p_max: f64,
    alpha_sr: f64,
    alpha_rd: f64,
    alpha_re: f64,
    out: *mut *mut RsParams,
) -> RsStatus {
    let config = SystemConfig {
        n_r,
        w_hz,
        rho,
        epsilon,
        p_s,
        p_max,
        alpha_sr,
        alpha_rd,
        alpha_re,
    };
    match SystemParams::new(config) {
        Ok(p) => unsafe { write_out(out, Box::into_raw(Box::new(RsParams(p)))) },
        Err(e) => e.into(),
    }
}

/// Create the default parameter set (100 antennas, 10 kHz, rho 0.9,
/// epsilon 0.01, source SNR 10 dB, ceiling 15 dB, alpha_re 5).
///
/// # Safety
/// `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn rs_params_defaults(out: *mut *mut RsParams) -> RsStatus {
    unsafe { write_out(out, Box::into_raw(Box::new(RsParams(SystemParams::defaults())))) }
}

/// Release a handle from [`rs_params_new`]. NULL is a no-op.
///
/// # Safety
/// `ptr` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rs_params_free(ptr: *mut RsParams) {
    if !ptr.is_null() {
        // SAFETY: caller guarantees `ptr` came from Box::into_raw above.
        drop(unsafe { Box::from_raw(ptr) });
    }
}

/// Derived shorthand constants: beamforming gain `A`, source SNR `B`, and
/// the relative path loss `r_l`.
///
/// # Safety
/// `p` must be a live handle; out pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rs_derived(
    p: *const RsParams,
    out_a: *mut f64,
    out_b: *mut f64,
    out_r_l: *mut f64,
) -> RsStatus {
    unsafe {
        let params = match params(p) {
            Ok(p) => p,
            Err(s) => return s,
        };
        match params.derived() {
            Ok(d) => {
                if out_a.is_null() || out_b.is_null() || out_r_l.is_null() {
                    return RsStatus::NullPointer;
                }
                out_a.write(d.a);
                out_b.write(d.b);
                out_r_l.write(d.r_l);
                RsStatus::Ok
            }
            Err(e) => e.into(),
        }
    }
}

/// Whether some relay power attains a nonnegative secrecy outage capacity.
///
/// # Safety
/// `p` must be a live handle; `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn rs_feasible(p: *const RsParams, out: *mut bool) -> RsStatus {
    unsafe {
        match params(p).and_then(|p| analytics::feasibility(p).map_err(RsStatus::from)) {
            Ok(v) => write_out(out, v),
            Err(s) => s,
        }
    }
}

/// Smallest antenna count that makes the system feasible.
///
/// # Safety
/// `p` must be a live handle; `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn rs_min_antennas(p: *const RsParams, out: *mut u64) -> RsStatus {
    unsafe {
        match params(p).and_then(|p| analytics::min_antennas(p).map_err(RsStatus::from)) {
            Ok(v) => write_out(out, v),
            Err(s) => s,
        }
    }
}

/// Secrecy outage capacity at relay power `p_r`, raw and clamped (bits/s).
///
/// # Safety
/// `p` must be a live handle; out pointers valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rs_secrecy_outage_capacity(
    p: *const RsParams,
    p_r: f64,
    out_raw: *mut f64,
    out_clamped: *mut f64,
) -> RsStatus {
    unsafe {
        let params = match params(p) {
            Ok(p) => p,
            Err(s) => return s,
        };
        match analytics::secrecy_outage_capacity(params, p_r) {
            Ok(soc) => {
                if out_raw.is_null() || out_clamped.is_null() {
                    return RsStatus::NullPointer;
                }
                out_raw.write(soc.c_soc);
                out_clamped.write(soc.clamped);
                RsStatus::Ok
            }
            Err(e) => e.into(),
        }
    }
}

/// Hardened legitimate channel capacity at relay power `p_r` (bits/s).
///
/// # Safety
/// `p` must be a live handle; `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn rs_legitimate_capacity(
    p: *const RsParams,
    p_r: f64,
    out: *mut f64,
) -> RsStatus {
    unsafe {
        match params(p).and_then(|p| {
            analytics::legitimate_capacity_cf(p, p_r).map_err(RsStatus::from)
        }) {
            Ok(v) => write_out(out, v),
            Err(s) => s,
        }
    }
}

/// Closed-form interception probability at relay power `p_r > 0`.
///
/// # Safety
/// `p` must be a live handle; `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn rs_interception_probability(
    p: *const RsParams,
    p_r: f64,
    out: *mut f64,
) -> RsStatus {
    unsafe {
        match params(p).and_then(|p| {
            analytics::interception_probability_cf(p, p_r).map_err(RsStatus::from)
        }) {
            Ok(v) => write_out(out, v),
            Err(s) => s,
        }
    }
}

/// Capacity-maximizing relay power, the capacity attained there, and which
/// bound is active. Fails with `RS_STATUS_INFEASIBLE` when `r_l >= 1`.
///
/// # Safety
/// `p` must be a live handle; out pointers valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rs_optimal_power_soc(
    p: *const RsParams,
    out_p_r: *mut f64,
    out_objective: *mut f64,
    out_regime: *mut RsRegime,
) -> RsStatus {
    unsafe {
        let params = match params(p) {
            Ok(p) => p,
            Err(s) => return s,
        };
        match analytics::optimal_power_soc(params) {
            Ok(r) => {
                if out_p_r.is_null() || out_objective.is_null() || out_regime.is_null() {
                    return RsStatus::NullPointer;
                }
                out_p_r.write(r.p_r_star);
                out_objective.write(r.objective_value);
                out_regime.write(match r.regime {
                    PowerRegime::SourceLimited => RsRegime::SourceLimited,
                    PowerRegime::CeilingLimited => RsRegime::CeilingLimited,
                });
                RsStatus::Ok
            }
            Err(e) => e.into(),
        }
    }
}

/// Interception-minimizing power region `(0, region_upper]` and the
/// constant minimum probability attained on it.
///
/// # Safety
/// `p` must be a live handle; out pointers valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rs_optimal_power_ip(
    p: *const RsParams,
    out_region_upper: *mut f64,
    out_p0_min: *mut f64,
) -> RsStatus {
    unsafe {
        let params = match params(p) {
            Ok(p) => p,
            Err(s) => return s,
        };
        match analytics::optimal_power_ip(params) {
            Ok(r) => {
                if out_region_upper.is_null() || out_p0_min.is_null() {
                    return RsStatus::NullPointer;
                }
                out_region_upper.write(r.region_upper);
                out_p0_min.write(r.p_0_min);
                RsStatus::Ok
            }
            Err(e) => e.into(),
        }
    }
}

/// High-source-power limit of the maximum secrecy outage capacity (bits/s).
///
/// # Safety
/// `p` must be a live handle; `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn rs_soc_saturation_limit(p: *const RsParams, out: *mut f64) -> RsStatus {
    unsafe {
        match params(p).and_then(|p| {
            analytics::soc_saturation_limit(p).map_err(RsStatus::from)
        }) {
            Ok(v) => write_out(out, v),
            Err(s) => s,
        }
    }
}

fn mc_out(est: montecarlo::McEstimate) -> RsMcEstimate {
    RsMcEstimate {
        value: est.value,
        std_error: est.std_error,
        n_trials: est.n_trials,
        seed: est.seed,
    }
}

/// Monte Carlo secrecy outage probability at target rate `c_target`
/// (bits/s). Deterministic in `(seed, n_trials)` for any worker count.
///
/// # Safety
/// `p` must be a live handle; `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn rs_estimate_outage_probability(
    p: *const RsParams,
    p_r: f64,
    c_target: f64,
    n_trials: u64,
    seed: u64,
    out: *mut RsMcEstimate,
) -> RsStatus {
    unsafe {
        match params(p).and_then(|p| {
            montecarlo::estimate_outage_probability(p, p_r, c_target, n_trials, seed)
                .map_err(RsStatus::from)
        }) {
            Ok(est) => write_out(out, mc_out(est)),
            Err(s) => s,
        }
    }
}

/// Monte Carlo secrecy outage capacity: the `epsilon`-quantile of the
/// sampled secrecy rate. Needs `n_trials * epsilon >= 100`.
///
/// # Safety
/// `p` must be a live handle; `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn rs_empirical_outage_capacity(
    p: *const RsParams,
    p_r: f64,
    epsilon: f64,
    n_trials: u64,
    seed: u64,
    out: *mut RsMcEstimate,
) -> RsStatus {
    unsafe {
        match params(p).and_then(|p| {
            montecarlo::empirical_outage_capacity(p, p_r, epsilon, n_trials, seed)
                .map_err(RsStatus::from)
        }) {
            Ok(est) => write_out(out, mc_out(est)),
            Err(s) => s,
        }
    }
}

/// Monte Carlo interception probability (fraction of realizations where
/// the eavesdropper out-receives the destination).
///
/// # Safety
/// `p` must be a live handle; `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn rs_estimate_interception_probability(
    p: *const RsParams,
    p_r: f64,
    n_trials: u64,
    seed: u64,
    out: *mut RsMcEstimate,
) -> RsStatus {
    unsafe {
        match params(p).and_then(|p| {
            montecarlo::estimate_interception_probability(p, p_r, n_trials, seed)
                .map_err(RsStatus::from)
        }) {
            Ok(est) => write_out(out, mc_out(est)),
            Err(s) => s,
        }
    }
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn rs_status_message(status: RsStatus) -> *const c_char {
    let msg: &'static [u8] = match status {
        RsStatus::Ok => b"ok\0",
        RsStatus::NullPointer => b"required pointer argument was NULL\0",
        RsStatus::InvalidParams => b"parameter violates its range constraint\0",
        RsStatus::DegenerateCsi => b"rho = 0: relative path loss undefined\0",
        RsStatus::Infeasible => b"r_l >= 1: no nonnegative secrecy capacity\0",
        RsStatus::InvalidRelayPower => b"relay power outside its valid domain\0",
        RsStatus::EmptyPowerRegion => b"p_s = 0: optimal-power region is empty\0",
        RsStatus::InsufficientTrials => b"too few Monte Carlo trials for this estimate\0",
    };
    msg.as_ptr().cast()
}
