//! Exact per-realization fading simulator: the independent check on every
//! closed form in [`crate::analytics`].
//!
//! Nothing here is hardened or approximated. Each trial draws the four
//! fading vectors, reconstructs the true relay-destination channel from the
//! estimate and its error, and evaluates the per-realization capacities.
//!
//! Reproducibility contract: trial `i` of a run with master seed `s` is a
//! pure function of `(s, i)` (a dedicated ChaCha stream per trial), so
//! estimates are bit-identical for any worker count.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::FRAC_1_SQRT_2;
use thiserror::Error;

use crate::params::SystemParams;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum McError {
    #[error("channel vector {field} has {got} entries, expected {expected}")]
    DimensionMismatch {
        field: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("need n_trials >= 1")]
    NoTrials,
    /// The epsilon-quantile needs `n_trials·epsilon >= 100` tail samples.
    #[error("{n_trials} trials leave too few tail samples at epsilon = {epsilon}; need n_trials·epsilon >= 100")]
    InsufficientTrials { n_trials: u64, epsilon: f64 },
    #[error("relay power {p_r} must be finite and >= 0")]
    InvalidRelayPower { p_r: f64 },
    #[error("epsilon = {epsilon} must lie in (0, 1)")]
    InvalidEpsilon { epsilon: f64 },
}

/// One fading realization.
///
/// Entry convention: unit total variance, i.e. real and imaginary parts are
/// each `N(0, 1/2)`, so `E[||h||^2] = n_r`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelDraw {
    /// Source-to-relay fading.
    pub h_sr: Vec<Complex64>,
    /// Estimated relay-to-destination fading (what the beamformer sees).
    pub h_rd_hat: Vec<Complex64>,
    /// Estimation error, independent of `h_rd_hat`.
    pub e: Vec<Complex64>,
    /// Relay-to-eavesdropper fading.
    pub h_re: Vec<Complex64>,
}

impl ChannelDraw {
    /// True relay-destination channel
    /// `sqrt(rho)·h_rd_hat + sqrt(1 - rho)·e`.
    pub fn true_relay_destination(&self, rho: f64) -> Vec<Complex64> {
        let c_hat = rho.sqrt();
        let c_err = (1.0 - rho).sqrt();
        self.h_rd_hat
            .iter()
            .zip(&self.e)
            .map(|(hat, err)| hat * c_hat + err * c_err)
            .collect()
    }
}

/// Per-realization capacities in bits/s.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CapacitySample {
    pub c_sr: f64,
    pub c_rd: f64,
    pub c_re: f64,
    /// Legitimate end-to-end capacity `min(c_sr, c_rd)`.
    pub c_d: f64,
    /// Eavesdropper end-to-end capacity `min(c_sr, c_re)`.
    pub c_e: f64,
    /// `c_d - c_e`; may be negative.
    pub secrecy_rate: f64,
}

/// How the standard error of an [`McEstimate`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StdErrorKind {
    /// `sqrt(p·(1-p)/n)` for a hit-fraction estimate.
    Binomial,
    /// Asymptotic order-statistic error with the density estimated from
    /// neighboring order statistics.
    QuantileDensity,
}

/// A Monte Carlo point estimate with its reproducibility record.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McEstimate {
    /// Probability or bits/s, depending on the estimator.
    pub value: f64,
    pub std_error: f64,
    pub n_trials: u64,
    /// Master seed; rerunning with the same seed and trial count reproduces
    /// the estimate bit-for-bit.
    pub seed: u64,
    pub std_error_kind: StdErrorKind,
}

/// ChaCha stream for trial `trial` of a run with master seed `seed`.
///
/// The generator state is a pure function of `(seed, trial)`, which makes
/// trials independent, parallelizable, and individually reproducible.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn standard_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * FRAC_1_SQRT_2
}

fn complex_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Complex64> {
    (0..n).map(|_| standard_complex(rng)).collect()
}

/// Draw one fading realization. Vectors are sampled in the order
/// `h_sr, h_rd_hat, e, h_re` (part of the reproducibility contract).
pub fn draw_channel<R: Rng + ?Sized>(params: &SystemParams, rng: &mut R) -> ChannelDraw {
    let n = params.n_r() as usize;
    ChannelDraw {
        h_sr: complex_vector(rng, n),
        h_rd_hat: complex_vector(rng, n),
        e: complex_vector(rng, n),
        h_re: complex_vector(rng, n),
    }
}

fn norm_sq(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

/// `x^H · y`.
fn inner(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

fn check_len(field: &'static str, len: usize, expected: usize) -> Result<(), McError> {
    if len == expected {
        Ok(())
    } else {
        Err(McError::DimensionMismatch {
            field,
            expected,
            got: len,
        })
    }
}

/// Exact per-realization capacities at relay power `p_r`.
///
/// The beamformer points along `h_rd_hat/||h_rd_hat||`; the destination sees
/// the true channel reconstructed from the estimate and its error, the
/// eavesdropper sees `h_re` projected on the same beam.
pub fn exact_capacities(
    params: &SystemParams,
    p_r: f64,
    draw: &ChannelDraw,
) -> Result<CapacitySample, McError> {
    if !(p_r.is_finite() && p_r >= 0.0) {
        return Err(McError::InvalidRelayPower { p_r });
    }
    let n = params.n_r() as usize;
    check_len("h_sr", draw.h_sr.len(), n)?;
    check_len("h_rd_hat", draw.h_rd_hat.len(), n)?;
    check_len("e", draw.e.len(), n)?;
    check_len("h_re", draw.h_re.len(), n)?;

    let w = params.w_hz();
    let hat_norm = norm_sq(&draw.h_rd_hat).sqrt();

    let gamma_r = params.p_s() * params.alpha_sr() * norm_sq(&draw.h_sr);
    let h_rd = draw.true_relay_destination(params.rho());
    let gamma_d =
        p_r * params.alpha_rd() * (inner(&h_rd, &draw.h_rd_hat).norm() / hat_norm).powi(2);
    let gamma_e =
        p_r * params.alpha_re() * (inner(&draw.h_re, &draw.h_rd_hat).norm() / hat_norm).powi(2);

    let c_sr = w * (1.0 + gamma_r).log2();
    let c_rd = w * (1.0 + gamma_d).log2();
    let c_re = w * (1.0 + gamma_e).log2();
    let c_d = c_sr.min(c_rd);
    let c_e = c_sr.min(c_re);
    Ok(CapacitySample {
        c_sr,
        c_rd,
        c_re,
        c_d,
        c_e,
        secrecy_rate: c_d - c_e,
    })
}

fn validate_run(p_r: f64, n_trials: u64) -> Result<(), McError> {
    if !(p_r.is_finite() && p_r >= 0.0) {
        return Err(McError::InvalidRelayPower { p_r });
    }
    if n_trials == 0 {
        return Err(McError::NoTrials);
    }
    Ok(())
}

/// Capacity samples for trials `0..n_trials`, in trial order.
///
/// Trials run on the rayon pool; the output is identical for any worker
/// count because trial `i` depends only on `(seed, i)`.
pub fn collect_capacity_samples(
    params: &SystemParams,
    p_r: f64,
    n_trials: u64,
    seed: u64,
) -> Result<Vec<CapacitySample>, McError> {
    validate_run(p_r, n_trials)?;
    Ok((0..n_trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(seed, trial);
            let draw = draw_channel(params, &mut rng);
            exact_capacities(params, p_r, &draw).expect("self-drawn channel has matching length")
        })
        .collect())
}

fn binomial_estimate(hits: u64, n_trials: u64, seed: u64) -> McEstimate {
    let value = hits as f64 / n_trials as f64;
    McEstimate {
        value,
        std_error: (value * (1.0 - value) / n_trials as f64).sqrt(),
        n_trials,
        seed,
        std_error_kind: StdErrorKind::Binomial,
    }
}

/// Fraction of trials whose secrecy rate falls below `c_target` (bits/s),
/// with a binomial standard error.
pub fn estimate_outage_probability(
    params: &SystemParams,
    p_r: f64,
    c_target: f64,
    n_trials: u64,
    seed: u64,
) -> Result<McEstimate, McError> {
    let samples = collect_capacity_samples(params, p_r, n_trials, seed)?;
    let hits = samples.iter().filter(|s| s.secrecy_rate < c_target).count() as u64;
    Ok(binomial_estimate(hits, n_trials, seed))
}

/// Empirical secrecy outage capacity: the ascending order statistic at
/// (1-based) index `ceil(epsilon·n)` of the secrecy-rate sample.
///
/// Negative rates are kept, not clamped. The standard error comes from the
/// asymptotic quantile variance `epsilon·(1-epsilon)/(n·f(q)^2)` with the
/// density `f(q)` estimated from order statistics `sqrt(n)` positions away.
pub fn empirical_outage_capacity(
    params: &SystemParams,
    p_r: f64,
    epsilon: f64,
    n_trials: u64,
    seed: u64,
) -> Result<McEstimate, McError> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(McError::InvalidEpsilon { epsilon });
    }
    if (n_trials as f64) * epsilon < 100.0 {
        return Err(McError::InsufficientTrials { n_trials, epsilon });
    }
    let samples = collect_capacity_samples(params, p_r, n_trials, seed)?;
    let mut rates: Vec<f64> = samples.iter().map(|s| s.secrecy_rate).collect();
    rates.sort_unstable_by(f64::total_cmp);

    // ceil with a one-part-in-1e9 guard so that exact products such as
    // 0.01·100000 do not round up to the next order statistic.
    let n = n_trials as f64;
    let k = ((epsilon * n - 1e-9).ceil().max(1.0) as usize).min(rates.len());
    let idx = k - 1;

    let half_window = (n.sqrt().round() as usize).max(1);
    let lo = idx.saturating_sub(half_window);
    let hi = (idx + half_window).min(rates.len() - 1);
    let width = rates[hi] - rates[lo];
    let std_error = if width > 0.0 && hi > lo {
        (epsilon * (1.0 - epsilon) / n).sqrt() * width * n / (hi - lo) as f64
    } else {
        0.0
    };

    Ok(McEstimate {
        value: rates[idx],
        std_error,
        n_trials,
        seed,
        std_error_kind: StdErrorKind::QuantileDensity,
    })
}

/// Fraction of trials in which the eavesdropper out-receives the
/// destination (`c_d < c_e`), with a binomial standard error.
pub fn estimate_interception_probability(
    params: &SystemParams,
    p_r: f64,
    n_trials: u64,
    seed: u64,
) -> Result<McEstimate, McError> {
    let samples = collect_capacity_samples(params, p_r, n_trials, seed)?;
    let hits = samples.iter().filter(|s| s.c_d < s.c_e).count() as u64;
    Ok(binomial_estimate(hits, n_trials, seed))
}

/// Kolmogorov-Smirnov distance between `samples` and the unit-mean
/// exponential distribution (CDF `1 - exp(-x)`).
pub fn ks_distance_unit_exponential(samples: &[f64]) -> f64 {
    let mut sorted = samples.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let mut sup: f64 = 0.0;
    for (i, &x) in sorted.iter().enumerate() {
        let cdf = 1.0 - (-x).exp();
        sup = sup
            .max((cdf - i as f64 / n).abs())
            .max(((i + 1) as f64 / n - cdf).abs());
    }
    sup
}
