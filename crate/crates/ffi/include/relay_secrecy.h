#ifndef RELAY_SECRECY_H
#define RELAY_SECRECY_H

/* Generated by cbindgen from relay-secrecy-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible call.
 */
typedef enum RsStatus {
  RS_STATUS_OK = 0,
  /**
   * A required pointer argument was NULL.
   */
  RS_STATUS_NULL_POINTER = 1,
  /**
   * A parameter violates its range constraint.
   */
  RS_STATUS_INVALID_PARAMS = 2,
  /**
   * rho = 0: the relative path loss is undefined.
   */
  RS_STATUS_DEGENERATE_CSI = 3,
  /**
   * r_l >= 1: no relay power gives a nonnegative secrecy capacity.
   */
  RS_STATUS_INFEASIBLE = 4,
  /**
   * Relay power outside its valid domain.
   */
  RS_STATUS_INVALID_RELAY_POWER = 5,
  /**
   * p_s = 0: the optimal-power region is empty.
   */
  RS_STATUS_EMPTY_POWER_REGION = 6,
  /**
   * Too few Monte Carlo trials for the requested estimate.
   */
  RS_STATUS_INSUFFICIENT_TRIALS = 7,
} RsStatus;

/**
 * Which bound limits the optimal relay power.
 */
typedef enum RsRegime {
  RS_REGIME_SOURCE_LIMITED = 0,
  RS_REGIME_CEILING_LIMITED = 1,
} RsRegime;

/**
 * Opaque handle around a validated parameter set.
 */
typedef struct RsParams RsParams;

/**
 * Monte Carlo estimate with its reproducibility record.
 */
typedef struct RsMcEstimate {
  double value;
  double std_error;
  uint64_t n_trials;
  uint64_t seed;
} RsMcEstimate;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Convert a decibel power value to linear scale.
 */
double rs_from_db(double db);

/**
 * Convert a linear power value to decibels.
 */
double rs_to_db(double linear);

/**
 * Create a validated parameter set. On success writes a handle that must
 * be released with [`rs_params_free`].
 *
 * # Safety
 * `out` must be valid for a pointer write.
 */
enum RsStatus rs_params_new(uint32_t n_r,
                            double w_hz,
                            double rho,
                            double epsilon,
                            double p_s,
                            double p_max,
                            double alpha_sr,
                            double alpha_rd,
                            double alpha_re,
                            struct RsParams **out);

/**
 * Create the default parameter set (100 antennas, 10 kHz, rho 0.9,
 * epsilon 0.01, source SNR 10 dB, ceiling 15 dB, alpha_re 5).
 *
 * # Safety
 * `out` must be valid for a pointer write.
 */
enum RsStatus rs_params_defaults(struct RsParams **out);

/**
 * Release a handle from [`rs_params_new`]. NULL is a no-op.
 *
 * # Safety
 * `ptr` must be NULL or a handle not yet freed.
 */
void rs_params_free(struct RsParams *ptr);

/**
 * Derived shorthand constants: beamforming gain `A`, source SNR `B`, and
 * the relative path loss `r_l`.
 *
 * # Safety
 * `p` must be a live handle; out pointers must be valid for writes.
 */
enum RsStatus rs_derived(const struct RsParams *p, double *out_a, double *out_b, double *out_r_l);

/**
 * Whether some relay power attains a nonnegative secrecy outage capacity.
 *
 * # Safety
 * `p` must be a live handle; `out` valid for a write.
 */
enum RsStatus rs_feasible(const struct RsParams *p, bool *out);

/**
 * Smallest antenna count that makes the system feasible.
 *
 * # Safety
 * `p` must be a live handle; `out` valid for a write.
 */
enum RsStatus rs_min_antennas(const struct RsParams *p, uint64_t *out);

/**
 * Secrecy outage capacity at relay power `p_r`, raw and clamped (bits/s).
 *
 * # Safety
 * `p` must be a live handle; out pointers valid for writes.
 */
enum RsStatus rs_secrecy_outage_capacity(const struct RsParams *p,
                                         double p_r,
                                         double *out_raw,
                                         double *out_clamped);

/**
 * Hardened legitimate channel capacity at relay power `p_r` (bits/s).
 *
 * # Safety
 * `p` must be a live handle; `out` valid for a write.
 */
enum RsStatus rs_legitimate_capacity(const struct RsParams *p, double p_r, double *out);

/**
 * Closed-form interception probability at relay power `p_r > 0`.
 *
 * # Safety
 * `p` must be a live handle; `out` valid for a write.
 */
enum RsStatus rs_interception_probability(const struct RsParams *p, double p_r, double *out);

/**
 * Capacity-maximizing relay power, the capacity attained there, and which
 * bound is active. Fails with `RS_STATUS_INFEASIBLE` when `r_l >= 1`.
 *
 * # Safety
 * `p` must be a live handle; out pointers valid for writes.
 */
enum RsStatus rs_optimal_power_soc(const struct RsParams *p,
                                   double *out_p_r,
                                   double *out_objective,
                                   enum RsRegime *out_regime);

/**
 * Interception-minimizing power region `(0, region_upper]` and the
 * constant minimum probability attained on it.
 *
 * # Safety
 * `p` must be a live handle; out pointers valid for writes.
 */
enum RsStatus rs_optimal_power_ip(const struct RsParams *p,
                                  double *out_region_upper,
                                  double *out_p0_min);

/**
 * High-source-power limit of the maximum secrecy outage capacity (bits/s).
 *
 * # Safety
 * `p` must be a live handle; `out` valid for a write.
 */
enum RsStatus rs_soc_saturation_limit(const struct RsParams *p, double *out);

/**
 * Monte Carlo secrecy outage probability at target rate `c_target`
 * (bits/s). Deterministic in `(seed, n_trials)` for any worker count.
 *
 * # Safety
 * `p` must be a live handle; `out` valid for a write.
 */
enum RsStatus rs_estimate_outage_probability(const struct RsParams *p,
                                             double p_r,
                                             double c_target,
                                             uint64_t n_trials,
                                             uint64_t seed,
                                             struct RsMcEstimate *out);

/**
 * Monte Carlo secrecy outage capacity: the `epsilon`-quantile of the
 * sampled secrecy rate. Needs `n_trials * epsilon >= 100`.
 *
 * # Safety
 * `p` must be a live handle; `out` valid for a write.
 */
enum RsStatus rs_empirical_outage_capacity(const struct RsParams *p,
                                           double p_r,
                                           double epsilon,
                                           uint64_t n_trials,
                                           uint64_t seed,
                                           struct RsMcEstimate *out);

/**
 * Monte Carlo interception probability (fraction of realizations where
 * the eavesdropper out-receives the destination).
 *
 * # Safety
 * `p` must be a live handle; `out` valid for a write.
 */
enum RsStatus rs_estimate_interception_probability(const struct RsParams *p,
                                                   double p_r,
                                                   uint64_t n_trials,
                                                   uint64_t seed,
                                                   struct RsMcEstimate *out);

/**
 * Static description of a status code.
 */
const char *rs_status_message(enum RsStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RELAY_SECRECY_H */
