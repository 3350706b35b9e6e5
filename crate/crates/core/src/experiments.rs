//! Parameter sweeps that put the closed forms and the Monte Carlo
//! estimates side by side, emitted as CSV plus a JSON metadata record.
//!
//! Each sweep record is recomputable from `(axis_value, strategy, epsilon)`
//! and the base parameters alone; with a fixed Monte Carlo seed, reruns are
//! byte-identical. All grid cells of one sweep share the master seed, so
//! cells differ only through their parameters (common random numbers).

use serde::Serialize;
use std::io::{self, Write};
use thiserror::Error;

use crate::allocation::{allocate, AllocationError, Strategy};
use crate::analytics::{self, AnalyticsError};
use crate::montecarlo::{
    empirical_outage_capacity, estimate_interception_probability, McError, McEstimate,
};
use crate::params::{from_db, ParamError, SystemConfig, SystemParams};

#[derive(Debug, Error)]
pub enum SweepError {
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Analytics(#[from] AnalyticsError),
    #[error(transparent)]
    Allocation(#[from] AllocationError),
    #[error(transparent)]
    MonteCarlo(#[from] McError),
    #[error("sweep axis {got:?} does not match the figure's axis {expected:?}")]
    WrongAxis { expected: SweepAxis, got: SweepAxis },
    #[error("grid must be nonempty and strictly increasing")]
    BadGrid,
    #[error("epsilon list must be nonempty with every value in (0, 1)")]
    BadEpsilons,
    #[error("strategy list must be nonempty")]
    NoStrategies,
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

/// Which system constant the sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepAxis {
    AlphaRe,
    AlphaRd,
    SourceSnrDb,
}

impl SweepAxis {
    /// CSV column name for the axis value.
    pub fn column(self) -> &'static str {
        match self {
            SweepAxis::AlphaRe => "alpha_re",
            SweepAxis::AlphaRd => "alpha_rd",
            SweepAxis::SourceSnrDb => "snr_s_db",
        }
    }
}

/// Monte Carlo settings for a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct McSettings {
    pub n_trials: u64,
    pub seed: u64,
}

/// A full sweep description: base parameters, the axis and its grid, the
/// strategies and outage bounds to evaluate, and optional Monte Carlo
/// settings.
#[derive(Debug, Clone, Serialize)]
pub struct SweepSpec {
    pub base: SystemParams,
    pub axis: SweepAxis,
    /// Strictly increasing, nonempty axis values.
    pub grid: Vec<f64>,
    pub strategies: Vec<Strategy>,
    /// Outage bounds, each in (0, 1).
    pub epsilons: Vec<f64>,
    pub mc: Option<McSettings>,
}

/// Default number of grid points for axes without a natural integer grid.
pub const DEFAULT_GRID_POINTS: usize = 25;
/// Default Monte Carlo trial count.
pub const DEFAULT_TRIALS: u64 = 100_000;

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let step = (hi - lo) / (n - 1) as f64;
    (0..n).map(|i| lo + step * i as f64).collect()
}

impl SweepSpec {
    /// Theory-vs-simulation sweep over the eavesdropper path loss at a
    /// fixed 10 dB relay power, for several outage bounds.
    pub fn fig2(base: SystemParams, mc: Option<McSettings>) -> Self {
        Self {
            base,
            axis: SweepAxis::AlphaRe,
            grid: (1..=10).map(f64::from).collect(),
            strategies: vec![Strategy::Fixed(from_db(10.0))],
            epsilons: vec![0.01, 0.05, 0.1],
            mc,
        }
    }

    /// Scheme comparison over the destination path loss: optimal power
    /// allocation against a relay that always transmits at the ceiling.
    pub fn fig3_fig4(base: SystemParams, mc: Option<McSettings>) -> Self {
        Self {
            axis: SweepAxis::AlphaRd,
            grid: linspace(0.05, 5.0, DEFAULT_GRID_POINTS),
            strategies: vec![Strategy::SocMax, Strategy::Fixed(base.p_max())],
            epsilons: vec![base.epsilon()],
            mc,
            base,
        }
    }

    /// Asymptotics over the source SNR: capacity saturation and the
    /// constant interception-probability floor.
    pub fn fig5_fig6(base: SystemParams, mc: Option<McSettings>) -> Self {
        Self {
            axis: SweepAxis::SourceSnrDb,
            grid: linspace(-10.0, 30.0, DEFAULT_GRID_POINTS),
            strategies: vec![Strategy::SocMax, Strategy::IpMin],
            epsilons: vec![base.epsilon()],
            mc,
            base,
        }
    }

    pub fn validate(&self) -> Result<(), SweepError> {
        if self.grid.is_empty() || self.grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(SweepError::BadGrid);
        }
        if self.epsilons.is_empty() || self.epsilons.iter().any(|&e| !(e > 0.0 && e < 1.0)) {
            return Err(SweepError::BadEpsilons);
        }
        if self.strategies.is_empty() {
            return Err(SweepError::NoStrategies);
        }
        Ok(())
    }

    /// Base parameters with the axis value and outage bound of one cell
    /// applied.
    pub fn cell_params(&self, axis_value: f64, epsilon: f64) -> Result<SystemParams, ParamError> {
        let mut cfg: SystemConfig = self.base.config();
        cfg.epsilon = epsilon;
        match self.axis {
            SweepAxis::AlphaRe => cfg.alpha_re = axis_value,
            SweepAxis::AlphaRd => cfg.alpha_rd = axis_value,
            SweepAxis::SourceSnrDb => cfg.p_s = from_db(axis_value),
        }
        SystemParams::new(cfg)
    }
}

/// One sweep cell: theory columns always present, Monte Carlo columns
/// present iff the sweep carried Monte Carlo settings.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRecord {
    pub axis_value: f64,
    pub strategy: Strategy,
    pub epsilon: f64,
    /// Relay power the strategy chose for this cell, linear scale.
    pub p_r_used: f64,
    /// Clamped secrecy outage capacity, bits/s.
    pub c_soc_theory: f64,
    /// Closed-form interception probability.
    pub p0_theory: f64,
    pub c_soc_mc: Option<McEstimate>,
    pub p0_mc: Option<McEstimate>,
}

fn run_sweep(spec: &SweepSpec, expected_axis: SweepAxis) -> Result<Vec<SweepRecord>, SweepError> {
    if spec.axis != expected_axis {
        return Err(SweepError::WrongAxis {
            expected: expected_axis,
            got: spec.axis,
        });
    }
    spec.validate()?;

    let mut records =
        Vec::with_capacity(spec.grid.len() * spec.strategies.len() * spec.epsilons.len());
    for &axis_value in &spec.grid {
        for &strategy in &spec.strategies {
            for &epsilon in &spec.epsilons {
                let params = spec.cell_params(axis_value, epsilon)?;
                let alloc = allocate(strategy, &params)?;
                let p_r = alloc.p_r_star;
                let c_soc_theory = analytics::secrecy_outage_capacity(&params, p_r)?.clamped;
                let p0_theory = analytics::interception_probability_cf(&params, p_r)?;
                let (c_soc_mc, p0_mc) = match spec.mc {
                    None => (None, None),
                    Some(mc) => (
                        Some(empirical_outage_capacity(
                            &params,
                            p_r,
                            epsilon,
                            mc.n_trials,
                            mc.seed,
                        )?),
                        Some(estimate_interception_probability(
                            &params,
                            p_r,
                            mc.n_trials,
                            mc.seed,
                        )?),
                    ),
                };
                records.push(SweepRecord {
                    axis_value,
                    strategy,
                    epsilon,
                    p_r_used: p_r,
                    c_soc_theory,
                    p0_theory,
                    c_soc_mc,
                    p0_mc,
                });
            }
        }
    }
    Ok(records)
}

/// Theory-vs-simulation records over the eavesdropper path loss.
pub fn run_fig2(spec: &SweepSpec) -> Result<Vec<SweepRecord>, SweepError> {
    run_sweep(spec, SweepAxis::AlphaRe)
}

/// Scheme-comparison records over the destination path loss (capacity and
/// interception probability per strategy).
pub fn run_fig3_fig4(spec: &SweepSpec) -> Result<Vec<SweepRecord>, SweepError> {
    run_sweep(spec, SweepAxis::AlphaRd)
}

/// Asymptotic records over the source SNR.
pub fn run_fig5_fig6(spec: &SweepSpec) -> Result<Vec<SweepRecord>, SweepError> {
    run_sweep(spec, SweepAxis::SourceSnrDb)
}

/// CSV column names for a sweep over `axis`.
pub fn csv_columns(axis: SweepAxis) -> [&'static str; 10] {
    [
        axis.column(),
        "strategy",
        "epsilon",
        "p_r_used",
        "c_soc_theory",
        "p0_theory",
        "c_soc_mc",
        "c_soc_mc_stderr",
        "p0_mc",
        "p0_mc_stderr",
    ]
}

/// Shortest-round-trip decimal form ('.' separator, no exponent).
fn dec(x: f64) -> String {
    format!("{x}")
}

/// Scientific notation with seven significant digits, used for
/// probabilities.
fn sci(x: f64) -> String {
    format!("{x:.6e}")
}

fn opt_mc(est: &Option<McEstimate>, fmt: fn(f64) -> String) -> (String, String) {
    match est {
        None => (String::new(), String::new()),
        Some(e) => (fmt(e.value), fmt(e.std_error)),
    }
}

/// Write records as RFC 4180 CSV with a header row. Probabilities are in
/// scientific notation, capacities and powers in plain decimal.
pub fn write_csv<W: Write>(
    axis: SweepAxis,
    records: &[SweepRecord],
    out: W,
) -> Result<(), SweepError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(csv_columns(axis))?;
    for r in records {
        let (c_soc_mc, c_soc_se) = opt_mc(&r.c_soc_mc, dec);
        let (p0_mc, p0_se) = opt_mc(&r.p0_mc, sci);
        w.write_record([
            dec(r.axis_value),
            r.strategy.to_string(),
            sci(r.epsilon),
            dec(r.p_r_used),
            dec(r.c_soc_theory),
            sci(r.p0_theory),
            c_soc_mc,
            c_soc_se,
            p0_mc,
            p0_se,
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct SweepMeta<'a> {
    figure: u8,
    columns: [&'static str; 10],
    spec: &'a SweepSpec,
}

/// Write the JSON metadata record accompanying a figure's CSV: the figure
/// id, the column schema, and the full sweep description including the
/// Monte Carlo seed.
pub fn write_meta<W: Write>(figure: u8, spec: &SweepSpec, mut out: W) -> Result<(), SweepError> {
    let meta = SweepMeta {
        figure,
        columns: csv_columns(spec.axis),
        spec,
    };
    serde_json::to_writer_pretty(&mut out, &meta).map_err(io::Error::from)?;
    out.write_all(b"\n")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn base() -> SystemParams {
        SystemParams::defaults()
    }

    #[test]
    fn fig2_theory_monotone_in_alpha_re_and_epsilon() {
        let spec = SweepSpec::fig2(base(), None);
        let records = run_fig2(&spec).unwrap();
        assert_eq!(records.len(), 30);
        // Decreasing in alpha_re at fixed epsilon.
        for eps in [0.01, 0.05, 0.1] {
            let series: Vec<f64> = records
                .iter()
                .filter(|r| r.epsilon == eps)
                .map(|r| r.c_soc_theory)
                .collect();
            assert_eq!(series.len(), 10);
            assert!(series.windows(2).all(|w| w[1] < w[0] || w[1] == 0.0));
        }
        // Increasing in epsilon at fixed alpha_re.
        for alpha_re in 1..=10 {
            let series: Vec<f64> = records
                .iter()
                .filter(|r| r.axis_value == f64::from(alpha_re))
                .map(|r| r.c_soc_theory)
                .collect();
            assert!(series.windows(2).all(|w| w[1] > w[0]));
        }
    }

    #[test]
    fn fig2_clamps_infeasible_cells_to_zero() {
        let mut spec = SweepSpec::fig2(base(), None);
        spec.grid = vec![1.0, 25.0]; // r_l > 1 at alpha_re = 25, eps = 0.01
        let records = run_fig2(&spec).unwrap();
        let infeasible: Vec<_> = records
            .iter()
            .filter(|r| r.axis_value == 25.0 && r.epsilon == 0.01)
            .collect();
        assert_eq!(infeasible.len(), 1);
        assert_eq!(infeasible[0].c_soc_theory, 0.0);
    }

    #[test]
    fn fig3_fig4_scheme_ordering() {
        let spec = SweepSpec::fig3_fig4(base(), None);
        let records = run_fig3_fig4(&spec).unwrap();
        for &alpha_rd in &spec.grid {
            let of = |s: &str| {
                records
                    .iter()
                    .find(|r| r.axis_value == alpha_rd && r.strategy.to_string() == s)
                    .unwrap()
            };
            let soc_max = of("soc_max");
            let fixed = of("fixed");
            assert!(
                soc_max.c_soc_theory >= fixed.c_soc_theory - 1e-9,
                "fixed beats soc_max at alpha_rd = {alpha_rd}"
            );
            assert!(soc_max.p0_theory <= fixed.p0_theory + 1e-15);
        }
        // Low-alpha_rd regime: both schemes at zero capacity (r_l > 1).
        let lowest = &spec.grid[0];
        for r in records.iter().filter(|r| r.axis_value == *lowest) {
            assert_eq!(r.c_soc_theory, 0.0);
        }
        // Interception probability decreasing in alpha_rd for soc_max.
        let p0: Vec<f64> = records
            .iter()
            .filter(|r| r.strategy.to_string() == "soc_max")
            .map(|r| r.p0_theory)
            .collect();
        assert!(p0.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn fig5_fig6_saturation_and_constant_floor() {
        let spec = SweepSpec::fig5_fig6(base(), None);
        let records = run_fig5_fig6(&spec).unwrap();
        let soc: Vec<&SweepRecord> = records
            .iter()
            .filter(|r| matches!(r.strategy, Strategy::SocMax))
            .collect();
        assert!(soc
            .windows(2)
            .all(|w| w[1].c_soc_theory >= w[0].c_soc_theory - 1e-9));
        // High-SNR end sits exactly at the saturation limit.
        let sat = analytics::soc_saturation_limit(&base()).unwrap();
        assert_relative_eq!(soc.last().unwrap().c_soc_theory, sat, max_relative = 1e-9);
        // The capacity vanishes in the deep low-SNR limit.
        let deep = SweepSpec {
            grid: vec![-60.0, -50.0, -40.0],
            ..SweepSpec::fig5_fig6(base(), None)
        };
        let low = run_fig5_fig6(&deep).unwrap();
        assert!(low[0].c_soc_theory < 0.01 * sat);
        // Interception floor constant across the grid (the operating-point
        // evaluation wiggles by an ulp where the two hop SNRs tie).
        let floors: Vec<f64> = records
            .iter()
            .filter(|r| matches!(r.strategy, Strategy::IpMin))
            .map(|r| r.p0_theory)
            .collect();
        for &f in &floors {
            assert_relative_eq!(f, floors[0], max_relative = 1e-12);
        }
    }

    #[test]
    fn higher_alpha_re_raises_the_floor() {
        let lo = SweepSpec::fig5_fig6(base(), None);
        let hi_base = SystemParams::new(SystemConfig {
            alpha_re: 10.0,
            ..SystemConfig::default()
        })
        .unwrap();
        let hi = SweepSpec::fig5_fig6(hi_base, None);
        let floor = |spec: &SweepSpec| {
            run_fig5_fig6(spec).unwrap()[1].p0_theory // any cell; floor is constant
        };
        assert!(floor(&hi) > floor(&lo));
    }

    #[test]
    fn theory_columns_recomputable_from_cell_coordinates() {
        let spec = SweepSpec::fig3_fig4(base(), None);
        let records = run_fig3_fig4(&spec).unwrap();
        for r in &records {
            let params = spec.cell_params(r.axis_value, r.epsilon).unwrap();
            let again = allocate(r.strategy, &params).unwrap();
            assert_eq!(again.p_r_star, r.p_r_used);
            assert_eq!(
                analytics::secrecy_outage_capacity(&params, r.p_r_used)
                    .unwrap()
                    .clamped,
                r.c_soc_theory
            );
            assert_eq!(
                analytics::interception_probability_cf(&params, r.p_r_used).unwrap(),
                r.p0_theory
            );
        }
    }

    #[test]
    fn mc_fields_present_iff_requested() {
        let no_mc = run_fig2(&SweepSpec {
            grid: vec![5.0],
            epsilons: vec![0.05],
            ..SweepSpec::fig2(base(), None)
        })
        .unwrap();
        assert!(no_mc.iter().all(|r| r.c_soc_mc.is_none() && r.p0_mc.is_none()));

        let with_mc = run_fig2(&SweepSpec {
            grid: vec![5.0],
            epsilons: vec![0.05],
            ..SweepSpec::fig2(
                base(),
                Some(McSettings {
                    n_trials: 5_000,
                    seed: 1,
                }),
            )
        })
        .unwrap();
        assert!(with_mc.iter().all(|r| r.c_soc_mc.is_some() && r.p0_mc.is_some()));
    }

    #[test]
    fn sweep_outputs_are_deterministic() {
        let spec = SweepSpec {
            grid: vec![4.0, 5.0],
            epsilons: vec![0.05],
            ..SweepSpec::fig2(
                base(),
                Some(McSettings {
                    n_trials: 2_000,
                    seed: 77,
                }),
            )
        };
        let a = run_fig2(&spec).unwrap();
        let b = run_fig2(&spec).unwrap();
        assert_eq!(a, b);

        let mut csv_a = Vec::new();
        let mut csv_b = Vec::new();
        write_csv(spec.axis, &a, &mut csv_a).unwrap();
        write_csv(spec.axis, &b, &mut csv_b).unwrap();
        assert_eq!(csv_a, csv_b);
    }

    #[test]
    fn bad_specs_are_rejected() {
        let ok = SweepSpec::fig2(base(), None);

        let mut empty_grid = ok.clone();
        empty_grid.grid.clear();
        assert!(matches!(run_fig2(&empty_grid), Err(SweepError::BadGrid)));

        let mut unsorted = ok.clone();
        unsorted.grid = vec![2.0, 1.0];
        assert!(matches!(run_fig2(&unsorted), Err(SweepError::BadGrid)));

        let mut bad_eps = ok.clone();
        bad_eps.epsilons = vec![0.0];
        assert!(matches!(run_fig2(&bad_eps), Err(SweepError::BadEpsilons)));

        assert!(matches!(
            run_fig3_fig4(&ok),
            Err(SweepError::WrongAxis { .. })
        ));
    }

    #[test]
    fn csv_layout_matches_contract() {
        let spec = SweepSpec {
            grid: vec![5.0],
            epsilons: vec![0.01],
            ..SweepSpec::fig2(base(), None)
        };
        let records = run_fig2(&spec).unwrap();
        let mut buf = Vec::new();
        write_csv(spec.axis, &records, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "alpha_re,strategy,epsilon,p_r_used,c_soc_theory,p0_theory,\
             c_soc_mc,c_soc_mc_stderr,p0_mc,p0_mc_stderr"
        );
        let row = lines.next().unwrap();
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields.len(), 10);
        assert_eq!(fields[0], "5");
        assert_eq!(fields[1], "fixed");
        assert_eq!(fields[2], "1.000000e-2");
        // Probabilities carry seven significant digits in scientific form.
        assert!(fields[5].contains('e'), "p0_theory not scientific: {row}");
        // Monte Carlo cells are empty when no settings were given.
        assert!(fields[6].is_empty() && fields[9].is_empty());
    }

    #[test]
    fn meta_records_spec_and_seed() {
        let spec = SweepSpec::fig2(
            base(),
            Some(McSettings {
                n_trials: 1_000,
                seed: 31,
            }),
        );
        let mut buf = Vec::new();
        write_meta(2, &spec, &mut buf).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v["figure"], 2);
        assert_eq!(v["spec"]["mc"]["seed"], 31);
        assert_eq!(v["columns"][0], "alpha_re");
        assert_eq!(v["spec"]["base"]["n_r"], 100);
    }
}
