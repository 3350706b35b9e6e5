//! Command-line front end: validate a scenario, evaluate the closed forms,
//! run Monte Carlo checks, and execute figure sweeps.
//!
//! Exit codes: 0 success, 2 validation failure (including bad flags),
//! 3 infeasible system when a feasible-only strategy was requested,
//! 4 output I/O failure.

use clap::{Parser, Subcommand, ValueEnum};
use std::fs::{self, File};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use relay_secrecy::allocation::{allocate, AllocationError, Strategy};
use relay_secrecy::analytics::{self, AnalyticsError, PowerRegime};
use relay_secrecy::experiments::{self, McSettings, SweepSpec, DEFAULT_TRIALS};
use relay_secrecy::montecarlo::{self, McEstimate};
use relay_secrecy::params::{from_db, to_db, SystemParams};
use relay_secrecy::scenario::{self, McScenario, ScenarioFile};

#[derive(Parser)]
#[command(
    name = "relay-secrecy",
    version,
    about = "Secrecy analysis and relay power allocation for massive-MIMO decode-and-forward relaying"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the closed forms for a scenario
    Analyze {
        /// Scenario JSON file
        scenario: PathBuf,
        /// Relay power in dB (implies a fixed-power strategy)
        #[arg(long = "p-r-db")]
        p_r_db: Option<f64>,
        /// Power allocation strategy
        #[arg(long, value_enum)]
        strategy: Option<StrategyArg>,
        /// Emit a machine-readable report (re-loadable as a scenario)
        #[arg(long)]
        json: bool,
    },
    /// Monte Carlo estimate at one operating point
    Simulate {
        /// Scenario JSON file
        scenario: PathBuf,
        /// Quantity to estimate
        #[arg(long, value_enum)]
        target: Target,
        /// Trial count (default: scenario `mc.trials`, else 100000)
        #[arg(long)]
        trials: Option<u64>,
        /// Master seed (default: scenario `mc.seed`, else 0)
        #[arg(long)]
        seed: Option<u64>,
        /// Relay power in dB (default: the capacity-maximizing power)
        #[arg(long = "p-r-db")]
        p_r_db: Option<f64>,
        /// Target rate in bits/s for --target outage (default: the
        /// closed-form secrecy outage capacity at the operating point)
        #[arg(long, allow_negative_numbers = true)]
        c_target_bps: Option<f64>,
        /// Emit the estimate as JSON
        #[arg(long)]
        json: bool,
    },
    /// Write figN.csv and figN.meta.json for one figure sweep
    Sweep {
        /// Figure id: 2, 3, 4, 5, or 6
        figure: u8,
        /// Scenario JSON file (its `mc` block sets trials and seed)
        scenario: PathBuf,
        /// Output directory
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    SocMax,
    IpMin,
    Fixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Target {
    /// Empirical secrecy outage capacity (epsilon-quantile)
    Soc,
    /// Interception probability
    Ip,
    /// Secrecy outage probability at a target rate
    Outage,
}

/// Failures mapped to exit codes.
enum AppError {
    /// Exit 2: bad scenario, flags, or parameters.
    Validation(String),
    /// Exit 3: feasible-only strategy on an infeasible system.
    Infeasible(String),
    /// Exit 4: cannot write outputs.
    Io(String),
}

impl AppError {
    fn code(&self) -> u8 {
        match self {
            AppError::Validation(_) => 2,
            AppError::Infeasible(_) => 3,
            AppError::Io(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            AppError::Validation(m) | AppError::Infeasible(m) | AppError::Io(m) => m,
        }
    }
}

fn validation(err: impl std::fmt::Display) -> AppError {
    AppError::Validation(err.to_string())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), AppError> {
    match cli.command {
        Command::Analyze {
            scenario,
            p_r_db,
            strategy,
            json,
        } => cmd_analyze(&scenario, p_r_db, strategy, json),
        Command::Simulate {
            scenario,
            target,
            trials,
            seed,
            p_r_db,
            c_target_bps,
            json,
        } => cmd_simulate(&scenario, target, trials, seed, p_r_db, c_target_bps, json),
        Command::Sweep {
            figure,
            scenario,
            out,
        } => cmd_sweep(figure, &scenario, &out),
    }
}

fn load_scenario(path: &Path) -> Result<(ScenarioFile, SystemParams), AppError> {
    let sc = scenario::load(path).map_err(validation)?;
    let params = sc.to_params().map_err(validation)?;
    Ok((sc, params))
}

/// The capacity-maximizing power, with infeasibility mapped to exit 3.
fn soc_max_power(params: &SystemParams) -> Result<f64, AppError> {
    match analytics::optimal_power_soc(params) {
        Ok(r) => Ok(r.p_r_star),
        Err(AnalyticsError::Infeasible { r_l }) => {
            let need = analytics::min_antennas(params).map_err(validation)?;
            Err(AppError::Infeasible(format!(
                "no nonnegative secrecy outage capacity: r_l = {r_l:.6} >= 1 \
                 (need at least {need} relay antennas, have {})",
                params.n_r()
            )))
        }
        Err(e) => Err(validation(e)),
    }
}

fn regime_name(regime: PowerRegime) -> &'static str {
    match regime {
        PowerRegime::SourceLimited => "source_limited",
        PowerRegime::CeilingLimited => "ceiling_limited",
    }
}

fn cmd_analyze(
    path: &Path,
    p_r_db: Option<f64>,
    strategy: Option<StrategyArg>,
    json: bool,
) -> Result<(), AppError> {
    let (sc, params) = load_scenario(path)?;

    let (label, p_r) = match (strategy, p_r_db) {
        (None | Some(StrategyArg::SocMax), None) => ("soc_max", soc_max_power(&params)?),
        (Some(StrategyArg::IpMin), None) => (
            "ip_min",
            analytics::optimal_power_ip(&params)
                .map_err(validation)?
                .region_upper,
        ),
        (Some(StrategyArg::Fixed) | None, Some(db)) => ("fixed", from_db(db)),
        (Some(StrategyArg::Fixed), None) => {
            return Err(AppError::Validation(
                "--strategy fixed requires --p-r-db".into(),
            ))
        }
        (Some(_), Some(_)) => {
            return Err(AppError::Validation(
                "--p-r-db only applies to the fixed strategy".into(),
            ))
        }
    };

    if label == "fixed" {
        // Reject out-of-range fixed powers the same way `allocate` does.
        allocate(Strategy::Fixed(p_r), &params).map_err(|e| match e {
            AllocationError::FixedPowerOutOfRange { .. } => validation(e),
            AllocationError::Analytics(e) => validation(e),
        })?;
    }

    let derived = params.derived().map_err(validation)?;
    let feasible = derived.r_l < 1.0;
    let min_antennas = analytics::min_antennas(&params).map_err(validation)?;
    let soc = analytics::secrecy_outage_capacity(&params, p_r).map_err(validation)?;
    let p0 = analytics::interception_probability_cf(&params, p_r).map_err(validation)?;
    let matched = params.p_s() * params.alpha_sr() / (params.rho() * params.alpha_rd());
    let regime = if matched <= params.p_max() {
        PowerRegime::SourceLimited
    } else {
        PowerRegime::CeilingLimited
    };
    let saturation = if feasible {
        Some(analytics::soc_saturation_limit(&params).map_err(validation)?)
    } else {
        None
    };

    if json {
        // Embed the scenario exactly as loaded so the report re-parses to
        // the same parameters (dB -> linear -> dB is not ulp-exact).
        let report = serde_json::json!({
            "scenario": sc,
            "analysis": {
                "strategy": label,
                "r_l": derived.r_l,
                "feasible": feasible,
                "min_antennas": min_antennas,
                "p_r": p_r,
                "p_r_db": to_db(p_r),
                "regime": regime_name(regime),
                "c_soc_raw_bps": soc.c_soc,
                "c_soc_clamped_bps": soc.clamped,
                "interception_probability": p0,
                "soc_saturation_limit_bps": saturation,
            },
        });
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else {
        println!("scenario          {}", path.display());
        println!(
            "system            n_r={}  w_hz={}  rho={}  epsilon={}",
            params.n_r(),
            params.w_hz(),
            params.rho(),
            params.epsilon()
        );
        println!(
            "powers            p_s={:.6} ({:.2} dB)  p_max={:.6} ({:.2} dB)",
            params.p_s(),
            to_db(params.p_s()),
            params.p_max(),
            to_db(params.p_max())
        );
        println!(
            "path losses       alpha_sr={}  alpha_rd={}  alpha_re={}",
            params.alpha_sr(),
            params.alpha_rd(),
            params.alpha_re()
        );
        println!("strategy          {label}");
        println!("r_l               {:.6}", derived.r_l);
        println!("feasible          {feasible}");
        println!("min_antennas      {min_antennas}");
        println!(
            "p_r               {:.6} ({:.4} dB, {})",
            p_r,
            to_db(p_r),
            regime_name(regime)
        );
        println!("c_soc_raw         {:.6} bits/s", soc.c_soc);
        println!("c_soc_clamped     {:.6} bits/s", soc.clamped);
        println!("interception_p    {:.6e}", p0);
        match saturation {
            Some(sat) => println!("saturation_limit  {sat:.6} bits/s"),
            None => println!("saturation_limit  n/a (infeasible)"),
        }
    }
    Ok(())
}

fn print_estimate(target: &str, p_r: f64, est: &McEstimate, json: bool) {
    if json {
        let report = serde_json::json!({
            "target": target,
            "p_r": p_r,
            "estimate": est,
        });
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else {
        println!("target        {target}");
        println!("p_r           {} ({} dB)", p_r, to_db(p_r));
        println!("trials        {}", est.n_trials);
        println!("seed          {}", est.seed);
        println!("estimate      {}", est.value);
        println!("std_error     {}", est.std_error);
        println!(
            "std_error_via {}",
            match est.std_error_kind {
                montecarlo::StdErrorKind::Binomial => "binomial",
                montecarlo::StdErrorKind::QuantileDensity => "quantile_density",
            }
        );
    }
}

fn cmd_simulate(
    path: &Path,
    target: Target,
    trials: Option<u64>,
    seed: Option<u64>,
    p_r_db: Option<f64>,
    c_target_bps: Option<f64>,
    json: bool,
) -> Result<(), AppError> {
    let (sc, params) = load_scenario(path)?;
    let trials = trials
        .or(sc.mc.map(|m| m.trials))
        .unwrap_or(DEFAULT_TRIALS);
    let seed = seed.or(sc.mc.map(|m| m.seed)).unwrap_or(0);
    let p_r = match p_r_db {
        Some(db) => from_db(db),
        None => soc_max_power(&params)?,
    };

    let est = match target {
        Target::Soc => {
            montecarlo::empirical_outage_capacity(&params, p_r, params.epsilon(), trials, seed)
                .map_err(validation)?
        }
        Target::Ip => montecarlo::estimate_interception_probability(&params, p_r, trials, seed)
            .map_err(validation)?,
        Target::Outage => {
            let c_target = match c_target_bps {
                Some(c) => c,
                None => {
                    analytics::secrecy_outage_capacity(&params, p_r)
                        .map_err(validation)?
                        .c_soc
                }
            };
            montecarlo::estimate_outage_probability(&params, p_r, c_target, trials, seed)
                .map_err(validation)?
        }
    };

    let label = match target {
        Target::Soc => "soc",
        Target::Ip => "ip",
        Target::Outage => "outage",
    };
    print_estimate(label, p_r, &est, json);
    Ok(())
}

fn cmd_sweep(figure: u8, path: &Path, out: &Path) -> Result<(), AppError> {
    let (sc, params) = load_scenario(path)?;
    let mc = Some(match sc.mc {
        Some(McScenario { trials, seed }) => McSettings {
            n_trials: trials,
            seed,
        },
        None => McSettings {
            n_trials: DEFAULT_TRIALS,
            seed: 0,
        },
    });

    if !(2..=6).contains(&figure) {
        return Err(AppError::Validation(format!(
            "figure must be one of 2, 3, 4, 5, 6 (got {figure})"
        )));
    }

    // Fail on an unwritable output directory before spending time on the
    // Monte Carlo columns.
    let io_err = |e: &dyn std::fmt::Display| AppError::Io(e.to_string());
    fs::create_dir_all(out).map_err(|e| io_err(&e))?;

    let (spec, records) = match figure {
        2 => {
            let spec = SweepSpec::fig2(params, mc);
            let records = experiments::run_fig2(&spec).map_err(validation)?;
            (spec, records)
        }
        3 | 4 => {
            let spec = SweepSpec::fig3_fig4(params, mc);
            let records = experiments::run_fig3_fig4(&spec).map_err(validation)?;
            (spec, records)
        }
        _ => {
            let spec = SweepSpec::fig5_fig6(params, mc);
            let records = experiments::run_fig5_fig6(&spec).map_err(validation)?;
            (spec, records)
        }
    };

    let csv_path = out.join(format!("fig{figure}.csv"));
    let meta_path = out.join(format!("fig{figure}.meta.json"));

    let csv_file = File::create(&csv_path).map_err(|e| io_err(&e))?;
    experiments::write_csv(spec.axis, &records, csv_file).map_err(|e| io_err(&e))?;
    let meta_file = File::create(&meta_path).map_err(|e| io_err(&e))?;
    experiments::write_meta(figure, &spec, meta_file).map_err(|e| io_err(&e))?;

    println!("wrote {}", csv_path.display());
    println!("wrote {}", meta_path.display());
    Ok(())
}
