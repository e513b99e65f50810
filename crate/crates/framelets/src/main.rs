//! Command-line front end. Exit codes: 0 = pass, 1 = verification failure,
//! 2 = usage/configuration error.

use clap::{Parser, Subcommand, ValueEnum};
use framelets::config::{self, BankPair, LoadedConfig, NsPair};
use framelets::framecheck::{
    check_characterization, check_duality, CheckOpts, GridSpec, System, TestFn,
};
use framelets::refinable::{sample_grid, Refinable};
use framelets::report;
use framelets::{fwt, Error};
use std::f64::consts::PI;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "framelets",
    about = "Verification toolkit for dual framelet filter banks",
    version
)]
struct Cli {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    /// Residual tolerance for float-mode verdicts.
    #[arg(long, global = true, default_value_t = 1e-12)]
    tolerance: f64,
    /// Worker threads for grid and lattice sweeps.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the perfect-reconstruction identities of a stationary bank.
    VerifyOep { config: PathBuf },
    /// Check the per-level identities and certificates of a level-dependent bank.
    VerifyNonstationary { config: PathBuf },
    /// Sample the refinable function on a grid, with certified error bounds (CSV).
    EvalRefinable {
        config: PathBuf,
        #[arg(long, default_value_t = -PI)]
        xi_min: f64,
        #[arg(long, default_value_t = PI)]
        xi_max: f64,
        #[arg(long, default_value_t = 257)]
        samples: usize,
        #[arg(long, default_value_t = 30)]
        truncation: usize,
        /// Level of a level-dependent bank (0 = coarsest).
        #[arg(long, default_value_t = 0)]
        level: usize,
        /// Output CSV path (stdout if omitted).
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Grid residuals of the dual-frame characterization identities.
    CheckCharacterization {
        config: PathBuf,
        #[arg(long, default_value_t = -PI)]
        grid_min: f64,
        #[arg(long, default_value_t = PI)]
        grid_max: f64,
        #[arg(long, default_value_t = 512)]
        grid_points: usize,
        #[arg(long, default_value_t = 8)]
        k_range: i64,
        #[arg(long, default_value_t = 8)]
        j_probe: usize,
        #[arg(long, default_value_t = 30)]
        truncation: usize,
        #[arg(long, default_value_t = 1e-8)]
        residual_tol: f64,
    },
    /// Tabulate the partial sums S_J^{J'} against 2π<f,g>.
    CheckDuality {
        config: PathBuf,
        #[arg(long, default_value_t = 0)]
        j: i64,
        #[arg(long, default_value_t = 8)]
        jmax: i64,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Test function, e.g. "bump(0,1)".
        #[arg(long, default_value = "bump(0,1)")]
        f: String,
        #[arg(long, default_value = "bump(0,1)")]
        g: String,
        /// Tight-frame mode: use the primal filters on both sides.
        #[arg(long)]
        self_dual: bool,
        #[arg(long, default_value_t = 30)]
        truncation: usize,
        /// Convergence-table CSV path (stdout if omitted).
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run the discrete framelet transform on a signal CSV.
    Transform {
        config: PathBuf,
        direction: Direction,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        #[arg(long, default_value_t = 1)]
        levels: usize,
    },
    /// Randomized perfect-reconstruction test.
    PrTest {
        config: PathBuf,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 64)]
        maxlen: usize,
        #[arg(long, default_value_t = 4)]
        levels: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Direction {
    Analyze,
    Synthesize,
}

fn parse_test_fn(s: &str) -> Result<TestFn, Error> {
    let t = s.trim();
    let inner = t
        .strip_prefix("bump(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::Config(format!("test function must look like bump(c,r), got {t:?}")))?;
    let parts: Vec<&str> = inner.split(',').collect();
    if parts.len() != 2 {
        return Err(Error::Config(format!("bump takes two arguments, got {t:?}")));
    }
    let c: f64 = parts[0]
        .trim()
        .parse()
        .map_err(|_| Error::Config(format!("bad bump center in {t:?}")))?;
    let r: f64 = parts[1]
        .trim()
        .parse()
        .map_err(|_| Error::Config(format!("bad bump radius in {t:?}")))?;
    TestFn::bump(c, r)
}

fn out_writer(path: Option<&PathBuf>) -> Result<Box<dyn Write>, Error> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(std::io::stdout().lock()),
    })
}

/// 0 pass, 1 verification failure.
fn verdict_code(pass: bool) -> ExitCode {
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    if let Some(n) = cli.threads {
        // ignore failure: the global pool may already exist
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let tol = cli.tolerance;
    let report_path = cli.report.as_deref();
    match cli.cmd {
        Cmd::VerifyOep { config } => {
            let rep = match config::load(&config)? {
                LoadedConfig::Stationary(BankPair::Exact(bank)) => bank.verify_oep(tol),
                LoadedConfig::Stationary(BankPair::Float(bank)) => bank.verify_oep(tol),
                LoadedConfig::Nonstationary(_) => {
                    return Err(Error::Config(
                        "verify-oep expects a stationary bank; use verify-nonstationary".into(),
                    ))
                }
            };
            report::emit(&rep, report_path)?;
            Ok(verdict_code(rep.passed()))
        }
        Cmd::VerifyNonstationary { config } => {
            let rep = match config::load(&config)? {
                LoadedConfig::Nonstationary(NsPair::Exact(bank)) => {
                    bank.verify_nonstationary_oep(tol)?
                }
                LoadedConfig::Nonstationary(NsPair::Float(bank)) => {
                    bank.verify_nonstationary_oep(tol)?
                }
                LoadedConfig::Stationary(_) => {
                    return Err(Error::Config(
                        "verify-nonstationary expects a nonstationary bank".into(),
                    ))
                }
            };
            report::emit(&rep, report_path)?;
            Ok(verdict_code(rep.passed()))
        }
        Cmd::EvalRefinable {
            config,
            xi_min,
            xi_max,
            samples,
            truncation,
            level,
            output,
        } => {
            let refinable = match config::load(&config)? {
                LoadedConfig::Stationary(BankPair::Exact(bank)) => Refinable::stationary(
                    &bank.lowpass,
                    bank.dilation.get() as f64,
                    truncation,
                )?,
                LoadedConfig::Stationary(BankPair::Float(bank)) => Refinable::stationary(
                    &bank.lowpass,
                    bank.dilation.get() as f64,
                    truncation,
                )?,
                LoadedConfig::Nonstationary(NsPair::Exact(bank)) => {
                    Refinable::nonstationary(&bank, level, truncation)?
                }
                LoadedConfig::Nonstationary(NsPair::Float(bank)) => {
                    Refinable::nonstationary(&bank, level, truncation)?
                }
            };
            let sample = sample_grid(&refinable, xi_min, xi_max, samples)?;
            sample.write_csv(out_writer(output.as_ref())?)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::CheckCharacterization {
            config,
            grid_min,
            grid_max,
            grid_points,
            k_range,
            j_probe,
            truncation,
            residual_tol,
        } => {
            let system = match config::load(&config)? {
                LoadedConfig::Stationary(BankPair::Exact(bank)) => {
                    System::from_bank(&bank, truncation, false)?
                }
                LoadedConfig::Stationary(BankPair::Float(bank)) => {
                    System::from_bank(&bank, truncation, false)?
                }
                LoadedConfig::Nonstationary(NsPair::Exact(bank)) => {
                    System::from_nonstationary_bank(&bank, truncation, 0)?
                }
                LoadedConfig::Nonstationary(NsPair::Float(bank)) => {
                    System::from_nonstationary_bank(&bank, truncation, 0)?
                }
            };
            let grid = GridSpec::new(grid_min, grid_max, grid_points)?;
            let opts = CheckOpts::default();
            match &system.kind {
                framelets::framecheck::SystemKind::Stationary { .. } => {
                    let rep = check_characterization(
                        &system,
                        &grid,
                        k_range,
                        j_probe,
                        residual_tol,
                        &opts,
                    )?;
                    report::emit(&rep, report_path)?;
                    Ok(verdict_code(rep.pass))
                }
                framelets::framecheck::SystemKind::Nonstationary { .. } => {
                    let rep = framelets::framecheck::check_nonstationary(
                        &system,
                        &grid,
                        k_range,
                        j_probe as i64,
                        residual_tol,
                        &opts,
                    )?;
                    report::emit(&rep, report_path)?;
                    Ok(verdict_code(rep.pass))
                }
            }
        }
        Cmd::CheckDuality {
            config,
            j,
            jmax,
            tol: duality_tol,
            f,
            g,
            self_dual,
            truncation,
            output,
        } => {
            let system = match config::load(&config)? {
                LoadedConfig::Stationary(BankPair::Exact(bank)) => {
                    System::from_bank(&bank, truncation, self_dual)?
                }
                LoadedConfig::Stationary(BankPair::Float(bank)) => {
                    System::from_bank(&bank, truncation, self_dual)?
                }
                LoadedConfig::Nonstationary(NsPair::Exact(bank)) => {
                    System::from_nonstationary_bank(&bank, truncation, j.max(0) as usize)?
                }
                LoadedConfig::Nonstationary(NsPair::Float(bank)) => {
                    System::from_nonstationary_bank(&bank, truncation, j.max(0) as usize)?
                }
            };
            let f = parse_test_fn(&f)?;
            let g = parse_test_fn(&g)?;
            let mut opts = CheckOpts::default();
            opts.shell_tol = 1e-13;
            let rep = check_duality(&system, &f, &g, j, jmax, duality_tol, &opts)?;
            rep.write_csv(out_writer(output.as_ref())?)?;
            if let Some(p) = report_path {
                report::emit(&rep, Some(p))?;
            }
            Ok(verdict_code(rep.pass))
        }
        Cmd::Transform {
            config,
            direction,
            input,
            output,
            levels,
        } => {
            let cfg = config::load(&config)?;
            let reader = BufReader::new(File::open(&input)?);
            let mut writer = BufWriter::new(File::create(&output)?);
            match (cfg, direction) {
                (LoadedConfig::Stationary(BankPair::Exact(bank)), Direction::Analyze) => {
                    let v = report::read_exact_signal_csv(reader)?;
                    let pyr = fwt::analyze(&v, &bank, levels)?;
                    report::write_pyramid_csv(&pyr, &mut writer, report::exact_csv_cell)?;
                }
                (LoadedConfig::Stationary(BankPair::Exact(bank)), Direction::Synthesize) => {
                    let pyr =
                        report::read_pyramid_csv(reader, 4, levels, bank.highpass.len(), report::parse_exact_cell)?;
                    let out = fwt::synthesize(&pyr, &bank)?;
                    report::write_exact_signal_csv(&out, &mut writer)?;
                }
                (LoadedConfig::Stationary(BankPair::Float(bank)), Direction::Analyze) => {
                    let v = report::read_float_signal_csv(reader)?;
                    let pyr = fwt::analyze(&v, &bank, levels)?;
                    report::write_pyramid_csv(&pyr, &mut writer, report::float_csv_cell)?;
                }
                (LoadedConfig::Stationary(BankPair::Float(bank)), Direction::Synthesize) => {
                    let pyr =
                        report::read_pyramid_csv(reader, 2, levels, bank.highpass.len(), report::parse_float_cell)?;
                    let out = fwt::synthesize(&pyr, &bank)?;
                    report::write_float_signal_csv(&out, &mut writer)?;
                }
                (LoadedConfig::Nonstationary(NsPair::Exact(bank)), Direction::Analyze) => {
                    let v = report::read_exact_signal_csv(reader)?;
                    let pyr = fwt::analyze_nonstationary(&v, &bank, levels)?;
                    report::write_pyramid_csv(&pyr, &mut writer, report::exact_csv_cell)?;
                }
                (LoadedConfig::Nonstationary(NsPair::Exact(bank)), Direction::Synthesize) => {
                    let channels = bank.level(1)?.highpass.len();
                    let pyr =
                        report::read_pyramid_csv(reader, 4, levels, channels, report::parse_exact_cell)?;
                    let out = fwt::synthesize_nonstationary(&pyr, &bank)?;
                    report::write_exact_signal_csv(&out, &mut writer)?;
                }
                (LoadedConfig::Nonstationary(NsPair::Float(bank)), Direction::Analyze) => {
                    let v = report::read_float_signal_csv(reader)?;
                    let pyr = fwt::analyze_nonstationary(&v, &bank, levels)?;
                    report::write_pyramid_csv(&pyr, &mut writer, report::float_csv_cell)?;
                }
                (LoadedConfig::Nonstationary(NsPair::Float(bank)), Direction::Synthesize) => {
                    let channels = bank.level(1)?.highpass.len();
                    let pyr =
                        report::read_pyramid_csv(reader, 2, levels, channels, report::parse_float_cell)?;
                    let out = fwt::synthesize_nonstationary(&pyr, &bank)?;
                    report::write_float_signal_csv(&out, &mut writer)?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::PrTest {
            config,
            trials,
            maxlen,
            levels,
            seed,
        } => {
            let pr = match config::load(&config)? {
                LoadedConfig::Stationary(BankPair::Exact(bank)) => {
                    fwt::pr_test(&bank, trials, maxlen, levels, seed)?
                }
                LoadedConfig::Stationary(BankPair::Float(bank)) => {
                    fwt::pr_test(&bank, trials, maxlen, levels, seed)?
                }
                LoadedConfig::Nonstationary(NsPair::Exact(bank)) => {
                    fwt::pr_test_nonstationary(&bank, trials, maxlen, levels, seed)?
                }
                LoadedConfig::Nonstationary(NsPair::Float(bank)) => {
                    fwt::pr_test_nonstationary(&bank, trials, maxlen, levels, seed)?
                }
            };
            #[derive(serde::Serialize)]
            struct PrJson {
                pass: bool,
                trials: usize,
                failures: usize,
                max_defect: f64,
                tolerance: f64,
            }
            let rep = PrJson {
                pass: pr.pass,
                trials: pr.trials,
                failures: pr.failures,
                max_defect: pr.max_defect,
                tolerance: pr.tolerance,
            };
            report::emit(&rep, report_path)?;
            Ok(verdict_code(pr.pass))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
