//! Command-line surface over `chronon-core`.
//!
//! [`parse_args`] turns argv into a validated [`RunConfig`]; [`execute`]
//! renders the data; [`run`] writes it and maps the outcome to an exit code
//! (0 success, 1 failed verification, 2 input error).

mod args;
mod commands;
pub mod presets;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use chronon_core::chronon::{kaon_preset, ChrononError, StepRule, TwoStateConfig};
use chronon_core::dirac::{DiracError, Particle, MIN_POINTS_PER_PERIOD};
use chronon_core::numeric::{parse_rational, GaussianRational, NumericError};
use chronon_core::snyder::{SnyderError, SnyderParams};
use clap::error::ErrorKind;
use clap::Parser;
use num_complex::Complex64;
use num_traits::Signed;
use thiserror::Error;

pub use args::{Format, PresetName};
use args::{Cli, CommandArgs, ParticlePreset, Rule};
pub use commands::{execute, Output};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    /// Usage, help and version requests carry clap's rendered text.
    #[error("{0}")]
    Usage(#[from] clap::Error),
    #[error("invalid {name}: {reason}")]
    Invalid { name: &'static str, reason: String },
    #[error("{command} does not support {format:?} output")]
    UnsupportedFormat { command: &'static str, format: Format },
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error(transparent)]
    Snyder(#[from] SnyderError),
    #[error(transparent)]
    Dirac(#[from] DiracError),
    #[error(transparent)]
    Chronon(#[from] ChrononError),
    #[error("cannot write {path}: {source}")]
    Io { path: String, source: io::Error },
}

impl CliError {
    fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Self::Invalid {
            name,
            reason: reason.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ComptonInput {
    Direct {
        a: GaussianRational,
        p: GaussianRational,
        hbar: GaussianRational,
    },
    Special {
        m: GaussianRational,
        c: GaussianRational,
        hbar: GaussianRational,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZitterJob {
    pub particle: Particle,
    pub hbar: f64,
    pub periods: f64,
    pub points_per_period: usize,
    /// Averaging window in oscillation periods.
    pub window_periods: Option<f64>,
    pub preset: Option<&'static str>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Command {
    VerifySnyder {
        params: SnyderParams,
        grid: bool,
        corrupt_t: bool,
    },
    VerifyClifford,
    VerifyCoordinates,
    EvalCompton(ComptonInput),
    SimZitter(ZitterJob),
    SimChronon {
        config: TwoStateConfig,
        rule: StepRule,
        renormalize: bool,
    },
    ProbeShift {
        momentum: [f64; 3],
        axis: usize,
        epsilon: f64,
    },
    Chirality {
        particle: Particle,
        helicity: i8,
        branch: i8,
    },
    Preset(PresetName),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::VerifySnyder { .. } => "verify-snyder",
            Command::VerifyClifford => "verify-clifford",
            Command::VerifyCoordinates => "verify-coordinates",
            Command::EvalCompton(_) => "eval-compton",
            Command::SimZitter(_) => "sim-zitter",
            Command::SimChronon { .. } => "sim-chronon",
            Command::ProbeShift { .. } => "probe-shift",
            Command::Chirality { .. } => "chirality",
            Command::Preset(_) => "preset",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub format: Format,
    pub output: Option<PathBuf>,
}

fn rational(name: &'static str, s: &str) -> Result<GaussianRational, CliError> {
    parse_rational(s)
        .map(GaussianRational::real)
        .map_err(|e| CliError::invalid(name, e.to_string()))
}

fn vector(name: &'static str, v: &[f64]) -> Result<[f64; 3], CliError> {
    <[f64; 3]>::try_from(v).map_err(|_| CliError::invalid(name, format!("expected 3 components, got {}", v.len())))
}

fn finite(name: &'static str, v: f64) -> Result<f64, CliError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::invalid(name, format!("must be finite, got {v}")))
    }
}

fn unit_label(name: &'static str, v: i8) -> Result<i8, CliError> {
    if v == 1 || v == -1 {
        Ok(v)
    } else {
        Err(CliError::invalid(name, format!("must be 1 or -1, got {v}")))
    }
}

/// Parses argv (including the program name) into a validated [`RunConfig`].
pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv)?;
    let command = match cli.command {
        CommandArgs::VerifySnyder(a) => Command::VerifySnyder {
            params: SnyderParams::new(rational("a", &a.a)?, rational("hbar", &a.hbar)?, rational("c", &a.c)?)?,
            grid: a.grid,
            corrupt_t: a.corrupt_t,
        },
        CommandArgs::VerifyClifford => Command::VerifyClifford,
        CommandArgs::VerifyCoordinates => Command::VerifyCoordinates,
        CommandArgs::EvalCompton(a) => {
            let hbar = rational("hbar", &a.hbar)?;
            if !hbar.re().is_positive() {
                return Err(CliError::invalid("hbar", "must be positive"));
            }
            match (a.a, a.p, a.m, a.c) {
                (Some(len), Some(p), None, None) => {
                    let a = rational("a", &len)?;
                    if a.re().is_negative() {
                        return Err(CliError::invalid("a", "must be non-negative"));
                    }
                    Command::EvalCompton(ComptonInput::Direct {
                        a,
                        p: rational("p", &p)?,
                        hbar,
                    })
                }
                (None, None, Some(m), Some(c)) => {
                    let (m, c) = (rational("m", &m)?, rational("c", &c)?);
                    if !m.re().is_positive() || !c.re().is_positive() {
                        return Err(CliError::invalid("m, c", "must be positive"));
                    }
                    Command::EvalCompton(ComptonInput::Special { m, c, hbar })
                }
                _ => return Err(CliError::invalid("arguments", "give either --a and --p, or --m and --c")),
            }
        }
        CommandArgs::SimZitter(a) => {
            let base = match a.preset {
                Some(ParticlePreset::Electron) => Some((presets::electron(), "electron")),
                Some(ParticlePreset::Neutrino) => Some((presets::neutrino(), "neutrino")),
                None => None,
            };
            let (mass, c, hbar) = match base {
                Some((k, _)) => (a.m.unwrap_or(k.mass), a.c.unwrap_or(k.c), a.hbar.unwrap_or(k.hbar)),
                None => (a.m.unwrap_or(1.0), a.c.unwrap_or(1.0), a.hbar.unwrap_or(1.0)),
            };
            let momentum = match &a.p {
                Some(p) => vector("p", p)?,
                None => [0.0; 3],
            };
            let particle = Particle::new(momentum, mass, c)?;
            if !(finite("hbar", hbar)? > 0.0) {
                return Err(CliError::invalid("hbar", "must be positive"));
            }
            if !(finite("periods", a.periods)? > 0.0) {
                return Err(CliError::invalid("periods", "must be positive"));
            }
            if (a.points_per_period as f64) < MIN_POINTS_PER_PERIOD {
                return Err(CliError::invalid(
                    "points-per-period",
                    format!("must be at least {MIN_POINTS_PER_PERIOD}"),
                ));
            }
            if let Some(w) = a.average {
                if !(finite("average", w)? >= 0.0) || w > a.periods {
                    return Err(CliError::invalid("average", format!("must lie in [0, {}] periods", a.periods)));
                }
            }
            Command::SimZitter(ZitterJob {
                particle,
                hbar,
                periods: a.periods,
                points_per_period: a.points_per_period,
                window_periods: a.average,
                preset: base.map(|(_, name)| name),
            })
        }
        CommandArgs::SimChronon(a) => {
            let mut config = match a.preset {
                Some(args::TwoStatePreset::Kaon) => kaon_preset(),
                None => {
                    let energy = a.energy.ok_or_else(|| CliError::invalid("energy", "required without --preset"))?;
                    let tau = a.tau.ok_or_else(|| CliError::invalid("tau", "required without --preset"))?;
                    TwoStateConfig {
                        energy,
                        tau,
                        hbar: 1.0,
                        n_steps: 100,
                        initial: [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
                    }
                }
            };
            if a.preset.is_some() {
                config.energy = a.energy.unwrap_or(config.energy);
                config.tau = a.tau.unwrap_or(config.tau);
            }
            config.hbar = a.hbar.unwrap_or(config.hbar);
            config.n_steps = a.steps.unwrap_or(config.n_steps);
            config.validate()?;
            Command::SimChronon {
                config,
                rule: match a.rule {
                    Rule::Euler => StepRule::Euler,
                    Rule::Exact => StepRule::Exact,
                },
                renormalize: a.renormalize,
            }
        }
        CommandArgs::ProbeShift(a) => {
            if !(1..=3).contains(&a.axis) {
                return Err(CliError::invalid("axis", format!("must be 1, 2 or 3, got {}", a.axis)));
            }
            if finite("epsilon", a.epsilon)? == 0.0 {
                return Err(CliError::invalid("epsilon", "must be nonzero"));
            }
            let momentum = vector("p", &a.p)?;
            for &p in &momentum {
                finite("p", p)?;
            }
            Command::ProbeShift {
                momentum,
                axis: a.axis,
                epsilon: a.epsilon,
            }
        }
        CommandArgs::Chirality(a) => Command::Chirality {
            particle: Particle::new(vector("p", &a.p)?, a.m, a.c)?,
            helicity: unit_label("helicity", a.helicity)?,
            branch: unit_label("branch", a.branch)?,
        },
        CommandArgs::Preset { name } => Command::Preset(name),
    };
    Ok(RunConfig {
        command,
        format: cli.format,
        output: cli.output,
    })
}

fn write_output(cfg: &RunConfig, text: &str) -> Result<(), CliError> {
    match &cfg.output {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|()| out.flush())
                .map_err(|source| CliError::Io {
                    path: "standard output".into(),
                    source,
                })
        }
    }
}

/// Runs a parsed configuration and returns the process exit code.
pub fn run(cfg: &RunConfig) -> i32 {
    log::info!("running {}", cfg.command.name());
    log::debug!("configuration: {cfg:?}");
    let result = execute(cfg).and_then(|out| write_output(cfg, &out.text).map(|()| out));
    match result {
        Ok(out) if out.passed => EXIT_OK,
        Ok(out) => {
            eprintln!("{}: verification failed: {}", cfg.command.name(), out.failures.join("; "));
            EXIT_FAILED
        }
        Err(e) => {
            eprintln!("{}: {e}", cfg.command.name());
            EXIT_INPUT
        }
    }
}

/// Full entry point: parse, run, and report usage errors.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match parse_args(argv) {
        Ok(cfg) => run(&cfg),
        Err(CliError::Usage(e)) => match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                print!("{e}");
                EXIT_OK
            }
            _ => {
                let text = e.to_string();
                let line = text.lines().next().unwrap_or("usage error");
                eprintln!("{line}");
                EXIT_INPUT
            }
        },
        Err(e) => {
            eprintln!("{e}");
            EXIT_INPUT
        }
    }
}
