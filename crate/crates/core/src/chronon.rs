//! Chronon-discretized evolution of a two-state system with `H = [[0, E], [E, 0]]`.
//!
//! One step is the forward difference `U = I − iHτ/ħ`. Since `H² = E²I`,
//! `U†U = (1 + θ²)I` with `θ = Eτ/ħ`: the norm grows uniformly and the
//! evolution is not reversible.

use std::io;

use num_complex::Complex64;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numeric::{format_float, mat_exp_energy, operator_norm, CMatrix, GaussianRational, NumericError};

#[derive(Debug, Error)]
pub enum ChrononError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("norm would overflow: n ln(1 + theta^2) = {exponent} exceeds {OVERFLOW_EXPONENT}; renormalize per step")]
    Overflow { exponent: f64 },
    #[error("cross-decay probability needs the pure initial state (1, 0)")]
    NotPureInitial,
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

/// Largest allowed `n ln(1 + θ²)` without per-step renormalization.
pub const OVERFLOW_EXPONENT: f64 = 700.0;

/// SI reduced Planck constant in J·s.
pub const HBAR_SI: f64 = 1.054_571_817e-34;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexValue {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

impl From<ComplexValue> for Complex64 {
    fn from(z: ComplexValue) -> Self {
        Complex64::new(z.re, z.im)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TwoStateConfig {
    pub energy: f64,
    pub tau: f64,
    pub hbar: f64,
    pub n_steps: usize,
    pub initial: [Complex64; 2],
}

impl TwoStateConfig {
    /// `energy = 0` is accepted as the trivial case `U = I`.
    pub fn new(energy: f64, tau: f64, hbar: f64, n_steps: usize, initial: [Complex64; 2]) -> Result<Self, ChrononError> {
        let cfg = Self {
            energy,
            tau,
            hbar,
            n_steps,
            initial,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ChrononError> {
        let finite = [self.energy, self.tau, self.hbar].iter().all(|v| v.is_finite());
        if !finite {
            return Err(ChrononError::InvalidConfig("parameters must be finite".into()));
        }
        if self.energy < 0.0 {
            return Err(ChrononError::InvalidConfig(format!("E must be non-negative, got {}", self.energy)));
        }
        if self.tau <= 0.0 {
            return Err(ChrononError::InvalidConfig(format!("tau must be positive, got {}", self.tau)));
        }
        if self.hbar <= 0.0 {
            return Err(ChrononError::InvalidConfig(format!("hbar must be positive, got {}", self.hbar)));
        }
        let norm2: f64 = self.initial.iter().map(Complex64::norm_sqr).sum();
        if (norm2 - 1.0).abs() > 1e-12 {
            return Err(ChrononError::InvalidConfig(format!("initial state must have unit norm, got norm^2 {norm2}")));
        }
        Ok(())
    }

    /// `θ = Eτ/ħ`.
    pub fn theta(&self) -> f64 {
        self.energy * self.tau / self.hbar
    }

    pub fn hamiltonian(&self) -> CMatrix {
        CMatrix::from_real(2, 2, &[0.0, self.energy, self.energy, 0.0])
    }
}

/// `E = 10¹⁰ ħ` (SI), `τ = ħ/E = 10⁻¹⁰ s`, 100 steps from `(1, 0)`.
pub fn kaon_preset() -> TwoStateConfig {
    TwoStateConfig {
        energy: 1e10 * HBAR_SI,
        tau: 1e-10,
        hbar: HBAR_SI,
        n_steps: 100,
        initial: [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
    }
}

/// `U = I − iHτ/ħ`.
pub fn euler_step_map(cfg: &TwoStateConfig) -> CMatrix {
    let off = Complex64::new(0.0, -cfg.theta());
    CMatrix::from_rows(&[vec![Complex64::new(1.0, 0.0), off], vec![off, Complex64::new(1.0, 0.0)]])
        .expect("2x2")
}

/// Single-step generator used by [`evolve`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum StepRule {
    /// Forward difference `I − iHτ/ħ`.
    Euler,
    /// Unitary `exp(−iHτ/ħ)`; the control run.
    Exact,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceStep {
    pub step: usize,
    pub psi: [ComplexValue; 2],
    pub p1: f64,
    pub p2: f64,
    pub norm2: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceSummary {
    pub energy: f64,
    pub tau: f64,
    pub hbar: f64,
    #[serde(rename = "E_over_hbar")]
    pub energy_over_hbar: f64,
    pub theta: f64,
    pub n_steps: usize,
    pub rule: StepRule,
    pub renormalized: bool,
    /// `n ln(1 + θ²)` for the Euler rule, 0 for the exact rule.
    pub log_norm2_final: f64,
    pub eps_paper: ComplexValue,
    pub eps_exact_plus: ComplexValue,
    pub eps_exact_minus: ComplexValue,
    pub irreversibility_defect: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvolutionTrace {
    pub steps: Vec<TraceStep>,
    pub summary: TraceSummary,
}

pub const TRACE_CSV_HEADER: [&str; 8] = ["step", "re_psi1", "im_psi1", "re_psi2", "im_psi2", "P1", "P2", "norm2"];

impl EvolutionTrace {
    pub fn write_csv<W: io::Write>(&self, out: W) -> Result<(), ChrononError> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(TRACE_CSV_HEADER)?;
        for s in &self.steps {
            w.write_record([
                s.step.to_string(),
                format_float(s.psi[0].re),
                format_float(s.psi[0].im),
                format_float(s.psi[1].re),
                format_float(s.psi[1].im),
                format_float(s.p1),
                format_float(s.p2),
                format_float(s.norm2),
            ])?;
        }
        w.flush().map_err(csv::Error::from)?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv output is ASCII")
    }

    pub fn summary_json(&self) -> String {
        serde_json::to_string_pretty(&self.summary).expect("summary serialization cannot fail")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace serialization cannot fail")
    }
}

fn step_matrix(cfg: &TwoStateConfig, rule: StepRule) -> Result<CMatrix, ChrononError> {
    match rule {
        StepRule::Euler => Ok(euler_step_map(cfg)),
        StepRule::Exact if cfg.energy == 0.0 => Ok(CMatrix::identity(2)),
        StepRule::Exact => Ok(mat_exp_energy(&cfg.hamiltonian(), cfg.energy, cfg.tau, cfg.hbar)?),
    }
}

/// Applies the step map `n_steps` times to the initial state, recording every
/// step from 0. `P1`, `P2` are normalized by `norm2`. With `renormalize` the
/// state is rescaled to unit norm after each step, so `norm2` stays near 1
/// and the accumulated growth is reported as `log_norm2_final`.
pub fn evolve(cfg: &TwoStateConfig, rule: StepRule, renormalize: bool) -> Result<EvolutionTrace, ChrononError> {
    cfg.validate()?;
    let growth = match rule {
        StepRule::Euler => cfg.n_steps as f64 * cfg.theta().powi(2).ln_1p(),
        StepRule::Exact => 0.0,
    };
    if growth > OVERFLOW_EXPONENT && !renormalize {
        return Err(ChrononError::Overflow { exponent: growth });
    }
    let u = step_matrix(cfg, rule)?;
    let mut psi = cfg.initial.to_vec();
    let mut steps = Vec::with_capacity(cfg.n_steps + 1);
    steps.push(record(0, &psi));
    for k in 1..=cfg.n_steps {
        psi = u.apply(&psi)?;
        if renormalize {
            let n = psi.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
            psi.iter_mut().for_each(|z| *z /= n);
        }
        steps.push(record(k, &psi));
    }
    Ok(EvolutionTrace {
        steps,
        summary: TraceSummary {
            energy: cfg.energy,
            tau: cfg.tau,
            hbar: cfg.hbar,
            energy_over_hbar: cfg.energy / cfg.hbar,
            theta: cfg.theta(),
            n_steps: cfg.n_steps,
            rule,
            renormalized: renormalize,
            log_norm2_final: growth,
            eps_paper: effective_eigenvalue_paper(cfg.energy, cfg.tau, cfg.hbar).into(),
            eps_exact_plus: effective_eigenvalue_exact(cfg.energy, cfg.tau, cfg.hbar, 1).into(),
            eps_exact_minus: effective_eigenvalue_exact(cfg.energy, cfg.tau, cfg.hbar, -1).into(),
            irreversibility_defect: irreversibility_defect(cfg.energy, cfg.tau, cfg.hbar)?,
        },
    })
}

fn record(step: usize, psi: &[Complex64]) -> TraceStep {
    let (a, b) = (psi[0].norm_sqr(), psi[1].norm_sqr());
    let norm2 = a + b;
    TraceStep {
        step,
        psi: [psi[0].into(), psi[1].into()],
        p1: a / norm2,
        p2: b / norm2,
        norm2,
    }
}

/// First-order expansion `E(1 + iEτ/ħ)`.
pub fn effective_eigenvalue_paper(energy: f64, tau: f64, hbar: f64) -> Complex64 {
    Complex64::new(energy, energy * energy * tau / hbar)
}

/// [`effective_eigenvalue_paper`] in exact rational arithmetic.
pub fn effective_eigenvalue_paper_exact(
    energy: &BigRational,
    tau: &BigRational,
    hbar: &BigRational,
) -> Result<GaussianRational, NumericError> {
    if num_traits::Zero::is_zero(hbar) {
        return Err(NumericError::DivisionByZero);
    }
    let im = energy * energy * tau / hbar;
    Ok(GaussianRational::new(energy.clone(), im))
}

/// Exact finite difference of the phase factor `e^{branch·iEt/ħ}`:
/// `iħ(e^{branch·iEτ/ħ} − 1)/τ`.
pub fn effective_eigenvalue_exact(energy: f64, tau: f64, hbar: f64, branch: i8) -> Complex64 {
    let phase = f64::from(branch.signum()) * energy * tau / hbar;
    // e^{iφ} − 1 = (cos φ − 1) + i sin φ, with cos φ − 1 = −2 sin²(φ/2).
    let diff = Complex64::new(-2.0 * (phase / 2.0).sin().powi(2), phase.sin());
    Complex64::new(0.0, hbar) * diff / tau
}

/// `‖U(−τ)U(τ) − I‖`.
pub fn irreversibility_defect(energy: f64, tau: f64, hbar: f64) -> Result<f64, ChrononError> {
    let forward = TwoStateConfig {
        energy,
        tau,
        hbar,
        n_steps: 1,
        initial: [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
    };
    let backward = TwoStateConfig { tau: -tau, ..forward.clone() };
    // With U(±τ) = I + D±, U(−τ)U(τ) − I = D₋ + D₊ + D₋D₊; expanding avoids
    // cancelling against I when θ is small.
    let id = CMatrix::identity(2);
    let d_plus = euler_step_map(&forward).try_sub(&id)?;
    let d_minus = euler_step_map(&backward).try_sub(&id)?;
    let defect = d_minus.try_add(&d_plus)?.try_add(&d_minus.try_mul(&d_plus)?)?;
    Ok(operator_norm(&defect)?)
}

/// Normalized `P2` after `step` steps from the pure state `(1, 0)`.
pub fn cross_decay_probability(cfg: &TwoStateConfig, step: usize) -> Result<f64, ChrononError> {
    cfg.validate()?;
    if cfg.initial[0] != Complex64::new(1.0, 0.0) || cfg.initial[1] != Complex64::new(0.0, 0.0) {
        return Err(ChrononError::NotPureInitial);
    }
    let cfg = TwoStateConfig { n_steps: step, ..cfg.clone() };
    let trace = evolve(&cfg, StepRule::Euler, true)?;
    Ok(trace.steps[step].p2)
}
