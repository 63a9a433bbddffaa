//! Matrix coordinates, the Dirac Hamiltonian and its plane waves,
//! Zitterbewegung and the massless-limit handedness operations.

mod gamma;
mod handedness;
mod probe;
mod spinor;
mod zitter;

use thiserror::Error;

use crate::numeric::NumericError;

pub use gamma::{build_gamma_set, clifford_basis, metric, verify_clifford, verify_coordinate_algebra, GammaSet};
pub use handedness::{chirality_commutator_norm, handedness_expectation, ChiralityNorms, Handedness};
pub use probe::{shift_generator_probe, BasisCoefficient, ShiftProbe};
pub use spinor::{
    dirac_hamiltonian, dirac_residual, helicity_operator, plane_wave_spinors, Particle, PlaneWave, SpinorState,
};
pub use zitter::{
    compton_average, fit_amplitude, measure_angular_frequency, period_grid, position_operator_split, zitter_trajectory,
    PositionSplit, SeriesKind, TrajectorySeries, ZitterTrajectory, MIN_POINTS_PER_PERIOD,
};

#[derive(Debug, Error)]
pub enum DiracError {
    #[error("invalid particle: {0}")]
    InvalidParticle(String),
    #[error("invalid series: {0}")]
    InvalidSeries(String),
    #[error("mixing amplitudes must have unit norm, got {0}")]
    MixNotNormalized(f64),
    #[error("time grid aliases the oscillation: {points_per_period:.3} points per period")]
    Aliasing { points_per_period: f64 },
    #[error("averaging window must be finite and non-negative, got {0}")]
    InvalidWindow(f64),
    #[error("averaging window {window} exceeds series span {span}")]
    WindowTooLong { window: f64, span: f64 },
    #[error("need at least two zero crossings, found {0}")]
    TooFewCrossings(usize),
    #[error("helicity is undefined at zero momentum")]
    ZeroMomentum,
    #[error("helicity and branch must be +1 or -1, got {helicity} and {branch}")]
    InvalidLabel { helicity: i8, branch: i8 },
    #[error("axis must be 1, 2 or 3, got {0}")]
    InvalidAxis(usize),
    #[error("epsilon must be finite and nonzero, got {0}")]
    InvalidEpsilon(f64),
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}
