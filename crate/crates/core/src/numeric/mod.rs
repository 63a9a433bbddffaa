//! Exact complex-rational arithmetic and small dense complex matrices.

mod matrix;
mod rational;

pub use matrix::{
    format_complex, format_float, mat_exp_energy, mat_ops, operator_norm, pauli, CMatrix, MatOp,
    ENERGY_SQUARE_TOLERANCE, NORM_MAX_ITERATIONS, NORM_TOLERANCE,
};
pub use rational::{gr_arith, parse_rational, GaussianRational, GrOp};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse rational literal {0:?}")]
    Parse(String),
    #[error("matrix has no entries")]
    EmptyMatrix,
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("energy scale must be positive, got {0}")]
    NonPositiveEnergy(f64),
    #[error("H^2 differs from E^2 I: residual norm {residual:e} at E = {energy:e}")]
    NotEnergySquare { residual: f64, energy: f64 },
    #[error("power iteration did not converge; best estimate {estimate:e}")]
    NormNotConverged { estimate: f64 },
}
