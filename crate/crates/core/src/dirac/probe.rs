use num_complex::Complex64;
use serde::Serialize;

use crate::numeric::CMatrix;

use super::gamma::{build_gamma_set, clifford_basis};
use super::DiracError;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BasisCoefficient {
    pub label: String,
    pub re: f64,
    pub im: f64,
}

impl BasisCoefficient {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

/// The infinitesimal-shift candidate and its expansion over the Clifford
/// basis.
#[derive(Clone, Debug, PartialEq)]
pub struct ShiftProbe {
    pub axis: usize,
    pub candidate: CMatrix,
    /// 16 coefficients in the order `I, g0..g3, s01..s23, g5g0..g5g3, g5`.
    pub decomposition: Vec<BasisCoefficient>,
    /// Max-entry norm of `candidate − Σ coeff·basis`.
    pub residual: f64,
}

impl ShiftProbe {
    pub fn coefficient(&self, label: &str) -> Option<Complex64> {
        self.decomposition.iter().find(|c| c.label == label).map(BasisCoefficient::value)
    }
}

/// Substitutes the matrix coordinates into the rotation-shift generator for
/// one axis, `G_i = Σ_{jk} ε_ijk X_k p_j`, forms `U = I + iεG` and returns
/// `(U − I)/(iε)` with its decomposition under `⟨A, B⟩ = tr(A†B)/4`.
///
/// `axis` is 1, 2 or 3.
pub fn shift_generator_probe(
    momentum: [f64; 3],
    axis: usize,
    epsilon: f64,
) -> Result<ShiftProbe, DiracError> {
    if !(1..=3).contains(&axis) {
        return Err(DiracError::InvalidAxis(axis));
    }
    if epsilon == 0.0 || !epsilon.is_finite() {
        return Err(DiracError::InvalidEpsilon(epsilon));
    }
    let g = build_gamma_set();
    let i = axis - 1;
    let (j, k) = ((i + 1) % 3, (i + 2) % 3);
    // ε_ijk X_k p_j + ε_ikj X_j p_k
    let generator = g.x[k]
        .scale_real(momentum[j])
        .try_sub(&g.x[j].scale_real(momentum[k]))?;

    let id = CMatrix::identity(4);
    let i_eps = Complex64::new(0.0, epsilon);
    let shift = id.try_add(&generator.scale(i_eps))?;
    let candidate = shift.try_sub(&id)?.scale(1.0 / i_eps);

    let basis = clifford_basis(&g);
    let mut reconstruction = CMatrix::zeros(4, 4);
    let mut decomposition = Vec::with_capacity(basis.len());
    for (label, b) in &basis {
        let coeff = b.adjoint().try_mul(&candidate)?.trace() / 4.0;
        reconstruction = reconstruction.try_add(&b.scale(coeff))?;
        decomposition.push(BasisCoefficient {
            label: label.clone(),
            re: coeff.re,
            im: coeff.im,
        });
    }
    let residual = candidate.try_sub(&reconstruction)?.max_abs();
    Ok(ShiftProbe {
        axis,
        candidate,
        decomposition,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn candidate_does_not_depend_on_epsilon() {
        let p = [0.4, -1.3, 2.2];
        let a = shift_generator_probe(p, 2, 1e-3).unwrap();
        let b = shift_generator_probe(p, 2, 0.25).unwrap();
        assert!(a.candidate.try_sub(&b.candidate).unwrap().max_abs() <= 1e-12);
    }

    #[test]
    fn decomposition_reconstructs() {
        for axis in 1..=3 {
            let probe = shift_generator_probe([0.7, 1.9, -0.6], axis, 0.01).unwrap();
            assert_eq!(probe.decomposition.len(), 16);
            assert!(probe.residual <= 1e-12);
        }
    }

    #[test]
    fn x_momentum_about_z() {
        // G_3 = X_2 p_x = α_2 = γ⁰γ² = −i σ^{02}.
        let probe = shift_generator_probe([1.0, 0.0, 0.0], 3, 0.1).unwrap();
        for c in &probe.decomposition {
            let expected = if c.label == "s02" { Complex64::new(0.0, -1.0) } else { Complex64::new(0.0, 0.0) };
            assert!((c.value() - expected).norm() <= 1e-12, "{}: {}", c.label, c.value());
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(shift_generator_probe([1.0; 3], 0, 0.1), Err(DiracError::InvalidAxis(0))));
        assert!(matches!(shift_generator_probe([1.0; 3], 1, 0.0), Err(DiracError::InvalidEpsilon(_))));
    }
}
