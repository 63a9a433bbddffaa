use serde::Serialize;

use crate::numeric::operator_norm;

use super::gamma::build_gamma_set;
use super::spinor::{hamiltonian_with, helicity_operator, inner, plane_wave_spinors, Particle};
use super::DiracError;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ChiralityNorms {
    /// `‖[H, γ⁵]‖`.
    pub chirality: f64,
    /// `‖[H, Σ·p̂]‖`.
    pub helicity: f64,
}

pub fn chirality_commutator_norm(particle: &Particle) -> Result<ChiralityNorms, DiracError> {
    let g = build_gamma_set();
    let h = hamiltonian_with(&g, particle);
    let chirality = operator_norm(&h.commutator(&g.gamma5)?)?;
    let helicity = operator_norm(&h.commutator(&helicity_operator(particle))?)?;
    Ok(ChiralityNorms { chirality, helicity })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Handedness {
    /// `⟨γ⁵⟩` on the selected plane wave.
    pub chirality: f64,
    /// Lower-to-upper two-component norm ratio.
    pub component_ratio: f64,
}

/// Chirality expectation of the plane wave with the given helicity (`±1`)
/// on the given energy branch (`±1`).
pub fn handedness_expectation(particle: &Particle, helicity: i8, branch: i8) -> Result<Handedness, DiracError> {
    if particle.momentum_norm() == 0.0 {
        return Err(DiracError::ZeroMomentum);
    }
    let index = match (branch, helicity) {
        (1, 1) => 0,
        (1, -1) => 1,
        (-1, 1) => 2,
        (-1, -1) => 3,
        _ => return Err(DiracError::InvalidLabel { helicity, branch }),
    };
    let wave = &plane_wave_spinors(particle)[index];
    let g = build_gamma_set();
    let u = &wave.state.amplitudes;
    let chirality = inner(u, &g.gamma5.apply(u)?).re / inner(u, u).re;
    let state = &wave.state;
    Ok(Handedness {
        chirality,
        component_ratio: state.lower_norm() / state.upper_norm(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::CMatrix;
    use num_complex::Complex64;
    use proptest::prelude::*;

    fn particle(p: [f64; 3], m: f64, c: f64) -> Particle {
        Particle::new(p, m, c).unwrap()
    }

    /// `⟨γ⁵⟩` on `P_E P_λ v` for a fixed generic `v`, with spectral projectors
    /// built directly from `H` and `Σ·p̂`.
    fn projector_oracle(particle: &Particle, helicity: i8, branch: i8) -> f64 {
        let g = build_gamma_set();
        let id = CMatrix::identity(4);
        let h = hamiltonian_with(&g, particle);
        let e = particle.energy();
        let pe = id.try_add(&h.scale_real(f64::from(branch) / e)).unwrap().scale_real(0.5);
        let ph = id
            .try_add(&helicity_operator(particle).scale_real(f64::from(helicity)))
            .unwrap()
            .scale_real(0.5);
        let v = [
            Complex64::new(0.3, 0.1),
            Complex64::new(-0.7, 0.4),
            Complex64::new(0.2, -0.9),
            Complex64::new(0.5, 0.6),
        ];
        let u = pe.try_mul(&ph).unwrap().apply(&v).unwrap();
        inner(&u, &g.gamma5.apply(&u).unwrap()).re / inner(&u, &u).re
    }

    #[test]
    fn commutator_norm_examples() {
        let n = chirality_commutator_norm(&particle([0.3, 1.0, -2.0], 0.0, 1.0)).unwrap();
        assert_eq!(n.chirality, 0.0);
        let n = chirality_commutator_norm(&particle([0.3, 1.0, -2.0], 1.0, 1.0)).unwrap();
        assert!((n.chirality - 2.0).abs() <= 2e-10);
        let n = chirality_commutator_norm(&particle([1.0, 0.0, 0.0], 0.5, 2.0)).unwrap();
        assert!((n.chirality - 4.0).abs() <= 4e-10);
        assert!(n.helicity <= 1e-12);
    }

    #[test]
    fn three_four_five() {
        let p = particle([0.0, 3.0, 0.0], 4.0, 1.0);
        let h = handedness_expectation(&p, 1, 1).unwrap();
        assert!((h.chirality - 0.6).abs() <= 1e-12);
        assert!((projector_oracle(&p, 1, 1) - 0.6).abs() <= 1e-12);
    }

    #[test]
    fn massless_is_pure() {
        let p = particle([0.2, -0.4, 1.1], 0.0, 1.0);
        assert!((handedness_expectation(&p, 1, 1).unwrap().chirality - 1.0).abs() <= 1e-14);
        assert!((handedness_expectation(&p, -1, 1).unwrap().chirality + 1.0).abs() <= 1e-14);
        assert!((handedness_expectation(&p, 1, -1).unwrap().component_ratio - 1.0).abs() <= 1e-14);
    }

    #[test]
    fn massless_limit_is_monotone() {
        let values: Vec<f64> = [1.0, 0.1, 0.01]
            .iter()
            .map(|&m| handedness_expectation(&particle([1.0, 0.0, 0.0], m, 1.0), 1, 1).unwrap().chirality)
            .collect();
        assert!(values[0] < values[1] && values[1] < values[2] && values[2] < 1.0);
        assert!(1.0 - values[2] <= 1e-4);
    }

    #[test]
    fn negative_branch_flips_sign() {
        let p = particle([0.0, 0.0, 2.0], 1.0, 1.5);
        let expected = -1.5 * 2.0 / p.energy();
        let h = handedness_expectation(&p, 1, -1).unwrap();
        assert!((h.chirality - expected).abs() <= 1e-12);
    }

    #[test]
    fn rejects_rest_and_bad_labels() {
        let rest = particle([0.0; 3], 1.0, 1.0);
        assert!(matches!(handedness_expectation(&rest, 1, 1), Err(DiracError::ZeroMomentum)));
        let p = particle([1.0, 0.0, 0.0], 1.0, 1.0);
        assert!(matches!(handedness_expectation(&p, 0, 1), Err(DiracError::InvalidLabel { .. })));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]

        #[test]
        fn matches_closed_form_and_projectors(
            px in -4.0f64..4.0, py in -4.0f64..4.0, pz in 0.25f64..4.0,
            m in 0.0f64..4.0, c in 0.25f64..4.0,
            helicity in prop::sample::select(vec![1i8, -1]),
            branch in prop::sample::select(vec![1i8, -1]),
        ) {
            let p = particle([px, py, pz], m, c);
            let closed = f64::from(branch * helicity) * c * p.momentum_norm() / p.energy();
            let got = handedness_expectation(&p, helicity, branch).unwrap().chirality;
            prop_assert!((got - closed).abs() <= 1e-10);
            prop_assert!((got - projector_oracle(&p, helicity, branch)).abs() <= 1e-10);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10))]

        #[test]
        fn commutator_norm_is_momentum_independent(
            px in -4.0f64..4.0, py in -4.0f64..4.0, pz in -4.0f64..4.0,
            m in 0.25f64..4.0, c in 0.25f64..4.0,
        ) {
            prop_assume!(px.abs() + py.abs() + pz.abs() > 1e-3);
            let p = particle([px, py, pz], m, c);
            let n = chirality_commutator_norm(&p).unwrap();
            let target = 2.0 * m * c * c;
            prop_assert!((n.chirality - target).abs() <= 1e-10 * target);
            prop_assert!(n.helicity <= 1e-12);
        }
    }
}
