use num_complex::Complex64;

use crate::numeric::CMatrix;

use super::gamma::{build_gamma_set, GammaSet};
use super::DiracError;

/// Free-particle kinematics: momentum 3-vector, rest mass, speed of light.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Particle {
    pub momentum: [f64; 3],
    pub mass: f64,
    pub c: f64,
}

impl Particle {
    pub fn new(momentum: [f64; 3], mass: f64, c: f64) -> Result<Self, DiracError> {
        if !momentum.iter().all(|p| p.is_finite()) || !mass.is_finite() || !c.is_finite() {
            return Err(DiracError::InvalidParticle("parameters must be finite".into()));
        }
        if mass < 0.0 {
            return Err(DiracError::InvalidParticle(format!("mass must be non-negative, got {mass}")));
        }
        if c <= 0.0 {
            return Err(DiracError::InvalidParticle(format!("c must be positive, got {c}")));
        }
        let particle = Self { momentum, mass, c };
        if mass == 0.0 && particle.momentum_norm() == 0.0 {
            return Err(DiracError::InvalidParticle(
                "massless particle at rest has no energy scale".into(),
            ));
        }
        Ok(particle)
    }

    pub fn momentum_norm(&self) -> f64 {
        let [x, y, z] = self.momentum;
        (x * x + y * y + z * z).sqrt()
    }

    pub fn rest_energy(&self) -> f64 {
        self.mass * self.c * self.c
    }

    /// `E = √(c²|p|² + m²c⁴)`.
    pub fn energy(&self) -> f64 {
        (self.c * self.momentum_norm()).hypot(self.rest_energy())
    }

    /// Unit vector along the momentum, or `ẑ` at rest.
    pub fn direction(&self) -> [f64; 3] {
        let n = self.momentum_norm();
        if n == 0.0 {
            [0.0, 0.0, 1.0]
        } else {
            self.momentum.map(|p| p / n)
        }
    }
}

/// A 4-spinor attached to the kinematics it was built for.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinorState {
    pub amplitudes: [Complex64; 4],
    pub particle: Particle,
}

impl SpinorState {
    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt()
    }

    pub fn inner(&self, other: &SpinorState) -> Complex64 {
        inner(&self.amplitudes, &other.amplitudes)
    }

    pub fn upper_norm(&self) -> f64 {
        self.amplitudes[..2].iter().map(Complex64::norm_sqr).sum::<f64>().sqrt()
    }

    pub fn lower_norm(&self) -> f64 {
        self.amplitudes[2..].iter().map(Complex64::norm_sqr).sum::<f64>().sqrt()
    }
}

pub(crate) fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// A plane-wave solution labelled by its energy eigenvalue (`±E`) and its
/// helicity (`±1`, spin along `ẑ` at rest).
#[derive(Clone, Debug, PartialEq)]
pub struct PlaneWave {
    pub state: SpinorState,
    pub energy: f64,
    pub helicity: i8,
}

/// `H = c Σ_k α_k p_k + β m c²`.
pub fn dirac_hamiltonian(particle: &Particle) -> CMatrix {
    hamiltonian_with(&build_gamma_set(), particle)
}

pub(crate) fn hamiltonian_with(g: &GammaSet, particle: &Particle) -> CMatrix {
    let mut h = g.beta.scale_real(particle.rest_energy());
    for (alpha, p) in g.alpha.iter().zip(particle.momentum) {
        h = h.try_add(&alpha.scale_real(particle.c * p)).expect("4x4");
    }
    h
}

/// `Σ·p̂`; the zero matrix at rest.
pub fn helicity_operator(particle: &Particle) -> CMatrix {
    let g = build_gamma_set();
    if particle.momentum_norm() == 0.0 {
        return CMatrix::zeros(4, 4);
    }
    let n = particle.direction();
    g.sigma
        .iter()
        .zip(n)
        .map(|(s, nk)| s.scale_real(nk))
        .reduce(|a, b| a.try_add(&b).expect("4x4"))
        .expect("three components")
}

/// Two-component eigenvector of `σ·n` with eigenvalue `helicity`.
fn two_spinor(n: [f64; 3], helicity: i8) -> [Complex64; 2] {
    let [nx, ny, nz] = n;
    // Both branches are exact eigenvectors; the split avoids dividing by a
    // small 1 ± n_z.
    let (a, b, s) = if nz >= 0.0 {
        let s = (2.0 * (1.0 + nz)).sqrt();
        if helicity > 0 {
            (Complex64::new(1.0 + nz, 0.0), Complex64::new(nx, ny), s)
        } else {
            (Complex64::new(-nx, ny), Complex64::new(1.0 + nz, 0.0), s)
        }
    } else {
        let s = (2.0 * (1.0 - nz)).sqrt();
        if helicity > 0 {
            (Complex64::new(nx, -ny), Complex64::new(1.0 - nz, 0.0), s)
        } else {
            (Complex64::new(1.0 - nz, 0.0), Complex64::new(-nx, -ny), s)
        }
    };
    [a / s, b / s]
}

/// Rotates the global phase so the first non-negligible component is real
/// and positive.
fn fix_phase(mut v: [Complex64; 4]) -> [Complex64; 4] {
    let scale = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if let Some(first) = v.iter().find(|z| z.norm() > 1e-12 * scale) {
        let phase = first.conj() / first.norm();
        for z in &mut v {
            *z *= phase;
        }
    }
    v
}

fn normalize(v: [Complex64; 4]) -> [Complex64; 4] {
    let n = v.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
    v.map(|z| z / n)
}

/// The four plane-wave spinors at momentum `p`, ordered
/// `(+E, +1), (+E, −1), (−E, +1), (−E, −1)` by (energy, helicity).
///
/// Positive energy: `(χ, cσ·p/(E+mc²) χ)`; negative energy:
/// `(−cσ·p/(E+mc²) χ, χ)`, with `χ` a helicity eigenstate of `σ·p̂`.
pub fn plane_wave_spinors(particle: &Particle) -> [PlaneWave; 4] {
    let e = particle.energy();
    let n = particle.direction();
    // cσ·p χ_λ = λ c|p| χ_λ
    let ratio = particle.c * particle.momentum_norm() / (e + particle.rest_energy());
    let build = |branch: f64, helicity: i8| {
        let chi = two_spinor(n, helicity);
        let small = ratio * f64::from(helicity);
        let amps = if branch > 0.0 {
            [chi[0], chi[1], chi[0] * small, chi[1] * small]
        } else {
            [-chi[0] * small, -chi[1] * small, chi[0], chi[1]]
        };
        PlaneWave {
            state: SpinorState {
                amplitudes: fix_phase(normalize(amps)),
                particle: *particle,
            },
            energy: branch * e,
            helicity,
        }
    };
    [build(1.0, 1), build(1.0, -1), build(-1.0, 1), build(-1.0, -1)]
}

/// `‖(γ⁰E/c − γ^k p_k − mc)u‖ / ‖u‖`.
pub fn dirac_residual(u: &SpinorState, energy: f64) -> f64 {
    let g = build_gamma_set();
    let particle = &u.particle;
    let mut op = g.gamma[0].scale_real(energy / particle.c);
    for k in 0..3 {
        op = op
            .try_sub(&g.gamma[k + 1].scale_real(particle.momentum[k]))
            .expect("4x4");
    }
    op = op
        .try_sub(&CMatrix::identity(4).scale_real(particle.mass * particle.c))
        .expect("4x4");
    let r = op.apply(&u.amplitudes).expect("4-vector");
    r.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt() / u.norm()
}
