use chronon_core::chronon::HBAR_SI;

/// Electron rest mass in kg.
pub const ELECTRON_MASS: f64 = 9.109_383_701_5e-31;
/// Speed of light in m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
/// Mass scale applied to the electron for the illustrative neutrino preset.
pub const NEUTRINO_MASS_SCALE: f64 = 1e-6;

pub const NEUTRINO_NOTE: &str = "illustrative near-massless case: electron mass scaled by 1e-6, not a measured value";

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParticleConstants {
    pub mass: f64,
    pub c: f64,
    pub hbar: f64,
}

pub fn electron() -> ParticleConstants {
    ParticleConstants {
        mass: ELECTRON_MASS,
        c: SPEED_OF_LIGHT,
        hbar: HBAR_SI,
    }
}

pub fn neutrino() -> ParticleConstants {
    ParticleConstants {
        mass: ELECTRON_MASS * NEUTRINO_MASS_SCALE,
        ..electron()
    }
}
