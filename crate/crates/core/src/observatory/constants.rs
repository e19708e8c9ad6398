//! CGS constants and unit conversions used by the observatory.

/// Gravitational constant, cm³ g⁻¹ s⁻².
pub const G: f64 = 6.674e-8;
/// Speed of light, cm/s.
pub const C: f64 = 2.997_924_58e10;
/// Solar mass, g.
pub const M_SUN: f64 = 1.989e33;
/// Earth mass, g.
pub const M_EARTH: f64 = 5.977e27;

pub const MINUTE: f64 = 60.0;
pub const DAY: f64 = 86_400.0;
/// Julian year, s.
pub const YEAR: f64 = 365.25 * DAY;

/// Micrometre, cm.
pub const MICRON: f64 = 1e-4;
/// Ångström, cm.
pub const ANGSTROM: f64 = 1e-8;

/// Brγ rest wavelength, μm.
pub const BR_GAMMA_UM: f64 = 2.1661;

/// `rg = 2GM/c²` in cm.
pub fn schwarzschild_radius(mass: f64) -> f64 {
    2.0 * G * mass / (C * C)
}
