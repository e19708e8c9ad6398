use std::f64::consts::PI;

use crate::error::{Error, Result};

use super::constants::{schwarzschild_radius, G};

/// Where an orbit radius came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RadiusSource {
    Given,
    /// `r³ = GMT²/4π²`.
    Kepler,
}

impl RadiusSource {
    pub fn as_str(self) -> &'static str {
        match self {
            RadiusSource::Given => "given",
            RadiusSource::Kepler => "kepler",
        }
    }
}

/// A body on a (nearly) circular orbit about a central mass, CGS units.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitScenario {
    /// Central mass, g.
    pub mass: f64,
    /// Orbit radius, cm.
    pub radius: Option<f64>,
    /// Orbit period, s.
    pub period: Option<f64>,
    /// Pericentre and apocentre distances, cm.
    pub r_peri: Option<f64>,
    pub r_apo: Option<f64>,
    /// Emitted wavelength, μm.
    pub lambda_emit: Option<f64>,
}

/// `r = (GMT²/4π²)^(1/3)`.
pub fn kepler_radius(mass: f64, period: f64) -> f64 {
    (G * mass).cbrt() * (period / (2.0 * PI)).powf(2.0 / 3.0)
}

/// `T = 2π √(r³/GM)`.
pub fn kepler_period(mass: f64, radius: f64) -> f64 {
    2.0 * PI * (radius.powi(3) / (G * mass)).sqrt()
}

impl OrbitScenario {
    pub fn circular(mass: f64, radius: Option<f64>, period: Option<f64>) -> Self {
        Self { mass, radius, period, r_peri: None, r_apo: None, lambda_emit: None }
    }

    pub fn rg(&self) -> f64 {
        schwarzschild_radius(self.mass)
    }

    fn check_mass(&self) -> Result<()> {
        if !(self.mass > 0.0 && self.mass.is_finite()) {
            return Err(Error::InvalidParameter(format!("central mass must be positive, got {}", self.mass)));
        }
        Ok(())
    }

    /// Radius and its source; `prefer` picks between them when both are supplied.
    pub fn resolve_radius(&self, prefer: RadiusSource) -> Result<(f64, RadiusSource)> {
        self.check_mass()?;
        let kepler = self.period.map(|t| kepler_radius(self.mass, t));
        let (r, src) = match (self.radius, kepler, prefer) {
            (Some(r), None, _) | (Some(r), Some(_), RadiusSource::Given) => (r, RadiusSource::Given),
            (_, Some(k), _) => (k, RadiusSource::Kepler),
            (None, None, _) => return Err(Error::InvalidParameter("scenario needs a radius or a period".into())),
        };
        if !(r > self.rg()) {
            return Err(Error::Region(format!("orbit radius {r:e} cm is not outside rg = {:e} cm", self.rg())));
        }
        Ok((r, src))
    }

    /// Period, from Kepler's law when absent.
    pub fn resolve_period(&self, r: f64) -> Result<f64> {
        self.check_mass()?;
        let t = self.period.unwrap_or_else(|| kepler_period(self.mass, r));
        if !(t > 0.0) {
            return Err(Error::InvalidParameter(format!("period must be positive, got {t}")));
        }
        Ok(t)
    }
}
