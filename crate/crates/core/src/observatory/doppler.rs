use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::spacetimes::Schwarzschild;

use super::constants::{schwarzschild_radius, ANGSTROM, C, G, MICRON};
use super::scenario::OrbitScenario;

/// Speed of a body with coordinate angular velocity `ω` at radius `r`, as measured by a
/// static observer with light signals: `V = √(r/(r−rg)) r ω`.
pub fn measured_orbital_speed<T: Real>(space: &Schwarzschild<T>, r: T, omega: T) -> Result<T> {
    if !(r > space.rg) {
        return Err(Error::Region(format!("r = {r} is not outside rg = {}", space.rg)));
    }
    Ok((r / (r - space.rg)).sqrt() * r * omega)
}

/// Keplerian speed `V² = GM(2/r − 1/a)`.
pub fn vis_viva_speed(mass: f64, r: f64, semi_major: f64) -> f64 {
    (G * mass * (2.0 / r - 1.0 / semi_major)).sqrt()
}

/// Frequency ratio seen by a moving receiver of a radial wave from infinity:
/// `ω′/ω = √(r/(r−rg)) / √(1 − V²/c²)`. Returns `(ratio, gravitational, kinematic)`.
pub fn doppler_ratio(rg: f64, r: f64, speed: f64) -> Result<(f64, f64, f64)> {
    if !(r > rg) {
        return Err(Error::Region(format!("r = {r:e} cm is not outside rg = {rg:e} cm")));
    }
    let beta = speed / C;
    if !(beta.abs() < 1.0) {
        return Err(Error::Superluminal { beta });
    }
    let grav = (r / (r - rg)).sqrt();
    let kin = 1.0 / (1.0 - beta * beta).sqrt();
    Ok((grav * kin, grav, kin))
}

#[derive(Clone, Debug, PartialEq)]
pub struct DopplerPoint {
    pub r: f64,
    /// Vis-viva speed, cm/s.
    pub speed: f64,
    /// `ω′/ω`.
    pub ratio: f64,
    pub gravitational: f64,
    pub kinematic: f64,
    /// Observed wavelength, μm.
    pub lambda_obs: f64,
    /// `√(r/(r−rg)) V − V`: how far the light-signal speed would move from the vis-viva value.
    pub measured_speed_gap: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DopplerResult {
    pub pericentre: DopplerPoint,
    pub apocentre: DopplerPoint,
    /// `λ_obs(apo) − λ_obs(peri)`, Å.
    pub delta_lambda: f64,
    pub lambda_emit: f64,
}

/// Doppler shift at one distance on an ellipse with semi-major axis `a`.
pub fn doppler_point(mass: f64, r: f64, semi_major: f64, lambda_emit: f64) -> Result<DopplerPoint> {
    let rg = schwarzschild_radius(mass);
    let speed = vis_viva_speed(mass, r, semi_major);
    if !speed.is_finite() {
        return Err(Error::InvalidParameter(format!("no Keplerian speed at r = {r:e} for a = {semi_major:e}")));
    }
    let (ratio, gravitational, kinematic) = doppler_ratio(rg, r, speed)?;
    Ok(DopplerPoint {
        r,
        speed,
        ratio,
        gravitational,
        kinematic,
        lambda_obs: lambda_emit / ratio,
        measured_speed_gap: (gravitational - 1.0) * speed,
    })
}

/// Pericentre and apocentre shifts of a wave emitted by a star on a Keplerian ellipse.
pub fn s2_doppler(scenario: &OrbitScenario) -> Result<DopplerResult> {
    let (Some(rp), Some(ra)) = (scenario.r_peri, scenario.r_apo) else {
        return Err(Error::InvalidParameter("Doppler scenario needs r_peri and r_apo".into()));
    };
    if !(scenario.mass > 0.0) || !(rp > 0.0) || !(ra >= rp) {
        return Err(Error::InvalidParameter("need M > 0 and 0 < r_peri <= r_apo".into()));
    }
    let lambda_emit = scenario.lambda_emit.unwrap_or(super::constants::BR_GAMMA_UM);
    let a = 0.5 * (rp + ra);
    let pericentre = doppler_point(scenario.mass, rp, a, lambda_emit)?;
    let apocentre = doppler_point(scenario.mass, ra, a, lambda_emit)?;
    let delta_lambda = (apocentre.lambda_obs - pericentre.lambda_obs) * MICRON / ANGSTROM;
    Ok(DopplerResult { pericentre, apocentre, delta_lambda, lambda_emit })
}
