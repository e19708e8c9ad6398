use std::f64::consts::PI;

use crate::error::{Error, Result};

use super::constants::C;
use super::scenario::{OrbitScenario, RadiusSource};

/// Proper-time gap between a static and a circularly orbiting observer after one revolution.
#[derive(Clone, Debug, PartialEq)]
pub struct DelayResult {
    /// `Δs = s₁ − s₂`, cm.
    pub delta_s: f64,
    /// `Δt = Δs/c`, s.
    pub delta_t: f64,
    /// Static observer's proper length `s₁`, cm.
    pub s_static: f64,
    /// Orbiting observer's proper length `s₂`, cm.
    pub s_orbit: f64,
    pub radius: f64,
    pub radius_source: RadiusSource,
    pub period: f64,
    pub rg: f64,
}

/// Delay for an orbit of radius `r` and period `period` about a body with gravitational radius `rg`:
///
/// `Δs = (2π/α)(c√((r−rg)/r) − √(((r−rg)c² − α²r³)/r))`, `α = 2π/T`.
///
/// The difference is evaluated as `2π α r² / (a + b)` to avoid cancellation.
pub fn delay_for_orbit(rg: f64, r: f64, period: f64) -> Result<(f64, f64, f64)> {
    if !(r > rg) {
        return Err(Error::Region(format!("orbit radius {r:e} cm is not outside rg = {rg:e} cm")));
    }
    if !(period > 0.0) {
        return Err(Error::InvalidParameter(format!("period must be positive, got {period}")));
    }
    let alpha = 2.0 * PI / period;
    let f = (r - rg) / r;
    let a = C * f.sqrt();
    let b2 = f * C * C - alpha * alpha * r * r;
    if !(b2 > 0.0) {
        return Err(Error::Superluminal { beta: (alpha * r / a).abs() });
    }
    let b = b2.sqrt();
    let s1 = period * a;
    let s2 = period * b;
    let ds = 2.0 * PI * alpha * r * r / (a + b);
    Ok((ds, s1, s2))
}

/// Time delay per revolution. `prefer` decides between a supplied radius and the
/// Kepler radius when the scenario has both.
pub fn time_delay(scenario: &OrbitScenario, prefer: RadiusSource) -> Result<DelayResult> {
    let (radius, radius_source) = scenario.resolve_radius(prefer)?;
    let period = scenario.resolve_period(radius)?;
    let rg = scenario.rg();
    let (delta_s, s_static, s_orbit) = delay_for_orbit(rg, radius, period)?;
    Ok(DelayResult { delta_s, delta_t: delta_s / C, s_static, s_orbit, radius, radius_source, period, rg })
}
