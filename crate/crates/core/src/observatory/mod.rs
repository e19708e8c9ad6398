//! Astrophysical observables for circular and Keplerian orbits in CGS units:
//! clock delays, measured speeds, Doppler shifts and observer boosts.
//!
//! Delay and Doppler computations are `f64`: CGS magnitudes overflow `f32`.

pub mod constants;
mod boost;
mod delay;
mod doppler;
mod scenario;
mod tables;

pub use boost::{
    boost_along, boost_time_delay, orbit_clock_gap, orbital_boost_frame, radial_boost_frame, static_frame, BoostFrames,
};
pub use delay::{delay_for_orbit, time_delay, DelayResult};
pub use doppler::{doppler_point, doppler_ratio, measured_orbital_speed, s2_doppler, vis_viva_speed, DopplerPoint, DopplerResult};
pub use scenario::{kepler_period, kepler_radius, OrbitScenario, RadiusSource};
pub use tables::{table, Table, TableId, TableRow};
