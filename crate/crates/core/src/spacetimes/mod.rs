//! Concrete metric and connection instances.

mod flat;
mod friedmann;
mod poly;
mod random;
mod redshift;
mod schwarzschild;
mod synthetic;

pub use flat::{euclidean, flat, flat_with_connection, minkowski};
pub use friedmann::{Friedmann, FriedmannChart, FriedmannModel, ScaleFactor};
pub use poly::{PolyField, Quadratic};
pub use random::{
    random_point, random_space, random_symmetric_connection_shift, random_vector_field, RandomSpace,
    RandomSpaceOptions,
};
pub use redshift::{
    friedmann_boost, friedmann_redshift, friedmann_redshift_rate, friedmann_null_ray,
    radial_photon_redshift, radial_photon_redshift_closed_form, radial_photon_redshift_ode,
    FriedmannFrames, NullRaySample, RedshiftResult,
};
pub use schwarzschild::{schwarzschild_connection, Schwarzschild};
pub use synthetic::{constant_torsion_space, single_torsion, SyntheticSpace};
