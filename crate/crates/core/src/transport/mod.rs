//! ODE-driven transports and trajectories.

mod forced;
mod frenet;
mod geodesic;
mod parallel;
mod parallelogram;
mod state;
mod tidal;

pub use forced::{field_strength, forced_motion, Force};
pub use frenet::{
    accompanying_frame, frenet_coefficients, frenet_transport, AccompanyingFrame, FrenetSample,
    FRENET_DEGENERACY,
};
pub use geodesic::{autoparallel, extremal, extremal_correction};
pub use parallel::{holonomy, parallel_transport, resolve_connection, transport_vectors, ConnectionChoice};
pub use parallelogram::{gap_convergence, parallelogram_gap, GapConvergence};
pub use state::{gamma_contract, quadratic_form, Carried, Curve, TrajectoryState};
pub use tidal::{
    tidal_acceleration, tidal_deviation, tidal_lie_residual, two_trajectory_deviation, Acceleration, DeviationSample,
    DeviationSetup, TidalLieReport,
};
