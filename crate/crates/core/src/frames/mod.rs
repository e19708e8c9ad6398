//! Orthonormal frames, anholonomy, loop integrals and Lorentz maps between frames.

mod anholonomy;
mod frame;
mod loops;
mod lorentz;

pub use anholonomy::{anholonomic_connection, anholonomy_object, commutator_coefficients};
pub use frame::{gram_schmidt_frame, Frame, FrameField};
pub use loops::{line_integral, loop_integral, Interpolation, QuadratureConfig};
pub use lorentz::{boost_frame, invariance_check, InvarianceReport, LorentzFrameMap};
