//! Numerical laboratory for metric-affine geometry.
//!
//! The core is generic over the scalar type ([`Real`], implemented for `f32` and
//! `f64`); the `*64` aliases below fix it to `f64`.

pub mod error;
pub mod frames;
pub mod geometry;
pub mod observatory;
pub mod ode;
pub mod scalar;
pub mod spacetimes;
pub mod tensor;
pub mod transport;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Point64 = tensor::Point<f64>;
pub type Tensor64 = tensor::Tensor<f64>;
pub type MetricField64 = geometry::MetricField<f64>;
pub type ConnectionField64 = geometry::ConnectionField<f64>;
pub type Space64 = geometry::MetricAffineSpace<f64>;
