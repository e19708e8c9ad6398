//! Dense small tensors, fields, and high-accuracy numerical differentiation.

mod components;
pub mod diff;
mod field;
pub mod linalg;
mod point;

pub use components::{invert_metric, invert_metric_with_tol, Basis, Symmetry, Tensor};
pub use diff::{derivative_1d, partial_derivative, partial_derivative_with, FdConfig};
pub use field::{gradient, ConstantField, FieldRef, FnField, PartialField, SumField, TensorField};
pub use point::Point;
