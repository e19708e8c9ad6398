use std::sync::Arc;

use crate::error::Result;
use crate::geometry::{ConnectionField, ConnectionKind, MetricAffineSpace, MetricField};
use crate::scalar::Real;
use crate::tensor::{ConstantField, Tensor};

/// Constant diagonal metric with vanishing connection.
pub fn flat<T: Real>(diag: &[T]) -> Result<MetricAffineSpace<T>> {
    let n = diag.len();
    let signature = diag.iter().map(|d| if *d > T::zero() { 1 } else { -1 }).collect();
    let metric = MetricField::new(Arc::new(ConstantField(Tensor::diagonal(diag))), signature)?;
    let conn = ConnectionField::new(Arc::new(ConstantField(Tensor::zeros(n, 1, 2))), ConnectionKind::LeviCivita)?;
    MetricAffineSpace::new(metric, conn)
}

/// Euclidean space of dimension `n` in Cartesian coordinates.
pub fn euclidean<T: Real>(n: usize) -> Result<MetricAffineSpace<T>> {
    flat(&vec![T::one(); n])
}

/// Minkowski space `diag(c², −1, −1, −1)`.
pub fn minkowski<T: Real>(c: T) -> Result<MetricAffineSpace<T>> {
    flat(&[c * c, -T::one(), -T::one(), -T::one()])
}

/// Constant diagonal metric carrying constant connection coefficients `gamma`.
pub fn flat_with_connection<T: Real>(diag: &[T], gamma: Tensor<T>) -> Result<MetricAffineSpace<T>> {
    let base = flat(diag)?;
    base.with_connection(ConnectionField::new(Arc::new(ConstantField(gamma)), ConnectionKind::General)?)
}
