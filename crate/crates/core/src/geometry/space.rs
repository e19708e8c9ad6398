use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::tensor::{invert_metric, FieldRef, Point, Symmetry, Tensor, TensorField};

/// Symmetric nondegenerate `(0,2)` field `g_ij` with a fixed signature.
#[derive(Clone)]
pub struct MetricField<T> {
    field: FieldRef<T>,
    signature: Vec<i8>,
}

impl<T: Real> MetricField<T> {
    pub fn new(field: FieldRef<T>, signature: Vec<i8>) -> Result<Self> {
        if field.shape() != (0, 2) {
            return Err(Error::Shape(format!("metric must be (0,2), got {:?}", field.shape())));
        }
        if signature.len() != field.dim() || signature.iter().any(|s| s.abs() != 1) {
            return Err(Error::InvalidParameter(format!(
                "signature {signature:?} does not fit dimension {}",
                field.dim()
            )));
        }
        Ok(Self { field, signature })
    }

    pub fn dim(&self) -> usize {
        self.field.dim()
    }

    pub fn signature(&self) -> &[i8] {
        &self.signature
    }

    pub fn field(&self) -> &FieldRef<T> {
        &self.field
    }

    /// `g_ij` at `p`, checked for symmetry.
    pub fn at(&self, p: &Point<T>) -> Result<Tensor<T>> {
        let g = self.field.eval(p)?;
        g.check_symmetry(Symmetry::Symmetric, T::epsilon() * T::lit(64.0))?;
        Ok(g)
    }

    /// `g^ij` at `p`.
    pub fn inverse(&self, p: &Point<T>) -> Result<Tensor<T>> {
        invert_metric(&self.at(p)?)
    }

    /// `∂_axis g_ij`.
    pub fn partial(&self, p: &Point<T>, axis: usize) -> Result<Tensor<T>> {
        self.field.partial(p, axis)
    }
}

/// Origin of a connection's coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConnectionKind {
    LeviCivita,
    Cartan,
    General,
}

/// Connection coefficients `Γ^a_bc` (`b` the transported slot, `c` the direction).
#[derive(Clone)]
pub struct ConnectionField<T> {
    field: FieldRef<T>,
    kind: ConnectionKind,
}

impl<T: Real> ConnectionField<T> {
    pub fn new(field: FieldRef<T>, kind: ConnectionKind) -> Result<Self> {
        if field.shape() != (1, 2) {
            return Err(Error::Shape(format!("connection must be (1,2), got {:?}", field.shape())));
        }
        Ok(Self { field, kind })
    }

    pub fn from_field(field: impl TensorField<T> + 'static, kind: ConnectionKind) -> Result<Self> {
        Self::new(Arc::new(field), kind)
    }

    pub fn kind(&self) -> ConnectionKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.field.dim()
    }

    pub fn field(&self) -> &FieldRef<T> {
        &self.field
    }

    pub fn at(&self, p: &Point<T>) -> Result<Tensor<T>> {
        let g = self.field.eval(p)?;
        if !g.is_finite() {
            return Err(Error::Region("connection coefficients are not finite".into()));
        }
        Ok(g)
    }

    pub fn partial(&self, p: &Point<T>, axis: usize) -> Result<Tensor<T>> {
        self.field.partial(p, axis)
    }
}

/// A chart of a metric-affine manifold: metric plus independent connection.
#[derive(Clone)]
pub struct MetricAffineSpace<T> {
    pub metric: MetricField<T>,
    pub connection: ConnectionField<T>,
}

impl<T: Real> MetricAffineSpace<T> {
    pub fn new(metric: MetricField<T>, connection: ConnectionField<T>) -> Result<Self> {
        if metric.dim() != connection.dim() {
            return Err(Error::Shape(format!(
                "metric dimension {} vs connection dimension {}",
                metric.dim(),
                connection.dim()
            )));
        }
        Ok(Self { metric, connection })
    }

    pub fn dim(&self) -> usize {
        self.metric.dim()
    }

    /// Same metric with a different connection.
    pub fn with_connection(&self, connection: ConnectionField<T>) -> Result<Self> {
        Self::new(self.metric.clone(), connection)
    }
}
