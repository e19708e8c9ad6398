use std::sync::Arc;

use crate::error::Result;
use crate::scalar::Real;

use super::diff::partial_derivative;
use super::{Point, Tensor};

/// A smooth tensor field on a chart: a deterministic, side-effect free map
/// from points to components.
pub trait TensorField<T: Real>: Send + Sync {
    fn dim(&self) -> usize;

    /// `(p, q)` shape of the components returned by [`eval`](Self::eval).
    fn shape(&self) -> (usize, usize);

    fn eval(&self, p: &Point<T>) -> Result<Tensor<T>>;

    /// `∂_axis` of the components. Fields with analytic derivatives override this;
    /// the default is the extrapolated central difference.
    fn partial(&self, p: &Point<T>, axis: usize) -> Result<Tensor<T>> {
        partial_derivative(self, p, axis)
    }
}

pub type FieldRef<T> = Arc<dyn TensorField<T>>;

impl<T: Real, F: TensorField<T> + ?Sized> TensorField<T> for Arc<F> {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn shape(&self) -> (usize, usize) {
        (**self).shape()
    }
    fn eval(&self, p: &Point<T>) -> Result<Tensor<T>> {
        (**self).eval(p)
    }
    fn partial(&self, p: &Point<T>, axis: usize) -> Result<Tensor<T>> {
        (**self).partial(p, axis)
    }
}

impl<T: Real, F: TensorField<T> + ?Sized> TensorField<T> for &F {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn shape(&self) -> (usize, usize) {
        (**self).shape()
    }
    fn eval(&self, p: &Point<T>) -> Result<Tensor<T>> {
        (**self).eval(p)
    }
    fn partial(&self, p: &Point<T>, axis: usize) -> Result<Tensor<T>> {
        (**self).partial(p, axis)
    }
}

type EvalFn<T> = dyn Fn(&Point<T>) -> Result<Tensor<T>> + Send + Sync;
type PartialFn<T> = dyn Fn(&Point<T>, usize) -> Result<Tensor<T>> + Send + Sync;

/// Field backed by closures, optionally with an analytic derivative.
pub struct FnField<T> {
    dim: usize,
    shape: (usize, usize),
    eval: Box<EvalFn<T>>,
    partial: Option<Box<PartialFn<T>>>,
}

impl<T: Real> FnField<T> {
    pub fn new(
        dim: usize,
        shape: (usize, usize),
        eval: impl Fn(&Point<T>) -> Result<Tensor<T>> + Send + Sync + 'static,
    ) -> Self {
        Self { dim, shape, eval: Box::new(eval), partial: None }
    }

    pub fn with_partial(
        mut self,
        partial: impl Fn(&Point<T>, usize) -> Result<Tensor<T>> + Send + Sync + 'static,
    ) -> Self {
        self.partial = Some(Box::new(partial));
        self
    }

    pub fn into_ref(self) -> FieldRef<T> {
        Arc::new(self)
    }
}

impl<T: Real> TensorField<T> for FnField<T> {
    fn dim(&self) -> usize {
        self.dim
    }
    fn shape(&self) -> (usize, usize) {
        self.shape
    }
    fn eval(&self, p: &Point<T>) -> Result<Tensor<T>> {
        (self.eval)(p)
    }
    fn partial(&self, p: &Point<T>, axis: usize) -> Result<Tensor<T>> {
        match &self.partial {
            Some(d) => d(p, axis),
            None => partial_derivative(self, p, axis),
        }
    }
}

/// Same components at every point.
#[derive(Clone, Debug)]
pub struct ConstantField<T>(pub Tensor<T>);

impl<T: Real> TensorField<T> for ConstantField<T> {
    fn dim(&self) -> usize {
        self.0.dim()
    }
    fn shape(&self) -> (usize, usize) {
        self.0.shape()
    }
    fn eval(&self, _p: &Point<T>) -> Result<Tensor<T>> {
        Ok(self.0.clone())
    }
    fn partial(&self, _p: &Point<T>, _axis: usize) -> Result<Tensor<T>> {
        let (u, l) = self.0.shape();
        Ok(Tensor::zeros(self.0.dim(), u, l).with_basis(self.0.basis()))
    }
}

/// The field `∂_axis F`, whose own derivative is taken by finite differences
/// of `F.partial` (nested differentiation).
pub struct PartialField<F> {
    pub inner: F,
    pub axis: usize,
}

impl<T: Real, F: TensorField<T>> TensorField<T> for PartialField<F> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }
    fn shape(&self) -> (usize, usize) {
        self.inner.shape()
    }
    fn eval(&self, p: &Point<T>) -> Result<Tensor<T>> {
        self.inner.partial(p, self.axis)
    }
}

/// Linear combination `Σ c_k F_k` of same-shape fields.
pub struct SumField<T> {
    terms: Vec<(T, FieldRef<T>)>,
}

impl<T: Real> SumField<T> {
    pub fn new(terms: Vec<(T, FieldRef<T>)>) -> Self {
        assert!(!terms.is_empty(), "SumField needs at least one term");
        Self { terms }
    }
}

impl<T: Real> TensorField<T> for SumField<T> {
    fn dim(&self) -> usize {
        self.terms[0].1.dim()
    }
    fn shape(&self) -> (usize, usize) {
        self.terms[0].1.shape()
    }
    fn eval(&self, p: &Point<T>) -> Result<Tensor<T>> {
        let mut acc = self.terms[0].1.eval(p)?.scale(self.terms[0].0);
        for (c, f) in &self.terms[1..] {
            acc.axpy(*c, &f.eval(p)?)?;
        }
        Ok(acc)
    }
    fn partial(&self, p: &Point<T>, axis: usize) -> Result<Tensor<T>> {
        let mut acc = self.terms[0].1.partial(p, axis)?.scale(self.terms[0].0);
        for (c, f) in &self.terms[1..] {
            acc.axpy(*c, &f.partial(p, axis)?)?;
        }
        Ok(acc)
    }
}

/// Derivatives of `field` along every axis.
pub fn gradient<T: Real, F: TensorField<T> + ?Sized>(field: &F, p: &Point<T>) -> Result<Vec<Tensor<T>>> {
    (0..p.dim()).map(|a| field.partial(p, a)).collect()
}

