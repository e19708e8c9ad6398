use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geometry::MetricField;
use crate::scalar::Real;
use crate::tensor::{derivative_1d, FdConfig, Point, Tensor};

/// Objects carried along a trajectory.
#[derive(Clone, Debug, PartialEq)]
pub enum Carried<T> {
    Vector(Vec<T>),
    /// Rows are the frame vectors.
    Frame(Vec<Vec<T>>),
    /// Deviation `δx` and its transport rate `D̄δx/ds`.
    Deviation { dx: Vec<T>, rate: Vec<T> },
}

/// One sample of a trajectory: parameter, position, tangent `u = dx/ds` and carried objects.
#[derive(Clone, Debug, PartialEq)]
pub struct TrajectoryState<T> {
    pub s: T,
    pub x: Point<T>,
    pub u: Vec<T>,
    pub carried: Vec<Carried<T>>,
}

impl<T: Real> TrajectoryState<T> {
    pub fn new(s: T, x: Point<T>, u: Vec<T>) -> Self {
        Self { s, x, u, carried: Vec::new() }
    }

    /// `g_ij u^i u^j` at the sample.
    pub fn tangent_norm2(&self, metric: &MetricField<T>) -> Result<T> {
        let g = metric.at(&self.x)?;
        Ok(quadratic_form(&g, &self.u, &self.u))
    }
}

/// `g_ij a^i b^j`.
pub fn quadratic_form<T: Real>(g: &Tensor<T>, a: &[T], b: &[T]) -> T {
    let n = a.len();
    let mut acc = T::zero();
    for i in 0..n {
        for j in 0..n {
            acc += g[[i, j]] * a[i] * b[j];
        }
    }
    acc
}

/// `Γ^a_bc v^b w^c` (`v` in the vector slot, `w` in the direction slot).
pub fn gamma_contract<T: Real>(gamma: &Tensor<T>, v: &[T], w: &[T]) -> Vec<T> {
    let n = v.len();
    (0..n)
        .map(|a| {
            let mut acc = T::zero();
            for b in 0..n {
                if v[b] == T::zero() {
                    continue;
                }
                for c in 0..n {
                    acc += gamma[[a, b, c]] * v[b] * w[c];
                }
            }
            acc
        })
        .collect()
}

type PathFn<T> = dyn Fn(T) -> Result<Vec<T>> + Send + Sync;

/// A parameterised curve `s ↦ x(s)` with optional analytic tangent.
#[derive(Clone)]
pub struct Curve<T> {
    dim: usize,
    position: Arc<PathFn<T>>,
    velocity: Option<Arc<PathFn<T>>>,
}

impl<T: Real> Curve<T> {
    pub fn new(dim: usize, position: impl Fn(T) -> Result<Vec<T>> + Send + Sync + 'static) -> Self {
        Self { dim, position: Arc::new(position), velocity: None }
    }

    pub fn with_velocity(mut self, velocity: impl Fn(T) -> Result<Vec<T>> + Send + Sync + 'static) -> Self {
        self.velocity = Some(Arc::new(velocity));
        self
    }

    /// `x(s) = x0 + u s`.
    pub fn line(x0: Vec<T>, u: Vec<T>) -> Self {
        let (a, b) = (x0.clone(), u.clone());
        Self::new(x0.len(), move |s| Ok(a.iter().zip(&b).map(|(&x, &d)| x + d * s).collect()))
            .with_velocity(move |_| Ok(u.clone()))
    }

    /// Circle of radius `r` about `center` in the `(i, j)` coordinate plane,
    /// counter-clockwise, parameterised by angle.
    pub fn circle(center: Vec<T>, i: usize, j: usize, r: T) -> Self {
        let n = center.len();
        let c = center.clone();
        Self::new(n, move |s| {
            let mut x = c.clone();
            x[i] += r * s.cos();
            x[j] += r * s.sin();
            Ok(x)
        })
        .with_velocity(move |s| {
            let mut v = vec![T::zero(); n];
            v[i] = -r * s.sin();
            v[j] = r * s.cos();
            Ok(v)
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn position(&self, s: T) -> Result<Vec<T>> {
        let x = (self.position)(s)?;
        if x.len() != self.dim {
            return Err(Error::Shape(format!("curve returned {} coordinates, expected {}", x.len(), self.dim)));
        }
        Ok(x)
    }

    pub fn point(&self, s: T) -> Result<Point<T>> {
        Point::new(self.position(s)?)
    }

    /// `dx/ds`, analytic when supplied and by extrapolated differences otherwise.
    pub fn velocity(&self, s: T) -> Result<Vec<T>> {
        match &self.velocity {
            Some(v) => v(s),
            None => derivative_1d(|t| self.position(t), s, &FdConfig::default()),
        }
    }

    /// `d²x/ds²` by extrapolated differences of the velocity.
    pub fn acceleration(&self, s: T) -> Result<Vec<T>> {
        derivative_1d(|t| self.velocity(t), s, &FdConfig::default())
    }
}
