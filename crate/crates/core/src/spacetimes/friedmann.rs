use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geometry::{ConnectionField, ConnectionKind, MetricAffineSpace, MetricField};
use crate::scalar::Real;
use crate::tensor::{Point, Tensor, TensorField};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FriedmannModel {
    /// Spatial sections are 3-spheres, `f(χ) = sin χ`.
    Closed,
    /// Spatial sections are hyperbolic, `f(χ) = sinh χ`.
    Open,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FriedmannChart {
    /// `a²(t)(dt² − dχ² − f²(dθ² + sin²θ dφ²))`.
    Conformal,
    /// `c²dt² − a²(t)(dχ² + f²(dθ² + sin²θ dφ²))`.
    Cosmic,
}

type ScalarFn<T> = Arc<dyn Fn(T) -> T + Send + Sync>;

/// Scale factor `a(t)` with its derivative.
#[derive(Clone)]
pub struct ScaleFactor<T> {
    a: ScalarFn<T>,
    da: ScalarFn<T>,
    name: String,
}

impl<T: Real> ScaleFactor<T> {
    pub fn new(
        name: impl Into<String>,
        a: impl Fn(T) -> T + Send + Sync + 'static,
        da: impl Fn(T) -> T + Send + Sync + 'static,
    ) -> Self {
        Self { a: Arc::new(a), da: Arc::new(da), name: name.into() }
    }

    /// `a = cosh t`.
    pub fn cosh() -> Self {
        Self::new("cosh", |t: T| t.cosh(), |t: T| t.sinh())
    }

    /// `a = sinh t` (valid for `t > 0`).
    pub fn sinh() -> Self {
        Self::new("sinh", |t: T| t.sinh(), |t: T| t.cosh())
    }

    /// `a = a0 (t/t0)^k`.
    pub fn power(a0: T, t0: T, k: T) -> Self {
        Self::new(
            "power",
            move |t: T| a0 * (t / t0).powf(k),
            move |t: T| a0 * k / t0 * (t / t0).powf(k - T::one()),
        )
    }

    pub fn value(&self, t: T) -> T {
        (self.a)(t)
    }

    pub fn derivative(&self, t: T) -> T {
        (self.da)(t)
    }

    pub fn name(&self) -> &str {
        &self.name
    }
}

impl<T> fmt::Debug for ScaleFactor<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ScaleFactor({})", self.name)
    }
}

/// Homogeneous isotropic cosmology in chart `(t, χ, θ, φ)`.
#[derive(Clone, Debug)]
pub struct Friedmann<T> {
    pub model: FriedmannModel,
    pub chart: FriedmannChart,
    pub scale: ScaleFactor<T>,
    pub c: T,
}

impl<T: Real> Friedmann<T> {
    pub fn new(model: FriedmannModel, chart: FriedmannChart, scale: ScaleFactor<T>, c: T) -> Self {
        Self { model, chart, scale, c }
    }

    fn f(&self, chi: T) -> (T, T) {
        match self.model {
            FriedmannModel::Closed => (chi.sin(), chi.cos()),
            FriedmannModel::Open => (chi.sinh(), chi.cosh()),
        }
    }

    fn scale_at(&self, p: &Point<T>) -> Result<(T, T)> {
        if p.dim() != 4 {
            return Err(Error::Shape(format!("Friedmann chart is 4D, got {}", p.dim())));
        }
        let a = self.scale.value(p[0]);
        if !(a > T::zero()) || !a.is_finite() {
            return Err(Error::Region(format!("scale factor a({}) = {} is not positive", p[0], a)));
        }
        Ok((a, self.scale.derivative(p[0])))
    }

    pub fn metric_at(&self, p: &Point<T>) -> Result<Tensor<T>> {
        let (a, _) = self.scale_at(p)?;
        let (f, _) = self.f(p[1]);
        let st = p[2].sin();
        let a2 = a * a;
        let spatial = [a2, a2 * f * f, a2 * f * f * st * st];
        let g00 = match self.chart {
            FriedmannChart::Conformal => a2,
            FriedmannChart::Cosmic => self.c * self.c,
        };
        Ok(Tensor::diagonal(&[g00, -spatial[0], -spatial[1], -spatial[2]]))
    }

    pub fn connection_at(&self, p: &Point<T>) -> Result<Tensor<T>> {
        let (a, da) = self.scale_at(p)?;
        let (f, df) = self.f(p[1]);
        let (st, ct) = (p[2].sin(), p[2].cos());
        let h = da / a;
        // h_αα: spatial metric factors of the unit model.
        let hs = [T::one(), f * f, f * f * st * st];
        let mut g = Tensor::zeros(4, 1, 2);
        match self.chart {
            FriedmannChart::Conformal => {
                g[[0, 0, 0]] = h;
                for k in 1..4 {
                    g[[0, k, k]] = h * hs[k - 1];
                }
            }
            FriedmannChart::Cosmic => {
                for k in 1..4 {
                    g[[0, k, k]] = a * da * hs[k - 1] / (self.c * self.c);
                }
            }
        }
        for k in 1..4 {
            g[[k, 0, k]] = h;
            g[[k, k, 0]] = h;
        }
        g[[1, 2, 2]] = -f * df;
        g[[1, 3, 3]] = -f * df * st * st;
        g[[2, 1, 2]] = df / f;
        g[[2, 2, 1]] = df / f;
        g[[2, 3, 3]] = -st * ct;
        g[[3, 1, 3]] = df / f;
        g[[3, 3, 1]] = df / f;
        g[[3, 2, 3]] = ct / st;
        g[[3, 3, 2]] = ct / st;
        Ok(g)
    }

    pub fn metric(&self) -> MetricField<T> {
        let sig = vec![1, -1, -1, -1];
        MetricField::new(Arc::new(FriedmannMetric(self.clone())), sig).expect("static shape")
    }

    pub fn connection(&self) -> ConnectionField<T> {
        ConnectionField::new(Arc::new(FriedmannConnection(self.clone())), ConnectionKind::LeviCivita)
            .expect("static shape")
    }

    pub fn space(&self) -> MetricAffineSpace<T> {
        MetricAffineSpace::new(self.metric(), self.connection()).expect("matching dimensions")
    }
}

struct FriedmannMetric<T>(Friedmann<T>);

impl<T: Real> TensorField<T> for FriedmannMetric<T> {
    fn dim(&self) -> usize {
        4
    }
    fn shape(&self) -> (usize, usize) {
        (0, 2)
    }
    fn eval(&self, p: &Point<T>) -> Result<Tensor<T>> {
        self.0.metric_at(p)
    }
}

struct FriedmannConnection<T>(Friedmann<T>);

impl<T: Real> TensorField<T> for FriedmannConnection<T> {
    fn dim(&self) -> usize {
        4
    }
    fn shape(&self) -> (usize, usize) {
        (1, 2)
    }
    fn eval(&self, p: &Point<T>) -> Result<Tensor<T>> {
        self.0.connection_at(p)
    }
}
