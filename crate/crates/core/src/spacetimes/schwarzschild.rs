use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geometry::{riemann_space, ConnectionField, ConnectionKind, MetricAffineSpace, MetricField};
use crate::scalar::Real;
use crate::tensor::{Point, Tensor, TensorField};

/// Exterior Schwarzschild chart `(t, r, φ, θ)`, `φ` the polar angle:
/// `ds² = (r−rg)/r c² dt² − r/(r−rg) dr² − r² dφ² − r² sin²φ dθ²`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Schwarzschild<T> {
    pub rg: T,
    pub c: T,
}

impl<T: Real> Schwarzschild<T> {
    pub fn new(rg: T, c: T) -> Result<Self> {
        if !(rg >= T::zero()) || !(c > T::zero()) {
            return Err(Error::InvalidParameter("need rg >= 0 and c > 0".into()));
        }
        Ok(Self { rg, c })
    }

    /// `rg = 2GM/c²`.
    pub fn from_mass(mass: T, g: T, c: T) -> Result<Self> {
        Self::new(T::lit(2.0) * g * mass / (c * c), c)
    }

    pub fn check_region(&self, p: &Point<T>) -> Result<()> {
        if p.dim() != 4 {
            return Err(Error::Shape(format!("Schwarzschild chart is 4D, got {}", p.dim())));
        }
        if !(p[1] > self.rg) {
            return Err(Error::Region(format!(
                "r = {} is not outside rg = {}",
                p[1], self.rg
            )));
        }
        Ok(())
    }

    pub fn metric_at(&self, p: &Point<T>) -> Result<Tensor<T>> {
        self.check_region(p)?;
        let (r, phi) = (p[1], p[2]);
        let f = (r - self.rg) / r;
        let s = phi.sin();
        Ok(Tensor::diagonal(&[f * self.c * self.c, -T::one() / f, -r * r, -r * r * s * s]))
    }

    pub fn metric(&self) -> MetricField<T> {
        MetricField::new(Arc::new(SchwarzschildMetric(*self)), vec![1, -1, -1, -1])
            .expect("static shape")
    }

    /// Analytic connection with analytic derivatives.
    pub fn connection(&self) -> ConnectionField<T> {
        ConnectionField::new(Arc::new(SchwarzschildConnection(*self)), ConnectionKind::LeviCivita)
            .expect("static shape")
    }

    pub fn space(&self) -> MetricAffineSpace<T> {
        MetricAffineSpace::new(self.metric(), self.connection()).expect("matching dimensions")
    }

    /// Same metric with Christoffel symbols computed by finite differences.
    pub fn space_fd(&self) -> MetricAffineSpace<T> {
        riemann_space(self.metric()).expect("valid metric")
    }
}

struct SchwarzschildMetric<T>(Schwarzschild<T>);

impl<T: Real> TensorField<T> for SchwarzschildMetric<T> {
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

struct SchwarzschildConnection<T>(Schwarzschild<T>);

impl<T: Real> TensorField<T> for SchwarzschildConnection<T> {
    fn dim(&self) -> usize {
        4
    }
    fn shape(&self) -> (usize, usize) {
        (1, 2)
    }
    fn eval(&self, p: &Point<T>) -> Result<Tensor<T>> {
        schwarzschild_connection(&self.0, p)
    }
    fn partial(&self, p: &Point<T>, axis: usize) -> Result<Tensor<T>> {
        schwarzschild_connection_partial(&self.0, p, axis)
    }
}

/// Christoffel symbols of the Schwarzschild chart.
pub fn schwarzschild_connection<T: Real>(space: &Schwarzschild<T>, p: &Point<T>) -> Result<Tensor<T>> {
    space.check_region(p)?;
    let (rg, c) = (space.rg, space.c);
    let (r, phi) = (p[1], p[2]);
    let half = T::lit(0.5);
    let (s, co) = (phi.sin(), phi.cos());
    let mut g = Tensor::zeros(4, 1, 2);
    let g001 = half * rg / (r * (r - rg));
    g[[0, 0, 1]] = g001;
    g[[0, 1, 0]] = g001;
    g[[1, 0, 0]] = half * c * c * rg * (r - rg) / (r * r * r);
    g[[1, 1, 1]] = -g001;
    g[[1, 2, 2]] = -(r - rg);
    g[[1, 3, 3]] = -(r - rg) * s * s;
    g[[2, 1, 2]] = T::one() / r;
    g[[2, 2, 1]] = T::one() / r;
    g[[2, 3, 3]] = -s * co;
    g[[3, 1, 3]] = T::one() / r;
    g[[3, 3, 1]] = T::one() / r;
    g[[3, 2, 3]] = co / s;
    g[[3, 3, 2]] = co / s;
    Ok(g)
}

fn schwarzschild_connection_partial<T: Real>(
    space: &Schwarzschild<T>,
    p: &Point<T>,
    axis: usize,
) -> Result<Tensor<T>> {
    space.check_region(p)?;
    let (rg, c) = (space.rg, space.c);
    let (r, phi) = (p[1], p[2]);
    let half = T::lit(0.5);
    let two = T::lit(2.0);
    let (s, co) = (phi.sin(), phi.cos());
    let mut d = Tensor::zeros(4, 1, 2);
    match axis {
        1 => {
            let q = r * (r - rg);
            let d001 = -half * rg * (two * r - rg) / (q * q);
            d[[0, 0, 1]] = d001;
            d[[0, 1, 0]] = d001;
            d[[1, 0, 0]] = half * c * c * rg * (T::lit(3.0) * rg - two * r) / (r * r * r * r);
            d[[1, 1, 1]] = -d001;
            d[[1, 2, 2]] = -T::one();
            d[[1, 3, 3]] = -s * s;
            let inv2 = -T::one() / (r * r);
            d[[2, 1, 2]] = inv2;
            d[[2, 2, 1]] = inv2;
            d[[3, 1, 3]] = inv2;
            d[[3, 3, 1]] = inv2;
        }
        2 => {
            d[[1, 3, 3]] = -(r - rg) * two * s * co;
            d[[2, 3, 3]] = -(co * co - s * s);
            let dcot = -T::one() / (s * s);
            d[[3, 2, 3]] = dcot;
            d[[3, 3, 2]] = dcot;
        }
        0 | 3 => {}
        _ => return Err(Error::Shape(format!("axis {axis} out of range for dimension 4"))),
    }
    Ok(d)
}
