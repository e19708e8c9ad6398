use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geometry::{
    reconstruct_connection, ConnectionField, ConnectionKind, MetricAffineSpace, MetricField,
};
use crate::scalar::Real;
use crate::tensor::{ConstantField, FieldRef, Point, Tensor, TensorField};

/// Space whose connection is rebuilt from a metric, a prescribed torsion `T^a_cb`
/// and a prescribed nonmetricity `Q_kij`.
#[derive(Clone)]
pub struct SyntheticSpace<T> {
    pub metric: MetricField<T>,
    pub torsion: FieldRef<T>,
    pub nonmetricity: FieldRef<T>,
}

impl<T: Real> SyntheticSpace<T> {
    pub fn new(metric: MetricField<T>, torsion: FieldRef<T>, nonmetricity: FieldRef<T>) -> Result<Self> {
        let n = metric.dim();
        if torsion.shape() != (1, 2) || nonmetricity.shape() != (0, 3) {
            return Err(Error::Shape("torsion must be (1,2) and nonmetricity (0,3)".into()));
        }
        if torsion.dim() != n || nonmetricity.dim() != n {
            return Err(Error::Shape("field dimensions differ from the metric".into()));
        }
        Ok(Self { metric, torsion, nonmetricity })
    }

    pub fn connection(&self) -> ConnectionField<T> {
        ConnectionField::new(Arc::new(Reconstructed(self.clone())), ConnectionKind::General)
            .expect("static shape")
    }

    pub fn space(&self) -> MetricAffineSpace<T> {
        MetricAffineSpace::new(self.metric.clone(), self.connection()).expect("matching dimensions")
    }
}

struct Reconstructed<T>(SyntheticSpace<T>);

impl<T: Real> TensorField<T> for Reconstructed<T> {
    fn dim(&self) -> usize {
        self.0.metric.dim()
    }
    fn shape(&self) -> (usize, usize) {
        (1, 2)
    }
    fn eval(&self, p: &Point<T>) -> Result<Tensor<T>> {
        reconstruct_connection(&self.0.metric, &self.0.torsion, &self.0.nonmetricity, p)
    }
}

/// Flat metric `diag` with constant torsion and no nonmetricity.
pub fn constant_torsion_space<T: Real>(diag: &[T], torsion: Tensor<T>) -> Result<MetricAffineSpace<T>> {
    let n = diag.len();
    let base = super::flat(diag)?;
    let syn = SyntheticSpace::new(
        base.metric.clone(),
        Arc::new(ConstantField(torsion)),
        Arc::new(ConstantField(Tensor::zeros(n, 0, 3))),
    )?;
    Ok(syn.space())
}

/// Torsion with the single independent component `T^k_mn = κ = −T^k_nm`.
pub fn single_torsion<T: Real>(n: usize, k: usize, m: usize, nn: usize, kappa: T) -> Tensor<T> {
    let mut t = Tensor::zeros(n, 1, 2);
    t[[k, m, nn]] = kappa;
    t[[k, nn, m]] = -kappa;
    t
}
