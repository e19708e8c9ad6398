use crate::error::{Error, Result};
use crate::scalar::Real;

use super::{Point, Tensor, TensorField};

/// Finite-difference configuration: `h = rel_step * max(1, |x_axis|)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FdConfig<T> {
    pub rel_step: T,
}

impl<T: Real> Default for FdConfig<T> {
    fn default() -> Self {
        Self { rel_step: T::fd_step() }
    }
}

impl<T: Real> FdConfig<T> {
    /// Step for coordinate value `x`, rounded so that `x + h` is exactly representable offset.
    pub fn step(&self, x: T) -> T {
        let h = self.rel_step * x.abs().max(T::one());
        (x + h) - x
    }
}

/// Central difference at `h` and `h/2` combined by one Richardson level.
///
/// `f` maps an offset along the axis to a flat list of values.
pub fn richardson<T: Real>(
    mut f: impl FnMut(T) -> Result<Vec<T>>,
    h: T,
) -> Result<Vec<T>> {
    let two = T::lit(2.0);
    let half = h / two;
    let (fp, fm) = (f(h)?, f(-h)?);
    let (gp, gm) = (f(half)?, f(-half)?);
    let four = T::lit(4.0);
    let three = T::lit(3.0);
    Ok((0..fp.len())
        .map(|k| {
            let d1 = (fp[k] - fm[k]) / (two * h);
            let d2 = (gp[k] - gm[k]) / h;
            (four * d2 - d1) / three
        })
        .collect())
}

/// `∂F/∂x^axis` at `p` by extrapolated central differences with the default step.
pub fn partial_derivative<T: Real, F: TensorField<T> + ?Sized>(
    field: &F,
    p: &Point<T>,
    axis: usize,
) -> Result<Tensor<T>> {
    partial_derivative_with(field, p, axis, &FdConfig::default())
}

pub fn partial_derivative_with<T: Real, F: TensorField<T> + ?Sized>(
    field: &F,
    p: &Point<T>,
    axis: usize,
    cfg: &FdConfig<T>,
) -> Result<Tensor<T>> {
    if axis >= p.dim() {
        return Err(Error::Shape(format!("axis {axis} out of range for dimension {}", p.dim())));
    }
    let h = cfg.step(p[axis]);
    let mut template: Option<Tensor<T>> = None;
    let values = richardson(
        |dh| {
            let t = field.eval(&p.shifted(axis, dh))?;
            if !t.is_finite() {
                return Err(Error::Differentiation { axis });
            }
            let data = t.data().to_vec();
            template.get_or_insert(t);
            Ok(data)
        },
        h,
    )?;
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::Differentiation { axis });
    }
    let t = template.expect("richardson evaluates at least once");
    let (u, l) = t.shape();
    Ok(Tensor::from_vec(t.dim(), u, l, values)?.with_basis(t.basis()))
}

/// Derivative of a vector-valued function of one real parameter.
pub fn derivative_1d<T: Real>(
    f: impl Fn(T) -> Result<Vec<T>>,
    s: T,
    cfg: &FdConfig<T>,
) -> Result<Vec<T>> {
    let h = cfg.step(s);
    richardson(|dh| f(s + dh), h)
}
