use crate::error::Result;
use crate::scalar::Real;
use crate::tensor::{Point, Tensor, TensorField};

use super::derived::{
    covariant_derivative, curvature, metric_covariant_derivative, torsion, CovariantDerivativeField,
    TorsionField,
};
use super::space::MetricAffineSpace;

/// `ξ^a_;b` stored `[a][b]`.
fn first<T: Real, F: TensorField<T> + ?Sized>(
    space: &MetricAffineSpace<T>,
    xi: &F,
    p: &Point<T>,
) -> Result<Tensor<T>> {
    covariant_derivative(xi, &space.connection, p)
}

/// `ξ^a_;bc = ∇_c∇_b ξ^a` stored `[a][b][c]`.
pub fn second_covariant_derivative<T: Real, F: TensorField<T>>(
    space: &MetricAffineSpace<T>,
    xi: F,
    p: &Point<T>,
) -> Result<Tensor<T>> {
    let inner = CovariantDerivativeField { inner: xi, connection: space.connection.clone() };
    covariant_derivative(&inner, &space.connection, p)
}

/// `L_ξ g_ab = ξ^k_;a g_kb + ξ^k_;b g_ka + T^l_ka g_lb ξ^k + T^l_kb g_la ξ^k + g_ab;k ξ^k`.
pub fn lie_derivative_metric<T: Real, F: TensorField<T> + ?Sized>(
    space: &MetricAffineSpace<T>,
    xi: &F,
    p: &Point<T>,
) -> Result<Tensor<T>> {
    let n = p.dim();
    let x = xi.eval(p)?;
    let dx = first(space, xi, p)?;
    let g = space.metric.at(p)?;
    let t = torsion(space, p)?;
    let dg = metric_covariant_derivative(space, p)?;
    Ok(Tensor::from_fn(n, 0, 2, |ix| {
        let (a, b) = (ix[0], ix[1]);
        let mut acc = T::zero();
        for k in 0..n {
            acc += dx[[k, a]] * g[[k, b]] + dx[[k, b]] * g[[k, a]] + dg[[a, b, k]] * x[[k]];
            for l in 0..n {
                acc += (t[[l, k, a]] * g[[l, b]] + t[[l, k, b]] * g[[l, a]]) * x[[k]];
            }
        }
        acc
    }))
}

/// `L_ξ Γ^a_bc = ξ^a_;bc − R^a_bcp ξ^p − T^a_bp;c ξ^p − T^a_be ξ^e_;c`.
pub fn lie_derivative_connection<T: Real, F: TensorField<T>>(
    space: &MetricAffineSpace<T>,
    xi: F,
    p: &Point<T>,
) -> Result<Tensor<T>> {
    let parts = KillingParts::new(space, xi, p)?;
    Ok(parts.assemble())
}

/// Torsion-free form `L_ξ Γ^a_bc = −R^a_cbp ξ^p + ξ^a_;cb`.
pub fn lie_derivative_connection_riemann<T: Real, F: TensorField<T>>(
    space: &MetricAffineSpace<T>,
    xi: F,
    p: &Point<T>,
) -> Result<Tensor<T>> {
    let x = xi.eval(p)?;
    let r = curvature(space, p)?;
    let dd = second_covariant_derivative(space, xi, p)?;
    let n = p.dim();
    Ok(Tensor::from_fn(n, 1, 2, |ix| {
        let (a, b, c) = (ix[0], ix[1], ix[2]);
        let mut acc = dd[[a, c, b]];
        for q in 0..n {
            acc -= r[[a, c, b, q]] * x[[q]];
        }
        acc
    }))
}

struct KillingParts<T> {
    x: Tensor<T>,
    dx: Tensor<T>,
    dd: Tensor<T>,
    r: Tensor<T>,
    t: Tensor<T>,
    dt: Tensor<T>,
}

impl<T: Real> KillingParts<T> {
    fn new<F: TensorField<T>>(space: &MetricAffineSpace<T>, xi: F, p: &Point<T>) -> Result<Self> {
        let x = xi.eval(p)?;
        let dx = first(space, &xi, p)?;
        let dd = second_covariant_derivative(space, &xi, p)?;
        let r = curvature(space, p)?;
        let t = torsion(space, p)?;
        let tf = TorsionField { connection: space.connection.clone() };
        let dt = covariant_derivative(&tf, &space.connection, p)?;
        Ok(Self { x, dx, dd, r, t, dt })
    }

    fn assemble(&self) -> Tensor<T> {
        let n = self.x.dim();
        Tensor::from_fn(n, 1, 2, |ix| {
            let (a, b, c) = (ix[0], ix[1], ix[2]);
            let mut acc = self.dd[[a, b, c]];
            for q in 0..n {
                acc -= self.r[[a, b, c, q]] * self.x[[q]];
                acc -= self.dt[[a, b, q, c]] * self.x[[q]];
                acc -= self.t[[a, b, q]] * self.dx[[q, c]];
            }
            acc
        })
    }
}

/// Killing residual of the first type: `L_ξ g_ab` (zero iff ξ is Killing).
pub fn killing_residual<T: Real, F: TensorField<T> + ?Sized>(
    space: &MetricAffineSpace<T>,
    xi: &F,
    p: &Point<T>,
) -> Result<Tensor<T>> {
    lie_derivative_metric(space, xi, p)
}

/// Second-type residual `ξ^a_;bc − R^a_bcp ξ^p − T^a_bp;c ξ^p − T^a_bp ξ^p_;c`.
///
/// With the index conventions used here this equals `+L_ξ Γ^a_bc`.
pub fn killing2_residual<T: Real, F: TensorField<T>>(
    space: &MetricAffineSpace<T>,
    xi: F,
    p: &Point<T>,
) -> Result<Tensor<T>> {
    let parts = KillingParts::new(space, xi, p)?;
    let n = p.dim();
    Ok(Tensor::from_fn(n, 1, 2, |ix| {
        let (a, b, c) = (ix[0], ix[1], ix[2]);
        let mut acc = parts.dd[[a, b, c]];
        for q in 0..n {
            acc -= parts.r[[a, b, c, q]] * parts.x[[q]]
                + parts.dt[[a, b, q, c]] * parts.x[[q]]
                + parts.t[[a, b, q]] * parts.dx[[q, c]];
        }
        acc
    }))
}
