//! Coordinate-definition Lie derivatives, independent of the covariant formulas.

use crate::error::Result;
use crate::scalar::Real;
use crate::tensor::{gradient, Point, Tensor, TensorField};

use super::space::MetricAffineSpace;

/// `L_ξ g_ab = ξ^c ∂_c g_ab + g_cb ∂_a ξ^c + g_ac ∂_b ξ^c`.
pub fn lie_metric_coordinate<T: Real, F: TensorField<T> + ?Sized>(
    space: &MetricAffineSpace<T>,
    xi: &F,
    p: &Point<T>,
) -> Result<Tensor<T>> {
    let n = p.dim();
    let x = xi.eval(p)?;
    let dxi = gradient(xi, p)?;
    let g = space.metric.at(p)?;
    let dg = (0..n).map(|c| space.metric.partial(p, c)).collect::<Result<Vec<_>>>()?;
    Ok(Tensor::from_fn(n, 0, 2, |ix| {
        let (a, b) = (ix[0], ix[1]);
        let mut acc = T::zero();
        for c in 0..n {
            acc += x[[c]] * dg[c][[a, b]] + g[[c, b]] * dxi[a][[c]] + g[[a, c]] * dxi[b][[c]];
        }
        acc
    }))
}

/// `L_ξ Γ^a_bc = ξ^p ∂_p Γ^a_bc − Γ^p_bc ∂_p ξ^a + Γ^a_pc ∂_b ξ^p + Γ^a_bp ∂_c ξ^p + ∂_b ∂_c ξ^a`.
pub fn lie_connection_coordinate<T: Real, F: TensorField<T>>(
    space: &MetricAffineSpace<T>,
    xi: &F,
    p: &Point<T>,
) -> Result<Tensor<T>> {
    let n = p.dim();
    let x = xi.eval(p)?;
    let dxi = gradient(xi, p)?;
    let ddxi = (0..n)
        .map(|b| {
            let pf = crate::tensor::PartialField { inner: xi, axis: b };
            gradient(&pf, p)
        })
        .collect::<Result<Vec<_>>>()?;
    let gamma = space.connection.at(p)?;
    let dgamma = (0..n).map(|k| space.connection.partial(p, k)).collect::<Result<Vec<_>>>()?;
    Ok(Tensor::from_fn(n, 1, 2, |ix| {
        let (a, b, c) = (ix[0], ix[1], ix[2]);
        let mut acc = ddxi[b][c][[a]];
        for q in 0..n {
            acc += x[[q]] * dgamma[q][[a, b, c]] - gamma[[q, b, c]] * dxi[q][[a]]
                + gamma[[a, q, c]] * dxi[b][[q]]
                + gamma[[a, b, q]] * dxi[c][[q]];
        }
        acc
    }))
}
