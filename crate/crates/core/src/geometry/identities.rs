use crate::error::Result;
use crate::scalar::Real;
use crate::tensor::{Point, Tensor, TensorField};

use super::derived::{covariant_derivative, curvature, torsion, TorsionField};
use super::lie::second_covariant_derivative;
use super::space::MetricAffineSpace;

/// Left minus right side of the first Bianchi identity with torsion, stored `[k][j][m][i]`:
///
/// `T^k_ij;m + T^k_mi;j + T^k_jm;i + T^k_pi T^p_jm + T^k_pm T^p_ij + T^k_pj T^p_mi
///  − (R^k_jmi + R^k_ijm + R^k_mij)`.
pub fn bianchi_residual<T: Real>(space: &MetricAffineSpace<T>, p: &Point<T>) -> Result<Tensor<T>> {
    let n = p.dim();
    let r = curvature(space, p)?;
    let t = torsion(space, p)?;
    let tf = TorsionField { connection: space.connection.clone() };
    let dt = covariant_derivative(&tf, &space.connection, p)?;
    Ok(Tensor::from_fn(n, 1, 3, |ix| {
        let (k, j, m, i) = (ix[0], ix[1], ix[2], ix[3]);
        let mut acc = dt[[k, i, j, m]] + dt[[k, m, i, j]] + dt[[k, j, m, i]];
        for q in 0..n {
            acc += t[[k, q, i]] * t[[q, j, m]] + t[[k, q, m]] * t[[q, i, j]] + t[[k, q, j]] * t[[q, m, i]];
        }
        acc - (r[[k, j, m, i]] + r[[k, i, j, m]] + r[[k, m, i, j]])
    }))
}

/// `u^α_;kl − u^α_;lk − R^α_βlk u^β + T^p_lk u^α_;p`, stored `[α][k][l]`.
pub fn commutator_residual<T: Real, F: TensorField<T>>(
    space: &MetricAffineSpace<T>,
    u: F,
    p: &Point<T>,
) -> Result<Tensor<T>> {
    let n = p.dim();
    let x = u.eval(p)?;
    let du = covariant_derivative(&u, &space.connection, p)?;
    let dd = second_covariant_derivative(space, &u, p)?;
    let r = curvature(space, p)?;
    let t = torsion(space, p)?;
    Ok(Tensor::from_fn(n, 1, 2, |ix| {
        let (a, k, l) = (ix[0], ix[1], ix[2]);
        let mut acc = dd[[a, k, l]] - dd[[a, l, k]];
        for b in 0..n {
            acc -= r[[a, b, l, k]] * x[[b]];
            acc += t[[b, l, k]] * du[[a, b]];
        }
        acc
    }))
}

/// Cyclic combination obtained from the second-type Killing condition: the Bianchi
/// residual contracted with `ξ` on its last slot, `B^a_bcp ξ^p`. Vanishes for every `ξ`.
pub fn killing_cyclic_residual<T: Real, F: TensorField<T> + ?Sized>(
    space: &MetricAffineSpace<T>,
    xi: &F,
    p: &Point<T>,
) -> Result<Tensor<T>> {
    let b = bianchi_residual(space, p)?;
    let x = xi.eval(p)?;
    b.contract(&x, &[(3, 0)])
}
