use crate::error::Result;
use crate::geometry::MetricAffineSpace;
use crate::scalar::Real;
use crate::tensor::{Basis, Point, Tensor};

use super::frame::FrameField;

/// Anholonomy object `c^(i)_(a)(b) = e^k_(a) e^l_(b) (∂_l e^(i)_k − ∂_k e^(i)_l)`, frame-indexed.
pub fn anholonomy_object<T: Real>(frame: &FrameField<T>, p: &Point<T>) -> Result<Tensor<T>> {
    let n = frame.dim();
    let e = frame.at(p)?;
    let d: Vec<Vec<T>> = (0..n).map(|ax| frame.dual_partial(p, ax)).collect::<Result<_>>()?;
    // curl[i][k][l] = ∂_l e^(i)_k − ∂_k e^(i)_l
    let curl = |i: usize, k: usize, l: usize| d[l][i * n + k] - d[k][i * n + l];
    let out = Tensor::from_fn(n, 1, 2, |ix| {
        let (i, a, b) = (ix[0], ix[1], ix[2]);
        let mut acc = T::zero();
        for k in 0..n {
            for l in 0..n {
                acc += e.e(k, a) * e.e(l, b) * curl(i, k, l);
            }
        }
        acc
    });
    Ok(out.with_basis(Basis::Frame))
}

/// Commutator coefficients from `[e_(a), e_(b)] = c^(m)_(a)(b) e_(m)`, computed from
/// derivatives of the frame vectors (independent of [`anholonomy_object`]).
pub fn commutator_coefficients<T: Real>(frame: &FrameField<T>, p: &Point<T>) -> Result<Tensor<T>> {
    let n = frame.dim();
    let e = frame.at(p)?;
    let d: Vec<Vec<T>> = (0..n).map(|ax| frame.vector_partial(p, ax)).collect::<Result<_>>()?;
    let out = Tensor::from_fn(n, 1, 2, |ix| {
        let (m, a, b) = (ix[0], ix[1], ix[2]);
        let mut acc = T::zero();
        for l in 0..n {
            let mut bracket = T::zero();
            for k in 0..n {
                bracket += e.e(k, a) * d[k][b * n + l] - e.e(k, b) * d[k][a * n + l];
            }
            acc += e.e_dual(m, l) * bracket;
        }
        acc
    });
    Ok(out.with_basis(Basis::Frame))
}

/// Frame-indexed connection `Γ^(k)_(l)(p) = e^(k)_i Γ^i_jq e^j_(l) e^q_(p) − e^j_(l) ∂_(p) e^(k)_j`,
/// with `∂_(p) = e^q_(p) ∂_q`.
pub fn anholonomic_connection<T: Real>(
    space: &MetricAffineSpace<T>,
    frame: &FrameField<T>,
    p: &Point<T>,
) -> Result<Tensor<T>> {
    let n = frame.dim();
    let e = frame.at(p)?;
    let gamma = space.connection.at(p)?;
    let d: Vec<Vec<T>> = (0..n).map(|ax| frame.dual_partial(p, ax)).collect::<Result<_>>()?;
    let out = Tensor::from_fn(n, 1, 2, |ix| {
        let (k, l, pp) = (ix[0], ix[1], ix[2]);
        let mut acc = T::zero();
        for i in 0..n {
            for j in 0..n {
                for q in 0..n {
                    acc += e.e_dual(k, i) * gamma[[i, j, q]] * e.e(j, l) * e.e(q, pp);
                    acc -= e.e(j, l) * e.e(q, pp) * d[q][k * n + j];
                }
            }
        }
        acc
    });
    Ok(out.with_basis(Basis::Frame))
}
