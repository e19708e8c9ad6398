use crate::error::{Error, Result};
use crate::geometry::{cartan_connection, covariant_derivative, torsion, MetricAffineSpace};
use crate::ode::IntegratorConfig;
use crate::scalar::Real;
use crate::tensor::{FieldRef, Point, Tensor, TensorField};

use super::geodesic::integrate_trajectory;
use super::state::{gamma_contract, TrajectoryState};

/// External potential acting on a point particle of mass `m`.
#[derive(Clone)]
pub enum Force<T> {
    None,
    /// Scalar potential `U` (a `(0,0)` field).
    Scalar { potential: FieldRef<T>, mass: T, c: T },
    /// Covariant vector potential `A_l` (a `(0,1)` field) and charge `e`.
    Vector { potential: FieldRef<T>, charge: T, mass: T, c: T },
}

impl<T: Real> Force<T> {
    fn check(&self, n: usize) -> Result<()> {
        let (field, mass, shape) = match self {
            Force::None => return Ok(()),
            Force::Scalar { potential, mass, .. } => (potential, *mass, (0, 0)),
            Force::Vector { potential, mass, .. } => (potential, *mass, (0, 1)),
        };
        if !(mass > T::zero()) {
            return Err(Error::InvalidParameter(format!("mass must be positive, got {mass}")));
        }
        if field.shape() != shape || field.dim() != n {
            return Err(Error::Shape(format!("potential must be a {shape:?} field of dimension {n}")));
        }
        Ok(())
    }
}

/// Field strength `F_dc = A_d;c − A_c;d + S^p_dc A_p` with `S^p_dc = Γ^p_dc − Γ^p_cd = −T^p_dc`.
///
/// The connection terms cancel, so `F` is invariant under `A → A + ∂Λ`.
pub fn field_strength<T: Real, F: TensorField<T> + ?Sized>(
    space: &MetricAffineSpace<T>,
    potential: &F,
    p: &Point<T>,
) -> Result<Tensor<T>> {
    let n = p.dim();
    let a = potential.eval(p)?;
    let da = covariant_derivative(potential, &space.connection, p)?;
    let t = torsion(space, p)?;
    Ok(Tensor::from_fn(n, 0, 2, |ix| {
        let (d, c) = (ix[0], ix[1]);
        let mut acc = da[[d, c]] - da[[c, d]];
        for q in 0..n {
            acc -= t[[q, d, c]] * a[[q]];
        }
        acc
    }))
}

/// Trajectory under Cartan transport with a force:
///
/// - scalar: `du^l/ds = −Γ̂^l_ij u^i u^j + (u⁰/(mc)) g^il ∂_i U`;
/// - vector: `du^j/ds = −Γ̂^j_kl u^k u^l + (e/(mc²)) g^ij F_li u^l`.
///
/// `u⁰` is the tangent's time component in the active chart.
pub fn forced_motion<T: Real>(
    space: &MetricAffineSpace<T>,
    x0: &Point<T>,
    u0: &[T],
    force: &Force<T>,
    outputs: &[T],
    cfg: &IntegratorConfig<T>,
) -> Result<Vec<TrajectoryState<T>>> {
    let n = space.dim();
    force.check(n)?;
    let hat = cartan_connection(space)?;
    integrate_trajectory(x0, u0, T::zero(), outputs, cfg, |_, p, u| {
        let g = hat.at(p)?;
        let mut du: Vec<T> = gamma_contract(&g, u, u).into_iter().map(|v| -v).collect();
        match force {
            Force::None => {}
            Force::Scalar { potential, mass, c } => {
                let gi = space.metric.inverse(p)?;
                let coef = u[0] / (*mass * *c);
                let grad: Vec<T> = (0..n).map(|i| Ok(potential.partial(p, i)?.data()[0])).collect::<Result<_>>()?;
                for (l, d) in du.iter_mut().enumerate() {
                    *d += coef * (0..n).fold(T::zero(), |s, i| s + gi[[i, l]] * grad[i]);
                }
            }
            Force::Vector { potential, charge, mass, c } => {
                let gi = space.metric.inverse(p)?;
                let f = field_strength(space, potential, p)?;
                let coef = *charge / (*mass * *c * *c);
                for (j, d) in du.iter_mut().enumerate() {
                    let mut acc = T::zero();
                    for i in 0..n {
                        for l in 0..n {
                            acc += gi[[i, j]] * f[[l, i]] * u[l];
                        }
                    }
                    *d += coef * acc;
                }
            }
        }
        Ok(du)
    })
}
