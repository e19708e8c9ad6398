use crate::error::{Error, Result};
use crate::geometry::{metric_covariant_derivative, MetricAffineSpace};
use crate::ode::{integrate, IntegratorConfig, Problem};
use crate::scalar::Real;
use crate::tensor::Point;

use super::parallel::{resolve_connection, ConnectionChoice};
use super::state::{gamma_contract, quadratic_form, TrajectoryState};

/// Integrates `dx/ds = u`, `du/ds = f(s, x, u)` and samples at `outputs`.
pub(crate) fn integrate_trajectory<T: Real>(
    x0: &Point<T>,
    u0: &[T],
    s0: T,
    outputs: &[T],
    cfg: &IntegratorConfig<T>,
    mut accel: impl FnMut(T, &Point<T>, &[T]) -> Result<Vec<T>>,
) -> Result<Vec<TrajectoryState<T>>> {
    let n = x0.dim();
    if u0.len() != n {
        return Err(Error::Shape(format!("tangent has {} components, expected {n}", u0.len())));
    }
    let mut y0 = x0.coords().to_vec();
    y0.extend_from_slice(u0);
    let mut problem = Problem {
        rhs: |s: T, y: &[T], dy: &mut [T]| {
            let p = Point::new(y[..n].to_vec())?;
            let a = accel(s, &p, &y[n..])?;
            dy[..n].copy_from_slice(&y[n..]);
            dy[n..].copy_from_slice(&a);
            Ok(())
        },
        location_len: n,
    };
    let (out, _) = integrate(&mut problem, s0, &y0, outputs, cfg)?;
    outputs
        .iter()
        .zip(out)
        .map(|(&s, y)| Ok(TrajectoryState::new(s, Point::new(y[..n].to_vec())?, y[n..].to_vec())))
        .collect()
}

fn check_nonzero<T: Real>(u0: &[T]) -> Result<()> {
    if u0.iter().all(|v| *v == T::zero()) {
        return Err(Error::InvalidParameter("initial tangent must be nonzero".into()));
    }
    Ok(())
}

/// Autoparallel curve of the chosen connection: `du^k/ds = −Γ^k_ij u^i u^j`.
pub fn autoparallel<T: Real>(
    space: &MetricAffineSpace<T>,
    choice: &ConnectionChoice<T>,
    x0: &Point<T>,
    u0: &[T],
    outputs: &[T],
    cfg: &IntegratorConfig<T>,
) -> Result<Vec<TrajectoryState<T>>> {
    check_nonzero(u0)?;
    let conn = resolve_connection(space, choice)?;
    integrate_trajectory(x0, u0, T::zero(), outputs, cfg, |_, p, u| {
        let g = conn.at(p)?;
        Ok(gamma_contract(&g, u, u).into_iter().map(|v| -v).collect())
    })
}

/// `½ g^il (g_kj;i − g_ik;j − g_ij;k) u^k u^j`: the extremal's deviation from autoparallel.
pub fn extremal_correction<T: Real>(space: &MetricAffineSpace<T>, p: &Point<T>, u: &[T]) -> Result<Vec<T>> {
    let n = p.dim();
    let dg = metric_covariant_derivative(space, p)?;
    let gi = space.metric.inverse(p)?;
    // Lowered: w_i = ½ (g_kj;i − g_ik;j − g_ij;k) u^k u^j.
    let mut w = vec![T::zero(); n];
    for (i, wi) in w.iter_mut().enumerate() {
        let mut acc = T::zero();
        for k in 0..n {
            for j in 0..n {
                acc += (dg[[k, j, i]] - dg[[i, k, j]] - dg[[i, j, k]]) * u[k] * u[j];
            }
        }
        *wi = T::lit(0.5) * acc;
    }
    Ok((0..n).map(|l| (0..n).fold(T::zero(), |s, i| s + gi[[l, i]] * w[i])).collect())
}

/// Extremal line: `Du^l/ds = ½ g^il (g_kj;i − g_ik;j − g_ij;k) u^k u^j` under the space's connection.
///
/// The initial tangent must not be null; its length `g_ij u^i u^j` is conserved.
pub fn extremal<T: Real>(
    space: &MetricAffineSpace<T>,
    x0: &Point<T>,
    u0: &[T],
    outputs: &[T],
    cfg: &IntegratorConfig<T>,
) -> Result<Vec<TrajectoryState<T>>> {
    check_nonzero(u0)?;
    let g0 = space.metric.at(x0)?;
    let norm2 = quadratic_form(&g0, u0, u0);
    let scale = g0.max_abs() * u0.iter().fold(T::zero(), |a, v| a + *v * *v);
    if !(norm2.abs() > T::lit(1e-12) * scale) {
        return Err(Error::InvalidParameter("extremal needs a non-null initial tangent".into()));
    }
    integrate_trajectory(x0, u0, T::zero(), outputs, cfg, |_, p, u| {
        let g = space.connection.at(p)?;
        let base = gamma_contract(&g, u, u);
        let corr = extremal_correction(space, p, u)?;
        Ok(base.iter().zip(&corr).map(|(b, c)| *c - *b).collect())
    })
}
