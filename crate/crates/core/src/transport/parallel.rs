use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geometry::{cartan_connection, ConnectionField, ConnectionKind, MetricAffineSpace};
use crate::ode::{integrate, IntegratorConfig, Problem};
use crate::scalar::Real;
use crate::tensor::{FieldRef, SumField, TensorField};

use super::state::{gamma_contract, Curve};

/// Which connection drives a transport.
#[derive(Clone)]
pub enum ConnectionChoice<T> {
    /// The space's own connection `Γ`.
    Base,
    /// The Cartan connection `Γ̂ = Γ − Γ(C)`.
    Cartan,
    /// `Γ̄ = Γ + A` for a `(1,2)` shift field `A`.
    Shifted(FieldRef<T>),
}

pub fn resolve_connection<T: Real>(space: &MetricAffineSpace<T>, choice: &ConnectionChoice<T>) -> Result<ConnectionField<T>> {
    match choice {
        ConnectionChoice::Base => Ok(space.connection.clone()),
        ConnectionChoice::Cartan => cartan_connection(space),
        ConnectionChoice::Shifted(a) => {
            if a.shape() != (1, 2) || a.dim() != space.dim() {
                return Err(Error::Shape("connection shift must be a (1,2) field of the space's dimension".into()));
            }
            let one = T::one();
            let sum = SumField::new(vec![(one, space.connection.field().clone()), (one, a.clone())]);
            ConnectionField::new(Arc::new(sum), ConnectionKind::General)
        }
    }
}

/// Re-reports a step failure at the curve's position rather than at the state.
pub(crate) fn locate<T: Real>(err: Error, curve: &Curve<T>) -> Error {
    match err {
        Error::StepFailure { s, reason, .. } => {
            let x = curve
                .position(T::lit(s))
                .map(|x| x.iter().map(|v| v.to_f64_lossy()).collect())
                .unwrap_or_default();
            Error::StepFailure { s, x, reason }
        }
        other => other,
    }
}

/// Transports several vectors at once along `curve` by `dv^a/ds = −Γ^a_bc v^b dx^c/ds`.
///
/// Returns, for every entry of `outputs`, the transported vectors.
pub fn transport_vectors<T: Real>(
    space: &MetricAffineSpace<T>,
    curve: &Curve<T>,
    vectors: &[Vec<T>],
    choice: &ConnectionChoice<T>,
    s0: T,
    outputs: &[T],
    cfg: &IntegratorConfig<T>,
) -> Result<Vec<Vec<Vec<T>>>> {
    let n = space.dim();
    if curve.dim() != n || vectors.iter().any(|v| v.len() != n) {
        return Err(Error::Shape(format!("curve and vectors must have dimension {n}")));
    }
    let conn = resolve_connection(space, choice)?;
    let m = vectors.len();
    let y0: Vec<T> = vectors.concat();
    let c = curve.clone();
    let mut problem = Problem {
        rhs: move |s: T, y: &[T], dy: &mut [T]| {
            let p = c.point(s)?;
            let u = c.velocity(s)?;
            let gamma = conn.at(&p)?;
            for k in 0..m {
                let g = gamma_contract(&gamma, &y[k * n..(k + 1) * n], &u);
                for a in 0..n {
                    dy[k * n + a] = -g[a];
                }
            }
            Ok(())
        },
        location_len: 0,
    };
    let (out, _) = integrate(&mut problem, s0, &y0, outputs, cfg).map_err(|e| locate(e, curve))?;
    Ok(out.into_iter().map(|y| y.chunks(n).map(|c| c.to_vec()).collect()).collect())
}

/// Parallel transport of one vector; `v(s)` at every output parameter.
pub fn parallel_transport<T: Real>(
    space: &MetricAffineSpace<T>,
    curve: &Curve<T>,
    v0: &[T],
    choice: &ConnectionChoice<T>,
    s0: T,
    outputs: &[T],
    cfg: &IntegratorConfig<T>,
) -> Result<Vec<Vec<T>>> {
    let out = transport_vectors(space, curve, &[v0.to_vec()], choice, s0, outputs, cfg)?;
    Ok(out.into_iter().map(|mut vs| vs.swap_remove(0)).collect())
}

/// Change `v(s1) − v(s0)` after transport around a closed curve.
pub fn holonomy<T: Real>(
    space: &MetricAffineSpace<T>,
    curve: &Curve<T>,
    v0: &[T],
    choice: &ConnectionChoice<T>,
    s0: T,
    s1: T,
    cfg: &IntegratorConfig<T>,
) -> Result<Vec<T>> {
    let v = parallel_transport(space, curve, v0, choice, s0, &[s1], cfg)?;
    Ok(v[0].iter().zip(v0).map(|(a, b)| *a - *b).collect())
}
