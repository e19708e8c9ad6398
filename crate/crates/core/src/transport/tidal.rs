use crate::error::{Error, Result};
use crate::geometry::{covariant_derivative, curvature, lie_derivative_connection, MetricAffineSpace, TorsionField};
use crate::ode::{integrate, IntegratorConfig, Problem};
use crate::scalar::Real;
use crate::tensor::{FnField, Point, Tensor, TensorField};

use super::parallel::{resolve_connection, ConnectionChoice};
use super::state::gamma_contract;

/// Prescribed acceleration `a(s)` of an observer, `D̄v/ds = a`.
pub type Acceleration<'a, T> = &'a (dyn Fn(T) -> Vec<T> + Sync);

/// Initial data of a deviation problem.
#[derive(Clone, Debug, PartialEq)]
pub struct DeviationSetup<T> {
    pub x0: Point<T>,
    pub v0: Vec<T>,
    /// Initial `δx`.
    pub dx0: Vec<T>,
    /// Initial `D̄δx/ds`.
    pub rate0: Vec<T>,
}

/// Base trajectory and deviation at one parameter value.
#[derive(Clone, Debug, PartialEq)]
pub struct DeviationSample<T> {
    pub s: T,
    pub x: Point<T>,
    pub v: Vec<T>,
    pub dx: Vec<T>,
    /// `D̄δx/ds`.
    pub rate: Vec<T>,
}

fn zero_accel<T: Real>(n: usize) -> impl Fn(T) -> Vec<T> + Sync {
    move |_| vec![T::zero(); n]
}

/// Right-hand side pieces of the tidal equation at one point.
struct TidalTerms<T> {
    /// `D̄²δx/ds²`.
    accel: Vec<T>,
    /// `dv/ds` of the base observer.
    dv: Vec<T>,
    /// `dδx/ds`.
    ddx: Vec<T>,
    /// `d(D̄δx/ds)/ds`.
    drate: Vec<T>,
}

#[allow(clippy::too_many_arguments)]
fn tidal_terms<T: Real>(
    space: &MetricAffineSpace<T>,
    torsion_field: &TorsionField<T>,
    p: &Point<T>,
    v: &[T],
    dx: &[T],
    w: &[T],
    a1: &[T],
    a2: &[T],
) -> Result<TidalTerms<T>> {
    let n = p.dim();
    let gamma = space.connection.at(p)?;
    let t = torsion_field.eval(p)?;
    let r = curvature(space, p)?;
    let dt = covariant_derivative(torsion_field, &space.connection, p)?;
    let gvv = gamma_contract(&gamma, v, v);
    let dv: Vec<T> = (0..n).map(|i| a1[i] - gvv[i]).collect();
    let gdx = gamma_contract(&gamma, dx, v);
    let ddx: Vec<T> = (0..n).map(|i| w[i] - gdx[i]).collect();
    let ga1 = gamma_contract(&gamma, dx, a1);
    let gw = gamma_contract(&gamma, w, v);
    let mut accel = vec![T::zero(); n];
    for i in 0..n {
        // T^i_lk w^k v^l + (R^i_lkm + T^i_lm;k) δx^m v^k v^l + a2 − a1 + Γ^i_ml δx^m a1^l
        let mut acc = a2[i] - a1[i] + ga1[i];
        for l in 0..n {
            for k in 0..n {
                acc += t[[i, l, k]] * w[k] * v[l];
                for m in 0..n {
                    acc += (r[[i, l, k, m]] + dt[[i, l, m, k]]) * dx[m] * v[k] * v[l];
                }
            }
        }
        accel[i] = acc;
    }
    let drate = (0..n).map(|i| accel[i] - gw[i]).collect();
    Ok(TidalTerms { accel, dv, ddx, drate })
}

/// Right-hand side `D̄²δx/ds²` of the tidal equation at one point (see [`tidal_deviation`]).
#[allow(clippy::too_many_arguments)]
pub fn tidal_acceleration<T: Real>(
    space: &MetricAffineSpace<T>,
    choice: &ConnectionChoice<T>,
    x: &Point<T>,
    v: &[T],
    dx: &[T],
    rate: &[T],
    a1: &[T],
    a2: &[T],
) -> Result<Vec<T>> {
    let sp = space.with_connection(resolve_connection(space, choice)?)?;
    let tf = TorsionField { connection: sp.connection.clone() };
    Ok(tidal_terms(&sp, &tf, x, v, dx, rate, a1, a2)?.accel)
}

/// Integrates the tidal equation for `δx` together with the base trajectory:
///
/// `D̄²δx^i/ds² = T^i_lk (D̄δx^k/ds) v^l + (R^i_lkm + T^i_lm;k) δx^m v^k v^l + a₂ − a₁ + Γ^i_ml δx^m a₁^l`
///
/// with `D̄δx/ds = dδx/ds + Γ^i_kl δx^k v^l`. `a₁`, `a₂` default to zero (geodesic pair).
#[allow(clippy::too_many_arguments)]
pub fn tidal_deviation<T: Real>(
    space: &MetricAffineSpace<T>,
    choice: &ConnectionChoice<T>,
    setup: &DeviationSetup<T>,
    a1: Option<Acceleration<'_, T>>,
    a2: Option<Acceleration<'_, T>>,
    outputs: &[T],
    cfg: &IntegratorConfig<T>,
) -> Result<Vec<DeviationSample<T>>> {
    let n = space.dim();
    check_setup(setup, n)?;
    let sp = space.with_connection(resolve_connection(space, choice)?)?;
    let tf = TorsionField { connection: sp.connection.clone() };
    let z = zero_accel::<T>(n);
    let a1 = a1.unwrap_or(&z);
    let a2 = a2.unwrap_or(&z);
    let y0 = [setup.x0.coords(), &setup.v0, &setup.dx0, &setup.rate0].concat();
    let mut problem = Problem {
        rhs: |s: T, y: &[T], dy: &mut [T]| {
            let p = Point::new(y[..n].to_vec())?;
            let (v, dx, w) = (&y[n..2 * n], &y[2 * n..3 * n], &y[3 * n..]);
            let terms = tidal_terms(&sp, &tf, &p, v, dx, w, &a1(s), &a2(s))?;
            dy[..n].copy_from_slice(v);
            dy[n..2 * n].copy_from_slice(&terms.dv);
            dy[2 * n..3 * n].copy_from_slice(&terms.ddx);
            dy[3 * n..].copy_from_slice(&terms.drate);
            Ok(())
        },
        location_len: n,
    };
    let (out, _) = integrate(&mut problem, T::zero(), &y0, outputs, cfg)?;
    outputs
        .iter()
        .zip(out)
        .map(|(&s, y)| {
            Ok(DeviationSample {
                s,
                x: Point::new(y[..n].to_vec())?,
                v: y[n..2 * n].to_vec(),
                dx: y[2 * n..3 * n].to_vec(),
                rate: y[3 * n..].to_vec(),
            })
        })
        .collect()
}

fn check_setup<T: Real>(setup: &DeviationSetup<T>, n: usize) -> Result<()> {
    if setup.x0.dim() != n || setup.v0.len() != n || setup.dx0.len() != n || setup.rate0.len() != n {
        return Err(Error::Shape(format!("deviation setup must have dimension {n}")));
    }
    Ok(())
}

/// Two-trajectory reference: integrates both observers directly and reports
/// `δx = x₂ − x₁` and `D̄δx/ds = (v₂ − v₁) + Γ^i_kl δx^k v₁^l`.
#[allow(clippy::too_many_arguments)]
pub fn two_trajectory_deviation<T: Real>(
    space: &MetricAffineSpace<T>,
    choice: &ConnectionChoice<T>,
    setup: &DeviationSetup<T>,
    a1: Option<Acceleration<'_, T>>,
    a2: Option<Acceleration<'_, T>>,
    outputs: &[T],
    cfg: &IntegratorConfig<T>,
) -> Result<Vec<DeviationSample<T>>> {
    let n = space.dim();
    check_setup(setup, n)?;
    let conn = resolve_connection(space, choice)?;
    let z = zero_accel::<T>(n);
    let a1 = a1.unwrap_or(&z);
    let a2 = a2.unwrap_or(&z);
    let g0 = conn.at(&setup.x0)?;
    let gdx = gamma_contract(&g0, &setup.dx0, &setup.v0);
    let x2: Vec<T> = setup.x0.coords().iter().zip(&setup.dx0).map(|(a, b)| *a + *b).collect();
    let v2: Vec<T> = (0..n).map(|i| setup.v0[i] + setup.rate0[i] - gdx[i]).collect();
    let y0 = [setup.x0.coords(), &setup.v0, &x2, &v2].concat();
    let mut problem = Problem {
        rhs: |s: T, y: &[T], dy: &mut [T]| {
            for (k, acc) in [(0usize, a1(s)), (2, a2(s))] {
                let x = &y[k * n..(k + 1) * n];
                let v = &y[(k + 1) * n..(k + 2) * n];
                let g = conn.at(&Point::new(x.to_vec())?)?;
                let gvv = gamma_contract(&g, v, v);
                for i in 0..n {
                    dy[k * n + i] = v[i];
                    dy[(k + 1) * n + i] = acc[i] - gvv[i];
                }
            }
            Ok(())
        },
        location_len: n,
    };
    let (out, _) = integrate(&mut problem, T::zero(), &y0, outputs, cfg)?;
    outputs
        .iter()
        .zip(out)
        .map(|(&s, y)| {
            let x = Point::new(y[..n].to_vec())?;
            let v = y[n..2 * n].to_vec();
            let dx: Vec<T> = (0..n).map(|i| y[2 * n + i] - y[i]).collect();
            let g = conn.at(&x)?;
            let gdx = gamma_contract(&g, &dx, &v);
            let rate = (0..n).map(|i| y[3 * n + i] - v[i] + gdx[i]).collect();
            Ok(DeviationSample { s, x, v, dx, rate })
        })
        .collect()
}

/// Both sides of the tidal–Lie identity at one deviation sample.
#[derive(Clone, Debug, PartialEq)]
pub struct TidalLieReport<T> {
    /// `(L_ξ Γ̄)^i_kl v^k v^l` for the quadratic extension `ξ` of `δx` off the trajectory.
    pub lhs: Vec<T>,
    /// `a₂ − a₁ + Γ̄^i_ml δx^m a₁^l − ξ^i_;l a₁^l`.
    pub rhs: Vec<T>,
    /// `−ξ^i_;l a₁^l`; absent from the printed identity, zero for geodesic base curves.
    pub extension_term: Vec<T>,
    pub residual: T,
}

/// Evaluates the tidal–Lie identity at a sample of [`tidal_deviation`].
///
/// `δx` is extended off the trajectory by `ξ(x) = y + B(x−x₁) + ½C(x−x₁)(x−x₁)` with
/// `B^i_j = ẏ^i v_j/|v|²`, `C^i_jk = (ÿ − Bẍ)^i v_j v_k/|v|⁴` (Euclidean `v_j = v^j`),
/// so that `ξ` agrees with `δx` to second order along the curve. `ẏ`, `ÿ` follow
/// from the tidal equation; the Lie derivative uses the covariant formula.
pub fn tidal_lie_residual<T: Real>(
    space: &MetricAffineSpace<T>,
    choice: &ConnectionChoice<T>,
    sample: &DeviationSample<T>,
    a1: &[T],
    a2: &[T],
) -> Result<TidalLieReport<T>> {
    let n = space.dim();
    let sp = space.with_connection(resolve_connection(space, choice)?)?;
    let tf = TorsionField { connection: sp.connection.clone() };
    let p = &sample.x;
    let v = &sample.v;
    let terms = tidal_terms(&sp, &tf, p, v, &sample.dx, &sample.rate, a1, a2)?;
    let gamma = sp.connection.at(p)?;
    let dgamma = (0..n).map(|k| sp.connection.partial(p, k)).collect::<Result<Vec<_>>>()?;
    let ydot = terms.ddx.clone();
    // ÿ = d/ds (w − Γ(δx, v))
    let g_ydot = gamma_contract(&gamma, &ydot, v);
    let g_dv = gamma_contract(&gamma, &sample.dx, &terms.dv);
    let yddot: Vec<T> = (0..n)
        .map(|i| {
            let mut acc = terms.drate[i] - g_ydot[i] - g_dv[i];
            for m in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        acc -= dgamma[m][[i, k, l]] * v[m] * sample.dx[k] * v[l];
                    }
                }
            }
            acc
        })
        .collect();
    let vv = v.iter().fold(T::zero(), |a, x| a + *x * *x);
    if vv == T::zero() {
        return Err(Error::InvalidParameter("base velocity vanishes".into()));
    }
    let v_xddot = v.iter().zip(&terms.dv).fold(T::zero(), |a, (x, y)| a + *x * *y);
    let z: Vec<T> = (0..n).map(|i| yddot[i] - ydot[i] * v_xddot / vv).collect();
    let x1 = p.coords().to_vec();
    let (y, vc) = (sample.dx.clone(), v.clone());
    let (x1b, yb, vb, zb) = (x1.clone(), ydot.clone(), vc.clone(), z.clone());
    let xi = FnField::new(
        n,
        (1, 0),
        move |q| {
            let d: Vec<T> = q.coords().iter().zip(&x1).map(|(a, b)| *a - *b).collect();
            let vd = vc.iter().zip(&d).fold(T::zero(), |a, (x, y)| a + *x * *y);
            let half = T::lit(0.5);
            Ok(Tensor::vector(
                &(0..n).map(|i| y[i] + ydot[i] * vd / vv + half * z[i] * vd * vd / (vv * vv)).collect::<Vec<_>>(),
            ))
        },
    )
    .with_partial(move |q, a| {
            let d: Vec<T> = q.coords().iter().zip(&x1b).map(|(u, w)| *u - *w).collect();
            let vd = vb.iter().zip(&d).fold(T::zero(), |acc, (x, y)| acc + *x * *y);
            Ok(Tensor::vector(
                &(0..n).map(|i| yb[i] * vb[a] / vv + zb[i] * vb[a] * vd / (vv * vv)).collect::<Vec<_>>(),
            ))
    });
    let lie = lie_derivative_connection(&sp, &xi, p)?;
    let lhs: Vec<T> = (0..n)
        .map(|i| {
            let mut acc = T::zero();
            for k in 0..n {
                for l in 0..n {
                    acc += lie[[i, k, l]] * v[k] * v[l];
                }
            }
            acc
        })
        .collect();
    let dxi = covariant_derivative(&xi, &sp.connection, p)?;
    let ga1 = gamma_contract(&gamma, &sample.dx, a1);
    let extension_term: Vec<T> =
        (0..n).map(|i| -(0..n).fold(T::zero(), |s, l| s + dxi[[i, l]] * a1[l])).collect();
    let rhs: Vec<T> = (0..n).map(|i| a2[i] - a1[i] + ga1[i] + extension_term[i]).collect();
    let residual = lhs.iter().zip(&rhs).fold(T::zero(), |m, (a, b)| m.max((*a - *b).abs()));
    Ok(TidalLieReport { lhs, rhs, extension_term, residual })
}
