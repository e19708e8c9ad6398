use crate::error::{Error, Result};
use crate::geometry::{cartan_symbol, MetricAffineSpace};
use crate::ode::{integrate, IntegratorConfig, Problem};
use crate::scalar::Real;
use crate::tensor::{derivative_1d, FdConfig, Point};

use super::parallel::locate;
use super::state::{gamma_contract, quadratic_form, Curve};

/// Curvatures below this are treated as a straight segment.
pub const FRENET_DEGENERACY: f64 = 1e-10;

/// `Γ^i_pc w^p u^c − Γ(C)^i_kl u^k w^l`: the connection part of the Cartan-corrected
/// derivative along a curve with tangent `u`.
fn corrected_term<T: Real>(space: &MetricAffineSpace<T>, p: &Point<T>, u: &[T], w: &[T]) -> Result<Vec<T>> {
    let gamma = space.connection.at(p)?;
    let base = gamma_contract(&gamma, w, u);
    let c = cartan_symbol(space, p)?;
    let corr = gamma_contract(&c, u, w);
    Ok(base.iter().zip(&corr).map(|(a, b)| *a - *b).collect())
}

/// `V_k = D̃^k (dx/ds)`, nested extrapolated differences.
fn osculating<T: Real>(space: &MetricAffineSpace<T>, curve: &Curve<T>, s: T, k: usize) -> Result<Vec<T>> {
    if k == 0 {
        return curve.velocity(s);
    }
    let d = derivative_1d(|t| osculating(space, curve, t, k - 1), s, &FdConfig::default())?;
    let p = curve.point(s)?;
    let u = curve.velocity(s)?;
    let w = osculating(space, curve, s, k - 1)?;
    let extra = corrected_term(space, &p, &u, &w)?;
    Ok(d.iter().zip(&extra).map(|(a, b)| *a + *b).collect())
}

/// Accompanying basis at one point, built directly from the osculating vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct AccompanyingFrame<T> {
    /// `ν_1 .. ν_r` for the osculating rank `r`.
    pub vectors: Vec<Vec<T>>,
    /// `ε_k = sign(g(ν_k, ν_k))`.
    pub eps: Vec<T>,
    /// `ξ_1 .. ξ_{n-1}`; zero past the osculating rank.
    pub curvatures: Vec<T>,
}

/// Gram–Schmidt of `dx/ds, D̃(dx/ds), …` where `D̃w = Dw − Γ(C)(dx/ds, w)`.
///
/// The curve must be parameterised by arc length (`|g(u,u)| = 1`).
pub fn accompanying_frame<T: Real>(space: &MetricAffineSpace<T>, curve: &Curve<T>, s: T) -> Result<AccompanyingFrame<T>> {
    let n = space.dim();
    let p = curve.point(s)?;
    let g = space.metric.at(&p)?;
    let u = curve.velocity(s)?;
    let un = quadratic_form(&g, &u, &u).abs();
    if (un - T::one()).abs() > T::lit(1e-6) {
        return Err(Error::InvalidParameter(format!("curve is not arc-length parameterised: |g(u,u)| = {un}")));
    }
    let threshold = T::lit(FRENET_DEGENERACY);
    let mut vectors: Vec<Vec<T>> = Vec::new();
    let mut eps = Vec::new();
    let mut norms = Vec::new();
    let mut curvatures = vec![T::zero(); n - 1];
    for k in 0..n {
        let v = osculating(space, curve, s, k)?;
        let mut w = v.clone();
        for (e, &sg) in vectors.iter().zip(&eps) {
            let proj = quadratic_form(&g, &v, e) * sg;
            for i in 0..n {
                w[i] -= proj * e[i];
            }
        }
        let norm2 = quadratic_form(&g, &w, &w);
        let norm = norm2.abs().sqrt();
        let euclid = w.iter().fold(T::zero(), |a, x| a + *x * *x).sqrt();
        if k > 0 {
            let xi = norm / norms[k - 1];
            if euclid / norms[k - 1] < threshold {
                break;
            }
            if xi < threshold * T::lit(1e-3) {
                return Err(Error::Degenerate { det: norm2.to_f64_lossy() });
            }
            curvatures[k - 1] = xi;
        }
        if k == n - 1 && norm == T::zero() {
            break;
        }
        norms.push(norm);
        eps.push(norm2.signum());
        vectors.push(w.iter().map(|x| *x / norm).collect());
    }
    Ok(AccompanyingFrame { vectors, eps, curvatures })
}

/// Coefficients `a^q_p` of the Frenet law: `a^{p+1}_p = ξ_p`, `a^p_{p+1} = −ε_p ε_{p+1} ξ_p`.
///
/// Row `p`, column `q`.
pub fn frenet_coefficients<T: Real>(eps: &[T], curvatures: &[T]) -> Vec<Vec<T>> {
    let n = eps.len();
    let mut a = vec![vec![T::zero(); n]; n];
    for p in 0..n.saturating_sub(1) {
        let xi = curvatures.get(p).copied().unwrap_or(T::zero());
        a[p][p + 1] = xi;
        a[p + 1][p] = -eps[p] * eps[p + 1] * xi;
    }
    a
}

/// A sample of the transported Frenet frame.
#[derive(Clone, Debug, PartialEq)]
pub struct FrenetSample<T> {
    pub s: T,
    /// Transported `ν_1 .. ν_n`.
    pub frame: Vec<Vec<T>>,
    pub eps: Vec<T>,
    pub curvatures: Vec<T>,
}

/// Completes the accompanying frame at `s0` with coordinate seeds.
fn initial_frame<T: Real>(space: &MetricAffineSpace<T>, curve: &Curve<T>, s0: T) -> Result<Vec<Vec<T>>> {
    let n = space.dim();
    let acc = accompanying_frame(space, curve, s0)?;
    let p = curve.point(s0)?;
    let g = space.metric.at(&p)?;
    let mut vectors = acc.vectors;
    let mut eps = acc.eps;
    for axis in 0..n {
        if vectors.len() == n {
            break;
        }
        let mut w = vec![T::zero(); n];
        w[axis] = T::one();
        for (e, &sg) in vectors.iter().zip(&eps) {
            let proj = quadratic_form(&g, &w, e) * sg;
            for i in 0..n {
                w[i] -= proj * e[i];
            }
        }
        let norm2 = quadratic_form(&g, &w, &w);
        if norm2.abs() > T::lit(1e-8) {
            let norm = norm2.abs().sqrt();
            vectors.push(w.iter().map(|x| *x / norm).collect());
            eps.push(norm2.signum());
        }
    }
    if vectors.len() != n {
        return Err(Error::Orthogonalization("could not complete the accompanying frame".into()));
    }
    Ok(vectors)
}

/// Integrates the Frenet law along an arc-length curve:
///
/// `Dν_p/ds = Γ(C)^i_kl ν_1^k ν_p^l − ε_p ε_{p−1} ξ_{p−1} ν_{p−1} + ξ_p ν_{p+1}`.
///
/// Curvatures are read from the curve at every step; past the osculating rank the
/// remaining vectors are Cartan-transported. Without `frame0` the accompanying
/// frame at `s0` is completed with coordinate seeds.
pub fn frenet_transport<T: Real>(
    space: &MetricAffineSpace<T>,
    curve: &Curve<T>,
    frame0: Option<Vec<Vec<T>>>,
    s0: T,
    outputs: &[T],
    cfg: &IntegratorConfig<T>,
) -> Result<Vec<FrenetSample<T>>> {
    let n = space.dim();
    let frame0 = match frame0 {
        Some(f) => f,
        None => initial_frame(space, curve, s0)?,
    };
    if frame0.len() != n || frame0.iter().any(|v| v.len() != n) {
        return Err(Error::Shape(format!("frame needs {n} vectors of dimension {n}")));
    }
    let g0 = space.metric.at(&curve.point(s0)?)?;
    let eps: Vec<T> = frame0.iter().map(|v| quadratic_form(&g0, v, v).signum()).collect();
    let e2 = eps.clone();
    let c = curve.clone();
    let sp = space.clone();
    let mut problem = Problem {
        rhs: move |s: T, y: &[T], dy: &mut [T]| {
            let p = c.point(s)?;
            let u = c.velocity(s)?;
            let xi = accompanying_frame(&sp, &c, s)?.curvatures;
            let a = frenet_coefficients(&e2, &xi);
            for q in 0..n {
                let nu = &y[q * n..(q + 1) * n];
                // dν/ds = −(Γ ν u − Γ(C) u ν) + a_q^r ν_r
                let conn = corrected_term(&sp, &p, &u, nu)?;
                for i in 0..n {
                    let mut acc = -conn[i];
                    for r in 0..n {
                        acc += a[q][r] * y[r * n + i];
                    }
                    dy[q * n + i] = acc;
                }
            }
            Ok(())
        },
        location_len: 0,
    };
    let (out, _) = integrate(&mut problem, s0, &frame0.concat(), outputs, cfg).map_err(|e| locate(e, curve))?;
    outputs
        .iter()
        .zip(out)
        .map(|(&s, y)| {
            let curvatures = accompanying_frame(space, curve, s)?.curvatures;
            Ok(FrenetSample { s, frame: y.chunks(n).map(|c| c.to_vec()).collect(), eps: eps.clone(), curvatures })
        })
        .collect()
}
