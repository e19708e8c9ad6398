use crate::error::{Error, Result};
use crate::geometry::{ConnectionField, MetricAffineSpace};
use crate::ode::{integrate, IntegratorConfig, Problem};
use crate::scalar::Real;
use crate::tensor::Point;

use super::state::gamma_contract;

/// Follows the autoparallel from `x0` with tangent `u0` for canonical parameter `rho`,
/// parallel-transporting `w0` along it. Returns the end point and the transported vector.
fn leg<T: Real>(
    conn: &ConnectionField<T>,
    x0: &[T],
    u0: &[T],
    w0: &[T],
    rho: T,
    cfg: &IntegratorConfig<T>,
) -> Result<(Vec<T>, Vec<T>)> {
    let n = x0.len();
    let y0 = [x0, u0, w0].concat();
    let mut problem = Problem {
        rhs: |_s: T, y: &[T], dy: &mut [T]| {
            let p = Point::new(y[..n].to_vec())?;
            let g = conn.at(&p)?;
            let (u, w) = (&y[n..2 * n], &y[2 * n..]);
            let guu = gamma_contract(&g, u, u);
            let gwu = gamma_contract(&g, w, u);
            for i in 0..n {
                dy[i] = u[i];
                dy[n + i] = -guu[i];
                dy[2 * n + i] = -gwu[i];
            }
            Ok(())
        },
        location_len: n,
    };
    let (out, _) = integrate(&mut problem, T::zero(), &y0, &[rho], cfg)?;
    let y = &out[0];
    Ok((y[..n].to_vec(), y[2 * n..].to_vec()))
}

/// Closure failure of the geodesic parallelogram spanned by `ρa`, `ρb` at `p`.
///
/// One path follows `a`, then the transported `b`; the other follows `b`, then the
/// transported `a`. The gap is (end of the second) − (end of the first), which is
/// `T^k_mn a^m b^n ρ² + O(ρ³)`. End points are compared in the shared chart.
pub fn parallelogram_gap<T: Real>(
    space: &MetricAffineSpace<T>,
    p: &Point<T>,
    a: &[T],
    b: &[T],
    rho: T,
    cfg: &IntegratorConfig<T>,
) -> Result<Vec<T>> {
    let n = space.dim();
    if a.len() != n || b.len() != n || p.dim() != n {
        return Err(Error::Shape(format!("parallelogram data must have dimension {n}")));
    }
    check_not_collinear(a, b)?;
    let conn = &space.connection;
    let x = p.coords();
    let (xa, b_at_a) = leg(conn, x, a, b, rho, cfg)?;
    let (e1, _) = leg(conn, &xa, &b_at_a, a, rho, cfg)?;
    let (xb, a_at_b) = leg(conn, x, b, a, rho, cfg)?;
    let (e2, _) = leg(conn, &xb, &a_at_b, b, rho, cfg)?;
    Ok(e2.iter().zip(&e1).map(|(u, v)| *u - *v).collect())
}

fn check_not_collinear<T: Real>(a: &[T], b: &[T]) -> Result<()> {
    let aa = a.iter().fold(T::zero(), |s, x| s + *x * *x);
    let bb = b.iter().fold(T::zero(), |s, x| s + *x * *x);
    let ab = a.iter().zip(b).fold(T::zero(), |s, (x, y)| s + *x * *y);
    // Gram determinant relative to |a|²|b|².
    if !(aa * bb - ab * ab > T::lit(1e-12) * aa * bb) {
        return Err(Error::Collinear);
    }
    Ok(())
}

/// Richardson estimate of the gap's order and leading coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct GapConvergence<T> {
    /// `log₂(|gap(ρ)| / |gap(ρ/2)|)`.
    pub exponent: T,
    /// `2 gap(ρ/2)/(ρ/2)² − gap(ρ)/ρ²`, the extrapolated `ρ²` coefficient.
    pub coefficient: Vec<T>,
    pub gap: Vec<T>,
    pub gap_half: Vec<T>,
}

pub fn gap_convergence<T: Real>(
    space: &MetricAffineSpace<T>,
    p: &Point<T>,
    a: &[T],
    b: &[T],
    rho: T,
    cfg: &IntegratorConfig<T>,
) -> Result<GapConvergence<T>> {
    let two = T::lit(2.0);
    let half = rho / two;
    let gap = parallelogram_gap(space, p, a, b, rho, cfg)?;
    let gap_half = parallelogram_gap(space, p, a, b, half, cfg)?;
    let norm = |v: &[T]| v.iter().fold(T::zero(), |s, x| s + *x * *x).sqrt();
    let exponent = (norm(&gap) / norm(&gap_half)).log2();
    let coefficient = gap
        .iter()
        .zip(&gap_half)
        .map(|(g, h)| two * *h / (half * half) - *g / (rho * rho))
        .collect();
    Ok(GapConvergence { exponent, coefficient, gap, gap_half })
}
