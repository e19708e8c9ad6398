use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::tensor::{gradient, invert_metric, Point, Symmetry, Tensor, TensorField};

use super::space::{ConnectionField, ConnectionKind, MetricAffineSpace, MetricField};

/// Covariant derivative of a holonomic `(p,q)` field; the derivative index is appended last.
///
/// `∇_c F^a_b = ∂_c F^a_b + Γ^a_dc F^d_b − Γ^d_bc F^a_d`.
pub fn covariant_derivative<T: Real, F: TensorField<T> + ?Sized>(
    field: &F,
    conn: &ConnectionField<T>,
    p: &Point<T>,
) -> Result<Tensor<T>> {
    let value = field.eval(p)?;
    let grads = gradient(field, p)?;
    let gamma = conn.at(p)?;
    Ok(covariant_derivative_from_parts(&value, &grads, &gamma))
}

pub(crate) fn covariant_derivative_from_parts<T: Real>(
    value: &Tensor<T>,
    grads: &[Tensor<T>],
    gamma: &Tensor<T>,
) -> Tensor<T> {
    let n = value.dim();
    let (up, lo) = value.shape();
    let rank = up + lo;
    let mut work = vec![0usize; rank];
    Tensor::from_fn(n, up, lo + 1, |ix| {
        let c = ix[rank];
        let base = &ix[..rank];
        let mut acc = grads[c].get(base);
        for k in 0..rank {
            work.copy_from_slice(base);
            for d in 0..n {
                work[k] = d;
                if k < up {
                    acc += gamma[[base[k], d, c]] * value.get(&work);
                } else {
                    acc -= gamma[[d, base[k], c]] * value.get(&work);
                }
            }
        }
        acc
    })
}

/// `∇F` as a field in its own right (used for second covariant derivatives).
pub struct CovariantDerivativeField<F, T> {
    pub inner: F,
    pub connection: ConnectionField<T>,
}

impl<T: Real, F: TensorField<T>> TensorField<T> for CovariantDerivativeField<F, T> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }
    fn shape(&self) -> (usize, usize) {
        let (u, l) = self.inner.shape();
        (u, l + 1)
    }
    fn eval(&self, p: &Point<T>) -> Result<Tensor<T>> {
        covariant_derivative(&self.inner, &self.connection, p)
    }
}

/// `T^a_cb = Γ^a_bc − Γ^a_cb` from connection components.
pub fn torsion_from_gamma<T: Real>(gamma: &Tensor<T>) -> Tensor<T> {
    Tensor::from_fn(gamma.dim(), 1, 2, |ix| {
        gamma[[ix[0], ix[2], ix[1]]] - gamma[[ix[0], ix[1], ix[2]]]
    })
}

/// Torsion tensor `T^a_cb`, exactly antisymmetric in its lower pair.
pub fn torsion<T: Real>(space: &MetricAffineSpace<T>, p: &Point<T>) -> Result<Tensor<T>> {
    Ok(torsion_from_gamma(&space.connection.at(p)?))
}

/// Torsion of a connection as a field; derivatives follow from the connection's.
pub struct TorsionField<T> {
    pub connection: ConnectionField<T>,
}

impl<T: Real> TensorField<T> for TorsionField<T> {
    fn dim(&self) -> usize {
        self.connection.dim()
    }
    fn shape(&self) -> (usize, usize) {
        (1, 2)
    }
    fn eval(&self, p: &Point<T>) -> Result<Tensor<T>> {
        Ok(torsion_from_gamma(&self.connection.at(p)?))
    }
    fn partial(&self, p: &Point<T>, axis: usize) -> Result<Tensor<T>> {
        Ok(torsion_from_gamma(&self.connection.partial(p, axis)?))
    }
}

/// `g_ij;k` stored as `[i][j][k]`.
pub fn metric_covariant_derivative<T: Real>(
    space: &MetricAffineSpace<T>,
    p: &Point<T>,
) -> Result<Tensor<T>> {
    let g = space.metric.at(p)?;
    let grads = (0..p.dim())
        .map(|k| space.metric.partial(p, k))
        .collect::<Result<Vec<_>>>()?;
    let gamma = space.connection.at(p)?;
    Ok(covariant_derivative_from_parts(&g, &grads, &gamma))
}

/// Nonmetricity `Q_kij = −g_ij;k`, stored as `[k][i][j]`.
pub fn nonmetricity<T: Real>(space: &MetricAffineSpace<T>, p: &Point<T>) -> Result<Tensor<T>> {
    let dg = metric_covariant_derivative(space, p)?;
    Ok(Tensor::from_fn(p.dim(), 0, 3, |ix| -dg[[ix[1], ix[2], ix[0]]]))
}

/// Mixed nonmetricity `Q_k^ij = g^ia g^jb Q_kab`, stored as `[i][j][k]` (upper indices first).
pub fn nonmetricity_contravariant<T: Real>(
    space: &MetricAffineSpace<T>,
    p: &Point<T>,
) -> Result<Tensor<T>> {
    let q = nonmetricity(space, p)?;
    let gi = space.metric.inverse(p)?;
    let n = p.dim();
    Ok(Tensor::from_fn(n, 2, 1, |ix| {
        let (i, j, k) = (ix[0], ix[1], ix[2]);
        let mut acc = T::zero();
        for a in 0..n {
            for b in 0..n {
                acc += gi[[i, a]] * gi[[j, b]] * q[[k, a, b]];
            }
        }
        acc
    }))
}

/// Christoffel symbols of the second kind of `metric`.
pub fn christoffel<T: Real>(metric: &MetricField<T>, p: &Point<T>) -> Result<Tensor<T>> {
    let gi = metric.inverse(p)?;
    let dg = (0..p.dim())
        .map(|k| metric.partial(p, k))
        .collect::<Result<Vec<_>>>()?;
    Ok(christoffel_from_parts(&gi, &dg))
}

pub(crate) fn christoffel_from_parts<T: Real>(gi: &Tensor<T>, dg: &[Tensor<T>]) -> Tensor<T> {
    let n = gi.dim();
    let half = T::lit(0.5);
    Tensor::from_fn(n, 1, 2, |ix| {
        let (a, b, c) = (ix[0], ix[1], ix[2]);
        let mut acc = T::zero();
        for d in 0..n {
            acc += gi[[a, d]] * (dg[b][[d, c]] + dg[c][[d, b]] - dg[d][[b, c]]);
        }
        half * acc
    })
}

/// Levi-Civita connection of a metric as a field.
pub struct LeviCivitaField<T> {
    pub metric: MetricField<T>,
}

impl<T: Real> TensorField<T> for LeviCivitaField<T> {
    fn dim(&self) -> usize {
        self.metric.dim()
    }
    fn shape(&self) -> (usize, usize) {
        (1, 2)
    }
    fn eval(&self, p: &Point<T>) -> Result<Tensor<T>> {
        christoffel(&self.metric, p)
    }
}

/// Riemannian space of `metric` (Levi-Civita connection).
pub fn riemann_space<T: Real>(metric: MetricField<T>) -> Result<MetricAffineSpace<T>> {
    let conn = ConnectionField::new(
        Arc::new(LeviCivitaField { metric: metric.clone() }),
        ConnectionKind::LeviCivita,
    )?;
    MetricAffineSpace::new(metric, conn)
}

/// Connection with prescribed torsion `T^a_cb` and nonmetricity `Q_kij`:
///
/// `Γ^p_ji = ½ g^pk (g_ki,j + g_jk,i − g_ij,k + Q_ijk + Q_jki − Q_kij − S^r_ij g_rk − S^r_ki g_rj + S^r_jk g_ri)`
/// with `S^r_ab = Γ^r_ab − Γ^r_ba = −T^r_ab`.
pub fn reconstruct_connection<T: Real, FT, FQ>(
    g: &MetricField<T>,
    torsion: &FT,
    nonmetricity: &FQ,
    p: &Point<T>,
) -> Result<Tensor<T>>
where
    FT: TensorField<T> + ?Sized,
    FQ: TensorField<T> + ?Sized,
{
    let n = p.dim();
    let t = torsion.eval(p)?;
    let q = nonmetricity.eval(p)?;
    if t.shape() != (1, 2) || q.shape() != (0, 3) {
        return Err(Error::Shape("torsion must be (1,2) and nonmetricity (0,3)".into()));
    }
    t.check_symmetry(Symmetry::Antisymmetric, T::lit(1e-12))?;
    let gm = g.at(p)?;
    let gi = invert_metric(&gm)?;
    let dg = (0..n).map(|k| g.partial(p, k)).collect::<Result<Vec<_>>>()?;
    let s = |r: usize, a: usize, b: usize| -t[[r, a, b]];
    // Lowered combination L_{k,ji}; Γ^p_ji = ½ g^pk L_{k,ji}.
    let lowered = Tensor::from_fn(n, 0, 3, |ix| {
        let (k, j, i) = (ix[0], ix[1], ix[2]);
        let mut acc = dg[j][[k, i]] + dg[i][[j, k]] - dg[k][[i, j]] + q[[i, j, k]] + q[[j, k, i]]
            - q[[k, i, j]];
        for r in 0..n {
            acc += -s(r, i, j) * gm[[r, k]] - s(r, k, i) * gm[[r, j]] + s(r, j, k) * gm[[r, i]];
        }
        acc
    });
    let half = T::lit(0.5);
    Ok(Tensor::from_fn(n, 1, 2, |ix| {
        let (pp, j, i) = (ix[0], ix[1], ix[2]);
        let mut acc = T::zero();
        for k in 0..n {
            acc += gi[[pp, k]] * lowered[[k, j, i]];
        }
        half * acc
    }))
}

/// Cartan symbol `Γ(C)^i_kl = ½ g^im (g_kl;m − g_km;l − g_ml;k)`; the semicolon uses the space's connection.
pub fn cartan_symbol<T: Real>(space: &MetricAffineSpace<T>, p: &Point<T>) -> Result<Tensor<T>> {
    let dg = metric_covariant_derivative(space, p)?;
    let gi = space.metric.inverse(p)?;
    let n = p.dim();
    let half = T::lit(0.5);
    Ok(Tensor::from_fn(n, 1, 2, |ix| {
        let (i, k, l) = (ix[0], ix[1], ix[2]);
        let mut acc = T::zero();
        for m in 0..n {
            acc += gi[[i, m]] * (dg[[k, l, m]] - dg[[k, m, l]] - dg[[m, l, k]]);
        }
        half * acc
    }))
}

/// Cartan symbol as a field.
pub struct CartanSymbolField<T> {
    pub space: MetricAffineSpace<T>,
}

impl<T: Real> TensorField<T> for CartanSymbolField<T> {
    fn dim(&self) -> usize {
        self.space.dim()
    }
    fn shape(&self) -> (usize, usize) {
        (1, 2)
    }
    fn eval(&self, p: &Point<T>) -> Result<Tensor<T>> {
        cartan_symbol(&self.space, p)
    }
}

/// `Γ̂ = Γ − Γ(C)` as a field.
pub struct CartanConnectionField<T> {
    pub space: MetricAffineSpace<T>,
}

impl<T: Real> TensorField<T> for CartanConnectionField<T> {
    fn dim(&self) -> usize {
        self.space.dim()
    }
    fn shape(&self) -> (usize, usize) {
        (1, 2)
    }
    fn eval(&self, p: &Point<T>) -> Result<Tensor<T>> {
        self.space.connection.at(p)?.sub(&cartan_symbol(&self.space, p)?)
    }
}

/// The Cartan connection `Γ̂ = Γ − Γ(C)`.
pub fn cartan_connection<T: Real>(space: &MetricAffineSpace<T>) -> Result<ConnectionField<T>> {
    ConnectionField::new(
        Arc::new(CartanConnectionField { space: space.clone() }),
        ConnectionKind::Cartan,
    )
}

/// Same metric carrying the Cartan connection.
pub fn cartan_space<T: Real>(space: &MetricAffineSpace<T>) -> Result<MetricAffineSpace<T>> {
    space.with_connection(cartan_connection(space)?)
}

/// Curvature `R^a_bij = ∂_iΓ^a_bj − ∂_jΓ^a_bi + Γ^a_ci Γ^c_bj − Γ^a_cj Γ^c_bi`, stored `[a][b][i][j]`.
pub fn curvature_of<T: Real>(conn: &ConnectionField<T>, p: &Point<T>) -> Result<Tensor<T>> {
    let gamma = conn.at(p)?;
    let dgamma = (0..p.dim())
        .map(|k| conn.partial(p, k))
        .collect::<Result<Vec<_>>>()?;
    Ok(curvature_from_parts(&gamma, &dgamma))
}

pub(crate) fn curvature_from_parts<T: Real>(gamma: &Tensor<T>, dgamma: &[Tensor<T>]) -> Tensor<T> {
    let n = gamma.dim();
    Tensor::from_fn(n, 1, 3, |ix| {
        let (a, b, i, j) = (ix[0], ix[1], ix[2], ix[3]);
        let mut acc = dgamma[i][[a, b, j]] - dgamma[j][[a, b, i]];
        for c in 0..n {
            acc += gamma[[a, c, i]] * gamma[[c, b, j]] - gamma[[a, c, j]] * gamma[[c, b, i]];
        }
        acc
    })
}

pub fn curvature<T: Real>(space: &MetricAffineSpace<T>, p: &Point<T>) -> Result<Tensor<T>> {
    curvature_of(&space.connection, p)
}

/// Ricci tensor `R_bj = R^a_baj`.
pub fn ricci<T: Real>(space: &MetricAffineSpace<T>, p: &Point<T>) -> Result<Tensor<T>> {
    curvature(space, p)?.trace(0, 2)
}

/// Scalar curvature `g^bj R_bj`.
pub fn scalar_curvature<T: Real>(space: &MetricAffineSpace<T>, p: &Point<T>) -> Result<T> {
    let ric = ricci(space, p)?;
    let gi = space.metric.inverse(p)?;
    let s = gi.contract(&ric, &[(0, 0), (1, 1)])?;
    Ok(s.data()[0])
}

/// Curvature of `Γ + A` assembled from the base curvature:
///
/// `R̄^a_bde = R^a_bde + A^a_be;d − A^a_bd;e + A^a_cd A^c_be − A^a_ce A^c_bd + T^p_de A^a_bp`,
/// covariant derivatives taken with the base connection.
pub fn shifted_curvature<T: Real, F: TensorField<T> + ?Sized>(
    space: &MetricAffineSpace<T>,
    a_field: &F,
    p: &Point<T>,
) -> Result<Tensor<T>> {
    let a = a_field.eval(p)?;
    if a.shape() != (1, 2) {
        return Err(Error::Shape(format!("shift must be (1,2), got {:?}", a.shape())));
    }
    a.check_symmetry(Symmetry::Symmetric, T::lit(1e-12))?;
    let r = curvature(space, p)?;
    let t = torsion(space, p)?;
    let da = covariant_derivative(a_field, &space.connection, p)?;
    let n = p.dim();
    Ok(Tensor::from_fn(n, 1, 3, |ix| {
        let (a_, b, d, e) = (ix[0], ix[1], ix[2], ix[3]);
        let mut acc = r[[a_, b, d, e]] + da[[a_, b, e, d]] - da[[a_, b, d, e]];
        for c in 0..n {
            acc += a[[a_, c, d]] * a[[c, b, e]] - a[[a_, c, e]] * a[[c, b, d]];
            acc += t[[c, d, e]] * a[[a_, b, c]];
        }
        acc
    }))
}
