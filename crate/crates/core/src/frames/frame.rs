use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geometry::MetricField;
use crate::scalar::Real;
use crate::tensor::{linalg, partial_derivative, Basis, FnField, Point, Tensor};

/// An orthonormal frame at one point: vectors `e^i_(k)`, dual forms `e^(k)_i`
/// and the diagonal frame metric `η_(k)(k) = ±1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Frame<T> {
    dim: usize,
    /// Row `k` holds the holonomic components of `e_(k)`.
    vectors: Vec<T>,
    /// Row `k` holds the components of the dual form `e^(k)`.
    duals: Vec<T>,
    eta: Vec<T>,
}

impl<T: Real> Frame<T> {
    /// Builds a frame from its vectors (row `k` = `e_(k)`); duals follow by inversion.
    pub fn from_vectors(vectors: Vec<T>, eta: Vec<T>) -> Result<Self> {
        let n = eta.len();
        if vectors.len() != n * n {
            return Err(Error::Shape(format!("{n} frame vectors need {} components", n * n)));
        }
        // Matrix M[i][k] = e^i_(k) is the transpose of `vectors`; its inverse has rows e^(k).
        // Columns are normalised first so that frames in mixed units (e.g. CGS) are not
        // mistaken for degenerate ones: M = M̃ D ⇒ M⁻¹ = D⁻¹ M̃⁻¹.
        let scale: Vec<T> = (0..n)
            .map(|k| vectors[k * n..(k + 1) * n].iter().fold(T::zero(), |m, x| m.max(x.abs())))
            .collect();
        if scale.iter().any(|d| *d == T::zero()) {
            return Err(Error::Degenerate { det: 0.0 });
        }
        let m: Vec<T> = (0..n * n).map(|ix| vectors[(ix % n) * n + ix / n] / scale[ix % n]).collect();
        let mut duals = linalg::invert(&m, n, T::epsilon())?;
        for (k, d) in scale.iter().enumerate() {
            for x in &mut duals[k * n..(k + 1) * n] {
                *x /= *d;
            }
        }
        Ok(Self { dim: n, vectors, duals, eta })
    }

    /// Coordinate frame `e_(k) = ∂_k`.
    pub fn coordinate(eta: Vec<T>) -> Self {
        let n = eta.len();
        let id: Vec<T> = (0..n * n).map(|ix| if ix / n == ix % n { T::one() } else { T::zero() }).collect();
        Self { dim: n, vectors: id.clone(), duals: id, eta }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eta(&self) -> &[T] {
        &self.eta
    }

    /// Holonomic components of `e_(k)`.
    pub fn vector(&self, k: usize) -> &[T] {
        &self.vectors[k * self.dim..(k + 1) * self.dim]
    }

    /// Components of the dual form `e^(k)`.
    pub fn dual(&self, k: usize) -> &[T] {
        &self.duals[k * self.dim..(k + 1) * self.dim]
    }

    /// `e^i_(k)`.
    pub fn e(&self, i: usize, k: usize) -> T {
        self.vectors[k * self.dim + i]
    }

    /// `e^(k)_i`.
    pub fn e_dual(&self, k: usize, i: usize) -> T {
        self.duals[k * self.dim + i]
    }

    pub fn vectors_flat(&self) -> &[T] {
        &self.vectors
    }

    pub fn duals_flat(&self) -> &[T] {
        &self.duals
    }

    /// `max |e^(k)_i e^i_(l) − δ|`.
    pub fn duality_residual(&self) -> T {
        let n = self.dim;
        let mut worst = T::zero();
        for k in 0..n {
            for l in 0..n {
                let mut acc = if k == l { -T::one() } else { T::zero() };
                for i in 0..n {
                    acc += self.e_dual(k, i) * self.e(i, l);
                }
                worst = worst.max(acc.abs());
            }
        }
        worst
    }

    /// `max |g_ij e^i_(k) e^j_(l) − η_(k)(l)|`.
    pub fn orthonormality_residual(&self, g: &Tensor<T>) -> T {
        let n = self.dim;
        let mut worst = T::zero();
        for k in 0..n {
            for l in 0..n {
                let mut acc = if k == l { -self.eta[k] } else { T::zero() };
                for i in 0..n {
                    for j in 0..n {
                        acc += g[[i, j]] * self.e(i, k) * self.e(j, l);
                    }
                }
                worst = worst.max(acc.abs());
            }
        }
        worst
    }

    /// `w^i = e^i_(k) w^(k)`.
    pub fn to_holonomic(&self, w: &[T]) -> Vec<T> {
        let n = self.dim;
        (0..n).map(|i| (0..n).fold(T::zero(), |s, k| s + self.e(i, k) * w[k])).collect()
    }

    /// `w^(k) = e^(k)_i w^i`.
    pub fn to_frame(&self, w: &[T]) -> Vec<T> {
        let n = self.dim;
        (0..n).map(|k| (0..n).fold(T::zero(), |s, i| s + self.e_dual(k, i) * w[i])).collect()
    }

    /// Frame components of a holonomic vector, tagged with the frame basis.
    pub fn vector_in_frame(&self, w: &Tensor<T>) -> Result<Tensor<T>> {
        if w.shape() != (1, 0) || w.basis() != Basis::Holonomic {
            return Err(Error::BasisMismatch);
        }
        Ok(Tensor::vector(&self.to_frame(w.data())).with_basis(Basis::Frame))
    }

    /// Holonomic components of a frame-tagged vector.
    pub fn vector_from_frame(&self, w: &Tensor<T>) -> Result<Tensor<T>> {
        if w.shape() != (1, 0) || w.basis() != Basis::Frame {
            return Err(Error::BasisMismatch);
        }
        Ok(Tensor::vector(&self.to_holonomic(w.data())))
    }
}

/// Orthonormalises `seeds` (in order) with respect to `g` at `p`.
///
/// Fails when a seed is null or linearly dependent on the previous ones.
pub fn gram_schmidt_frame<T: Real>(metric: &MetricField<T>, seeds: &[Vec<T>], p: &Point<T>) -> Result<Frame<T>> {
    let g = metric.at(p)?;
    gram_schmidt(&g, seeds)
}

pub(crate) fn gram_schmidt<T: Real>(g: &Tensor<T>, seeds: &[Vec<T>]) -> Result<Frame<T>> {
    let n = g.dim();
    if seeds.len() != n || seeds.iter().any(|s| s.len() != n) {
        return Err(Error::Orthogonalization(format!("need {n} seeds of dimension {n}")));
    }
    let dot = |a: &[T], b: &[T]| {
        let mut acc = T::zero();
        for i in 0..n {
            for j in 0..n {
                acc += g[[i, j]] * a[i] * b[j];
            }
        }
        acc
    };
    let gscale = g.max_abs();
    let tol = T::lit(1e-10);
    let mut vectors: Vec<Vec<T>> = Vec::with_capacity(n);
    let mut eta = Vec::with_capacity(n);
    for (k, seed) in seeds.iter().enumerate() {
        let mut w = seed.clone();
        for (e, &s) in vectors.iter().zip(&eta) {
            let proj: T = dot(seed, e) * s;
            for i in 0..n {
                w[i] -= proj * e[i];
            }
        }
        let norm2 = dot(&w, &w);
        let euclid2 = seed.iter().fold(T::zero(), |a, x| a + *x * *x);
        if !(norm2.abs() > tol * gscale * euclid2) {
            return Err(Error::Orthogonalization(format!("seed {k} is null or dependent")));
        }
        let norm = norm2.abs().sqrt();
        vectors.push(w.iter().map(|x| *x / norm).collect());
        eta.push(norm2.signum());
    }
    Frame::from_vectors(vectors.concat(), eta)
}

type FrameFn<T> = dyn Fn(&Point<T>) -> Result<Frame<T>> + Send + Sync;

/// A smooth field of frames on a chart.
#[derive(Clone)]
pub struct FrameField<T> {
    dim: usize,
    eta: Vec<T>,
    f: Arc<FrameFn<T>>,
}

impl<T: Real> FrameField<T> {
    pub fn new(eta: Vec<T>, f: impl Fn(&Point<T>) -> Result<Frame<T>> + Send + Sync + 'static) -> Self {
        Self { dim: eta.len(), eta, f: Arc::new(f) }
    }

    /// The chart's coordinate frame.
    pub fn coordinate(eta: Vec<T>) -> Self {
        let e = eta.clone();
        Self::new(eta, move |_| Ok(Frame::coordinate(e.clone())))
    }

    /// Gram–Schmidt of fixed coordinate seeds at every point.
    pub fn gram_schmidt(metric: MetricField<T>, seeds: Vec<Vec<T>>, eta: Vec<T>) -> Self {
        Self::new(eta, move |p| gram_schmidt_frame(&metric, &seeds, p))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eta(&self) -> &[T] {
        &self.eta
    }

    pub fn at(&self, p: &Point<T>) -> Result<Frame<T>> {
        (self.f)(p)
    }

    /// `∂_axis e^(k)_i`, row `k`.
    pub fn dual_partial(&self, p: &Point<T>, axis: usize) -> Result<Vec<T>> {
        let me = self.clone();
        let n = self.dim;
        let field = FnField::new(n, (0, 2), move |q| Tensor::from_vec(n, 0, 2, me.at(q)?.duals_flat().to_vec()));
        Ok(partial_derivative(&field, p, axis)?.into_data())
    }

    /// `∂_axis e^i_(k)`, row `k`.
    pub fn vector_partial(&self, p: &Point<T>, axis: usize) -> Result<Vec<T>> {
        let me = self.clone();
        let n = self.dim;
        let field = FnField::new(n, (0, 2), move |q| Tensor::from_vec(n, 0, 2, me.at(q)?.vectors_flat().to_vec()));
        Ok(partial_derivative(&field, p, axis)?.into_data())
    }
}
