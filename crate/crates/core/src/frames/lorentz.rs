use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::tensor::linalg;

use super::frame::Frame;

/// Lorentz map on frame indices: `e'_(k) = b^(l)_(k) e_(l)` with
/// `η_(i)(l) b^(i)_(j) b^(l)_(k) = η_(j)(k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LorentzFrameMap<T> {
    dim: usize,
    /// Row-major `b[l][k] = b^(l)_(k)`.
    b: Vec<T>,
    eta: Vec<T>,
}

impl<T: Real> LorentzFrameMap<T> {
    pub fn new(b: Vec<T>, eta: Vec<T>) -> Result<Self> {
        let n = eta.len();
        if b.len() != n * n {
            return Err(Error::Shape(format!("map needs {} entries", n * n)));
        }
        let map = Self { dim: n, b, eta };
        let scale = map.b.iter().fold(T::one(), |m, x| m.max(x.abs()));
        let r = map.invariance_residual();
        if !(r <= T::lit(1e-12) * scale * scale) {
            return Err(Error::NonLorentz { residual: r.to_f64_lossy() });
        }
        Ok(map)
    }

    pub fn identity(eta: Vec<T>) -> Self {
        let n = eta.len();
        let b = (0..n * n).map(|ix| if ix / n == ix % n { T::one() } else { T::zero() }).collect();
        Self { dim: n, b, eta }
    }

    /// Boost in the `(i, j)` plane with `e'_(i) = γ e_(i) + γβ e_(j)`, `e'_(j) = γβ e_(i) + γ e_(j)`.
    pub fn boost(eta: Vec<T>, i: usize, j: usize, beta: T) -> Result<Self> {
        if !(beta.abs() < T::one()) {
            return Err(Error::Superluminal { beta: beta.to_f64_lossy() });
        }
        if eta[i] * eta[j] >= T::zero() {
            return Err(Error::InvalidParameter("boost plane must mix a timelike and a spacelike leg".into()));
        }
        let n = eta.len();
        let gamma = T::one() / (T::one() - beta * beta).sqrt();
        let mut b: Vec<T> = (0..n * n).map(|ix| if ix / n == ix % n { T::one() } else { T::zero() }).collect();
        b[i * n + i] = gamma;
        b[j * n + j] = gamma;
        b[j * n + i] = gamma * beta;
        b[i * n + j] = gamma * beta;
        Self::new(b, eta)
    }

    /// Rotation by `angle` in the spacelike `(i, j)` plane.
    pub fn rotation(eta: Vec<T>, i: usize, j: usize, angle: T) -> Result<Self> {
        let n = eta.len();
        let (s, c) = (angle.sin(), angle.cos());
        let mut b: Vec<T> = (0..n * n).map(|ix| if ix / n == ix % n { T::one() } else { T::zero() }).collect();
        b[i * n + i] = c;
        b[j * n + j] = c;
        b[j * n + i] = s;
        b[i * n + j] = -s;
        Self::new(b, eta)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eta(&self) -> &[T] {
        &self.eta
    }

    /// `b^(l)_(k)`.
    pub fn get(&self, l: usize, k: usize) -> T {
        self.b[l * self.dim + k]
    }

    pub fn matrix(&self) -> &[T] {
        &self.b
    }

    pub fn invariance_residual(&self) -> T {
        let n = self.dim;
        let mut worst = T::zero();
        for j in 0..n {
            for k in 0..n {
                let mut acc = if j == k { -self.eta[j] } else { T::zero() };
                for i in 0..n {
                    acc += self.eta[i] * self.get(i, j) * self.get(i, k);
                }
                worst = worst.max(acc.abs());
            }
        }
        worst
    }

    /// Map applying `self` first and then `next` (frame `e'' = (e b) b_next`).
    pub fn then(&self, next: &Self) -> Result<Self> {
        if self.eta != next.eta {
            return Err(Error::InvalidParameter("frame metrics differ".into()));
        }
        Self::new(linalg::matmul(&self.b, &next.b, self.dim), self.eta.clone())
    }

    /// Inverse map `η bᵀ η`.
    pub fn inverse(&self) -> Self {
        let n = self.dim;
        let b = (0..n * n)
            .map(|ix| {
                let (k, l) = (ix / n, ix % n);
                self.eta[k] * self.get(l, k) * self.eta[l]
            })
            .collect();
        Self { dim: n, b, eta: self.eta.clone() }
    }

    /// Contravariant frame components in the new frame: `w'^(k) = (b⁻¹)^(k)_(l) w^(l)`.
    pub fn transform_components(&self, w: &[T]) -> Vec<T> {
        let inv = self.inverse();
        let n = self.dim;
        (0..n).map(|k| (0..n).fold(T::zero(), |s, l| s + inv.get(k, l) * w[l])).collect()
    }
}

/// The frame `e'_(k) = b^(l)_(k) e_(l)`.
pub fn boost_frame<T: Real>(frame: &Frame<T>, map: &LorentzFrameMap<T>) -> Result<Frame<T>> {
    let n = frame.dim();
    if map.dim() != n || map.eta() != frame.eta() {
        return Err(Error::InvalidParameter("map and frame have different frame metrics".into()));
    }
    let mut vectors = vec![T::zero(); n * n];
    for k in 0..n {
        for l in 0..n {
            let c = map.get(l, k);
            for i in 0..n {
                vectors[k * n + i] += c * frame.e(i, l);
            }
        }
    }
    Frame::from_vectors(vectors, frame.eta().to_vec())
}

/// Outcome of transforming a frame and its components together.
#[derive(Clone, Debug, PartialEq)]
pub struct InvarianceReport<T> {
    pub new_frame: Frame<T>,
    pub new_components: Vec<T>,
    /// `w'^(k) e'_(k)` in holonomic components.
    pub reconstructed: Vec<T>,
    /// `w^(k) e_(k)` in holonomic components.
    pub original: Vec<T>,
    pub drift: T,
}

pub fn invariance_check<T: Real>(
    frame: &Frame<T>,
    components: &[T],
    map: &LorentzFrameMap<T>,
) -> Result<InvarianceReport<T>> {
    let new_frame = boost_frame(frame, map)?;
    let new_components = map.transform_components(components);
    let reconstructed = new_frame.to_holonomic(&new_components);
    let original = frame.to_holonomic(components);
    let drift = reconstructed.iter().zip(&original).fold(T::zero(), |m, (a, b)| m.max((*a - *b).abs()));
    Ok(InvarianceReport { new_frame, new_components, reconstructed, original, drift })
}
