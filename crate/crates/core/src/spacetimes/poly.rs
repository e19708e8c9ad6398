use rand::Rng;

use crate::error::Result;
use crate::scalar::Real;
use crate::tensor::{Point, Tensor, TensorField};

/// `a + b·x + ½ xᵀ C x` with symmetric `C`.
#[derive(Clone, Debug)]
pub struct Quadratic<T> {
    pub a: T,
    pub b: Vec<T>,
    pub c: Vec<T>,
}

impl<T: Real> Quadratic<T> {
    pub fn value(&self, x: &[T]) -> T {
        let n = x.len();
        let mut v = self.a;
        for k in 0..n {
            v += self.b[k] * x[k];
            let mut cx = T::zero();
            for l in 0..n {
                cx += self.c[k * n + l] * x[l];
            }
            v += T::lit(0.5) * x[k] * cx;
        }
        v
    }

    pub fn derivative(&self, x: &[T], axis: usize) -> T {
        let n = x.len();
        let mut v = self.b[axis];
        for l in 0..n {
            v += self.c[axis * n + l] * x[l];
        }
        v
    }

    pub fn random<R: Rng>(rng: &mut R, n: usize, amp: f64) -> Self {
        let mut u = |s: f64| T::lit(rng.gen_range(-1.0..1.0) * s);
        let a = u(amp);
        let b = (0..n).map(|_| u(amp / n as f64)).collect();
        let mut c = vec![T::zero(); n * n];
        for k in 0..n {
            for l in k..n {
                let v = u(amp / (n * n) as f64);
                c[k * n + l] = v;
                c[l * n + k] = v;
            }
        }
        Self { a, b, c }
    }
}

/// Tensor field whose components are quadratic polynomials; derivatives are analytic.
#[derive(Clone, Debug)]
pub struct PolyField<T> {
    dim: usize,
    shape: (usize, usize),
    comps: Vec<Quadratic<T>>,
}

impl<T: Real> PolyField<T> {
    pub fn new(dim: usize, shape: (usize, usize), comps: Vec<Quadratic<T>>) -> Self {
        assert_eq!(comps.len(), dim.pow((shape.0 + shape.1) as u32));
        Self { dim, shape, comps }
    }

    /// Random components; `symmetric_last_pair` mirrors the last two indices.
    pub fn random<R: Rng>(
        rng: &mut R,
        dim: usize,
        shape: (usize, usize),
        amp: f64,
        symmetric_last_pair: bool,
    ) -> Self {
        let len = dim.pow((shape.0 + shape.1) as u32);
        let mut comps: Vec<Quadratic<T>> = (0..len).map(|_| Quadratic::random(rng, dim, amp)).collect();
        if symmetric_last_pair {
            let block = dim * dim;
            for base in (0..len).step_by(block) {
                for i in 0..dim {
                    for j in 0..i {
                        comps[base + i * dim + j] = comps[base + j * dim + i].clone();
                    }
                }
            }
        }
        Self { dim, shape, comps }
    }

    /// Adds a constant to the diagonal of a rank-2 field.
    pub fn add_diagonal(mut self, diag: &[T]) -> Self {
        for (i, d) in diag.iter().enumerate() {
            self.comps[i * self.dim + i].a += *d;
        }
        self
    }
}

impl<T: Real> TensorField<T> for PolyField<T> {
    fn dim(&self) -> usize {
        self.dim
    }
    fn shape(&self) -> (usize, usize) {
        self.shape
    }
    fn eval(&self, p: &Point<T>) -> Result<Tensor<T>> {
        let x = p.coords();
        Tensor::from_vec(self.dim, self.shape.0, self.shape.1, self.comps.iter().map(|q| q.value(x)).collect())
    }
    fn partial(&self, p: &Point<T>, axis: usize) -> Result<Tensor<T>> {
        let x = p.coords();
        Tensor::from_vec(
            self.dim,
            self.shape.0,
            self.shape.1,
            self.comps.iter().map(|q| q.derivative(x, axis)).collect(),
        )
    }
}
