use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::scalar::Real;

use super::linalg;

/// Which basis the indices of a component array refer to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    /// Coordinate basis `∂_i` / `dx^i` of the chart.
    Holonomic,
    /// Parenthesised frame indices `e_(i)` / `e^(i)`.
    Frame,
}

/// Symmetry declared on the last two covariant indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symmetry {
    Symmetric,
    Antisymmetric,
}

/// Dense components of a `(p, q)` tensor in dimension `n`.
///
/// The multi-index lists the `p` contravariant indices first, then the `q`
/// covariant ones; storage is row-major over that multi-index.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor<T> {
    dim: usize,
    upper: usize,
    lower: usize,
    basis: Basis,
    data: Vec<T>,
}

impl<T: Real> Tensor<T> {
    pub fn zeros(dim: usize, upper: usize, lower: usize) -> Self {
        Self {
            dim,
            upper,
            lower,
            basis: Basis::Holonomic,
            data: vec![T::zero(); dim.pow((upper + lower) as u32)],
        }
    }

    pub fn from_vec(dim: usize, upper: usize, lower: usize, data: Vec<T>) -> Result<Self> {
        let expected = dim.pow((upper + lower) as u32);
        if data.len() != expected {
            return Err(Error::Shape(format!(
                "({upper},{lower}) tensor in dimension {dim} needs {expected} values, got {}",
                data.len()
            )));
        }
        Ok(Self { dim, upper, lower, basis: Basis::Holonomic, data })
    }

    /// Builds components by evaluating `f` on every multi-index.
    pub fn from_fn(dim: usize, upper: usize, lower: usize, mut f: impl FnMut(&[usize]) -> T) -> Self {
        let mut t = Self::zeros(dim, upper, lower);
        let rank = upper + lower;
        let mut idx = vec![0usize; rank];
        for k in 0..t.data.len() {
            t.data[k] = f(&idx);
            for pos in (0..rank).rev() {
                idx[pos] += 1;
                if idx[pos] < dim {
                    break;
                }
                idx[pos] = 0;
            }
        }
        t
    }

    pub fn scalar(v: T, dim: usize) -> Self {
        Self { dim, upper: 0, lower: 0, basis: Basis::Holonomic, data: vec![v] }
    }

    pub fn vector(v: &[T]) -> Self {
        Self { dim: v.len(), upper: 1, lower: 0, basis: Basis::Holonomic, data: v.to_vec() }
    }

    pub fn covector(v: &[T]) -> Self {
        Self { dim: v.len(), upper: 0, lower: 1, basis: Basis::Holonomic, data: v.to_vec() }
    }

    /// Kronecker delta `δ^i_j`.
    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, 1, 1, |ix| if ix[0] == ix[1] { T::one() } else { T::zero() })
    }

    /// Diagonal `(0,2)` tensor.
    pub fn diagonal(diag: &[T]) -> Self {
        Self::from_fn(diag.len(), 0, 2, |ix| if ix[0] == ix[1] { diag[ix[0]] } else { T::zero() })
    }

    pub fn with_basis(mut self, basis: Basis) -> Self {
        self.basis = basis;
        self
    }

    /// Validates a declared symmetry of the last two covariant indices.
    pub fn with_symmetry(self, sym: Symmetry, tol: T) -> Result<Self> {
        self.check_symmetry(sym, tol)?;
        Ok(self)
    }

    pub fn check_symmetry(&self, sym: Symmetry, tol: T) -> Result<()> {
        if self.lower < 2 {
            return Err(Error::Symmetry("fewer than two covariant indices".into()));
        }
        let n = self.dim;
        let stride_last = 1;
        let stride_prev = n;
        let block = n * n;
        let scale = self.max_abs().max(T::one());
        for base in (0..self.data.len()).step_by(block) {
            for i in 0..n {
                for j in 0..n {
                    let a = self.data[base + i * stride_prev + j * stride_last];
                    let b = self.data[base + j * stride_prev + i * stride_last];
                    let r = match sym {
                        Symmetry::Symmetric => a - b,
                        Symmetry::Antisymmetric => a + b,
                    };
                    if !(r.abs() <= tol * scale) {
                        return Err(Error::Symmetry(format!(
                            "{sym:?} violated by {:e}",
                            r.abs().to_f64_lossy()
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `(p, q)`: contravariant and covariant rank.
    pub fn shape(&self) -> (usize, usize) {
        (self.upper, self.lower)
    }

    pub fn rank(&self) -> usize {
        self.upper + self.lower
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [T] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<T> {
        self.data
    }

    pub fn offset(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.rank(), "multi-index rank");
        idx.iter().fold(0, |acc, &i| {
            debug_assert!(i < self.dim);
            acc * self.dim + i
        })
    }

    pub fn get(&self, idx: &[usize]) -> T {
        self.data[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], v: T) {
        let k = self.offset(idx);
        self.data[k] = v;
    }

    fn same_layout(&self, other: &Self) -> Result<()> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch);
        }
        if self.dim != other.dim || self.upper != other.upper || self.lower != other.lower {
            return Err(Error::Shape(format!(
                "({},{}) in dim {} vs ({},{}) in dim {}",
                self.upper, self.lower, self.dim, other.upper, other.lower, other.dim
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_layout(other)?;
        let mut out = self.clone();
        out.data.iter_mut().zip(&other.data).for_each(|(a, &b)| *a += b);
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_layout(other)?;
        let mut out = self.clone();
        out.data.iter_mut().zip(&other.data).for_each(|(a, &b)| *a -= b);
        Ok(out)
    }

    pub fn scale(&self, s: T) -> Self {
        let mut out = self.clone();
        out.data.iter_mut().for_each(|a| *a *= s);
        out
    }

    /// `self += s * other` in place.
    pub fn axpy(&mut self, s: T, other: &Self) -> Result<()> {
        self.same_layout(other)?;
        self.data.iter_mut().zip(&other.data).for_each(|(a, &b)| *a += s * b);
        Ok(())
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, x| m.max(x.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }

    /// Contracts index pairs `(i of self, j of other)` with opposite variance.
    ///
    /// Result layout: free upper indices of `self`, then of `other`, then free
    /// lower indices of `self`, then of `other`, each in original order.
    pub fn contract(&self, other: &Self, pairs: &[(usize, usize)]) -> Result<Self> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch);
        }
        if self.dim != other.dim {
            return Err(Error::Contraction(format!(
                "dimension {} vs {}",
                self.dim, other.dim
            )));
        }
        let (ra, rb) = (self.rank(), other.rank());
        let mut used_a = vec![false; ra];
        let mut used_b = vec![false; rb];
        for &(i, j) in pairs {
            if i >= ra || j >= rb {
                return Err(Error::Contraction(format!("index pair ({i},{j}) out of range")));
            }
            if used_a[i] || used_b[j] {
                return Err(Error::Contraction(format!("index pair ({i},{j}) reused")));
            }
            let up_a = i < self.upper;
            let up_b = j < other.upper;
            if up_a == up_b {
                return Err(Error::Contraction(format!(
                    "indices ({i},{j}) have the same variance"
                )));
            }
            used_a[i] = true;
            used_b[j] = true;
        }
        let free_a: Vec<usize> = (0..ra).filter(|&i| !used_a[i]).collect();
        let free_b: Vec<usize> = (0..rb).filter(|&j| !used_b[j]).collect();
        let mut slots: Vec<(bool, usize)> = Vec::new();
        slots.extend(free_a.iter().filter(|&&i| i < self.upper).map(|&i| (true, i)));
        slots.extend(free_b.iter().filter(|&&j| j < other.upper).map(|&j| (false, j)));
        let new_upper = slots.len();
        slots.extend(free_a.iter().filter(|&&i| i >= self.upper).map(|&i| (true, i)));
        slots.extend(free_b.iter().filter(|&&j| j >= other.upper).map(|&j| (false, j)));
        let new_lower = slots.len() - new_upper;

        let n = self.dim;
        let np = pairs.len();
        let mut ia = vec![0usize; ra];
        let mut ib = vec![0usize; rb];
        let mut sum_idx = vec![0usize; np];
        let out = Self::from_fn(n, new_upper, new_lower, |free| {
            for (k, &(is_a, pos)) in slots.iter().enumerate() {
                if is_a {
                    ia[pos] = free[k];
                } else {
                    ib[pos] = free[k];
                }
            }
            sum_idx.iter_mut().for_each(|s| *s = 0);
            let mut acc = T::zero();
            loop {
                for (k, &(i, j)) in pairs.iter().enumerate() {
                    ia[i] = sum_idx[k];
                    ib[j] = sum_idx[k];
                }
                acc += self.get(&ia) * other.get(&ib);
                let mut pos = np;
                loop {
                    if pos == 0 {
                        return acc;
                    }
                    pos -= 1;
                    sum_idx[pos] += 1;
                    if sum_idx[pos] < n {
                        break;
                    }
                    sum_idx[pos] = 0;
                }
            }
        });
        Ok(out.with_basis(self.basis))
    }

    /// Trace over contravariant index `i` and covariant index `j` (positions in the multi-index).
    pub fn trace(&self, i: usize, j: usize) -> Result<Self> {
        if i >= self.upper || j < self.upper || j >= self.rank() {
            return Err(Error::Contraction(format!(
                "trace needs an upper and a lower index, got ({i},{j})"
            )));
        }
        let n = self.dim;
        let rank = self.rank();
        let free: Vec<usize> = (0..rank).filter(|&k| k != i && k != j).collect();
        let mut full = vec![0usize; rank];
        let out = Self::from_fn(n, self.upper - 1, self.lower - 1, |ix| {
            for (k, &pos) in free.iter().enumerate() {
                full[pos] = ix[k];
            }
            let mut acc = T::zero();
            for d in 0..n {
                full[i] = d;
                full[j] = d;
                acc += self.get(&full);
            }
            acc
        });
        Ok(out.with_basis(self.basis))
    }

    /// Interprets a rank-2 tensor as an `n x n` row-major matrix.
    pub fn as_matrix(&self) -> Result<&[T]> {
        if self.rank() != 2 {
            return Err(Error::Shape(format!("rank {} is not a matrix", self.rank())));
        }
        Ok(&self.data)
    }
}

/// Inverse metric `g^ij` of a symmetric `(0,2)` tensor.
///
/// Fails with [`Error::Degenerate`] when `|det g|` is below `1e-12` relative to the
/// product of the row norms of `g`.
pub fn invert_metric<T: Real>(g: &Tensor<T>) -> Result<Tensor<T>> {
    invert_metric_with_tol(g, T::lit(1e-12))
}

pub fn invert_metric_with_tol<T: Real>(g: &Tensor<T>, rel_tol: T) -> Result<Tensor<T>> {
    if g.shape() != (0, 2) {
        return Err(Error::Shape(format!("metric must be (0,2), got {:?}", g.shape())));
    }
    let n = g.dim();
    let inv = linalg::invert(g.data(), n, rel_tol)?;
    Ok(Tensor { dim: n, upper: 2, lower: 0, basis: g.basis(), data: inv })
}

impl<T: Real, const N: usize> Index<[usize; N]> for Tensor<T> {
    type Output = T;
    fn index(&self, idx: [usize; N]) -> &T {
        &self.data[self.offset(&idx)]
    }
}

impl<T: Real, const N: usize> IndexMut<[usize; N]> for Tensor<T> {
    fn index_mut(&mut self, idx: [usize; N]) -> &mut T {
        let k = self.offset(&idx);
        &mut self.data[k]
    }
}
