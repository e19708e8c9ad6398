//! Small dense linear algebra on row-major `n x n` slices.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// LU factorisation with partial pivoting; returns (lu, permutation, sign) or `None` if singular.
fn lu<T: Real>(a: &[T], n: usize) -> (Vec<T>, Vec<usize>, T, bool) {
    let mut m = a.to_vec();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut sign = T::one();
    let mut singular = false;
    for k in 0..n {
        let mut piv = k;
        let mut best = m[k * n + k].abs();
        for i in k + 1..n {
            let v = m[i * n + k].abs();
            if v > best {
                best = v;
                piv = i;
            }
        }
        if best == T::zero() {
            singular = true;
            continue;
        }
        if piv != k {
            for j in 0..n {
                m.swap(k * n + j, piv * n + j);
            }
            perm.swap(k, piv);
            sign = -sign;
        }
        let d = m[k * n + k];
        for i in k + 1..n {
            let f = m[i * n + k] / d;
            m[i * n + k] = f;
            for j in k + 1..n {
                let t = m[k * n + j];
                m[i * n + j] -= f * t;
            }
        }
    }
    (m, perm, sign, singular)
}

pub fn determinant<T: Real>(a: &[T], n: usize) -> T {
    let (m, _, sign, singular) = lu(a, n);
    if singular {
        return T::zero();
    }
    (0..n).fold(sign, |acc, i| acc * m[i * n + i])
}

/// Inverse of a square matrix.
///
/// Fails when `|det|` is at most `rel_tol` times the product of the row norms (the
/// Hadamard bound), a measure that is unchanged by rescaling any row.
pub fn invert<T: Real>(a: &[T], n: usize, rel_tol: T) -> Result<Vec<T>> {
    if a.len() != n * n {
        return Err(Error::Shape(format!("expected {} entries, got {}", n * n, a.len())));
    }
    let scale = (0..n).fold(T::one(), |p, i| {
        p * a[i * n..(i + 1) * n].iter().fold(T::zero(), |s, x| s + *x * *x).sqrt()
    });
    let (m, perm, sign, singular) = lu(a, n);
    let det = if singular {
        T::zero()
    } else {
        (0..n).fold(sign, |acc, i| acc * m[i * n + i])
    };
    if singular || scale == T::zero() || det.abs() <= rel_tol * scale {
        return Err(Error::Degenerate { det: det.abs().to_f64_lossy() });
    }
    let mut inv = vec![T::zero(); n * n];
    for col in 0..n {
        let mut x: Vec<T> = (0..n)
            .map(|i| if perm[i] == col { T::one() } else { T::zero() })
            .collect();
        for i in 0..n {
            for j in 0..i {
                let t = m[i * n + j] * x[j];
                x[i] -= t;
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let t = m[i * n + j] * x[j];
                x[i] -= t;
            }
            x[i] /= m[i * n + i];
        }
        for i in 0..n {
            inv[i * n + col] = x[i];
        }
    }
    Ok(inv)
}

/// Solves `a x = b`.
pub fn solve<T: Real>(a: &[T], b: &[T], n: usize) -> Result<Vec<T>> {
    let inv = invert(a, n, T::epsilon() * T::epsilon())?;
    Ok((0..n)
        .map(|i| (0..n).fold(T::zero(), |s, j| s + inv[i * n + j] * b[j]))
        .collect())
}

pub fn matmul<T: Real>(a: &[T], b: &[T], n: usize) -> Vec<T> {
    let mut c = vec![T::zero(); n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            for j in 0..n {
                c[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    c
}
