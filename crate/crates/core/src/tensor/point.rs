use crate::error::{Error, Result};
use crate::scalar::Real;

/// A point of a chart: `n >= 2` finite coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Point<T> {
    coords: Vec<T>,
}

impl<T: Real> Point<T> {
    pub fn new(coords: Vec<T>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::InvalidPoint(format!(
                "dimension {} < 2",
                coords.len()
            )));
        }
        if let Some(i) = coords.iter().position(|c| !c.is_finite()) {
            return Err(Error::InvalidPoint(format!("coordinate {i} is not finite")));
        }
        Ok(Self { coords })
    }

    pub fn from_slice(coords: &[T]) -> Result<Self> {
        Self::new(coords.to_vec())
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<T> {
        self.coords
    }

    /// Copy of the point displaced by `h` along `axis`.
    ///
    /// Finite-ness is not re-checked; callers step by small finite amounts.
    pub fn shifted(&self, axis: usize, h: T) -> Self {
        let mut coords = self.coords.clone();
        coords[axis] += h;
        Self { coords }
    }

    /// Copy displaced by `t * dir`.
    pub fn offset(&self, dir: &[T], t: T) -> Self {
        let coords = self
            .coords
            .iter()
            .zip(dir)
            .map(|(&x, &d)| x + t * d)
            .collect();
        Self { coords }
    }
}

impl<T> std::ops::Index<usize> for Point<T> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        &self.coords[i]
    }
}
