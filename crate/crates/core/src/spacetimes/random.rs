use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::geometry::{ConnectionField, ConnectionKind, LeviCivitaField, MetricAffineSpace, MetricField};
use crate::scalar::Real;
use crate::tensor::{ConstantField, FieldRef, Point, SumField, Tensor};

use super::poly::PolyField;

/// A randomly generated metric-affine space together with the pieces it was built from.
pub struct RandomSpace<T> {
    pub space: MetricAffineSpace<T>,
    /// Smooth symmetric deviation `A` added to the Christoffel symbols.
    pub shift: FieldRef<T>,
    /// Constant part of the connection antisymmetric in its lower pair.
    pub antisymmetric: Tensor<T>,
    pub seed: u64,
}

/// Options for [`random_space`].
#[derive(Clone, Copy, Debug)]
pub struct RandomSpaceOptions {
    pub amplitude: f64,
    pub torsion: bool,
    pub nonmetric: bool,
    pub lorentzian: bool,
}

impl Default for RandomSpaceOptions {
    fn default() -> Self {
        Self { amplitude: 0.05, torsion: true, nonmetric: true, lorentzian: false }
    }
}

/// Flat metric plus small quadratic perturbations; connection = Christoffel + symmetric
/// quadratic `A` + constant antisymmetric part. Nondegenerate for `|x_i| ≤ 0.5`.
pub fn random_space<T: Real>(seed: u64, n: usize, opts: RandomSpaceOptions) -> Result<RandomSpace<T>> {
    let amp = opts.amplitude.min(0.05);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let diag: Vec<T> = (0..n)
        .map(|i| if opts.lorentzian && i > 0 { -T::one() } else { T::one() })
        .collect();
    let signature = diag.iter().map(|d| if *d > T::zero() { 1 } else { -1 }).collect();
    let g = PolyField::random(&mut rng, n, (0, 2), amp, true).add_diagonal(&diag);
    let metric = MetricField::new(Arc::new(g), signature)?;
    let lc: FieldRef<T> = Arc::new(LeviCivitaField { metric: metric.clone() });
    let shift: FieldRef<T> = if opts.nonmetric {
        Arc::new(PolyField::random(&mut rng, n, (1, 2), amp, true))
    } else {
        Arc::new(ConstantField(Tensor::zeros(n, 1, 2)))
    };
    let mut anti = Tensor::zeros(n, 1, 2);
    if opts.torsion {
        for a in 0..n {
            for b in 0..n {
                for c in 0..b {
                    let v = T::lit(rng.gen_range(-amp..amp));
                    anti[[a, b, c]] = v;
                    anti[[a, c, b]] = -v;
                }
            }
        }
    }
    let field = SumField::new(vec![
        (T::one(), lc),
        (T::one(), shift.clone()),
        (T::one(), Arc::new(ConstantField(anti.clone())) as FieldRef<T>),
    ]);
    let conn = ConnectionField::new(Arc::new(field), ConnectionKind::General)?;
    Ok(RandomSpace { space: MetricAffineSpace::new(metric, conn)?, shift, antisymmetric: anti, seed })
}

/// Random quadratic vector field with O(1) coefficients.
pub fn random_vector_field<T: Real>(seed: u64, n: usize) -> FieldRef<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_f1e1d);
    Arc::new(PolyField::random(&mut rng, n, (1, 0), 1.0, false))
}

/// Random smooth symmetric `(1,2)` field of amplitude `amp`.
pub fn random_symmetric_connection_shift<T: Real>(seed: u64, n: usize, amp: f64) -> FieldRef<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xa115_3e7);
    Arc::new(PolyField::random(&mut rng, n, (1, 2), amp, true))
}

/// Random sample point with coordinates in `[-r, r]`.
pub fn random_point<T: Real>(seed: u64, n: usize, r: f64) -> Point<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9017);
    Point::new((0..n).map(|_| T::lit(rng.gen_range(-r..r))).collect()).expect("finite coordinates")
}
