use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::tensor::Point;

use super::frame::FrameField;

/// How sampled points are joined into a curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Interpolation {
    /// Straight chart segments between samples (exact for polygons).
    Linear,
    /// Uniform Catmull–Rom cubic Hermite segments.
    CatmullRom,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadratureConfig {
    /// Gauss–Legendre nodes per segment (1..=5).
    pub points: usize,
    pub interpolation: Interpolation,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self { points: 4, interpolation: Interpolation::CatmullRom }
    }
}

fn gauss_legendre(points: usize) -> Result<(&'static [f64], &'static [f64])> {
    const X1: [f64; 1] = [0.0];
    const W1: [f64; 1] = [2.0];
    const X2: [f64; 2] = [-0.577_350_269_189_625_8, 0.577_350_269_189_625_8];
    const W2: [f64; 2] = [1.0, 1.0];
    const X3: [f64; 3] = [-0.774_596_669_241_483_4, 0.0, 0.774_596_669_241_483_4];
    const W3: [f64; 3] = [0.555_555_555_555_555_6, 0.888_888_888_888_888_9, 0.555_555_555_555_555_6];
    const X4: [f64; 4] = [-0.861_136_311_594_052_6, -0.339_981_043_584_856_3, 0.339_981_043_584_856_3, 0.861_136_311_594_052_6];
    const W4: [f64; 4] = [0.347_854_845_137_453_9, 0.652_145_154_862_546_1, 0.652_145_154_862_546_1, 0.347_854_845_137_453_9];
    const X5: [f64; 5] = [-0.906_179_845_938_664, -0.538_469_310_105_683_1, 0.0, 0.538_469_310_105_683_1, 0.906_179_845_938_664];
    const W5: [f64; 5] = [0.236_926_885_056_189_1, 0.478_628_670_499_366_5, 0.568_888_888_888_888_9, 0.478_628_670_499_366_5, 0.236_926_885_056_189_1];
    match points {
        1 => Ok((&X1, &W1)),
        2 => Ok((&X2, &W2)),
        3 => Ok((&X3, &W3)),
        4 => Ok((&X4, &W4)),
        5 => Ok((&X5, &W5)),
        _ => Err(Error::InvalidParameter(format!("unsupported quadrature order {points}"))),
    }
}

/// Integrates the dual form `e^(index)_k dx^k` along a sampled curve.
fn integrate_curve<T: Real>(
    frame: &FrameField<T>,
    pts: &[Point<T>],
    closed: bool,
    index: usize,
    cfg: &QuadratureConfig,
) -> Result<T> {
    let (xs, ws) = gauss_legendre(cfg.points)?;
    let m = pts.len();
    let n = frame.dim();
    let segs = if closed { m } else { m - 1 };
    let at = |j: isize| -> &[T] {
        let k = if closed { j.rem_euclid(m as isize) as usize } else { j.clamp(0, m as isize - 1) as usize };
        pts[k].coords()
    };
    let tangent = |j: isize| -> Vec<T> {
        let half = T::lit(0.5);
        if !closed && j == 0 {
            (0..n).map(|i| at(1)[i] - at(0)[i]).collect()
        } else if !closed && j == m as isize - 1 {
            (0..n).map(|i| at(j)[i] - at(j - 1)[i]).collect()
        } else {
            (0..n).map(|i| half * (at(j + 1)[i] - at(j - 1)[i])).collect()
        }
    };
    let mut total = T::zero();
    for s in 0..segs {
        let j = s as isize;
        let (p0, p1) = (at(j), at(j + 1));
        let (m0, m1) = match cfg.interpolation {
            Interpolation::Linear => (vec![T::zero(); n], vec![T::zero(); n]),
            Interpolation::CatmullRom => (tangent(j), tangent(j + 1)),
        };
        let mut seg = T::zero();
        for (&xg, &wg) in xs.iter().zip(ws) {
            let t = T::lit(0.5 * (xg + 1.0));
            let (x, dx) = match cfg.interpolation {
                Interpolation::Linear => (
                    (0..n).map(|i| p0[i] + t * (p1[i] - p0[i])).collect::<Vec<_>>(),
                    (0..n).map(|i| p1[i] - p0[i]).collect::<Vec<_>>(),
                ),
                Interpolation::CatmullRom => hermite(p0, p1, &m0, &m1, t),
            };
            let f = frame.at(&Point::new(x)?)?;
            let form = f.dual(index);
            let v = (0..n).fold(T::zero(), |acc, i| acc + form[i] * dx[i]);
            seg += T::lit(0.5 * wg) * v;
        }
        total += seg;
    }
    Ok(total)
}

fn hermite<T: Real>(p0: &[T], p1: &[T], m0: &[T], m1: &[T], t: T) -> (Vec<T>, Vec<T>) {
    let (one, two, three, six, four) = (T::one(), T::lit(2.0), T::lit(3.0), T::lit(6.0), T::lit(4.0));
    let t2 = t * t;
    let t3 = t2 * t;
    let h00 = two * t3 - three * t2 + one;
    let h10 = t3 - two * t2 + t;
    let h01 = -two * t3 + three * t2;
    let h11 = t3 - t2;
    let d00 = six * t2 - six * t;
    let d10 = three * t2 - four * t + one;
    let d01 = -six * t2 + six * t;
    let d11 = three * t2 - two * t;
    let n = p0.len();
    let x = (0..n).map(|i| h00 * p0[i] + h10 * m0[i] + h01 * p1[i] + h11 * m1[i]).collect();
    let dx = (0..n).map(|i| d00 * p0[i] + d10 * m0[i] + d01 * p1[i] + d11 * m1[i]).collect();
    (x, dx)
}

/// `Δx^(i) = ∮ e^(i)_k dx^k` around a closed sampled loop (first point repeated last).
pub fn loop_integral<T: Real>(
    frame: &FrameField<T>,
    loop_pts: &[Point<T>],
    index: usize,
    cfg: &QuadratureConfig,
) -> Result<T> {
    if loop_pts.len() < 4 {
        return Err(Error::InvalidParameter("a loop needs at least three distinct points".into()));
    }
    let first = loop_pts[0].coords();
    let last = loop_pts[loop_pts.len() - 1].coords();
    let scale = first.iter().fold(T::one(), |m, x| m.max(x.abs()));
    let gap = first.iter().zip(last).fold(T::zero(), |m, (a, b)| m.max((*a - *b).abs()));
    if gap > T::lit(1e-9) * scale {
        return Err(Error::OpenLoop { gap: gap.to_f64_lossy() });
    }
    integrate_curve(frame, &loop_pts[..loop_pts.len() - 1], true, index, cfg)
}

/// `∫ e^(i)_k dx^k` along an open sampled path.
pub fn line_integral<T: Real>(
    frame: &FrameField<T>,
    path: &[Point<T>],
    index: usize,
    cfg: &QuadratureConfig,
) -> Result<T> {
    if path.len() < 2 {
        return Err(Error::InvalidParameter("a path needs at least two points".into()));
    }
    integrate_curve(frame, path, false, index, cfg)
}
