use crate::error::{Error, Result};
use crate::frames::{boost_frame, line_integral, Frame, FrameField, Interpolation, LorentzFrameMap, QuadratureConfig};
use crate::scalar::Real;
use crate::spacetimes::Schwarzschild;
use crate::tensor::Point;

/// A static observer's orthonormal frame and the frame of an observer moving through it.
#[derive(Clone, Debug, PartialEq)]
pub struct BoostFrames<T> {
    pub stationary: Frame<T>,
    pub moving: Frame<T>,
    pub map: LorentzFrameMap<T>,
    /// Speed measured by the static observer, `V`.
    pub speed: T,
    pub beta: T,
    pub gamma: T,
}

fn eta<T: Real>() -> Vec<T> {
    vec![T::one(), -T::one(), -T::one(), -T::one()]
}

/// Static orthonormal frame `e_(0) = ∂_t/(c√f)`, `e_(1) = √f ∂_r`, `e_(2) = ∂_φ/r`,
/// `e_(3) = ∂_θ/(r sin φ)` with `f = (r−rg)/r`.
pub fn static_frame<T: Real>(space: &Schwarzschild<T>, p: &Point<T>) -> Result<Frame<T>> {
    space.check_region(p)?;
    let (r, phi) = (p[1], p[2]);
    let s = phi.sin();
    if s.abs() < T::lit(1e-12) {
        return Err(Error::Region("static frame is singular on the polar axis".into()));
    }
    let f = (r - space.rg) / r;
    let diag = [T::one() / (space.c * f.sqrt()), f.sqrt(), T::one() / r, T::one() / (r * s)];
    let mut v = vec![T::zero(); 16];
    for k in 0..4 {
        v[k * 4 + k] = diag[k];
    }
    Frame::from_vectors(v, eta())
}

/// Boost of the static frame at `p` toward an observer whose coordinate velocity is
/// proportional to `∂_t + rate ∂_axis`. The measured speed is `V = c √(|g_aa|/g_tt) rate`.
pub fn boost_along<T: Real>(space: &Schwarzschild<T>, p: &Point<T>, axis: usize, rate: T) -> Result<BoostFrames<T>> {
    if !(1..4).contains(&axis) {
        return Err(Error::InvalidParameter(format!("boost axis must be spatial, got {axis}")));
    }
    let stationary = static_frame(space, p)?;
    let g = space.metric_at(p)?;
    let speed = space.c * (g[[axis, axis]].abs() / g[[0, 0]]).sqrt() * rate;
    let beta = speed / space.c;
    let map = LorentzFrameMap::boost(eta(), 0, axis, beta)?;
    let moving = boost_frame(&stationary, &map)?;
    let gamma = T::one() / (T::one() - beta * beta).sqrt();
    Ok(BoostFrames { stationary, moving, map, speed, beta, gamma })
}

/// Frames of a static and an orbiting observer at radius `r` with `dφ = ω dt`, at the
/// point `(0, r, π/2, 0)`. `V = √(r/(r−rg)) r ω`.
pub fn orbital_boost_frame<T: Real>(space: &Schwarzschild<T>, r: T, omega: T) -> Result<BoostFrames<T>> {
    let p = Point::new(vec![T::zero(), r, T::FRAC_PI_2(), T::zero()])?;
    boost_along(space, &p, 2, omega)
}

/// Frames of a static and a radially moving observer with `dr = v dt`. `V = r v/(r−rg)`.
pub fn radial_boost_frame<T: Real>(space: &Schwarzschild<T>, r: T, v: T) -> Result<BoostFrames<T>> {
    let p = Point::new(vec![T::zero(), r, T::FRAC_PI_2(), T::zero()])?;
    boost_along(space, &p, 1, v)
}

/// Equatorial worldline `(t, r, π/2, ωt)` over one revolution, sampled at `segments + 1` points.
fn equatorial_orbit<T: Real>(r: T, omega: T, segments: usize) -> Result<Vec<Point<T>>> {
    let period = T::TAU() / omega;
    (0..=segments)
        .map(|k| {
            let t = period * T::lit(k as f64 / segments as f64);
            Point::new(vec![t, r, T::FRAC_PI_2(), omega * t])
        })
        .collect()
}

fn check_orbit<T: Real>(omega: T, segments: usize) -> Result<()> {
    if !(omega > T::zero()) || segments < 2 {
        return Err(Error::InvalidParameter("need ω > 0 and at least two segments".into()));
    }
    Ok(())
}

/// `∫ √((r−rg)/r) (1 − 1/γ) c dt / c` over one equatorial revolution, with `γ` read off the
/// boosted frame at every node (composite Simpson). Returns seconds when `c` is in cm/s.
pub fn boost_time_delay<T: Real>(space: &Schwarzschild<T>, r: T, omega: T, segments: usize) -> Result<T> {
    check_orbit(omega, segments)?;
    let segments = segments + segments % 2;
    let pts = equatorial_orbit(r, omega, segments)?;
    let h = T::TAU() / omega / T::lit(segments as f64);
    let f = (r - space.rg) / r;
    let mut acc = T::zero();
    for (k, p) in pts.iter().enumerate() {
        let b = boost_along(space, p, 3, omega)?;
        let gamma = b.moving.e(0, 0) / b.stationary.e(0, 0);
        let gamma_beta = b.moving.e(3, 0) / b.stationary.e(3, 3);
        let beta2 = (gamma_beta / gamma) * (gamma_beta / gamma);
        // 1 − 1/γ without cancellation.
        let integrand = f.sqrt() * beta2 / (T::one() + (T::one() - beta2).sqrt());
        let w = if k == 0 || k == segments {
            T::one()
        } else if k % 2 == 1 {
            T::lit(4.0)
        } else {
            T::lit(2.0)
        };
        acc += w * integrand;
    }
    Ok(acc * h / T::lit(3.0))
}

/// `∫ (e^(0) − e′^(0))` along one equatorial revolution: the static observer's time form
/// minus the orbiting observer's. Equals `s₁ − s₂` (cm when `c` is in cm/s).
pub fn orbit_clock_gap<T: Real>(space: &Schwarzschild<T>, r: T, omega: T, segments: usize) -> Result<T> {
    check_orbit(omega, segments)?;
    let sp = *space;
    let stat = FrameField::new(eta(), move |p: &Point<T>| static_frame(&sp, p));
    let moving = FrameField::new(eta(), move |p: &Point<T>| Ok(boost_along(&sp, p, 3, omega)?.moving));
    let path = equatorial_orbit(r, omega, segments)?;
    let cfg = QuadratureConfig { points: 4, interpolation: Interpolation::Linear };
    let s1 = line_integral(&stat, &path, 0, &cfg)?;
    let s2 = line_integral(&moving, &path, 0, &cfg)?;
    Ok(s1 - s2)
}
