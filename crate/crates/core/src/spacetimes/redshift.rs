use crate::error::{Error, Result};
use crate::frames::{boost_frame, Frame, LorentzFrameMap};
use crate::ode::{integrate, IntegratorConfig, Problem};
use crate::scalar::Real;
use crate::tensor::Point;

use super::friedmann::{Friedmann, FriedmannChart};
use super::schwarzschild::Schwarzschild;

/// Closed-form and ODE values of a redshifted frequency.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RedshiftResult<T> {
    pub closed_form: T,
    pub ode: T,
    pub relative_difference: T,
}

fn check_radius<T: Real>(s: &Schwarzschild<T>, r: T) -> Result<()> {
    if !(r > s.rg) {
        return Err(Error::Region(format!("r = {r} is not outside rg = {}", s.rg)));
    }
    Ok(())
}

/// `ω_obs = ω_emit √(r_obs/(r_obs−rg)) / √(r_emit/(r_emit−rg))`, from `ω = ω₀ √(r/(r−rg))`.
pub fn radial_photon_redshift_closed_form<T: Real>(s: &Schwarzschild<T>, r_emit: T, r_obs: T, omega: T) -> Result<T> {
    check_radius(s, r_emit)?;
    check_radius(s, r_obs)?;
    let factor = |r: T| (r / (r - s.rg)).sqrt();
    Ok(omega * factor(r_obs) / factor(r_emit))
}

/// Integrates `dk^i = −Γ^i_kl k^k dx^l` along the radial null ray, parameterised by `r`.
///
/// The emitted wave vector is `k⁰ = (ω/c)√(r/(r−rg))`, `k¹ = ±c(r−rg)/r·k⁰`; the
/// observed frequency is `ω = c k⁰ √((r−rg)/r)`.
pub fn radial_photon_redshift_ode<T: Real>(
    s: &Schwarzschild<T>,
    r_emit: T,
    r_obs: T,
    omega: T,
    cfg: &IntegratorConfig<T>,
) -> Result<T> {
    check_radius(s, r_emit)?;
    check_radius(s, r_obs)?;
    if r_emit == r_obs {
        return Ok(omega);
    }
    let (rg, c) = (s.rg, s.c);
    let k0 = omega / c * (r_emit / (r_emit - rg)).sqrt();
    let dir = if r_obs > r_emit { T::one() } else { -T::one() };
    let k1 = dir * c * (r_emit - rg) / r_emit * k0;
    let half_pi = T::FRAC_PI_2();
    let space = *s;
    // State: (t, k0, k1); the angular part is fixed at φ = π/2.
    let mut problem = Problem {
        rhs: move |r: T, y: &[T], dy: &mut [T]| {
            let p = Point::new(vec![y[0], r, half_pi, T::zero()])?;
            let g = super::schwarzschild_connection(&space, &p)?;
            let k = [y[1], y[2]];
            // dx^l/dr = k^l / k^1
            let inv = T::one() / k[1];
            dy[0] = k[0] * inv;
            for (slot, i) in [(1usize, 0usize), (2, 1)] {
                let mut acc = T::zero();
                for a in 0..2 {
                    for b in 0..2 {
                        acc += g[[i, a, b]] * k[a] * k[b];
                    }
                }
                dy[slot] = -acc * inv;
            }
            Ok(())
        },
        location_len: 1,
    };
    let (out, _) = integrate(&mut problem, r_emit, &[T::zero(), k0, k1], &[r_obs], cfg)?;
    let k0_obs = out[0][1];
    Ok(c * k0_obs * ((r_obs - rg) / r_obs).sqrt())
}

/// Radial photon frequency shift computed in closed form and by ODE integration.
pub fn radial_photon_redshift<T: Real>(s: &Schwarzschild<T>, r_emit: T, r_obs: T, omega: T) -> Result<RedshiftResult<T>> {
    let closed_form = radial_photon_redshift_closed_form(s, r_emit, r_obs, omega)?;
    let ode = radial_photon_redshift_ode(s, r_emit, r_obs, omega, &IntegratorConfig::default())?;
    Ok(RedshiftResult { closed_form, ode, relative_difference: ((ode - closed_form) / closed_form).abs() })
}

/// `K = ω₂/ω₁ = a(t₁)/a(t₂)` for a radial null ray emitted at `t₁` and received at `t₂`.
pub fn friedmann_redshift<T: Real>(f: &Friedmann<T>, t1: T, t2: T) -> Result<T> {
    let (a1, a2) = (f.scale.value(t1), f.scale.value(t2));
    if !(a1 > T::zero() && a2 > T::zero()) {
        return Err(Error::Region("scale factor must be positive".into()));
    }
    Ok(a1 / a2)
}

/// `dK/dt₁` at fixed travel time: `(ȧ(t₁)a(t₂) − a(t₁)ȧ(t₂))/a(t₂)²`.
pub fn friedmann_redshift_rate<T: Real>(f: &Friedmann<T>, t1: T, t2: T) -> Result<T> {
    let (a1, a2) = (f.scale.value(t1), f.scale.value(t2));
    let (d1, d2) = (f.scale.derivative(t1), f.scale.derivative(t2));
    if !(a2 > T::zero()) {
        return Err(Error::Region("scale factor must be positive".into()));
    }
    Ok((d1 * a2 - a1 * d2) / (a2 * a2))
}

/// One sample of an integrated Friedmann null ray.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NullRaySample<T> {
    pub t: T,
    pub chi: T,
    pub a: T,
    pub k0: T,
    /// Frequency seen by comoving observers, `ω = a k⁰`.
    pub omega: T,
    /// `a ω = a² k⁰`, constant along the ray.
    pub a_omega: T,
}

/// Integrates `dk^i = −Γ^i_jl k^j dx^l` along a radial null ray of the conformal chart,
/// parameterised by `t`, from `t1` to each of `times`.
pub fn friedmann_null_ray<T: Real>(
    f: &Friedmann<T>,
    t1: T,
    chi1: T,
    omega1: T,
    times: &[T],
    cfg: &IntegratorConfig<T>,
) -> Result<Vec<NullRaySample<T>>> {
    if f.chart != FriedmannChart::Conformal {
        return Err(Error::InvalidParameter("null-ray integration uses the conformal chart".into()));
    }
    let a1 = f.scale.value(t1);
    let k0 = omega1 / a1;
    let theta = T::FRAC_PI_2();
    let model = f.clone();
    // State: (χ, k⁰, k¹).
    let mut problem = Problem {
        rhs: move |t: T, y: &[T], dy: &mut [T]| {
            let p = Point::new(vec![t, y[0], theta, T::zero()])?;
            let g = model.connection_at(&p)?;
            let k = [y[1], y[2]];
            let inv = T::one() / k[0];
            dy[0] = k[1] * inv;
            for (slot, i) in [(1usize, 0usize), (2, 1)] {
                let mut acc = T::zero();
                for a in 0..2 {
                    for b in 0..2 {
                        acc += g[[i, a, b]] * k[a] * k[b];
                    }
                }
                dy[slot] = -acc * inv;
            }
            Ok(())
        },
        location_len: 1,
    };
    let (out, _) = integrate(&mut problem, t1, &[chi1, k0, k0], times, cfg)?;
    Ok(times
        .iter()
        .zip(out)
        .map(|(&t, y)| {
            let a = f.scale.value(t);
            NullRaySample { t, chi: y[0], a, k0: y[1], omega: a * y[1], a_omega: a * a * y[1] }
        })
        .collect())
}

/// Static and moving frames of a Friedmann observer pair.
#[derive(Clone, Debug, PartialEq)]
pub struct FriedmannFrames<T> {
    pub e: Frame<T>,
    pub e_prime: Frame<T>,
    pub beta: T,
    pub gamma: T,
}

/// Comoving orthonormal frame and the frame moving radially with measured speed `V`:
/// `e′₀ = γ e₀ + γ(V/c) e₁`, `e′₁ = γ(V/c) e₀ + γ e₁`.
pub fn friedmann_boost<T: Real>(f: &Friedmann<T>, p: &Point<T>, speed: T) -> Result<FriedmannFrames<T>> {
    let beta = speed / f.c;
    if !(beta.abs() < T::one()) {
        return Err(Error::Superluminal { beta: beta.to_f64_lossy() });
    }
    let g = f.metric_at(p)?;
    let n = 4;
    let mut vectors = vec![T::zero(); n * n];
    for k in 0..n {
        vectors[k * n + k] = T::one() / g[[k, k]].abs().sqrt();
    }
    let eta = vec![T::one(), -T::one(), -T::one(), -T::one()];
    let e = Frame::from_vectors(vectors, eta.clone())?;
    let map = LorentzFrameMap::boost(eta, 0, 1, beta)?;
    let e_prime = boost_frame(&e, &map)?;
    Ok(FriedmannFrames { e, e_prime, beta, gamma: T::one() / (T::one() - beta * beta).sqrt() })
}
