//! Runge–Kutta integrators: fixed-step RK4 and adaptive Dormand–Prince 5(4).

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Method<T> {
    /// Classical RK4 with a fixed step (the last step before each output is shortened).
    Rk4 { step: T },
    /// Embedded 5(4) pair with local error control.
    Rk45 { rtol: T, atol: T, max_steps: usize },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntegratorConfig<T> {
    pub method: Method<T>,
}

impl<T: Real> Default for IntegratorConfig<T> {
    /// `rtol = 1e-10`, `atol = 1e-12`, floored at a few hundred ε for narrow scalars.
    fn default() -> Self {
        let floor = T::lit(256.0) * T::epsilon();
        Self::adaptive(T::lit(1e-10).max(floor), T::lit(1e-12).max(floor))
    }
}

impl<T: Real> IntegratorConfig<T> {
    pub fn adaptive(rtol: T, atol: T) -> Self {
        Self { method: Method::Rk45 { rtol, atol, max_steps: 5_000_000 } }
    }

    pub fn rk4(step: T) -> Self {
        Self { method: Method::Rk4 { step } }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match self.method {
            Method::Rk4 { step } => step > T::zero(),
            Method::Rk45 { rtol, atol, max_steps } => rtol > T::zero() && atol > T::zero() && max_steps > 0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter("integrator tolerances and steps must be positive".into()))
        }
    }
}

/// Statistics of one integration.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub accepted: usize,
    pub rejected: usize,
    pub evaluations: usize,
}

/// An ODE `dy/ds = f(s, y)`. `location_len` leading state entries are reported on failure.
pub struct Problem<F> {
    pub rhs: F,
    pub location_len: usize,
}

fn failure<T: Real>(s: T, y: &[T], len: usize, reason: impl Into<String>) -> Error {
    Error::StepFailure {
        s: s.to_f64_lossy(),
        x: y.iter().take(len).map(|v| v.to_f64_lossy()).collect(),
        reason: reason.into(),
    }
}

/// Integrates from `(s0, y0)` and returns the state at every entry of `outputs`
/// (monotone in the direction of integration).
pub fn integrate<T, F>(
    problem: &mut Problem<F>,
    s0: T,
    y0: &[T],
    outputs: &[T],
    cfg: &IntegratorConfig<T>,
) -> Result<(Vec<Vec<T>>, Stats)>
where
    T: Real,
    F: FnMut(T, &[T], &mut [T]) -> Result<()>,
{
    cfg.validate()?;
    let mut stats = Stats::default();
    let mut s = s0;
    let mut y = y0.to_vec();
    let mut out = Vec::with_capacity(outputs.len());
    let mut h_prev: Option<T> = None;
    for &target in outputs {
        match cfg.method {
            Method::Rk4 { step } => rk4_to(problem, &mut s, &mut y, target, step, &mut stats)?,
            Method::Rk45 { rtol, atol, max_steps } => {
                h_prev = Some(dopri_to(problem, &mut s, &mut y, target, rtol, atol, max_steps, h_prev, &mut stats)?);
            }
        }
        out.push(y.clone());
    }
    Ok((out, stats))
}

fn eval<T: Real, F>(problem: &mut Problem<F>, s: T, y: &[T], dy: &mut [T], stats: &mut Stats) -> Result<()>
where
    F: FnMut(T, &[T], &mut [T]) -> Result<()>,
{
    stats.evaluations += 1;
    (problem.rhs)(s, y, dy)?;
    if dy.iter().any(|v| !v.is_finite()) {
        return Err(Error::Region("non-finite derivative".into()));
    }
    Ok(())
}

fn rk4_to<T: Real, F>(
    problem: &mut Problem<F>,
    s: &mut T,
    y: &mut Vec<T>,
    target: T,
    step: T,
    stats: &mut Stats,
) -> Result<()>
where
    F: FnMut(T, &[T], &mut [T]) -> Result<()>,
{
    let n = y.len();
    let dir = if target >= *s { T::one() } else { -T::one() };
    let (mut k1, mut k2, mut k3, mut k4) = (vec![T::zero(); n], vec![T::zero(); n], vec![T::zero(); n], vec![T::zero(); n]);
    let mut tmp = vec![T::zero(); n];
    let two = T::lit(2.0);
    let six = T::lit(6.0);
    let loc = problem.location_len;
    let wrap = |e: Error, s: T, y: &[T]| failure(s, y, loc, e.to_string());
    while (target - *s) * dir > T::zero() {
        let remaining = (target - *s).abs();
        // Avoid a sliver step from accumulated rounding.
        let h = if remaining <= step * T::lit(1.000_001) { remaining } else { step } * dir;
        eval(problem, *s, y, &mut k1, stats).map_err(|e| wrap(e, *s, y))?;
        for i in 0..n {
            tmp[i] = y[i] + h / two * k1[i];
        }
        eval(problem, *s + h / two, &tmp, &mut k2, stats).map_err(|e| wrap(e, *s, y))?;
        for i in 0..n {
            tmp[i] = y[i] + h / two * k2[i];
        }
        eval(problem, *s + h / two, &tmp, &mut k3, stats).map_err(|e| wrap(e, *s, y))?;
        for i in 0..n {
            tmp[i] = y[i] + h * k3[i];
        }
        eval(problem, *s + h, &tmp, &mut k4, stats).map_err(|e| wrap(e, *s, y))?;
        for i in 0..n {
            y[i] += h / six * (k1[i] + two * k2[i] + two * k3[i] + k4[i]);
        }
        *s = if (target - (*s + h)) * dir <= T::zero() { target } else { *s + h };
        stats.accepted += 1;
    }
    Ok(())
}

// Dormand–Prince coefficients.
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

#[allow(clippy::too_many_arguments)]
fn dopri_to<T: Real, F>(
    problem: &mut Problem<F>,
    s: &mut T,
    y: &mut Vec<T>,
    target: T,
    rtol: T,
    atol: T,
    max_steps: usize,
    h_prev: Option<T>,
    stats: &mut Stats,
) -> Result<T>
where
    F: FnMut(T, &[T], &mut [T]) -> Result<()>,
{
    let n = y.len();
    let span = target - *s;
    if span == T::zero() {
        return Ok(h_prev.unwrap_or(T::zero()));
    }
    let dir = span.signum();
    let mut k: Vec<Vec<T>> = vec![vec![T::zero(); n]; 7];
    let mut tmp = vec![T::zero(); n];
    let loc = problem.location_len;
    eval(problem, *s, y, &mut k[0], stats).map_err(|e| failure(*s, y, loc, e.to_string()))?;

    let mut h = match h_prev {
        Some(h) if h != T::zero() => h.abs(),
        _ => initial_step(&k[0], y, rtol, atol, span.abs()),
    };
    let safety = T::lit(0.9);
    let tiny = T::epsilon() * T::lit(16.0);
    let mut steps = 0usize;
    while (target - *s) * dir > T::zero() {
        steps += 1;
        if steps > max_steps {
            return Err(failure(*s, y, loc, "maximum number of steps exceeded"));
        }
        let remaining = (target - *s).abs();
        let last = h >= remaining;
        let hs = if last { remaining } else { h } * dir;
        if hs.abs() <= tiny * s.abs().max(T::one()) {
            return Err(failure(*s, y, loc, "step size underflow"));
        }
        let mut stage_err: Option<Error> = None;
        for st in 1..7 {
            for i in 0..n {
                let mut acc = y[i];
                for j in 0..st {
                    acc += hs * T::lit(A[st][j]) * k[j][i];
                }
                tmp[i] = acc;
            }
            if let Err(e) = eval(problem, *s + T::lit(C[st]) * hs, &tmp, &mut k[st], stats) {
                stage_err = Some(e);
                break;
            }
        }
        if let Some(e) = stage_err {
            // Probably stepped outside the valid region: shrink and retry.
            stats.rejected += 1;
            h = hs.abs() * T::lit(0.25);
            if h <= tiny * s.abs().max(T::one()) {
                return Err(failure(*s, y, loc, e.to_string()));
            }
            continue;
        }
        let mut err = T::zero();
        let mut ynew = vec![T::zero(); n];
        for i in 0..n {
            let mut y5 = y[i];
            let mut y4 = y[i];
            for j in 0..7 {
                y5 += hs * T::lit(B5[j]) * k[j][i];
                y4 += hs * T::lit(B4[j]) * k[j][i];
            }
            ynew[i] = y5;
            let sc = atol + rtol * y[i].abs().max(y5.abs());
            let e = (y5 - y4) / sc;
            err += e * e;
        }
        err = (err / T::lit(n as f64)).sqrt();
        if !err.is_finite() {
            stats.rejected += 1;
            h = hs.abs() * T::lit(0.25);
            continue;
        }
        if err <= T::one() {
            stats.accepted += 1;
            *s = if last { target } else { *s + hs };
            *y = ynew;
            // FSAL: the seventh stage is the derivative at the new point.
            let k7 = k[6].clone();
            k[0] = k7;
            let fac = if err == T::zero() { T::lit(5.0) } else { (safety * err.powf(T::lit(-0.2))).min(T::lit(5.0)) };
            let grown = hs.abs() * fac.max(T::lit(0.2));
            // After a clipped final step keep the previous step proposal.
            h = if last { h.max(grown) } else { grown };
        } else {
            stats.rejected += 1;
            let fac = (safety * err.powf(T::lit(-0.2))).max(T::lit(0.2));
            h = hs.abs() * fac;
        }
    }
    Ok(h)
}

fn initial_step<T: Real>(f0: &[T], y0: &[T], rtol: T, atol: T, span: T) -> T {
    let n = T::lit(f0.len() as f64);
    let mut d0 = T::zero();
    let mut d1 = T::zero();
    for i in 0..f0.len() {
        let sc = atol + rtol * y0[i].abs();
        d0 += (y0[i] / sc).powi(2);
        d1 += (f0[i] / sc).powi(2);
    }
    let (d0, d1) = ((d0 / n).sqrt(), (d1 / n).sqrt());
    // Floors keep the first step above the underflow guard for narrow scalars.
    let small = T::lit(1e-6).max(T::epsilon().sqrt());
    let h = if d0 < T::lit(1e-5) || d1 < T::lit(1e-5) { small * span.max(T::one()) } else { T::lit(0.01) * d0 / d1 };
    h.min(span * T::lit(0.1)).max(span * T::lit(1e-12).max(T::lit(64.0) * T::epsilon()))
}
