//! Seeded self-checks of the geometric identities, transports and frame operations.
//!
//! Each suite draws its spaces, points and fields from the seed alone, so a report is
//! reproducible bit for bit.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::frames::{
    anholonomy_object, boost_frame, commutator_coefficients, invariance_check, loop_integral, FrameField,
    LorentzFrameMap, QuadratureConfig,
};
use crate::geometry::{
    bianchi_residual, cartan_space, commutator_residual, curvature_of, lie_derivative_connection,
    lie_derivative_metric, nonmetricity, oracle, reconstruct_connection, shifted_curvature, torsion,
    ConnectionField, ConnectionKind, TorsionField,
};
use crate::ode::IntegratorConfig;
use crate::spacetimes::{
    constant_torsion_space, random_point, random_space, random_symmetric_connection_shift, random_vector_field,
    single_torsion, RandomSpaceOptions, Schwarzschild,
};
use crate::tensor::{FieldRef, FnField, Point, SumField, Tensor};
use crate::transport::{
    autoparallel, extremal, gap_convergence, parallel_transport, quadratic_form, tidal_deviation,
    two_trajectory_deviation, ConnectionChoice, Curve, DeviationSetup,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Identities,
    Transport,
    Frames,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "identities" => Ok(Suite::Identities),
            "transport" => Ok(Suite::Transport),
            "frames" => Ok(Suite::Frames),
            "all" => Ok(Suite::All),
            _ => Err(Error::InvalidParameter(format!(
                "unknown suite '{s}' (expected identities, transport, frames or all)"
            ))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Identities => "identities",
            Suite::Transport => "transport",
            Suite::Frames => "frames",
            Suite::All => "all",
        })
    }
}

/// How a check's value is judged.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Criterion {
    /// Pass when `value ≤ tolerance`; `--tol` overrides the tolerance.
    Residual { tolerance: f64 },
    /// Pass when `lo ≤ value ≤ hi`.
    Band { lo: f64, hi: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    /// Worst residual (or worst band value) over all samples.
    pub value: f64,
    pub criterion: Criterion,
    pub samples: usize,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub suite: Suite,
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Options for [`run_suite`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Overrides every residual tolerance.
    pub tolerance: Option<f64>,
    /// Random spaces drawn by the identity suite.
    pub spaces: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { seed: 7, tolerance: None, spaces: 100 }
    }
}

/// Accumulates the worst value of one named check.
struct Acc {
    suite: &'static str,
    name: &'static str,
    criterion: Criterion,
    worst: Option<f64>,
    samples: usize,
}

impl Acc {
    fn residual(suite: &'static str, name: &'static str, tolerance: f64) -> Self {
        Self { suite, name, criterion: Criterion::Residual { tolerance }, worst: None, samples: 0 }
    }

    fn band(suite: &'static str, name: &'static str, lo: f64, hi: f64) -> Self {
        Self { suite, name, criterion: Criterion::Band { lo, hi }, worst: None, samples: 0 }
    }

    fn push(&mut self, v: f64) {
        self.samples += 1;
        let v = if v.is_nan() { f64::INFINITY } else { v };
        self.worst = Some(match (self.worst, self.criterion) {
            (None, _) => v,
            (Some(w), Criterion::Residual { .. }) => w.max(v),
            // keep the value farthest outside (or closest to the edge of) the band
            (Some(w), Criterion::Band { lo, hi }) => {
                let mid = 0.5 * (lo + hi);
                if (v - mid).abs() > (w - mid).abs() {
                    v
                } else {
                    w
                }
            }
        });
    }

    fn push_result(&mut self, v: Result<f64>) {
        self.push(v.unwrap_or(f64::INFINITY));
    }

    fn finish(self, tol: Option<f64>) -> Check {
        let criterion = match (self.criterion, tol) {
            (Criterion::Residual { .. }, Some(t)) => Criterion::Residual { tolerance: t },
            (c, _) => c,
        };
        let value = self.worst.unwrap_or(f64::INFINITY);
        let passed = match criterion {
            Criterion::Residual { tolerance } => value <= tolerance,
            Criterion::Band { lo, hi } => (lo..=hi).contains(&value),
        };
        Check { suite: self.suite, name: self.name.to_string(), value, criterion, samples: self.samples, passed }
    }
}

fn max_diff(a: &Tensor<f64>, b: &Tensor<f64>) -> Result<f64> {
    Ok(a.sub(b)?.max_abs())
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Residual tolerance for quantities built from finite differences.
pub const FD_TOLERANCE: f64 = 1e-6;
/// Residual tolerance for quantities with analytic derivatives.
pub const ANALYTIC_TOLERANCE: f64 = 1e-9;

/// Runs one suite (or all of them).
pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<Report> {
    let checks = match suite {
        Suite::Identities => identities(opts)?,
        Suite::Transport => transport(opts)?,
        Suite::Frames => frames(opts)?,
        Suite::All => {
            let mut c = identities(opts)?;
            c.extend(transport(opts)?);
            c.extend(frames(opts)?);
            c
        }
    };
    Ok(Report { suite, seed: opts.seed, checks })
}

fn sub_seed(seed: u64, k: u64) -> u64 {
    seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(k)
}

/// Identity residuals on `opts.spaces` random metric-affine spaces of dimension 2..=4,
/// plus analytic spaces where no finite differences enter.
pub fn identities(opts: &VerifyOptions) -> Result<Vec<Check>> {
    const S: &str = "identities";
    let mut bianchi = Acc::residual(S, "first Bianchi identity with torsion", FD_TOLERANCE);
    let mut commutator = Acc::residual(S, "commutator of covariant derivatives", FD_TOLERANCE);
    let mut lie_g = Acc::residual(S, "Lie derivative of the metric vs coordinate form", FD_TOLERANCE);
    let mut lie_gamma = Acc::residual(S, "Lie derivative of the connection vs coordinate form", FD_TOLERANCE);
    let mut shifted = Acc::residual(S, "shifted curvature vs direct curvature", FD_TOLERANCE);
    let mut cartan = Acc::residual(S, "Cartan connection is metric compatible", FD_TOLERANCE);
    let mut round_trip = Acc::residual(S, "connection from torsion and nonmetricity", FD_TOLERANCE);
    for k in 0..opts.spaces as u64 {
        let seed = sub_seed(opts.seed, k);
        let n = 2 + (k % 3) as usize;
        let rs = random_space::<f64>(seed, n, RandomSpaceOptions::default())?;
        let space = &rs.space;
        let p = random_point::<f64>(seed, n, 0.3);
        let xi = random_vector_field::<f64>(seed, n);
        bianchi.push_result(bianchi_residual(space, &p).map(|t| t.max_abs()));
        commutator.push_result(commutator_residual(space, xi.clone(), &p).map(|t| t.max_abs()));
        lie_g.push_result((|| max_diff(&lie_derivative_metric(space, &xi, &p)?, &oracle::lie_metric_coordinate(space, &xi, &p)?))());
        lie_gamma.push_result((|| {
            max_diff(&lie_derivative_connection(space, xi.clone(), &p)?, &oracle::lie_connection_coordinate(space, &xi, &p)?)
        })());
        let shift = random_symmetric_connection_shift::<f64>(seed, n, 0.05);
        shifted.push_result((|| {
            let direct_field = SumField::new(vec![(1.0, space.connection.field().clone()), (1.0, shift.clone())]);
            let direct = curvature_of(&ConnectionField::new(Arc::new(direct_field), ConnectionKind::General)?, &p)?;
            max_diff(&shifted_curvature(space, &shift, &p)?, &direct)
        })());
        cartan.push_result((|| Ok(nonmetricity(&cartan_space(space)?, &p)?.max_abs()))());
        round_trip.push_result((|| {
            let tf: FieldRef<f64> = Arc::new(TorsionField { connection: space.connection.clone() });
            let sp = space.clone();
            let q: FieldRef<f64> = FnField::new(n, (0, 3), move |x: &Point<f64>| nonmetricity(&sp, x)).into_ref();
            let rebuilt = reconstruct_connection(&space.metric, &tf, &q, &p)?;
            max_diff(&rebuilt, &space.connection.at(&p)?)
        })());
    }
    let mut analytic = Acc::residual(S, "Bianchi and Ricci on analytic spaces", ANALYTIC_TOLERANCE);
    let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(opts.seed, u64::MAX));
    for _ in 0..4 {
        let kappa = rng.gen_range(-0.5..0.5);
        let ct = constant_torsion_space(&[1.0, -1.0, -1.0], single_torsion(3, 0, 1, 2, kappa))?;
        let p = Point::new((0..3).map(|_| rng.gen_range(-1.0..1.0)).collect())?;
        analytic.push_result(bianchi_residual(&ct, &p).map(|t| t.max_abs()));
        let s = Schwarzschild::new(1.0, 1.0)?;
        let r = rng.gen_range(2.0..30.0);
        let p = Point::new(vec![0.0, r, rng.gen_range(0.3..2.8), rng.gen_range(0.0..6.0)])?;
        analytic.push_result(crate::geometry::ricci(&s.space(), &p).map(|t| t.max_abs()));
        analytic.push_result(bianchi_residual(&s.space(), &p).map(|t| t.max_abs()));
    }
    let tol = opts.tolerance;
    Ok([bianchi, commutator, lie_g, lie_gamma, shifted, cartan, round_trip, analytic]
        .into_iter()
        .map(|a| a.finish(tol))
        .collect())
}

/// Transport checks: parallelogram orders, extremal length, tidal convergence, Cartan norms.
pub fn transport(opts: &VerifyOptions) -> Result<Vec<Check>> {
    const S: &str = "transport";
    let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(opts.seed, 1 << 40));
    let cfg = IntegratorConfig::adaptive(1e-13, 1e-15);

    let mut exp2 = Acc::band(S, "parallelogram gap exponent with torsion", 1.9, 2.1);
    let mut coef = Acc::residual(S, "parallelogram coefficient vs torsion (relative)", 0.02);
    let mut exp3 = Acc::band(S, "parallelogram gap exponent without torsion", 2.9, f64::INFINITY);
    for _ in 0..3 {
        let kappa = rng.gen_range(0.1..0.5) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let space = constant_torsion_space(&[1.0, 1.0, 1.0], single_torsion(3, 0, 1, 2, kappa))?;
        let p = Point::new((0..3).map(|_| rng.gen_range(-0.5..0.5)).collect())?;
        let a: Vec<f64> = vec![rng.gen_range(-0.5..0.5), 1.0, rng.gen_range(-0.5..0.5)];
        let b: Vec<f64> = vec![rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5), 1.0];
        let conv = gap_convergence(&space, &p, &a, &b, 0.05, &cfg)?;
        exp2.push(conv.exponent);
        let t = torsion(&space, &p)?;
        let expect: Vec<f64> = (0..3)
            .map(|k| (0..3).map(|m| (0..3).map(|nn| t[[k, m, nn]] * a[m] * b[nn]).sum::<f64>()).sum())
            .collect();
        let err: Vec<f64> = conv.coefficient.iter().zip(&expect).map(|(x, y)| x - y).collect();
        coef.push(norm(&err) / norm(&expect));
        let rs = random_space::<f64>(rng.gen(), 3, RandomSpaceOptions { torsion: false, ..Default::default() })?;
        let p = random_point::<f64>(rng.gen(), 3, 0.2);
        exp3.push_result(gap_convergence(&rs.space, &p, &a, &b, 0.1, &cfg).map(|c| c.exponent));
    }

    let mut drift = Acc::residual(S, "extremal tangent-length drift (10^4 RK4 steps)", 1e-8);
    let mut same = Acc::residual(S, "extremal vs Cartan autoparallel", 1e-8);
    let mut cartan = Acc::residual(S, "Cartan transport preserves length", 1e-8);
    let mut tidal = Acc::band(S, "tidal vs two-trajectory convergence ratio", 3.5, 4.5);
    for _ in 0..2 {
        let rs = random_space::<f64>(rng.gen(), 3, RandomSpaceOptions::default())?;
        let space = &rs.space;
        let x0 = random_point::<f64>(rng.gen(), 3, 0.1);
        let u0: Vec<f64> = (0..3).map(|_| rng.gen_range(-0.6..0.6)).collect();
        let outputs = [0.0, 0.5, 1.0];
        let rk4 = IntegratorConfig::rk4(1e-4);
        let ext = extremal(space, &x0, &u0, &outputs, &rk4)?;
        let l0 = ext[0].tangent_norm2(&space.metric)?;
        for st in &ext {
            drift.push((st.tangent_norm2(&space.metric)? - l0).abs() / l0.abs());
        }
        let auto = autoparallel(space, &ConnectionChoice::Cartan, &x0, &u0, &outputs, &rk4)?;
        for (a, b) in ext.iter().zip(&auto) {
            let d: Vec<f64> = a.x.coords().iter().zip(b.x.coords()).map(|(x, y)| x - y).collect();
            same.push(norm(&d));
        }
        let c = x0.coords().to_vec();
        let curve = Curve::new(3, move |s: f64| Ok(vec![c[0] + 0.2 * s.cos(), c[1] + 0.2 * s.sin(), c[2] + 0.05 * s]));
        let v0: Vec<f64> = (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let vs = parallel_transport(space, &curve, &v0, &ConnectionChoice::Cartan, 0.0, &[1.0, 3.0], &IntegratorConfig::default())?;
        let len = |s: f64, v: &[f64]| -> Result<f64> { Ok(quadratic_form(&space.metric.at(&curve.point(s)?)?, v, v)) };
        let base = len(0.0, &v0)?;
        for (s, v) in [1.0, 3.0].iter().zip(&vs) {
            cartan.push((len(*s, v)? - base).abs() / base.abs());
        }
        let setup = DeviationSetup {
            x0,
            v0: u0,
            dx0: (0..3).map(|_| rng.gen_range(-0.02..0.02)).collect(),
            rate0: (0..3).map(|_| rng.gen_range(-0.01..0.01)).collect(),
        };
        let errs: Vec<f64> = [1.0, 0.5]
            .iter()
            .map(|&h| -> Result<f64> {
                let st = DeviationSetup {
                    dx0: setup.dx0.iter().map(|x| x * h).collect(),
                    rate0: setup.rate0.iter().map(|x| x * h).collect(),
                    ..setup.clone()
                };
                let cfg = IntegratorConfig::adaptive(1e-12, 1e-16);
                let a = tidal_deviation(space, &ConnectionChoice::Base, &st, None, None, &[1.0], &cfg)?;
                let b = two_trajectory_deviation(space, &ConnectionChoice::Base, &st, None, None, &[1.0], &cfg)?;
                let d: Vec<f64> = a[0].dx.iter().zip(&b[0].dx).map(|(x, y)| x - y).collect();
                Ok(norm(&d))
            })
            .collect::<Result<_>>()?;
        tidal.push(errs[0] / errs[1]);
    }
    let tol = opts.tolerance;
    Ok([exp2, coef, exp3, drift, same, cartan, tidal].into_iter().map(|a| a.finish(tol)).collect())
}

/// Frame checks: anholonomy two ways, coordinate loops, Lorentz invariance and composition.
pub fn frames(opts: &VerifyOptions) -> Result<Vec<Check>> {
    const S: &str = "frames";
    let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(opts.seed, 1 << 41));
    let mut anh = Acc::residual(S, "anholonomy object vs frame commutators", FD_TOLERANCE);
    let mut ortho = Acc::residual(S, "Gram-Schmidt frames are orthonormal", 1e-12);
    let mut exact = Acc::residual(S, "coordinate-frame loop integrals vanish", 1e-12);
    let mut invariance = Acc::residual(S, "vectors unchanged under frame boosts", 1e-12);
    let mut compose = Acc::residual(S, "composed boosts equal the boost of the composition", 1e-12);
    for _ in 0..5 {
        let n = 3;
        let rs = random_space::<f64>(rng.gen(), n, RandomSpaceOptions { lorentzian: true, ..Default::default() })?;
        let eta = vec![1.0, -1.0, -1.0];
        let seeds: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.1 * (i + j) as f64 }).collect()).collect();
        let ff = FrameField::gram_schmidt(rs.space.metric.clone(), seeds, eta.clone());
        let p = random_point::<f64>(rng.gen(), n, 0.3);
        anh.push_result((|| max_diff(&anholonomy_object(&ff, &p)?, &commutator_coefficients(&ff, &p)?))());
        let frame = ff.at(&p)?;
        ortho.push(frame.orthonormality_residual(&rs.space.metric.at(&p)?));
        let coord = FrameField::coordinate(eta.clone());
        let r = rng.gen_range(0.05..0.3);
        let pts: Vec<Point<f64>> = (0..=16)
            .map(|k| {
                let a = std::f64::consts::TAU * k as f64 / 16.0;
                let a = if k == 16 { 0.0 } else { a };
                Point::new(vec![r * a.cos(), r * a.sin(), 0.1])
            })
            .collect::<Result<_>>()?;
        for i in 0..n {
            exact.push_result(loop_integral(&coord, &pts, i, &QuadratureConfig::default()).map(f64::abs));
        }
        let b1 = LorentzFrameMap::boost(eta.clone(), 0, 1, rng.gen_range(-0.9..0.9))?;
        let b2 = LorentzFrameMap::boost(eta.clone(), 0, 2, rng.gen_range(-0.9..0.9))?;
        let w: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        invariance.push(invariance_check(&frame, &w, &b1)?.drift);
        let twice = boost_frame(&boost_frame(&frame, &b1)?, &b2)?;
        let once = boost_frame(&frame, &b1.then(&b2)?)?;
        let d = twice.vectors_flat().iter().zip(once.vectors_flat()).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        compose.push(d);
    }
    let tol = opts.tolerance;
    Ok([anh, ortho, exact, invariance, compose].into_iter().map(|a| a.finish(tol)).collect())
}
