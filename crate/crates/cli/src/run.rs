//! Executes a scenario config.

use std::collections::BTreeMap;

use mag_core::geometry::{torsion, MetricAffineSpace};
use mag_core::observatory::constants::{C, G};
use mag_core::observatory::{
    boost_time_delay, delay_for_orbit, orbit_clock_gap, orbital_boost_frame, s2_doppler, time_delay, OrbitScenario,
    RadiusSource,
};
use mag_core::ode::IntegratorConfig;
use mag_core::spacetimes::{
    constant_torsion_space, friedmann_null_ray, friedmann_redshift, minkowski, radial_photon_redshift,
    random_space, single_torsion, Friedmann, FriedmannChart, FriedmannModel, RandomSpaceOptions, ScaleFactor,
    Schwarzschild,
};
use mag_core::tensor::{Point, Tensor};
use mag_core::transport::{
    autoparallel, extremal, gap_convergence, tidal_deviation, two_trajectory_deviation, ConnectionChoice,
    DeviationSetup,
};

use crate::config::{
    constants, Dimension, FriedmannModelConfig, Operation, Quantity, RadiusSourceConfig, ScaleConfig, ScenarioConfig,
    Spacetime,
};
use crate::document::{Constant, Output, Provenance, ResultDocument, Tolerance};
use crate::Failure;

enum Built {
    Schwarzschild(Schwarzschild<f64>),
    Friedmann(Friedmann<f64>),
    General(MetricAffineSpace<f64>),
}

impl Built {
    fn space(&self) -> MetricAffineSpace<f64> {
        match self {
            Built::Schwarzschild(s) => s.space(),
            Built::Friedmann(f) => f.space(),
            Built::General(s) => s.clone(),
        }
    }
}

fn cfg_err(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn cgs(q: &Quantity, dim: Dimension, key: &str) -> Result<f64, Failure> {
    q.to_cgs(dim).map_err(|e| cfg_err(format!("config error at '{key}': {e}")))
}

fn build(spacetime: &Spacetime) -> Result<Built, Failure> {
    Ok(match spacetime {
        Spacetime::Schwarzschild { mass, rg } => match (mass, rg) {
            (Some(m), None) => Built::Schwarzschild(Schwarzschild::from_mass(cgs(m, Dimension::Mass, "spacetime.mass")?, G, C)?),
            (None, Some(r)) => Built::Schwarzschild(Schwarzschild::new(cgs(r, Dimension::Length, "spacetime.rg")?, C)?),
            _ => return Err(cfg_err("config error at 'spacetime': give exactly one of 'mass' or 'rg'")),
        },
        Spacetime::Friedmann { model, scale } => {
            let model = match model {
                FriedmannModelConfig::Closed => FriedmannModel::Closed,
                FriedmannModelConfig::Open => FriedmannModel::Open,
            };
            let scale = match scale {
                ScaleConfig::Cosh => ScaleFactor::cosh(),
                ScaleConfig::Sinh => ScaleFactor::sinh(),
                ScaleConfig::Power { a0, t0, k } => ScaleFactor::power(*a0, *t0, *k),
            };
            Built::Friedmann(Friedmann::new(model, FriedmannChart::Conformal, scale, 1.0))
        }
        Spacetime::Minkowski => Built::General(minkowski(1.0)?),
        Spacetime::ConstantTorsion { diag, torsion } => {
            let n = diag.len();
            let mut t = Tensor::zeros(n, 1, 2);
            for (i, e) in torsion.iter().enumerate() {
                if e.k >= n || e.m >= n || e.n >= n || e.m == e.n {
                    return Err(cfg_err(format!(
                        "config error at 'spacetime.torsion[{i}]': indices must be < {n} with m != n"
                    )));
                }
                t = t.add(&single_torsion(n, e.k, e.m, e.n, e.kappa))?;
            }
            Built::General(constant_torsion_space(diag, t)?)
        }
        Spacetime::Random { seed, dim, torsion, nonmetric, lorentzian } => {
            if !(2..=6).contains(dim) {
                return Err(cfg_err("config error at 'spacetime.dim': expected 2..=6"));
            }
            let opts = RandomSpaceOptions { torsion: *torsion, nonmetric: *nonmetric, lorentzian: *lorentzian, ..Default::default() };
            Built::General(random_space::<f64>(*seed, *dim, opts)?.space)
        }
    })
}

fn schwarzschild<'a>(b: &'a Built, op: &str) -> Result<&'a Schwarzschild<f64>, Failure> {
    match b {
        Built::Schwarzschild(s) => Ok(s),
        _ => Err(cfg_err(format!("config error at 'spacetime.kind': operation '{op}' needs a schwarzschild spacetime"))),
    }
}

fn point(coords: &[f64], n: usize, key: &str) -> Result<Point<f64>, Failure> {
    vector(coords, n, key)?;
    Ok(Point::new(coords.to_vec())?)
}

fn vector(v: &[f64], n: usize, key: &str) -> Result<Vec<f64>, Failure> {
    if v.len() != n {
        return Err(cfg_err(format!("config error at 'operation.{key}': expected {n} components, got {}", v.len())));
    }
    Ok(v.to_vec())
}

fn components(name: &str, v: &[f64], unit: &str) -> Vec<Output> {
    v.iter().enumerate().map(|(i, x)| Output::new(format!("{name}[{i}]"), *x, unit)).collect()
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

struct Run {
    outputs: Vec<Output>,
    details: BTreeMap<String, String>,
    tolerances: Vec<Tolerance>,
    notes: Vec<String>,
}

impl Run {
    fn new() -> Self {
        Self { outputs: vec![], details: BTreeMap::new(), tolerances: vec![], notes: vec![] }
    }

    fn out(&mut self, name: &str, value: f64, unit: &str) {
        self.outputs.push(Output::new(name, value, unit));
    }

    fn detail(&mut self, k: &str, v: impl Into<String>) {
        self.details.insert(k.into(), v.into());
    }

    fn tol(&mut self, name: &str, value: f64, unit: &str) {
        self.tolerances.push(Tolerance { name: name.into(), value, unit: unit.into() });
    }
}

const RTOL: f64 = 1e-12;
const ATOL: f64 = 1e-14;

pub fn execute(config: &ScenarioConfig) -> Result<ResultDocument, Failure> {
    let built = build(&config.spacetime)?;
    let op = config.operation.name();
    let mut run = Run::new();
    match &config.operation {
        Operation::Delay { radius, period, radius_source } => {
            let s = schwarzschild(&built, op)?;
            let radius = radius.as_ref().map(|q| cgs(q, Dimension::Length, "operation.radius")).transpose()?;
            let period = period.as_ref().map(|q| cgs(q, Dimension::Time, "operation.period")).transpose()?;
            let prefer = match radius_source {
                Some(RadiusSourceConfig::Given) if radius.is_none() => {
                    return Err(cfg_err("config error at 'operation.radius_source': 'given' needs 'radius'"));
                }
                Some(RadiusSourceConfig::Kepler) if period.is_none() => {
                    return Err(cfg_err("config error at 'operation.radius_source': 'kepler' needs 'period'"));
                }
                Some(RadiusSourceConfig::Given) => RadiusSource::Given,
                Some(RadiusSourceConfig::Kepler) | None => RadiusSource::Kepler,
            };
            let mass = s.rg * C * C / (2.0 * G);
            let d = time_delay(&OrbitScenario::circular(mass, radius, period), prefer)?;
            run.out("delta_t", d.delta_t, "s");
            run.out("delta_s", d.delta_s, "cm");
            run.out("s_static", d.s_static, "cm");
            run.out("s_orbit", d.s_orbit, "cm");
            run.out("radius", d.radius, "cm");
            run.out("period", d.period, "s");
            run.out("rg", d.rg, "cm");
            run.detail("radius_source", d.radius_source.as_str());
            run.detail("formula", "delta_s = 2 pi alpha r^2 / (a + b), closed form");
        }
        Operation::Doppler { r_peri, r_apo, lambda_emit } => {
            let s = schwarzschild(&built, op)?;
            let mut sc = OrbitScenario::circular(s.rg * C * C / (2.0 * G), None, None);
            sc.r_peri = Some(cgs(r_peri, Dimension::Length, "operation.r_peri")?);
            sc.r_apo = Some(cgs(r_apo, Dimension::Length, "operation.r_apo")?);
            sc.lambda_emit = lambda_emit.as_ref().map(|q| cgs(q, Dimension::Wavelength, "operation.lambda_emit")).transpose()?;
            let d = s2_doppler(&sc)?;
            for (label, p) in [("pericentre", &d.pericentre), ("apocentre", &d.apocentre)] {
                run.out(&format!("{label}.speed"), p.speed, "cm/s");
                run.out(&format!("{label}.ratio"), p.ratio, "1");
                run.out(&format!("{label}.gravitational"), p.gravitational, "1");
                run.out(&format!("{label}.kinematic"), p.kinematic, "1");
                run.out(&format!("{label}.lambda_obs"), p.lambda_obs, "um");
            }
            run.out("delta_lambda", d.delta_lambda, "angstrom");
            run.out("lambda_emit", d.lambda_emit, "um");
            run.detail("speed", "vis-viva on the ellipse with a = (r_peri + r_apo)/2");
        }
        Operation::Redshift { r_emit, r_obs, t_emit, t_obs, omega } => match &built {
            Built::Schwarzschild(s) => {
                let (Some(re), Some(ro)) = (r_emit, r_obs) else {
                    return Err(cfg_err("config error at 'operation': schwarzschild redshift needs 'r_emit' and 'r_obs'"));
                };
                let re = cgs(re, Dimension::Length, "operation.r_emit")?;
                let ro = cgs(ro, Dimension::Length, "operation.r_obs")?;
                let r = radial_photon_redshift(s, re, ro, *omega)?;
                run.out("omega_obs.closed_form", r.closed_form, "1/s");
                run.out("omega_obs.ode", r.ode, "1/s");
                run.out("relative_difference", r.relative_difference, "1");
                run.detail("integrator", format!("adaptive Dormand-Prince, rtol {RTOL:e}"));
            }
            Built::Friedmann(f) => {
                let (Some(t1), Some(t2)) = (t_emit, t_obs) else {
                    return Err(cfg_err("config error at 'operation': friedmann redshift needs 't_emit' and 't_obs'"));
                };
                let k = friedmann_redshift(f, *t1, *t2)?;
                let ray = friedmann_null_ray(f, *t1, 0.1, *omega, &[*t2], &IntegratorConfig::adaptive(RTOL, ATOL))?;
                let a_omega0 = f.scale.value(*t1) * omega;
                run.out("K", k, "1");
                run.out("omega_obs.closed_form", k * omega, "1/time");
                run.out("omega_obs.ode", ray[0].omega, "1/time");
                run.out("a_omega_drift", ((ray[0].a_omega - a_omega0) / a_omega0).abs(), "1");
                run.out("chi_obs", ray[0].chi, "rad");
                run.detail("chart", "conformal, c = 1");
                run.detail("scale_factor", f.scale.name());
            }
            Built::General(_) => {
                return Err(cfg_err("config error at 'spacetime.kind': redshift needs schwarzschild or friedmann"));
            }
        },
        Operation::Boost { radius, period, segments } => {
            let s = schwarzschild(&built, op)?;
            let r = cgs(radius, Dimension::Length, "operation.radius")?;
            let t = cgs(period, Dimension::Time, "operation.period")?;
            let omega = 2.0 * std::f64::consts::PI / t;
            let frames = orbital_boost_frame(s, r, omega)?;
            let gamma_delay = boost_time_delay(s, r, omega, *segments)?;
            let gap = orbit_clock_gap(s, r, omega, *segments)?;
            let (ds, _, _) = delay_for_orbit(s.rg, r, t)?;
            run.out("speed", frames.speed, "cm/s");
            run.out("beta", frames.beta, "1");
            run.out("gamma", frames.gamma, "1");
            run.out("boost_time_delay", gamma_delay, "s");
            run.out("orbit_clock_gap", gap, "cm");
            run.out("time_delay", ds / C, "s");
            run.out("relative_difference", (gamma_delay - ds / C) / (ds / C), "1");
            run.detail("quadrature", format!("composite Simpson, {segments} segments"));
        }
        Operation::Tidal { x0, v0, dx0, rate0, s_end } => {
            let space = built.space();
            let n = space.dim();
            let setup = DeviationSetup {
                x0: point(x0, n, "x0")?,
                v0: vector(v0, n, "v0")?,
                dx0: vector(dx0, n, "dx0")?,
                rate0: vector(rate0, n, "rate0")?,
            };
            let cfg = IntegratorConfig::adaptive(RTOL, ATOL);
            let a = tidal_deviation(&space, &ConnectionChoice::Base, &setup, None, None, &[*s_end], &cfg)?;
            let b = two_trajectory_deviation(&space, &ConnectionChoice::Base, &setup, None, None, &[*s_end], &cfg)?;
            run.outputs.extend(components("dx.tidal", &a[0].dx, "coord"));
            run.outputs.extend(components("dx.two_trajectory", &b[0].dx, "coord"));
            let diff: Vec<f64> = a[0].dx.iter().zip(&b[0].dx).map(|(x, y)| x - y).collect();
            run.out("difference_norm", norm(&diff), "coord");
            run.out("relative_difference", norm(&diff) / norm(&b[0].dx), "1");
            run.notes.push("the two agree to second order in the initial separation".into());
        }
        Operation::Closure { point: p, a, b, rho } => {
            let space = built.space();
            let n = space.dim();
            let p = point(p, n, "point")?;
            let (a, b) = (vector(a, n, "a")?, vector(b, n, "b")?);
            let conv = gap_convergence(&space, &p, &a, &b, *rho, &IntegratorConfig::adaptive(1e-13, 1e-15))?;
            let t = torsion(&space, &p)?;
            let expect: Vec<f64> = (0..n)
                .map(|k| (0..n).flat_map(|m| (0..n).map(move |l| (m, l))).map(|(m, l)| t[[k, m, l]] * a[m] * b[l]).sum())
                .collect();
            run.out("exponent", conv.exponent, "1");
            run.outputs.extend(components("coefficient", &conv.coefficient, "coord"));
            run.outputs.extend(components("torsion_term", &expect, "coord"));
            let err: Vec<f64> = conv.coefficient.iter().zip(&expect).map(|(x, y)| x - y).collect();
            let scale = norm(&expect);
            if scale > 0.0 {
                run.out("coefficient_relative_error", norm(&err) / scale, "1");
            }
            run.out("rho", *rho, "coord");
            run.tol("exponent band", 0.1, "1");
            run.tol("coefficient relative error", 0.02, "1");
        }
        Operation::ExtremalVsAutoparallel { x0, u0, s_end, steps } => {
            let space = built.space();
            let n = space.dim();
            let x0 = point(x0, n, "x0")?;
            let u0 = vector(u0, n, "u0")?;
            if *steps == 0 || !(*s_end > 0.0) {
                return Err(cfg_err("config error at 'operation': need steps > 0 and s_end > 0"));
            }
            let cfg = IntegratorConfig::rk4(*s_end / *steps as f64);
            let outs = [*s_end];
            let ext = extremal(&space, &x0, &u0, &outs, &cfg)?;
            let hat = autoparallel(&space, &ConnectionChoice::Cartan, &x0, &u0, &outs, &cfg)?;
            let base = autoparallel(&space, &ConnectionChoice::Base, &x0, &u0, &outs, &cfg)?;
            let sep = |a: &Point<f64>, b: &Point<f64>| {
                norm(&a.coords().iter().zip(b.coords()).map(|(x, y)| x - y).collect::<Vec<_>>())
            };
            let g0 = space.metric.at(&x0)?;
            let l0 = mag_core::transport::quadratic_form(&g0, &u0, &u0);
            let l1 = ext[0].tangent_norm2(&space.metric)?;
            run.outputs.extend(components("x.extremal", ext[0].x.coords(), "coord"));
            run.out("separation.cartan_autoparallel", sep(&ext[0].x, &hat[0].x), "coord");
            run.out("separation.autoparallel", sep(&ext[0].x, &base[0].x), "coord");
            run.out("tangent_length_drift", ((l1 - l0) / l0).abs(), "1");
            run.detail("integrator", format!("RK4, {steps} fixed steps"));
            run.tol("tangent length drift", 1e-8, "1");
        }
    }
    run.detail("spacetime", spacetime_name(&config.spacetime));
    Ok(ResultDocument {
        command: format!("run {op}"),
        caption: None,
        inputs: serde_json::to_value(config).expect("configs serialize"),
        outputs: run.outputs,
        provenance: Provenance {
            constants: constants()
                .into_iter()
                .map(|(name, value, unit)| Constant { name: name.into(), value, unit: unit.into() })
                .collect(),
            details: run.details,
        },
        tolerances: run.tolerances,
        notes: run.notes,
    })
}

fn spacetime_name(s: &Spacetime) -> &'static str {
    match s {
        Spacetime::Schwarzschild { .. } => "schwarzschild",
        Spacetime::Friedmann { .. } => "friedmann",
        Spacetime::Minkowski => "minkowski",
        Spacetime::ConstantTorsion { .. } => "constant-torsion",
        Spacetime::Random { .. } => "random",
    }
}
