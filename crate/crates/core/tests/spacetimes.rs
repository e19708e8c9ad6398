use std::sync::Arc;

use approx::assert_relative_eq;
use mag_core::geometry::{christoffel, nonmetricity, scalar_curvature, torsion};
use mag_core::ode::IntegratorConfig;
use mag_core::spacetimes::*;
use mag_core::tensor::{ConstantField, FnField, Point, Tensor, TensorField};
use mag_core::Error;
use proptest::prelude::*;

fn pt(c: &[f64]) -> Point<f64> {
    Point::from_slice(c).unwrap()
}

fn friedmann(model: FriedmannModel, chart: FriedmannChart) -> Friedmann<f64> {
    Friedmann::new(model, chart, ScaleFactor::cosh(), 2.0)
}

#[test]
fn schwarzschild_connection_matches_christoffel() {
    let s = Schwarzschild::new(1.0, 1.0).unwrap();
    for r in [1.5, 3.0, 7.0, 20.0] {
        let p = pt(&[0.2, r, 1.0, 0.7]);
        let analytic = schwarzschild_connection(&s, &p).unwrap();
        let fd = christoffel(&s.metric(), &p).unwrap();
        assert!(analytic.sub(&fd).unwrap().max_abs() <= 1e-9 * analytic.max_abs(), "r = {r}");
    }
}

#[test]
fn schwarzschild_in_cgs() {
    let s = Schwarzschild::from_mass(1.989e33, 6.674e-8, 2.998e10).unwrap();
    assert_relative_eq!(s.rg, 2.0 * 6.674e-8 * 1.989e33 / (2.998e10 * 2.998e10), max_relative = 1e-14);
    let g = s.metric_at(&pt(&[0.0, 1.5e13, 1.0, 0.0])).unwrap();
    assert_relative_eq!(g[[0, 0]], 2.998e10 * 2.998e10 * (1.0 - s.rg / 1.5e13), max_relative = 1e-14);
}

#[test]
fn schwarzschild_rejects_bad_inputs() {
    assert!(matches!(Schwarzschild::new(-1.0, 1.0), Err(Error::InvalidParameter(_))));
    assert!(Schwarzschild::new(0.0, 1.0).is_ok());
    assert!(matches!(Schwarzschild::new(1.0, -1.0), Err(Error::InvalidParameter(_))));
    let s = Schwarzschild::new(1.0, 1.0).unwrap();
    assert!(matches!(s.metric_at(&pt(&[0.0, 0.5, 1.0, 0.0])), Err(Error::Region(_))));
    assert!(matches!(s.check_region(&pt(&[0.0, 1.0, 1.0, 0.0])), Err(Error::Region(_))));
}

#[test]
fn friedmann_connections_match_christoffel() {
    for model in [FriedmannModel::Closed, FriedmannModel::Open] {
        for chart in [FriedmannChart::Conformal, FriedmannChart::Cosmic] {
            let f = friedmann(model, chart);
            let p = pt(&[0.4, 0.8, 1.1, 0.3]);
            let analytic = f.connection_at(&p).unwrap();
            let fd = christoffel(&f.metric(), &p).unwrap();
            assert!(analytic.sub(&fd).unwrap().max_abs() <= 1e-9, "{model:?} {chart:?}");
        }
    }
}

#[test]
fn friedmann_requires_positive_scale() {
    let f = Friedmann::new(FriedmannModel::Open, FriedmannChart::Conformal, ScaleFactor::sinh(), 1.0);
    assert!(matches!(f.metric_at(&pt(&[-0.5, 0.3, 1.0, 0.0])), Err(Error::Region(_))));
    assert!(matches!(f.metric_at(&pt(&[0.5, 0.3])), Err(Error::Shape(_))));
}

#[test]
fn static_closed_universe_curvature() {
    // a = 1 in the conformal chart: the Einstein static universe, R = −6 with signature (+,−,−,−).
    let f = Friedmann::new(FriedmannModel::Closed, FriedmannChart::Conformal, ScaleFactor::new("one", |_| 1.0, |_| 0.0), 1.0);
    let r = scalar_curvature(&f.space(), &pt(&[0.0, 0.9, 1.2, 0.0])).unwrap();
    assert_relative_eq!(r.abs(), 6.0, max_relative = 1e-7);
}

#[test]
fn radial_redshift_ode_matches_closed_form() {
    let s = Schwarzschild::new(1.0, 1.0).unwrap();
    for (re, ro) in [(1.5, 50.0), (40.0, 3.0), (1.05, 1.2)] {
        let r = radial_photon_redshift(&s, re, ro, 1.0).unwrap();
        assert!(r.relative_difference <= 1e-8, "{re} → {ro}: {:e}", r.relative_difference);
        if re < ro {
            assert!(r.closed_form < 1.0);
        }
    }
    let up = radial_photon_redshift_closed_form(&s, 2.0, 30.0, 1.0).unwrap();
    let back = radial_photon_redshift_closed_form(&s, 30.0, 2.0, up).unwrap();
    assert_relative_eq!(back, 1.0, max_relative = 1e-14);
    assert!(matches!(radial_photon_redshift(&s, 0.9, 3.0, 1.0), Err(Error::Region(_))));
}

#[test]
fn friedmann_null_ray_conserves_a_omega() {
    let f = Friedmann::new(FriedmannModel::Open, FriedmannChart::Conformal, ScaleFactor::power(1.0, 1.0, 2.0 / 3.0), 1.0);
    let times = [1.5, 2.0, 3.0];
    let samples = friedmann_null_ray(&f, 1.0, 0.1, 2.0, &times, &IntegratorConfig::default()).unwrap();
    for s in &samples {
        assert_relative_eq!(s.a_omega, 2.0, max_relative = 1e-9);
        assert_relative_eq!(s.omega / 2.0, friedmann_redshift(&f, 1.0, s.t).unwrap(), max_relative = 1e-9);
        assert_relative_eq!(s.chi - 0.1, s.t - 1.0, max_relative = 1e-9);
    }
    let cosmic = friedmann(FriedmannModel::Open, FriedmannChart::Cosmic);
    assert!(matches!(friedmann_null_ray(&cosmic, 1.0, 0.1, 1.0, &times, &IntegratorConfig::default()), Err(Error::InvalidParameter(_))));
}

#[test]
fn friedmann_redshift_rate_matches_difference() {
    let f = friedmann(FriedmannModel::Closed, FriedmannChart::Conformal);
    let h = 1e-5;
    // travel time held fixed: t₂ = t₁ + 1
    let k = |t1: f64| friedmann_redshift(&f, t1, t1 + 1.0).unwrap();
    let fd = (k(0.5 + h) - k(0.5 - h)) / (2.0 * h);
    assert_relative_eq!(friedmann_redshift_rate(&f, 0.5, 1.5).unwrap(), fd, max_relative = 1e-8);
}

#[test]
fn friedmann_boost_frames_are_orthonormal() {
    let f = friedmann(FriedmannModel::Closed, FriedmannChart::Cosmic);
    let p = pt(&[0.3, 0.5, 1.0, 0.2]);
    let fr = friedmann_boost(&f, &p, 1.2).unwrap();
    let g = f.metric_at(&p).unwrap();
    assert!(fr.e.orthonormality_residual(&g) <= 1e-12);
    assert!(fr.e_prime.orthonormality_residual(&g) <= 1e-12);
    assert_relative_eq!(fr.gamma, 1.0 / (1.0f64 - 0.36).sqrt(), max_relative = 1e-14);
    assert!(matches!(friedmann_boost(&f, &p, 2.0), Err(Error::Superluminal { .. })));
}

#[test]
fn synthetic_space_recovers_its_data() {
    let rs = random_space::<f64>(31, 3, RandomSpaceOptions { torsion: false, nonmetric: false, ..Default::default() }).unwrap();
    let t = single_torsion(3, 0, 1, 2, 0.2).add(&single_torsion(3, 1, 0, 2, -0.1)).unwrap();
    // Q_kij = x^k-dependent, symmetric in (i, j)
    let q = FnField::new(3, (0, 3), |p: &Point<f64>| {
        Ok(Tensor::from_fn(3, 0, 3, |ix| 0.05 * (ix[0] as f64 + 1.0) * (1.0 + p[ix[1]] * p[ix[2]])))
    });
    let syn = SyntheticSpace::new(rs.space.metric.clone(), Arc::new(ConstantField(t.clone())), Arc::new(q)).unwrap();
    let space = syn.space();
    let p = random_point(31, 3, 0.3);
    assert!(torsion(&space, &p).unwrap().sub(&t).unwrap().max_abs() <= 1e-12);
    let q_expect = syn.nonmetricity.eval(&p).unwrap();
    assert!(nonmetricity(&space, &p).unwrap().sub(&q_expect).unwrap().max_abs() <= 1e-7);
    assert!(matches!(
        SyntheticSpace::new(rs.space.metric.clone(), Arc::new(ConstantField(t.clone())), Arc::new(ConstantField(t))),
        Err(Error::Shape(_))
    ));
}

#[test]
fn flat_spaces() {
    let m = minkowski(2.0).unwrap();
    let g = m.metric.at(&pt(&[0.0, 1.0, 2.0, 3.0])).unwrap();
    assert_eq!(g[[0, 0]], 4.0);
    assert_eq!(g[[3, 3]], -1.0);
    assert_eq!(euclidean::<f64>(3).unwrap().metric.signature(), &[1, 1, 1]);
    assert!(matches!(flat_with_connection(&[1.0, 1.0], Tensor::zeros(3, 1, 2)), Err(Error::Shape(_))));
}

#[test]
fn random_spaces_are_reproducible() {
    let a = random_space::<f64>(99, 3, RandomSpaceOptions::default()).unwrap();
    let b = random_space::<f64>(99, 3, RandomSpaceOptions::default()).unwrap();
    let c = random_space::<f64>(100, 3, RandomSpaceOptions::default()).unwrap();
    let p = random_point(1, 3, 0.3);
    assert_eq!(a.space.connection.at(&p).unwrap(), b.space.connection.at(&p).unwrap());
    assert_ne!(a.space.connection.at(&p).unwrap(), c.space.connection.at(&p).unwrap());
}

#[test]
fn lorentzian_random_space_signature() {
    let rs = random_space::<f64>(5, 4, RandomSpaceOptions { lorentzian: true, ..Default::default() }).unwrap();
    let g = rs.space.metric.at(&random_point(5, 4, 0.3)).unwrap();
    assert!(g[[0, 0]] > 0.0);
    assert!((1..4).all(|k| g[[k, k]] < 0.0));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn random_metrics_invert_on_the_box(seed in 0u64..100_000, n in 2usize..6, x in prop::collection::vec(-0.5f64..0.5, 5)) {
        let rs = random_space::<f64>(seed, n, RandomSpaceOptions::default()).unwrap();
        let p = Point::from_slice(&x[..n]).unwrap();
        let g = rs.space.metric.at(&p).unwrap();
        let gi = rs.space.metric.inverse(&p).unwrap();
        for i in 0..n { for j in 0..n {
            let prod: f64 = (0..n).map(|k| g[[i, k]] * gi[[k, j]]).sum();
            let e = if i == j { 1.0 } else { 0.0 };
            prop_assert!((prod - e).abs() <= 1e-12);
        }}
    }

    #[test]
    fn schwarzschild_is_static_and_spherical(t in -5.0f64..5.0, r in 1.1f64..50.0, th in 0.2f64..3.0, ph in -3.0f64..3.0) {
        let s = Schwarzschild::new(1.0, 1.0).unwrap();
        let a = s.metric_at(&pt(&[t, r, th, ph])).unwrap();
        let b = s.metric_at(&pt(&[0.0, r, th, 0.0])).unwrap();
        prop_assert_eq!(a, b);
    }
}
