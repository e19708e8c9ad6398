//! The numerical core is generic over the scalar; a reduced-precision smoke run.

use mag_core::geometry::{bianchi_residual, christoffel, curvature, nonmetricity, torsion};
use mag_core::spacetimes::{random_point, random_space, RandomSpaceOptions, Schwarzschild};
use mag_core::tensor::Point;
use mag_core::transport::{parallel_transport, ConnectionChoice, Curve};

#[test]
fn random_space_in_f32() {
    let rs = random_space::<f32>(8, 3, RandomSpaceOptions::default()).unwrap();
    let p = random_point::<f32>(8, 3, 0.3);
    let t = torsion(&rs.space, &p).unwrap();
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                assert_eq!(t[[a, b, c]], -t[[a, c, b]]);
            }
        }
    }
    assert!(curvature(&rs.space, &p).unwrap().max_abs().is_finite());
    assert!(bianchi_residual(&rs.space, &p).unwrap().max_abs() < 1e-2);
    let q32 = nonmetricity(&rs.space, &p).unwrap();
    let rs64 = random_space::<f64>(8, 3, RandomSpaceOptions::default()).unwrap();
    let q64 = nonmetricity(&rs64.space, &random_point::<f64>(8, 3, 0.3)).unwrap();
    for (a, b) in q32.data().iter().zip(q64.data()) {
        assert!((*a as f64 - b).abs() < 1e-3);
    }
}

#[test]
fn schwarzschild_in_f32() {
    let s = Schwarzschild::<f32>::new(1.0, 1.0).unwrap();
    let p = Point::from_slice(&[0.0f32, 4.0, 1.0, 0.5]).unwrap();
    let analytic = s.space().connection.at(&p).unwrap();
    let fd = christoffel(&s.metric(), &p).unwrap();
    assert!(analytic.sub(&fd).unwrap().max_abs() < 1e-3);
}

#[test]
fn transport_in_f32() {
    let flat = mag_core::spacetimes::euclidean::<f32>(2).unwrap();
    let curve = Curve::new(2, |s: f32| Ok(vec![s.cos(), s.sin()])).with_velocity(|s: f32| Ok(vec![-s.sin(), s.cos()]));
    let out = parallel_transport(&flat, &curve, &[1.0, 0.0], &ConnectionChoice::Base, 0.0, &[1.0], &Default::default()).unwrap();
    assert!((out[0][0] - 1.0).abs() < 1e-5 && out[0][1].abs() < 1e-5);
}
