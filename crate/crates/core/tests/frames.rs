use std::f64::consts::PI;

use approx::assert_relative_eq;
use mag_core::frames::*;
use mag_core::spacetimes::{random_point, random_space, RandomSpaceOptions, Schwarzschild};
use mag_core::tensor::Point;
use mag_core::Error;
use proptest::prelude::*;

fn pt(c: &[f64]) -> Point<f64> {
    Point::from_slice(c).unwrap()
}

const ETA4: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

fn coordinate_seeds(n: usize) -> Vec<Vec<f64>> {
    (0..n).map(|k| (0..n).map(|i| if i == k { 1.0 } else { 0.0 }).collect()).collect()
}

/// Orthonormal frame of the Euclidean plane in polar chart (r, φ): e_(0) = ∂_r, e_(1) = ∂_φ / r.
fn polar_frame() -> FrameField<f64> {
    FrameField::new(vec![1.0, 1.0], |p| Frame::from_vectors(vec![1.0, 0.0, 0.0, 1.0 / p[0]], vec![1.0, 1.0]))
}

fn circle(center: [f64; 2], radius: f64, n: usize, warp: f64, start: f64) -> Vec<Point<f64>> {
    (0..=n)
        .map(|k| {
            let s = 2.0 * PI * (k % n) as f64 / n as f64;
            let a = start + s + warp * s.sin();
            pt(&[center[0] + radius * a.cos(), center[1] + radius * a.sin()])
        })
        .collect()
}

#[test]
fn schwarzschild_static_frame() {
    let s = Schwarzschild::new(1.0, 1.0).unwrap();
    let ff = FrameField::gram_schmidt(s.metric(), coordinate_seeds(4), ETA4.to_vec());
    let p = pt(&[0.0, 4.0, 1.0, 0.3]);
    let f = ff.at(&p).unwrap();
    assert_eq!(f.eta(), &ETA4);
    assert!(f.duality_residual() <= 1e-10);
    assert!(f.orthonormality_residual(&s.metric_at(&p).unwrap()) <= 1e-10);
    assert_relative_eq!(f.e(0, 0), 1.0 / (0.75f64).sqrt(), max_relative = 1e-14);
    assert_relative_eq!(f.e_dual(1, 1), 1.0 / (0.75f64).sqrt(), max_relative = 1e-14);
}

#[test]
fn cgs_scaled_frames_invert() {
    let c = 2.998e10;
    let f = Frame::from_vectors(
        vec![1.0 / c, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0],
        ETA4.to_vec(),
    )
    .unwrap();
    assert_relative_eq!(f.e_dual(0, 0), c, max_relative = 1e-15);
    assert!(f.duality_residual() <= 1e-12);
}

#[test]
fn gram_schmidt_failures() {
    let rs = random_space::<f64>(1, 3, RandomSpaceOptions::default()).unwrap();
    let p = random_point(1, 3, 0.2);
    let dependent = vec![vec![1.0, 0.0, 0.0], vec![2.0, 0.0, 0.0], vec![0.0, 0.0, 1.0]];
    assert!(matches!(gram_schmidt_frame(&rs.space.metric, &dependent, &p), Err(Error::Orthogonalization(_))));
    let m = mag_core::spacetimes::minkowski(1.0).unwrap().metric;
    let null = vec![vec![1.0, 1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0, 0.0], vec![0.0, 0.0, 1.0, 0.0], vec![0.0, 0.0, 0.0, 1.0]];
    assert!(matches!(gram_schmidt_frame(&m, &null, &pt(&[0.0; 4])), Err(Error::Orthogonalization(_))));
    assert!(matches!(gram_schmidt_frame(&m, &null[..3], &pt(&[0.0; 4])), Err(Error::Orthogonalization(_))));
}

#[test]
fn polar_frame_anholonomy() {
    let ff = polar_frame();
    let p = pt(&[2.0, 0.4]);
    let c = anholonomy_object(&ff, &p).unwrap();
    let k = commutator_coefficients(&ff, &p).unwrap();
    assert_relative_eq!(c[[1, 0, 1]], -0.5, max_relative = 1e-9);
    assert_relative_eq!(c[[1, 1, 0]], 0.5, max_relative = 1e-9);
    assert!(c.sub(&k).unwrap().max_abs() <= 1e-9);
    let coord = FrameField::coordinate(vec![1.0, 1.0]);
    assert_eq!(anholonomy_object(&coord, &p).unwrap().max_abs(), 0.0);
}

#[test]
fn loop_integral_matches_enclosed_area() {
    // ∮ r dφ over a chart disc equals its chart area by Green's theorem.
    let ff = polar_frame();
    let cfg = QuadratureConfig::default();
    let exact = PI * 0.04;
    let base = loop_integral(&ff, &circle([1.5, 0.3], 0.2, 64, 0.0, 0.0), 1, &cfg).unwrap();
    let fine = loop_integral(&ff, &circle([1.5, 0.3], 0.2, 128, 0.0, 0.0), 1, &cfg).unwrap();
    assert_relative_eq!(base, exact, max_relative = 1e-5);
    // Catmull–Rom sampling error shrinks at least quadratically
    assert!((fine - exact).abs() * 3.5 <= (base - exact).abs());
    let warped = loop_integral(&ff, &circle([1.5, 0.3], 0.2, 64, 0.6, 0.0), 1, &cfg).unwrap();
    let rotated = loop_integral(&ff, &circle([1.5, 0.3], 0.2, 64, 0.0, 1.3), 1, &cfg).unwrap();
    assert!((warped - base).abs() <= 1e-5 * exact);
    assert!((rotated - base).abs() <= 1e-6 * exact);
    // e^(0) = dr is exact
    assert!(loop_integral(&ff, &circle([1.5, 0.3], 0.2, 64, 0.0, 0.0), 0, &cfg).unwrap().abs() <= 1e-12);
    // reversed orientation flips the sign
    let mut rev = circle([1.5, 0.3], 0.2, 64, 0.0, 0.0);
    rev.reverse();
    assert_relative_eq!(loop_integral(&ff, &rev, 1, &cfg).unwrap(), -base, max_relative = 1e-12);
}

#[test]
fn polygon_loops_are_exact_with_linear_segments() {
    let ff = polar_frame();
    let cfg = QuadratureConfig { points: 2, interpolation: Interpolation::Linear };
    let square = [[1.0, 0.0], [2.0, 0.0], [2.0, 0.5], [1.0, 0.5], [1.0, 0.0]].map(|c| pt(&c));
    assert_relative_eq!(loop_integral(&ff, &square, 1, &cfg).unwrap(), 0.5, max_relative = 1e-14);
    let path = &square[..3];
    assert_relative_eq!(line_integral(&ff, path, 1, &cfg).unwrap(), 1.0, max_relative = 1e-14);
}

#[test]
fn loop_input_errors() {
    let ff = polar_frame();
    let cfg = QuadratureConfig::default();
    let mut open = circle([1.5, 0.3], 0.2, 16, 0.0, 0.0);
    open.pop();
    assert!(matches!(loop_integral(&ff, &open, 1, &cfg), Err(Error::OpenLoop { .. })));
    assert!(matches!(loop_integral(&ff, &open[..3], 1, &cfg), Err(Error::InvalidParameter(_))));
    let bad = QuadratureConfig { points: 9, ..cfg };
    assert!(matches!(loop_integral(&ff, &circle([1.5, 0.3], 0.2, 16, 0.0, 0.0), 1, &bad), Err(Error::InvalidParameter(_))));
}

#[test]
fn lorentz_map_construction() {
    let eta = ETA4.to_vec();
    assert!(matches!(LorentzFrameMap::boost(eta.clone(), 0, 1, 1.0), Err(Error::Superluminal { .. })));
    assert!(matches!(LorentzFrameMap::boost(eta.clone(), 1, 2, 0.3), Err(Error::InvalidParameter(_))));
    let mut shear = LorentzFrameMap::identity(eta.clone()).matrix().to_vec();
    shear[1] = 0.1;
    assert!(matches!(LorentzFrameMap::new(shear, eta.clone()), Err(Error::NonLorentz { .. })));
    let rot = LorentzFrameMap::rotation(eta.clone(), 2, 3, 0.7).unwrap();
    assert!(rot.invariance_residual() <= 1e-15);
}

#[test]
fn collinear_boosts_add_rapidities() {
    let eta = ETA4.to_vec();
    let (b1, b2) = (0.6, 0.7);
    let ab = LorentzFrameMap::boost(eta.clone(), 0, 1, b1).unwrap().then(&LorentzFrameMap::boost(eta.clone(), 0, 1, b2).unwrap()).unwrap();
    let direct = LorentzFrameMap::boost(eta.clone(), 0, 1, (b1 + b2) / (1.0 + b1 * b2)).unwrap();
    for (x, y) in ab.matrix().iter().zip(direct.matrix()) {
        assert!((x - y).abs() <= 1e-13);
    }
    let back = ab.then(&ab.inverse()).unwrap();
    for (x, y) in back.matrix().iter().zip(LorentzFrameMap::identity(eta).matrix()) {
        assert!((x - y).abs() <= 1e-13);
    }
}

#[test]
fn boosted_frames_stay_orthonormal() {
    let s = Schwarzschild::new(1.0, 1.0).unwrap();
    let p = pt(&[0.0, 6.0, 1.2, 0.0]);
    let f = gram_schmidt_frame(&s.metric(), &coordinate_seeds(4), &p).unwrap();
    let map = LorentzFrameMap::boost(ETA4.to_vec(), 0, 3, 0.9).unwrap();
    let boosted = boost_frame(&f, &map).unwrap();
    assert!(boosted.orthonormality_residual(&s.metric_at(&p).unwrap()) <= 1e-12);
    let rep = invariance_check(&f, &[1.0, -0.3, 2.0, 0.5], &map).unwrap();
    assert!(rep.drift <= 1e-12);
    let other_eta = LorentzFrameMap::identity(vec![1.0, 1.0, 1.0, 1.0]);
    assert!(boost_frame(&f, &other_eta).is_err());
}

#[test]
fn frame_component_round_trip() {
    let rs = random_space::<f64>(4, 3, RandomSpaceOptions::default()).unwrap();
    let p = random_point(4, 3, 0.3);
    let f = gram_schmidt_frame(&rs.space.metric, &coordinate_seeds(3), &p).unwrap();
    let w = [0.3, -1.2, 0.8];
    let back = f.to_holonomic(&f.to_frame(&w));
    for (a, b) in back.iter().zip(w) {
        assert!((a - b).abs() <= 1e-13);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn boost_compositions_are_lorentz(b1 in -0.99f64..0.99, b2 in -0.99f64..0.99, ang in -3.0f64..3.0, axis in 1usize..4) {
        let eta = ETA4.to_vec();
        let m = LorentzFrameMap::boost(eta.clone(), 0, 1, b1).unwrap()
            .then(&LorentzFrameMap::rotation(eta.clone(), 1, 2, ang).unwrap()).unwrap()
            .then(&LorentzFrameMap::boost(eta.clone(), 0, axis, b2).unwrap()).unwrap();
        let scale = m.matrix().iter().fold(1.0f64, |a, x| a.max(x.abs()));
        prop_assert!(m.invariance_residual() <= 1e-12 * scale * scale);
    }

    #[test]
    fn invariance_check_preserves_vectors(seed in 0u64..10_000, beta in -0.95f64..0.95, w in prop::collection::vec(-2.0f64..2.0, 4)) {
        let rs = random_space::<f64>(seed, 4, RandomSpaceOptions { lorentzian: true, ..Default::default() }).unwrap();
        let p = random_point(seed, 4, 0.3);
        let f = gram_schmidt_frame(&rs.space.metric, &coordinate_seeds(4), &p).unwrap();
        prop_assert!(f.duality_residual() <= 1e-10);
        prop_assert!(f.orthonormality_residual(&rs.space.metric.at(&p).unwrap()) <= 1e-10);
        let map = LorentzFrameMap::boost(f.eta().to_vec(), 0, 2, beta).unwrap();
        let rep = invariance_check(&f, &w, &map).unwrap();
        let gamma = 1.0 / (1.0 - beta * beta).sqrt();
        prop_assert!(rep.drift <= 1e-12 * gamma * gamma * 4.0);
    }

    #[test]
    fn anholonomy_is_antisymmetric(seed in 0u64..10_000) {
        let rs = random_space::<f64>(seed, 3, RandomSpaceOptions::default()).unwrap();
        let ff = FrameField::gram_schmidt(rs.space.metric.clone(), coordinate_seeds(3), vec![1.0; 3]);
        let p = random_point(seed, 3, 0.3);
        let c = anholonomy_object(&ff, &p).unwrap();
        for i in 0..3 { for a in 0..3 { for b in 0..3 {
            prop_assert!((c[[i, a, b]] + c[[i, b, a]]).abs() <= 1e-14);
        }}}
        let k = commutator_coefficients(&ff, &p).unwrap();
        prop_assert!(c.sub(&k).unwrap().max_abs() <= 1e-7);
    }
}
