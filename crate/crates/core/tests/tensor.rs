use approx::assert_relative_eq;
use mag_core::spacetimes::Schwarzschild;
use mag_core::tensor::*;
use mag_core::Error;
use proptest::prelude::*;

fn pt(c: &[f64]) -> Point<f64> {
    Point::from_slice(c).unwrap()
}

fn scalar_field(f: impl Fn(&[f64]) -> f64 + Send + Sync + 'static, n: usize) -> FnField<f64> {
    FnField::new(n, (0, 0), move |p: &Point<f64>| Ok(Tensor::scalar(f(p.coords()), n)))
}

#[test]
fn points_need_two_finite_coordinates() {
    assert!(matches!(Point::new(vec![1.0]), Err(Error::InvalidPoint(_))));
    assert!(matches!(Point::new(vec![1.0, f64::NAN]), Err(Error::InvalidPoint(_))));
    assert!(Point::new(vec![0.0, 1.0]).is_ok());
}

#[test]
fn polynomial_derivatives_are_exact() {
    let f = scalar_field(|x| x[0] * x[0], 2);
    let d = partial_derivative(&f, &pt(&[3.0, 0.0]), 0).unwrap();
    assert!((d.data()[0] - 6.0).abs() < 1e-10);
    let c = scalar_field(|_| 4.2, 2);
    assert!(partial_derivative(&c, &pt(&[3.0, 1.0]), 1).unwrap().data()[0].abs() < 1e-12);
    // quartic: Richardson removes h² but leaves h⁴, still tiny
    let q = scalar_field(|x| x[0].powi(4) - 2.0 * x[1].powi(3), 2);
    let d = partial_derivative(&q, &pt(&[1.5, -2.0]), 1).unwrap();
    assert_relative_eq!(d.data()[0], -24.0, max_relative = 1e-10);
}

#[test]
fn schwarzschild_g00_radial_derivative() {
    let c = 2.99792458e10;
    let rg = 2.95e5;
    let s = Schwarzschild::new(rg, c).unwrap();
    let g00 = FnField::new(4, (0, 0), move |p: &Point<f64>| Ok(Tensor::scalar(s.metric_at(p)?[[0, 0]], 4)));
    let p = pt(&[0.0, 3.0 * rg, 1.0, 0.0]);
    let d = partial_derivative(&g00, &p, 1).unwrap().data()[0];
    assert_relative_eq!(d, c * c * rg / (9.0 * rg * rg), max_relative = 1e-9);
}

#[test]
fn nonfinite_neighbourhood_names_axis() {
    let f = scalar_field(|x| x[1].sqrt(), 2);
    let err = partial_derivative(&f, &pt(&[1.0, 0.0]), 1).unwrap_err();
    assert_eq!(err, Error::Differentiation { axis: 1 });
    assert!(matches!(partial_derivative(&f, &pt(&[1.0, 1.0]), 2), Err(Error::Shape(_))));
}

#[test]
fn delta_contracts_to_identity() {
    let v = Tensor::vector(&[1.0, -2.0, 0.5]);
    let d = Tensor::<f64>::identity(3);
    let out = d.contract(&v, &[(1, 0)]).unwrap();
    assert_eq!(out, v);
}

#[test]
fn metric_times_inverse_is_delta() {
    let g = Tensor::<f64>::from_vec(3, 0, 2, vec![2.0, 0.3, -0.1, 0.3, -1.0, 0.2, -0.1, 0.2, -1.5]).unwrap();
    let gi = invert_metric(&g).unwrap();
    let prod = g.contract(&gi, &[(1, 0)]).unwrap();
    // free upper from gi first, then the lower index of g
    assert_eq!(prod.shape(), (1, 1));
    for i in 0..3 {
        for j in 0..3 {
            let expect: f64 = if i == j { 1.0 } else { 0.0 };
            assert!((prod[[i, j]] - expect).abs() < 1e-12);
        }
    }
}

#[test]
fn minkowski_and_schwarzschild_inverses() {
    let c = 3.0e10;
    let eta = Tensor::diagonal(&[c * c, -1.0, -1.0, -1.0]);
    let inv = invert_metric(&eta).unwrap();
    assert_relative_eq!(inv[[0, 0]], 1.0 / (c * c), max_relative = 1e-15);
    assert_eq!(inv[[2, 2]], -1.0);
    let s = Schwarzschild::new(1.0, c).unwrap();
    let g = s.metric_at(&pt(&[0.0, 3.0, 1.1, 0.2])).unwrap();
    let gi = invert_metric(&g).unwrap();
    for i in 0..4 {
        assert_relative_eq!(gi[[i, i]], 1.0 / g[[i, i]], max_relative = 1e-14);
    }
}

#[test]
fn singular_metric_is_rejected() {
    let g = Tensor::from_vec(2, 0, 2, vec![1.0, 2.0, 2.0, 4.0]).unwrap();
    assert!(matches!(invert_metric(&g), Err(Error::Degenerate { .. })));
    assert!(matches!(invert_metric(&Tensor::<f64>::identity(2)), Err(Error::Shape(_))));
}

#[test]
fn contraction_errors() {
    let a = Tensor::<f64>::vector(&[1.0, 2.0]);
    let b = Tensor::<f64>::vector(&[3.0, 4.0]);
    assert!(matches!(a.contract(&b, &[(0, 0)]), Err(Error::Contraction(_))));
    let c = Tensor::<f64>::covector(&[1.0, 2.0, 3.0]);
    assert!(matches!(a.contract(&c, &[(0, 0)]), Err(Error::Contraction(_))));
    let f = Tensor::covector(&[3.0, 4.0]).with_basis(Basis::Frame);
    assert_eq!(a.contract(&f, &[(0, 0)]), Err(Error::BasisMismatch));
    assert!(Tensor::<f64>::from_vec(2, 1, 1, vec![1.0; 3]).is_err());
}

#[test]
fn declared_symmetries_are_enforced() {
    let sym = Tensor::from_vec(2, 0, 2, vec![1.0, 2.0, 2.0, 3.0]).unwrap();
    assert!(sym.clone().with_symmetry(Symmetry::Symmetric, 0.0).is_ok());
    assert!(matches!(sym.with_symmetry(Symmetry::Antisymmetric, 1e-12), Err(Error::Symmetry(_))));
    let anti = Tensor::from_vec(2, 1, 2, vec![0.0, 1.0, -1.0, 0.0, 0.0, -2.0, 2.0, 0.0]).unwrap();
    assert!(anti.with_symmetry(Symmetry::Antisymmetric, 0.0).is_ok());
}

#[test]
fn trace_of_identity_is_dimension() {
    let t = Tensor::<f64>::identity(4).trace(0, 1).unwrap();
    assert_eq!(t.data(), &[4.0]);
    assert!(Tensor::<f64>::diagonal(&[1.0, 2.0]).trace(0, 1).is_err());
}

#[test]
fn sum_field_differentiates_termwise() {
    let a: FieldRef<f64> = scalar_field(|x| x[0].sin() * x[1], 2).into_ref();
    let b: FieldRef<f64> = scalar_field(|x| (x[0] * x[1]).exp(), 2).into_ref();
    let s = SumField::new(vec![(2.0, a.clone()), (-0.5, b.clone())]);
    let p = pt(&[0.3, 0.7]);
    let grad = gradient(&s, &p).unwrap();
    assert_relative_eq!(grad[0].data()[0], 2.0 * 0.3f64.cos() * 0.7 - 0.5 * 0.7 * (0.21f64).exp(), max_relative = 1e-9);
}

fn small() -> impl Strategy<Value = f64> {
    -1.0..1.0f64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn differentiation_is_linear(alpha in small(), beta in small(), x in small(), y in small()) {
        let f = scalar_field(|x| (x[0] * x[1]).sin() + x[0].powi(3), 2);
        let g = scalar_field(|x| (0.5 * x[0]).exp() * x[1], 2);
        let combo = scalar_field(move |x| {
            alpha * ((x[0] * x[1]).sin() + x[0].powi(3)) + beta * (0.5 * x[0]).exp() * x[1]
        }, 2);
        let p = pt(&[x, y]);
        for axis in 0..2 {
            let lhs = partial_derivative(&combo, &p, axis).unwrap().data()[0];
            let rhs = alpha * partial_derivative(&f, &p, axis).unwrap().data()[0]
                + beta * partial_derivative(&g, &p, axis).unwrap().data()[0];
            prop_assert!((lhs - rhs).abs() < 1e-12 * (1.0 + rhs.abs()));
        }
    }

    #[test]
    fn mixed_partials_commute(x in small(), y in small(), z in small()) {
        let f = scalar_field(|x| (x[0] * x[1]).cos() + x[2] * x[0].exp() * x[1].powi(2), 3);
        let p = pt(&[x, y, z]);
        let fref: FieldRef<f64> = f.into_ref();
        for i in 0..3 {
            for j in 0..i {
                let di = FnField::new(3, (0, 0), {
                    let f = fref.clone();
                    move |q: &Point<f64>| partial_derivative(&f, q, i)
                });
                let dj = FnField::new(3, (0, 0), {
                    let f = fref.clone();
                    move |q: &Point<f64>| partial_derivative(&f, q, j)
                });
                let a = partial_derivative(&di, &p, j).unwrap().data()[0];
                let b = partial_derivative(&dj, &p, i).unwrap().data()[0];
                prop_assert!((a - b).abs() < 1e-7, "{} vs {}", a, b);
            }
        }
    }

    #[test]
    fn contraction_is_bilinear_and_matches_loops(
        t in proptest::collection::vec(small(), 27),
        v in proptest::collection::vec(small(), 3),
        w in proptest::collection::vec(small(), 3),
        s in small(),
    ) {
        // antisymmetrise in the lower pair
        let t = Tensor::from_fn(3, 1, 2, |ix| t[ix[0] * 9 + ix[1] * 3 + ix[2]] - t[ix[0] * 9 + ix[2] * 3 + ix[1]]);
        let (vt, wt) = (Tensor::vector(&v), Tensor::vector(&w));
        let tv = t.contract(&vt, &[(1, 0)]).unwrap();
        let tvw = tv.contract(&wt, &[(1, 0)]).unwrap();
        for a in 0..3 {
            let mut brute = 0.0;
            for c in 0..3 {
                for b in 0..3 {
                    brute += t[[a, c, b]] * v[c] * w[b];
                }
            }
            prop_assert!((tvw[[a]] - brute).abs() < 1e-14);
        }
        let sv = Tensor::vector(&v.iter().zip(&w).map(|(a, b)| s * a + b).collect::<Vec<_>>());
        let lhs = t.contract(&sv, &[(1, 0)]).unwrap();
        let mut rhs = t.contract(&vt, &[(1, 0)]).unwrap().scale(s);
        rhs.axpy(1.0, &t.contract(&wt, &[(1, 0)]).unwrap()).unwrap();
        prop_assert!(lhs.sub(&rhs).unwrap().max_abs() < 1e-14);
    }

    #[test]
    fn inverse_round_trip(d in proptest::collection::vec(0.5..3.0f64, 4), off in proptest::collection::vec(-0.2..0.2f64, 6)) {
        let mut g = Tensor::diagonal(&[d[0], -d[1], -d[2], -d[3]]);
        let mut k = 0;
        for i in 0..4 {
            for j in 0..i {
                g[[i, j]] = off[k];
                g[[j, i]] = off[k];
                k += 1;
            }
        }
        let gi = invert_metric(&g).unwrap();
        let prod = g.contract(&gi, &[(1, 0)]).unwrap();
        prop_assert!(prod.sub(&Tensor::identity(4)).unwrap().max_abs() < 1e-10);
    }
}
