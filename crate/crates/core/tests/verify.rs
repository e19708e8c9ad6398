use mag_core::verify::*;

fn opts(seed: u64) -> VerifyOptions {
    VerifyOptions { seed, spaces: 12, ..Default::default() }
}

#[test]
fn suite_names_round_trip() {
    for s in [Suite::Identities, Suite::Transport, Suite::Frames, Suite::All] {
        assert_eq!(s.to_string().parse::<Suite>().unwrap(), s);
    }
    assert!("geometry".parse::<Suite>().is_err());
}

#[test]
fn identities_pass_and_are_deterministic() {
    let a = run_suite(Suite::Identities, &opts(3)).unwrap();
    let b = run_suite(Suite::Identities, &opts(3)).unwrap();
    assert!(a.passed(), "{:#?}", a.checks.iter().filter(|c| !c.passed).collect::<Vec<_>>());
    assert_eq!(a, b);
    let c = run_suite(Suite::Identities, &opts(4)).unwrap();
    assert_ne!(a.checks.iter().map(|c| c.value).collect::<Vec<_>>(), c.checks.iter().map(|c| c.value).collect::<Vec<_>>());
}

#[test]
fn frames_pass() {
    let r = run_suite(Suite::Frames, &opts(11)).unwrap();
    assert!(r.passed());
    assert!(r.checks.iter().all(|c| c.suite == "frames" && c.samples > 0));
}

#[test]
fn tolerance_override_touches_residuals_only() {
    let strict = VerifyOptions { tolerance: Some(1e-300), ..opts(3) };
    let r = run_suite(Suite::Identities, &strict).unwrap();
    assert!(!r.passed());
    for c in &r.checks {
        match c.criterion {
            Criterion::Residual { tolerance } => {
                assert_eq!(tolerance, 1e-300);
                assert_eq!(c.passed, c.value <= 1e-300);
            }
            Criterion::Band { .. } => panic!("identities have no bands"),
        }
    }
}

#[test]
fn all_runs_every_suite() {
    let r = run_suite(Suite::All, &opts(5)).unwrap();
    for s in ["identities", "transport", "frames"] {
        assert!(r.checks.iter().any(|c| c.suite == s), "{s} missing");
    }
    let bands: Vec<_> = r.checks.iter().filter(|c| matches!(c.criterion, Criterion::Band { .. })).collect();
    assert!(!bands.is_empty());
    let loose = run_suite(Suite::All, &VerifyOptions { tolerance: Some(1.0), ..opts(5) }).unwrap();
    for (a, b) in bands.iter().zip(loose.checks.iter().filter(|c| matches!(c.criterion, Criterion::Band { .. }))) {
        assert_eq!(a.criterion, b.criterion);
    }
    assert!(r.passed());
}
