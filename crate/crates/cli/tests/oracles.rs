use casimir_core::friction_engine::Scenario;
use casimir_core::{DrudeMaterial, OscillatorModel};
use casimir_friction::verification::{
    delta_limit_oracle, finite_difference_error, finite_difference_oracle, finite_difference_points,
    halfspace_constant_oracle, matsubara_converged_truncation, matsubara_identity_oracle, random_oscillator_pairs,
};

#[test]
fn halfspace_constant_is_scale_free_and_reproducible() {
    let a = halfspace_constant_oracle(1e-9, 100_000, 11).unwrap();
    let b = halfspace_constant_oracle(2e-6, 100_000, 11).unwrap();
    assert!(a.passed && b.passed, "{a:?} {b:?}");
    assert!((a.reference_value - 3.0 * std::f64::consts::PI / 8.0).abs() < 1e-12);
    // Same random stream, different scale: the dimensionless estimate barely moves.
    assert!((a.computed_value / b.computed_value - 1.0).abs() < 1e-9);
    let again = halfspace_constant_oracle(1e-9, 100_000, 11).unwrap();
    assert_eq!(a, again);
    assert_eq!(a.seed, Some(11));
    assert!(a.standard_error.unwrap() > 0.0);
}

#[test]
fn finite_differences_cover_axis_separations() {
    let pts = finite_difference_points(12, 3);
    let axis = pts
        .iter()
        .filter(|p| p.iter().filter(|x| **x == 0.0).count() == 2)
        .count();
    assert_eq!(axis, 6);
    let r = finite_difference_oracle(100, 3).unwrap();
    assert!(r.passed && r.rel_error <= 1e-6, "{r:?}");
}

#[test]
fn central_difference_error_is_second_order() {
    let sep = [0.3e-8, -0.7e-8, 0.5e-8];
    let e1 = finite_difference_error(sep, 1e-2).unwrap().0;
    let e2 = finite_difference_error(sep, 5e-3).unwrap().0;
    let ratio = e1 / e2;
    assert!((ratio - 4.0).abs() < 0.05, "{ratio}");
}

#[test]
fn matsubara_identity_on_the_worked_pair() {
    let a = OscillatorModel::new(1.0, 1.0).unwrap();
    let b = OscillatorModel::new(1.0, 1.5).unwrap();
    let n = matsubara_converged_truncation(2.0, &a, &b);
    let r = matsubara_identity_oracle(2.0, &a, &b, n).unwrap();
    assert!(r.passed && r.rel_error <= 1e-6, "{r:?}");
}

#[test]
fn matsubara_identity_identical_oscillators() {
    let a = OscillatorModel::new(1.0, 1.0).unwrap();
    let n = matsubara_converged_truncation(1.0, &a, &a);
    let r = matsubara_identity_oracle(1.0, &a, &a, n).unwrap();
    assert!(r.passed, "{r:?}");
}

#[test]
fn matsubara_identity_with_a_silent_oscillator() {
    let a = OscillatorModel::new(1.0, 1.0).unwrap();
    let zero = OscillatorModel::new(0.0, 1.5).unwrap();
    let r = matsubara_identity_oracle(2.0, &a, &zero, 16).unwrap();
    assert_eq!(r.reference_value, 0.0);
    assert_eq!(r.computed_value, 0.0);
    assert_eq!(r.rel_error, 0.0);
}

#[test]
fn matsubara_error_falls_with_truncation() {
    let a = OscillatorModel::new(1.0, 1.0).unwrap();
    let b = OscillatorModel::new(1.0, 1.5).unwrap();
    let errors: Vec<f64> = [4, 8, 16, 32]
        .iter()
        .map(|&n| matsubara_identity_oracle(2.0, &a, &b, n).unwrap().rel_error)
        .collect();
    assert!(errors.windows(2).all(|w| w[1] < w[0]), "{errors:?}");
    assert!(!matsubara_identity_oracle(2.0, &a, &b, 4).unwrap().converged);
}

#[test]
fn matsubara_identity_random_pairs() {
    for (beta, a, b) in random_oscillator_pairs(10, 99).unwrap() {
        let n = matsubara_converged_truncation(beta, &a, &b);
        let r = matsubara_identity_oracle(beta, &a, &b, n).unwrap();
        assert!(r.passed, "{r:?}");
    }
}

#[test]
fn delta_limit_converges() {
    let gold = DrudeMaterial::gold();
    let scn = Scenario::equal_drude(gold, 1e-8, 100.0, 300.0);
    let reports = delta_limit_oracle(&gold, &[1e-2, 1e-3, 1e-4], &scn).unwrap();
    assert!(reports.iter().all(|r| r.passed), "{reports:?}");
    assert!(reports[1].rel_error <= 1e-2);
    assert!(reports[0].rel_error > reports[1].rel_error && reports[1].rel_error > reports[2].rel_error);

    let still = Scenario::equal_drude(gold, 1e-8, 0.0, 300.0);
    for r in delta_limit_oracle(&gold, &[1e-3], &still).unwrap() {
        assert_eq!(r.rel_error, 0.0);
        assert_eq!(r.reference_value, 0.0);
    }
    assert!(delta_limit_oracle(&gold, &[1e-4, 1e-3], &scn).is_err());
}
