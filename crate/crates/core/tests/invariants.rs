use casimir_core::friction_engine::{
    dense_friction_closed_form, dense_friction_quadrature, dilute_friction, half_beta_q, Medium, Scenario,
};
use casimir_core::{DrudeMaterial, FrictionReport, SpectralDistribution};
use proptest::prelude::*;

fn rel(a: f64, b: f64) -> f64 {
    (a / b - 1.0).abs()
}

/// a = factor · b, compared on the force when representable and on its log otherwise.
fn scaled_by(a: &FrictionReport, b: &FrictionReport, factor: f64) -> bool {
    if a.force_per_area != 0.0 && b.force_per_area != 0.0 {
        rel(a.force_per_area, factor * b.force_per_area) <= 1e-12
    } else {
        let la = a.ln_force_magnitude();
        let lb = b.ln_force_magnitude() + factor.ln();
        (la - lb).abs() <= 1e-12 * la.abs().max(1.0)
    }
}

fn drude(omega_p: f64, sigma_over_q: f64) -> DrudeMaterial {
    let m = DrudeMaterial::new(omega_p, 0.0).unwrap();
    m.with_nu(sigma_over_q * m.q()).unwrap()
}

fn dilute(d: f64, v: f64, t: f64) -> Scenario {
    let dist = SpectralDistribution::damped_oscillator(1e-30, 0.2, 0.01).unwrap();
    Scenario {
        medium1: Medium::Dilute {
            distribution: dist.clone(),
            density: 1e28,
        },
        medium2: Medium::Dilute {
            distribution: dist,
            density: 2e28,
        },
        separation_m: d,
        speed_mps: v,
        temperature_k: t,
        dense_densities: None,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn closed_form_structure(
        omega_p in 1.0f64..15.0, ratio in 1e-4f64..1e-1, t in 50.0f64..3000.0,
        v in 1e-3f64..1e3, d in 1e-9f64..1e-6,
    ) {
        let m = drude(omega_p, ratio);
        let base = dense_friction_closed_form(&Scenario::equal_drude(m, d, v, t)).unwrap();
        prop_assert!(base.force_per_area <= 0.0);

        let fast = dense_friction_closed_form(&Scenario::equal_drude(m, d, 2.0 * v, t)).unwrap();
        prop_assert!(scaled_by(&fast, &base, 2.0));

        let far = dense_friction_closed_form(&Scenario::equal_drude(m, 2.0 * d, v, t)).unwrap();
        prop_assert!(scaled_by(&far, &base, 1.0 / 16.0));

        let damped = m.with_nu(2.0 * m.nu()).unwrap();
        let wide = dense_friction_closed_form(&Scenario::equal_drude(damped, d, v, t)).unwrap();
        prop_assert!(scaled_by(&wide, &base, 0.5));

        let direct = -base.prefactor * base.suppression_log.exp();
        prop_assert!(base.force_per_area == direct || rel(base.force_per_area, direct) <= 1e-14);
    }

    #[test]
    fn quadrature_structure(
        omega_p in 2.0f64..12.0, ratio in 1e-4f64..1e-2, t in 100.0f64..2000.0,
        v in 1e-2f64..1e2, d in 1e-9f64..1e-7,
    ) {
        let m = drude(omega_p, ratio);
        let base = dense_friction_quadrature(&Scenario::equal_drude(m, d, v, t)).unwrap();
        prop_assert!(base.force_per_area <= 0.0);
        let fast = dense_friction_quadrature(&Scenario::equal_drude(m, d, 2.0 * v, t)).unwrap();
        prop_assert!(scaled_by(&fast, &base, 2.0));
        let far = dense_friction_quadrature(&Scenario::equal_drude(m, 2.0 * d, v, t)).unwrap();
        prop_assert!(scaled_by(&far, &base, 1.0 / 16.0));

        let mut thin = Scenario::equal_drude(m, d, v, t);
        thin.dense_densities = Some([1e26, 1e26]);
        let mut thick = thin.clone();
        thick.dense_densities = Some([1e27, 1e27]);
        let a = dense_friction_quadrature(&thin).unwrap();
        let b = dense_friction_quadrature(&thick).unwrap();
        prop_assert!((a.ln_force_magnitude() - b.ln_force_magnitude()).abs() <= 1e-10);
    }

    #[test]
    fn dilute_structure(v in 1e-2f64..1e2, d in 1e-9f64..1e-7, t in 200.0f64..2000.0) {
        let base = dilute_friction(&dilute(d, v, t)).unwrap();
        prop_assert!(base.force_per_area < 0.0);
        let fast = dilute_friction(&dilute(d, 2.0 * v, t)).unwrap();
        prop_assert!(scaled_by(&fast, &base, 2.0));
        let far = dilute_friction(&dilute(2.0 * d, v, t)).unwrap();
        prop_assert!(scaled_by(&far, &base, 1.0 / 16.0));
    }

    #[test]
    fn lower_plasma_energy_suppresses_less(
        omega_p in 0.5f64..15.0, shrink in 0.05f64..0.95, t in 50.0f64..3000.0,
    ) {
        let hi = DrudeMaterial::new(omega_p, 0.035).unwrap();
        let lo = DrudeMaterial::new(omega_p * shrink, 0.035).unwrap();
        prop_assume!(half_beta_q(&lo, t).unwrap() > 2.0);
        let s_hi = dense_friction_closed_form(&Scenario::equal_drude(hi, 1e-8, 1.0, t)).unwrap();
        let s_lo = dense_friction_closed_form(&Scenario::equal_drude(lo, 1e-8, 1.0, t)).unwrap();
        prop_assert!(s_lo.suppression_log > s_hi.suppression_log);
    }
}

#[test]
fn dilute_still_plates() {
    let r = dilute_friction(&dilute(1e-8, 0.0, 300.0)).unwrap();
    assert_eq!(r.force_per_area, 0.0);
}

#[test]
fn dilute_without_overlap_is_frictionless() {
    let mut s = dilute(1e-8, 1.0, 300.0);
    let band = |a: f64, b: f64| SpectralDistribution::tabulated(vec![a * a, b * b], vec![1e-30, 1e-30]).unwrap();
    s.medium1 = Medium::Dilute {
        distribution: band(1.0, 2.0),
        density: 1e28,
    };
    s.medium2 = Medium::Dilute {
        distribution: band(3.0, 4.0),
        density: 1e28,
    };
    let r = dilute_friction(&s).unwrap();
    assert_eq!(r.force_per_area, 0.0);
    assert_eq!(r.diagnostics.spectral_overlap, Some(false));
}

#[test]
fn dilute_route_rejects_drude_plates() {
    let s = Scenario::equal_drude(DrudeMaterial::gold(), 1e-8, 1.0, 300.0);
    assert!(dilute_friction(&s).is_err());
    assert!(dense_friction_closed_form(&dilute(1e-8, 1.0, 300.0)).is_err());
}
