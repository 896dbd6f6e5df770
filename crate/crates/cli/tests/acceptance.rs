//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any failure.
//!
//! Run with `cargo test -p casimir-friction --test acceptance`.

use std::process::ExitCode;
use std::time::Instant;

use astro_float::{BigFloat, Consts, RoundingMode};
use casimir_core::friction_engine::{dense_friction_closed_form, dense_friction_quadrature, half_beta_q, Scenario};
use casimir_core::materials::{reconstruct_alpha, surface_response, SpectralDistribution};
use casimir_core::special::ln_x_over_sinh_squared;
use casimir_core::{DrudeMaterial, OscillatorModel};
use casimir_friction::config::RunConfig;
use casimir_friction::report::compute;
use casimir_friction::verification::{
    delta_limit_oracle, finite_difference_oracle, halfspace_constant_oracle, matsubara_converged_truncation,
    matsubara_identity_oracle, random_oscillator_pairs,
};
use casimir_friction::Catalog;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const SEED: u64 = 20_240_601;
/// Monte-Carlo samples for the geometry constant.
const MC_SAMPLES: u64 = 1_000_000;

fn within(value: f64, target: f64, rel: f64, what: &str) -> Outcome {
    let err = (value / target - 1.0).abs();
    let line = format!("{what} = {value:.6e} vs {target:e} (rel {err:.2e}, budget {rel:e})");
    if err <= rel {
        Ok(line)
    } else {
        Err(line)
    }
}

fn ac1_gold_prefactor() -> Outcome {
    let r = compute(&RunConfig::gold_example(), &Catalog::builtin()).map_err(|e| e.to_string())?;
    within(r.prefactor_pa, 5.81e-3, 0.01, "prefactor_Pa")
}

fn ac2_derived_parameters() -> Outcome {
    let gold = DrudeMaterial::gold();
    let q = within(gold.q(), 6.36, 0.01, "q_eV")?;
    let x = within(
        half_beta_q(&gold, 300.0).map_err(|e| e.to_string())?,
        123.0,
        0.01,
        "half_beta_q",
    )?;
    Ok(format!("{q}; {x}"))
}

fn ac3_geometry_constant() -> Outcome {
    let r = halfspace_constant_oracle(1e-8, MC_SAMPLES, SEED).map_err(|e| e.to_string())?;
    let line = format!(
        "3pi/8: MC {:.6} vs {:.6} (rel {:.2e}, se {:.1e}, {} samples, seed {})",
        r.computed_value,
        r.reference_value,
        r.rel_error,
        r.standard_error.unwrap_or(f64::NAN),
        r.samples_or_nodes,
        SEED
    );
    if r.passed {
        Ok(line)
    } else {
        Err(line)
    }
}

fn ac4_tensor_oracle() -> Outcome {
    let r = finite_difference_oracle(100, SEED).map_err(|e| e.to_string())?;
    let line = format!(
        "max rel deviation {:.2e} over {} separations (9 axis/diagonal)",
        r.rel_error, r.samples_or_nodes
    );
    if r.passed {
        Ok(line)
    } else {
        Err(line)
    }
}

fn ac5_matsubara_identity() -> Outcome {
    let mut cases = vec![(
        2.0,
        OscillatorModel::new(1.0, 1.0).unwrap(),
        OscillatorModel::new(1.0, 1.5).unwrap(),
    )];
    cases.extend(random_oscillator_pairs(12, SEED).map_err(|e| e.to_string())?);
    let mut worst: f64 = 0.0;
    for (beta, a, b) in &cases {
        let n = matsubara_converged_truncation(*beta, a, b);
        let r = matsubara_identity_oracle(*beta, a, b, n).map_err(|e| e.to_string())?;
        worst = worst.max(r.rel_error);
        if !r.passed {
            return Err(format!("{}: rel {:.2e} ({})", r.name, r.rel_error, r.detail));
        }
    }
    Ok(format!(
        "{} oscillator pairs, n = 0..4, worst rel {:.2e}",
        cases.len(),
        worst
    ))
}

fn ac6_spectral_reconstruction() -> Outcome {
    let gold = DrudeMaterial::gold();
    let mat = gold.with_nu(1e-3 * gold.q()).map_err(|e| e.to_string())?;
    let dist = SpectralDistribution::drude_surface(&mat).map_err(|e| e.to_string())?;
    let sum_rule = reconstruct_alpha(&dist, 0.0).map_err(|e| e.to_string())?.value;
    if (sum_rule - 1.0).abs() > 1e-4 {
        return Err(format!("sum rule {sum_rule}"));
    }
    let mut worst: f64 = 0.0;
    for k in [0.1, 1.0, 10.0].map(|f| f * mat.q()) {
        let r = reconstruct_alpha(&dist, k).map_err(|e| e.to_string())?.value;
        worst = worst.max((r / surface_response(&mat, k) - 1.0).abs());
    }
    let line = format!("K=0 sum rule {sum_rule:.8}; worst rel at K in {{0.1q, q, 10q}} {worst:.2e}");
    if worst <= 0.01 {
        Ok(line)
    } else {
        Err(line)
    }
}

fn ac7_closed_form_equivalence() -> Outcome {
    let gold = DrudeMaterial::gold();
    let scn = Scenario::equal_drude(gold, 10e-9, 100.0, 300.0);
    let reports = delta_limit_oracle(&gold, &[1e-2, 1e-3, 1e-4], &scn).map_err(|e| e.to_string())?;
    let errs: Vec<String> = reports.iter().map(|r| format!("{:.2e}", r.rel_error)).collect();
    let line = format!("rel error at sigma/q = 1e-2, 1e-3, 1e-4: {}", errs.join(", "));
    if reports.iter().all(|r| r.passed) && reports[1].rel_error <= 0.01 {
        Ok(line)
    } else {
        Err(line)
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a / b - 1.0).abs()
}

fn ac8_structural_invariants() -> Outcome {
    let mut runner = TestRunner::new_with_rng(
        Config {
            cases: 64,
            failure_persistence: None,
            ..Config::default()
        },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    );
    // Ranges keep every force a normal double so ratios are exact to rounding.
    let params = (
        3.0f64..12.0,
        1e-4f64..1e-2,
        300.0f64..3000.0,
        1e-2f64..1e2,
        1e-9f64..1e-7,
    );
    runner
        .run(&params, |(omega_p, ratio, t, v, d)| {
            let base_mat = DrudeMaterial::new(omega_p, 0.0).unwrap();
            let mat = base_mat.with_nu(ratio * base_mat.q()).unwrap();
            let scn = |m: DrudeMaterial, d: f64, v: f64| Scenario::equal_drude(m, d, v, t);
            for route in [dense_friction_closed_form, dense_friction_quadrature] {
                let base = route(&scn(mat, d, v)).unwrap();
                prop_assert!(base.force_per_area <= 0.0, "F > 0");
                let fast = route(&scn(mat, d, 2.0 * v)).unwrap();
                prop_assert!(
                    rel(fast.force_per_area, 2.0 * base.force_per_area) <= 1e-12,
                    "not linear in v"
                );
                let far = route(&scn(mat, 2.0 * d, v)).unwrap();
                prop_assert!(rel(16.0 * far.force_per_area, base.force_per_area) <= 1e-12, "not d^-4");
            }
            // |F| ∝ 1/ν at fixed q.
            let damped = mat.with_nu(2.0 * mat.nu()).unwrap();
            let a = dense_friction_closed_form(&scn(mat, d, v)).unwrap();
            let b = dense_friction_closed_form(&scn(damped, d, v)).unwrap();
            prop_assert!(rel(2.0 * b.force_per_area, a.force_per_area) <= 1e-12, "not 1/nu");
            // Density independence of the dense quadrature route.
            let mut thin = scn(mat, d, v);
            thin.dense_densities = Some([1e26, 3e26]);
            let mut thick = thin.clone();
            thick.dense_densities = Some([5e28, 2e29]);
            let f1 = dense_friction_quadrature(&thin).unwrap();
            let f2 = dense_friction_quadrature(&thick).unwrap();
            prop_assert!(rel(f1.force_per_area, f2.force_per_area) <= 1e-10, "depends on density");
            // Lower q suppresses less while ½βq > 2.
            let lower = DrudeMaterial::new(0.7 * omega_p, mat.nu()).unwrap();
            if half_beta_q(&lower, t).unwrap() > 2.0 {
                let hi = dense_friction_closed_form(&scn(mat, d, v)).unwrap();
                let lo = dense_friction_closed_form(&scn(lower, d, v)).unwrap();
                prop_assert!(lo.suppression_log > hi.suppression_log, "suppression not monotone in q");
            }
            Ok(())
        })
        .map_err(|e| e.to_string())?;

    // Log-space suppression against the direct path wherever the latter is representable.
    let mut runner = TestRunner::new_with_rng(
        Config {
            cases: 512,
            failure_persistence: None,
            ..Config::default()
        },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    );
    runner
        .run(&(1e-3f64..300.0), |x| {
            let direct = x / x.sinh();
            let direct = direct * direct;
            prop_assert!(
                rel(ln_x_over_sinh_squared(x).exp(), direct) <= 1e-12,
                "log path differs at {x}"
            );
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok(
        "F <= 0, linear in v, d^-4, 1/nu, density independence, q monotonicity (64 cases); log-sinh path (512 cases)"
            .into(),
    )
}

/// ln((x/sinh x)²) at 320 bits.
fn suppression_log_extended(x: f64) -> f64 {
    const PREC: usize = 320;
    let rm = RoundingMode::ToEven;
    let mut cc = Consts::new().expect("constants cache");
    let bx = BigFloat::from_f64(x, PREC);
    let ratio = bx.div(&bx.sinh(PREC, rm, &mut cc), PREC, rm);
    ratio
        .mul(&ratio, PREC, rm)
        .ln(PREC, rm, &mut cc)
        .to_string()
        .parse()
        .expect("decimal output")
}

fn ac9_gold_force_magnitude() -> Outcome {
    let gold = DrudeMaterial::gold();
    let r = dense_friction_closed_form(&Scenario::equal_drude(gold, 10e-9, 100.0, 300.0)).map_err(|e| e.to_string())?;
    let expected = suppression_log_extended(half_beta_q(&gold, 300.0).map_err(|e| e.to_string())?);
    let err = rel(r.suppression_log, expected);
    let identity = r.force_per_area == -r.prefactor * r.suppression_log.exp();
    let line = format!(
        "suppression_log {:.12} vs extended {:.12} (rel {err:.1e}); force {:.4e} Pa = -prefactor*exp(suppression_log): {identity}",
        r.suppression_log, expected, r.force_per_area
    );
    if err <= 1e-10 && identity {
        Ok(line)
    } else {
        Err(line)
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("gold worked example prefactor", ac1_gold_prefactor),
        ("derived parameters q and half beta q", ac2_derived_parameters),
        ("half-space geometry constant", ac3_geometry_constant),
        ("force tensor finite differences", ac4_tensor_oracle),
        ("Matsubara convolution identity", ac5_matsubara_identity),
        ("spectral reconstruction and sum rule", ac6_spectral_reconstruction),
        ("closed form vs quadrature", ac7_closed_form_equivalence),
        ("structural invariants", ac8_structural_invariants),
        ("gold force magnitude", ac9_gold_force_magnitude),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("AC{} PASS {name} [{secs:.2}s]: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("AC{} FAIL {name} [{secs:.2}s]: {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
