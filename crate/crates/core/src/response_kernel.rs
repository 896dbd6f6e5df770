//! Oscillator propagators, Matsubara series and the two-oscillator friction factor.
//!
//! Imaginary-time correlations g(λ), λ ∈ [0, β], are stored through their
//! bosonic Matsubara coefficients g̃(K_n), K_n = 2πn/β. All propagators used
//! here are real and even in K, so the series is stored for n = −N..=N and the
//! inverse transform reduces to a cosine sum.

use alloc::vec::Vec;
use core::f64::consts::PI;

use libm::{cos, exp, log};

use crate::error::{Error, Result};
use crate::quantities::{beta_from_temperature, Quantity};
use crate::special::{ln_sinh, LOG_SINH_SWITCH};

/// Sharp harmonic oscillator: static polarizability and eigenfrequency (as ħω_a, eV).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorModel {
    alpha0: f64,
    omega: f64,
}

impl OscillatorModel {
    pub fn new(alpha0: f64, omega: f64) -> Result<Self> {
        if !(alpha0 >= 0.0) || !alpha0.is_finite() {
            return Err(Error::Domain {
                what: "polarizability must be non-negative",
                value: alpha0,
            });
        }
        if !(omega > 0.0) || !omega.is_finite() {
            return Err(Error::Domain {
                what: "eigenfrequency must be positive",
                value: omega,
            });
        }
        Ok(Self { alpha0, omega })
    }

    pub fn alpha0(&self) -> f64 {
        self.alpha0
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    /// α_K = α_a (ħω_a)² / (K² + (ħω_a)²).
    pub fn propagator(&self, k: f64) -> f64 {
        let w2 = self.omega * self.omega;
        self.alpha0 * w2 / (k * k + w2)
    }
}

/// Free-function form of [`OscillatorModel::propagator`].
pub fn oscillator_propagator(osc: &OscillatorModel, k: f64) -> f64 {
    osc.propagator(k)
}

/// K_n = 2πn/β.
pub fn matsubara_energy(beta: f64, n: i64) -> f64 {
    2.0 * PI * n as f64 / beta
}

/// Truncated bosonic Matsubara series g̃(K_n), |n| ≤ N.
#[derive(Debug, Clone, PartialEq)]
pub struct MatsubaraSeries {
    beta: f64,
    n_max: usize,
    // index n + n_max
    values: Vec<f64>,
}

impl MatsubaraSeries {
    /// Samples `f(K_n)` for |n| ≤ `n_max`.
    pub fn from_fn<F: Fn(f64) -> f64>(beta: f64, n_max: usize, f: F) -> Result<Self> {
        check_beta(beta)?;
        let n = n_max as i64;
        let values = (-n..=n).map(|i| f(matsubara_energy(beta, i))).collect();
        Ok(Self { beta, n_max, values })
    }

    /// Series of a sharp oscillator propagator.
    pub fn oscillator(osc: &OscillatorModel, beta: f64, n_max: usize) -> Result<Self> {
        Self::from_fn(beta, n_max, |k| osc.propagator(k))
    }

    /// Builds a series from explicit coefficients for n = −N..=N.
    pub fn from_values(beta: f64, values: Vec<f64>) -> Result<Self> {
        check_beta(beta)?;
        if values.len().is_multiple_of(2) {
            return Err(Error::Domain {
                what: "coefficient list must have odd length 2N+1",
                value: values.len() as f64,
            });
        }
        let n_max = values.len() / 2;
        Ok(Self { beta, n_max, values })
    }

    /// Forward transform g̃(K_n) = ∫₀^β g(λ) e^{iK_nλ} dλ from `samples`
    /// taken at λ_j = jβ/M, j = 0..M. The periodic trapezoid rule is exact
    /// for band-limited g with M > 2N.
    pub fn from_imaginary_time_samples(beta: f64, samples: &[f64], n_max: usize) -> Result<Self> {
        check_beta(beta)?;
        let m = samples.len();
        if m == 0 {
            return Err(Error::Domain {
                what: "need at least one sample",
                value: 0.0,
            });
        }
        let h = beta / m as f64;
        let n = n_max as i64;
        let values = (-n..=n)
            .map(|i| {
                let k = matsubara_energy(beta, i);
                h * samples
                    .iter()
                    .enumerate()
                    .map(|(j, &g)| g * cos(k * j as f64 * h))
                    .sum::<f64>()
            })
            .collect();
        Ok(Self { beta, n_max, values })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// g̃(K_n); zero outside the retained range.
    pub fn get(&self, n: i64) -> f64 {
        if n.unsigned_abs() as usize > self.n_max {
            0.0
        } else {
            self.values[(n + self.n_max as i64) as usize]
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

fn check_beta(beta: f64) -> Result<()> {
    if beta > 0.0 && beta.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "beta must be positive and finite",
            value: beta,
        })
    }
}

/// (1/β) Σ_{n₀=−N}^{N} g̃₁(K_{n₀}) g̃₂(K_{n−n₀}).
///
/// Coefficients of `g2` beyond its own truncation count as zero. For two
/// oscillator propagators the discarded tail is bounded by
/// [`convolution_tail_bound`].
pub fn matsubara_convolution(g1: &MatsubaraSeries, g2: &MatsubaraSeries, n: i64) -> Result<f64> {
    if g1.beta != g2.beta {
        return Err(Error::Domain {
            what: "series have different beta",
            value: g2.beta,
        });
    }
    if n.unsigned_abs() as usize > g1.n_max {
        return Err(Error::Domain {
            what: "index beyond truncation",
            value: n as f64,
        });
    }
    let big_n = g1.n_max as i64;
    // Sum smallest terms first.
    let mut terms: Vec<f64> = (-big_n..=big_n).map(|n0| g1.get(n0) * g2.get(n - n0)).collect();
    terms.sort_by(|a, b| a.abs().total_cmp(&b.abs()));
    Ok(terms.iter().sum::<f64>() / g1.beta)
}

/// Upper bound on the terms dropped by truncating the convolution of two
/// oscillator series at N: 2·a₁a₂(β/2π)⁴/(3(N−|n|)³)/β with a = α(ħω)².
pub fn convolution_tail_bound(osc1: &OscillatorModel, osc2: &OscillatorModel, beta: f64, n_max: usize, n: i64) -> f64 {
    let a1 = osc1.alpha0 * osc1.omega * osc1.omega;
    let a2 = osc2.alpha0 * osc2.omega * osc2.omega;
    let reach = (n_max as f64 - n.unsigned_abs() as f64).max(1.0);
    let scale = beta / (2.0 * PI);
    2.0 * a1 * a2 * (scale * scale * scale * scale) / (3.0 * reach * reach * reach) / beta
}

/// Smallest truncation for which [`convolution_tail_bound`] at index `n`
/// falls below `rel_tol` times the n₀ = 0 contribution.
pub fn convolution_truncation(
    osc1: &OscillatorModel,
    osc2: &OscillatorModel,
    beta: f64,
    n: i64,
    rel_tol: f64,
) -> usize {
    let leading = osc1.alpha0 * osc2.propagator(matsubara_energy(beta, n)) / beta;
    if leading == 0.0 {
        return n.unsigned_abs() as usize + 1;
    }
    let a1 = osc1.alpha0 * osc1.omega * osc1.omega;
    let a2 = osc2.alpha0 * osc2.omega * osc2.omega;
    let scale = beta / (2.0 * PI);
    let cube = 2.0 * a1 * a2 * (scale * scale * scale * scale) / (3.0 * beta * rel_tol * leading);
    let reach = libm::ceil(libm::cbrt(cube)).max(1.0) as usize;
    reach + n.unsigned_abs() as usize
}

/// g(λ) = (1/β) Σ_n g̃(K_n) e^{−iK_nλ}, real for even series.
pub fn imaginary_time_correlation(g: &MatsubaraSeries, lambda: f64) -> Result<f64> {
    if !(0.0..=g.beta).contains(&lambda) {
        return Err(Error::Domain {
            what: "imaginary time outside [0, beta]",
            value: lambda,
        });
    }
    let n = g.n_max as i64;
    let mut acc = g.get(0);
    // high-order terms first
    for i in (1..=n).rev() {
        let k = matsubara_energy(g.beta, i);
        acc += (g.get(i) + g.get(-i)) * cos(k * lambda);
    }
    Ok(acc / g.beta)
}

/// ln H for the sharp two-oscillator factor H = (ħω/(2 sinh(½βħω)))² α₁α₂.
/// Returns −∞ when either polarizability vanishes.
pub fn two_oscillator_ln_h(alpha1: f64, alpha2: f64, omega: f64, beta: f64) -> Result<f64> {
    check_h_inputs(alpha1, alpha2, omega)?;
    check_beta(beta)?;
    if alpha1 == 0.0 || alpha2 == 0.0 {
        return Ok(f64::NEG_INFINITY);
    }
    let ln_alpha = log(alpha1) + log(alpha2);
    if omega == 0.0 {
        return Ok(ln_alpha - 2.0 * log(beta));
    }
    let x = 0.5 * beta * omega;
    Ok(2.0 * (log(omega) - core::f64::consts::LN_2 - ln_sinh(x)) + ln_alpha)
}

/// H = (ħω/(2 sinh(½βħω)))² α₁α₂ at temperature `temperature` (K).
/// Above ½βħω = 30 the value is assembled in log space.
pub fn two_oscillator_h(alpha1: f64, alpha2: f64, omega: f64, temperature: Quantity) -> Result<f64> {
    let beta = beta_from_temperature(temperature)?.value;
    two_oscillator_h_beta(alpha1, alpha2, omega, beta)
}

/// [`two_oscillator_h`] with β given directly in eV⁻¹.
pub fn two_oscillator_h_beta(alpha1: f64, alpha2: f64, omega: f64, beta: f64) -> Result<f64> {
    check_h_inputs(alpha1, alpha2, omega)?;
    check_beta(beta)?;
    if alpha1 == 0.0 || alpha2 == 0.0 {
        return Ok(0.0);
    }
    let x = 0.5 * beta * omega;
    if x > LOG_SINH_SWITCH {
        Ok(exp(two_oscillator_ln_h(alpha1, alpha2, omega, beta)?))
    } else {
        let r = crate::special::sinhc(x);
        // ħω/(2 sinh x) = 1/(β · sinh(x)/x)
        let f = 1.0 / (beta * r);
        Ok(f * f * alpha1 * alpha2)
    }
}

fn check_h_inputs(alpha1: f64, alpha2: f64, omega: f64) -> Result<()> {
    if !(alpha1 >= 0.0) || !(alpha2 >= 0.0) {
        return Err(Error::Domain {
            what: "polarizabilities must be non-negative",
            value: alpha1.min(alpha2),
        });
    }
    if !(omega >= 0.0) {
        return Err(Error::Domain {
            what: "frequency must be non-negative",
            value: omega,
        });
    }
    Ok(())
}

/// A friction force carrying the distribution δ(ω₁ − ω₂) as a weight.
///
/// `coefficient` multiplies the delta. For distinct sharp frequencies the
/// support condition fails and the physical force is identically zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaWeightedForce {
    pub coefficient: [f64; 3],
    pub omega1: f64,
    pub omega2: f64,
    pub on_support: bool,
}

impl DeltaWeightedForce {
    /// The finite part of the force: zero whenever the delta does not fire.
    /// On support the force is not a finite number; `None` is returned.
    pub fn finite_force(&self) -> Option<[f64; 3]> {
        if self.on_support {
            None
        } else {
            Some([0.0; 3])
        }
    }
}

/// Delta-weighted friction between two sharp oscillators:
/// coefficient_l = −G_lq v_q H πβ/2.
pub fn sharp_oscillator_friction(
    coupling: &[[f64; 3]; 3],
    velocity: [f64; 3],
    h: f64,
    beta: f64,
    omega1: f64,
    omega2: f64,
    tol: f64,
) -> Result<DeltaWeightedForce> {
    for l in 0..3 {
        for q in 0..l {
            let a = coupling[l][q];
            let b = coupling[q][l];
            if (a - b).abs() > 1e-12 * a.abs().max(b.abs()) {
                return Err(Error::Domain {
                    what: "coupling tensor is not symmetric",
                    value: a - b,
                });
            }
        }
    }
    let weight = h * PI * beta / 2.0;
    let mut coefficient = [0.0; 3];
    for (l, c) in coefficient.iter_mut().enumerate() {
        let gv: f64 = (0..3).map(|q| coupling[l][q] * velocity[q]).sum();
        *c = -gv * weight;
    }
    Ok(DeltaWeightedForce {
        coefficient,
        omega1,
        omega2,
        on_support: (omega1 - omega2).abs() <= tol,
    })
}
