//! Drude permittivity, the half-space surface response, and spectral
//! distributions of polarizability.
//!
//! A spectral distribution w(m²) ≥ 0 represents a polarizability on the
//! imaginary-frequency axis as
//!
//! ```text
//! α(K) = ∫ w(m²) m² / (K² + m²) d(m²)
//! ```
//!
//! with m = ħω a real excitation energy. The damped-oscillator density used
//! for Drude metals is the spectral weight of the causal response
//! χ(ω) = q²/(q² − ω² − iσω), i.e. m² w(m²) = Im χ(m)/π. Its reconstruction
//! reproduces q²/(K² + q² + σ|K|) exactly, for any damping.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_1_SQRT_2, PI};

use libm::sqrt;

use crate::error::{Error, Result};
use crate::quadrature::{integrate, Estimate, QuadratureOptions};
use crate::response_kernel::OscillatorModel;

/// Drude metal: plasma energy ħω_p and damping σ = ħν, both in eV.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DrudeMaterial {
    omega_p: f64,
    nu: f64,
}

impl DrudeMaterial {
    pub fn new(omega_p: f64, nu: f64) -> Result<Self> {
        if !(omega_p >= 0.0) || !omega_p.is_finite() {
            return Err(Error::Domain {
                what: "plasma energy must be non-negative",
                value: omega_p,
            });
        }
        if !(nu >= 0.0) || !nu.is_finite() {
            return Err(Error::Domain {
                what: "damping must be non-negative",
                value: nu,
            });
        }
        Ok(Self { omega_p, nu })
    }

    /// Gold: ħω_p = 9.0 eV, ħν = 35 meV.
    pub fn gold() -> Self {
        Self {
            omega_p: 9.0,
            nu: 0.035,
        }
    }

    pub fn omega_p(&self) -> f64 {
        self.omega_p
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    /// σ = ħν (identical to [`DrudeMaterial::nu`]; both are stored as energies).
    pub fn sigma(&self) -> f64 {
        self.nu
    }

    /// Surface-plasmon energy q = ħω_p/√2.
    pub fn q(&self) -> f64 {
        self.omega_p * FRAC_1_SQRT_2
    }

    pub fn q_squared(&self) -> f64 {
        0.5 * self.omega_p * self.omega_p
    }

    /// Same plasma energy, damping replaced.
    pub fn with_nu(&self, nu: f64) -> Result<Self> {
        Self::new(self.omega_p, nu)
    }
}

/// ε − 1 = (ħω_p)²/(ζ(ζ + σ)) along the imaginary axis.
pub fn drude_susceptibility(mat: &DrudeMaterial, zeta: f64) -> Result<f64> {
    if zeta == 0.0 {
        return Err(Error::Pole {
            what: "Drude permittivity diverges at zero frequency",
        });
    }
    if !(zeta > 0.0) {
        return Err(Error::Domain {
            what: "imaginary frequency must be positive",
            value: zeta,
        });
    }
    Ok(mat.omega_p * mat.omega_p / (zeta * (zeta + mat.nu)))
}

/// ε(ζ) = 1 + (ħω_p)²/(ζ(ζ + σ)).
pub fn drude_permittivity(mat: &DrudeMaterial, zeta: f64) -> Result<f64> {
    Ok(1.0 + drude_susceptibility(mat, zeta)?)
}

/// (ε − 1)/(ε + 1) = q²/(K² + q² + σ|K|).
pub fn surface_response(mat: &DrudeMaterial, k: f64) -> f64 {
    let q2 = mat.q_squared();
    if q2 == 0.0 {
        return 0.0;
    }
    let k = k.abs();
    q2 / (k * k + q2 + mat.nu * k)
}

/// The same response routed through the permittivity: χ/(χ + 2) with χ = ε − 1.
pub fn surface_response_via_permittivity(mat: &DrudeMaterial, k: f64) -> Result<f64> {
    let chi = drude_susceptibility(mat, k.abs())?;
    Ok(chi / (chi + 2.0))
}

/// 2(ε − 1)/(ε + 1): what 4πρα becomes in a dense medium.
pub fn substituted_response(permittivity: f64) -> f64 {
    2.0 * (permittivity - 1.0) / (permittivity + 1.0)
}

/// 4πρα for a dilute medium.
pub fn dilute_response(rho: f64, alpha: f64) -> Result<f64> {
    check_density(rho)?;
    Ok(4.0 * PI * rho * alpha)
}

/// Effective per-particle polarizability α with 4πρα = 2(ε − 1)/(ε + 1).
pub fn dense_effective_polarizability(rho: f64, permittivity: f64) -> Result<f64> {
    check_density(rho)?;
    Ok(substituted_response(permittivity) / (4.0 * PI * rho))
}

fn check_density(rho: f64) -> Result<()> {
    if rho > 0.0 && rho.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "number density must be positive",
            value: rho,
        })
    }
}

/// m² w(m²) for the Drude surface response: Im χ(m)/π with
/// χ = q²/(q² − m² − iσm). Peaked at m ≈ q with width σq in m².
///
/// By the dense substitution 4πρ·m²α_I(m²) is twice this value.
pub fn drude_spectral_density(mat: &DrudeMaterial, m: f64) -> Result<f64> {
    if !(m > 0.0) {
        return Err(Error::Domain {
            what: "excitation energy must be positive",
            value: m,
        });
    }
    if !(mat.nu > 0.0) {
        return Err(Error::Domain {
            what: "spectral density needs non-zero damping",
            value: mat.nu,
        });
    }
    Ok(damped_oscillator_weight(1.0, mat.q(), mat.nu, m * m - mat.q_squared()))
}

// strength · (1/π) ω²γm / ((m² − ω²)² + γ²m²), expressed through u = m² − ω².
fn damped_oscillator_weight(strength: f64, omega: f64, width: f64, u: f64) -> f64 {
    let w2 = omega * omega;
    let m2 = w2 + u;
    if m2 <= 0.0 {
        return 0.0;
    }
    let m = sqrt(m2);
    strength / PI * w2 * width * m / (u * u + width * width * m2)
}

/// Nonnegative spectral distribution w(m²).
#[derive(Debug, Clone, PartialEq)]
pub enum SpectralDistribution {
    /// w ≡ 0.
    Zero,
    /// α δ(m² − ω²): a single sharp oscillator.
    Sharp(OscillatorModel),
    /// Damped oscillator of given static strength, centre ω and width γ
    /// (energies). With `band = Some(b)` the density is cut to
    /// |m² − ω²| ≤ b·γω.
    DampedOscillator {
        strength: f64,
        omega: f64,
        width: f64,
        band: Option<f64>,
    },
    /// Values of w on a strictly increasing m² grid; linear in between, zero outside.
    Tabulated { m2: Vec<f64>, density: Vec<f64> },
}

/// Default half-width, in units of σq, of the resonance band kept for friction.
pub const RESONANCE_BAND: f64 = 50.0;

impl SpectralDistribution {
    /// Full spectral density of a Drude surface response (strength 1).
    pub fn drude_surface(mat: &DrudeMaterial) -> Result<Self> {
        Self::damped_oscillator(1.0, mat.q(), mat.nu)
    }

    /// Drude surface density restricted to |m² − q²| ≤ `half_width`·σq.
    pub fn drude_resonance(mat: &DrudeMaterial, half_width: f64) -> Result<Self> {
        let mut d = Self::drude_surface(mat)?;
        if let SpectralDistribution::DampedOscillator { band, .. } = &mut d {
            if !(half_width > 0.0) {
                return Err(Error::Domain {
                    what: "band half-width must be positive",
                    value: half_width,
                });
            }
            *band = Some(half_width);
        }
        Ok(d)
    }

    pub fn damped_oscillator(strength: f64, omega: f64, width: f64) -> Result<Self> {
        if !(strength >= 0.0) || !strength.is_finite() {
            return Err(Error::Domain {
                what: "oscillator strength must be non-negative",
                value: strength,
            });
        }
        if !(omega > 0.0) || !omega.is_finite() {
            return Err(Error::Domain {
                what: "oscillator energy must be positive",
                value: omega,
            });
        }
        if !(width > 0.0) || !width.is_finite() {
            return Err(Error::Domain {
                what: "oscillator width must be positive",
                value: width,
            });
        }
        Ok(SpectralDistribution::DampedOscillator {
            strength,
            omega,
            width,
            band: None,
        })
    }

    pub fn tabulated(m2: Vec<f64>, density: Vec<f64>) -> Result<Self> {
        if m2.len() != density.len() || m2.len() < 2 {
            return Err(Error::Domain {
                what: "tabulated grid needs matching lengths of at least two",
                value: m2.len() as f64,
            });
        }
        if m2.windows(2).any(|w| !(w[1] > w[0])) || !(m2[0] >= 0.0) {
            return Err(Error::Domain {
                what: "tabulated m² grid must be non-negative and strictly increasing",
                value: m2[0],
            });
        }
        if let Some(&bad) = density.iter().find(|&&w| !(w >= 0.0) || !w.is_finite()) {
            return Err(Error::Domain {
                what: "tabulated density must be finite and non-negative",
                value: bad,
            });
        }
        Ok(SpectralDistribution::Tabulated { m2, density })
    }

    /// Multiplies the density by `factor` (≥ 0).
    pub fn scaled(&self, factor: f64) -> Self {
        match self {
            SpectralDistribution::Zero => SpectralDistribution::Zero,
            SpectralDistribution::Sharp(osc) => {
                SpectralDistribution::Sharp(OscillatorModel::new(osc.alpha0() * factor, osc.omega()).unwrap_or(*osc))
            }
            SpectralDistribution::DampedOscillator {
                strength,
                omega,
                width,
                band,
            } => SpectralDistribution::DampedOscillator {
                strength: strength * factor,
                omega: *omega,
                width: *width,
                band: *band,
            },
            SpectralDistribution::Tabulated { m2, density } => SpectralDistribution::Tabulated {
                m2: m2.clone(),
                density: density.iter().map(|w| w * factor).collect(),
            },
        }
    }

    /// Closed interval of m² outside which the density vanishes; `None` when
    /// the density is identically zero.
    pub fn support(&self) -> Option<(f64, f64)> {
        match self {
            SpectralDistribution::Zero => None,
            SpectralDistribution::Sharp(osc) => {
                let w2 = osc.omega() * osc.omega();
                (osc.alpha0() > 0.0).then_some((w2, w2))
            }
            SpectralDistribution::DampedOscillator {
                strength,
                omega,
                width,
                band,
            } => {
                if *strength == 0.0 {
                    return None;
                }
                let w2 = omega * omega;
                Some(match band {
                    None => (0.0, f64::INFINITY),
                    Some(b) => ((w2 - b * width * omega).max(0.0), w2 + b * width * omega),
                })
            }
            SpectralDistribution::Tabulated { m2, density } => {
                let first = density.iter().position(|&w| w > 0.0)?;
                let last = density.iter().rposition(|&w| w > 0.0)?;
                Some((m2[first.saturating_sub(1)], m2[(last + 1).min(m2.len() - 1)]))
            }
        }
    }

    /// True for a point (delta) distribution, which has no density.
    pub fn is_point(&self) -> bool {
        matches!(self, SpectralDistribution::Sharp(_))
    }

    /// w(m²). Point distributions report zero (their weight is a delta).
    pub fn density(&self, m2: f64) -> f64 {
        match self {
            SpectralDistribution::Zero | SpectralDistribution::Sharp(_) => 0.0,
            SpectralDistribution::DampedOscillator {
                strength,
                omega,
                width,
                band,
            } => {
                let u = m2 - omega * omega;
                if let Some(b) = band {
                    if u.abs() > b * width * omega {
                        return 0.0;
                    }
                }
                if m2 <= 0.0 {
                    return 0.0;
                }
                damped_oscillator_weight(*strength, *omega, *width, u) / m2
            }
            SpectralDistribution::Tabulated { m2: grid, density } => interpolate(grid, density, m2),
        }
    }

    /// m² w(m²), finite at m² → 0 for the damped oscillator.
    pub fn weighted_density(&self, m2: f64) -> f64 {
        match self {
            SpectralDistribution::DampedOscillator {
                strength,
                omega,
                width,
                band,
            } => {
                let u = m2 - omega * omega;
                if let Some(b) = band {
                    if u.abs() > b * width * omega {
                        return 0.0;
                    }
                }
                damped_oscillator_weight(*strength, *omega, *width, u)
            }
            _ => m2 * self.density(m2),
        }
    }

    /// Points in m² where the density has structure on a scale much finer
    /// than its support: (centre, width) pairs.
    pub fn peaks(&self) -> Vec<(f64, f64)> {
        match self {
            SpectralDistribution::DampedOscillator { omega, width, .. } => {
                alloc::vec![(omega * omega, width * omega)]
            }
            SpectralDistribution::Sharp(osc) => alloc::vec![(osc.omega() * osc.omega(), 0.0)],
            _ => Vec::new(),
        }
    }

    /// Breakpoints in m² clustered around every peak, clipped to `range`.
    pub fn breakpoints(&self, range: (f64, f64)) -> Vec<f64> {
        let mut pts = Vec::new();
        for (centre, width) in self.peaks() {
            pts.push(centre);
            for k in [0.5, 2.0, 8.0, 50.0, 300.0, 3000.0] {
                pts.push(centre - k * width);
                pts.push(centre + k * width);
            }
        }
        if let SpectralDistribution::Tabulated { m2, .. } = self {
            pts.extend_from_slice(m2);
        }
        pts.retain(|&x| x > range.0 && x < range.1 && x.is_finite());
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        pts
    }
}

fn interpolate(grid: &[f64], values: &[f64], x: f64) -> f64 {
    if x < grid[0] || x > grid[grid.len() - 1] || x.is_nan() {
        return 0.0;
    }
    let idx = grid.partition_point(|&g| g <= x);
    if idx == 0 {
        return values[0];
    }
    if idx >= grid.len() {
        return values[grid.len() - 1];
    }
    let (x0, x1) = (grid[idx - 1], grid[idx]);
    let t = (x - x0) / (x1 - x0);
    values[idx - 1] * (1.0 - t) + values[idx] * t
}

/// α(K) = ∫ w(m²) m²/(K² + m²) d(m²).
///
/// Point distributions collapse to the sharp-oscillator propagator. Tabulated
/// densities use the trapezoid rule on their own grid; the reported error is
/// the difference from the same rule on every other node, divided by three.
pub fn reconstruct_alpha(dist: &SpectralDistribution, k: f64) -> Result<Estimate> {
    let k2 = k * k;
    let exact = |value| Estimate {
        value,
        abs_error: 0.0,
        subdivisions: 0,
        evaluations: 0,
    };
    match dist {
        SpectralDistribution::Zero => Ok(exact(0.0)),
        SpectralDistribution::Sharp(osc) => Ok(exact(osc.propagator(k))),
        SpectralDistribution::Tabulated { m2, density } => {
            let f: Vec<f64> = m2
                .iter()
                .zip(density)
                .map(|(&x, &w)| if x == 0.0 && k2 == 0.0 { w } else { w * x / (k2 + x) })
                .collect();
            let fine = trapezoid(m2, &f, 1);
            let coarse = trapezoid(m2, &f, 2);
            Ok(Estimate {
                value: fine,
                abs_error: (fine - coarse).abs() / 3.0,
                subdivisions: m2.len() - 1,
                evaluations: m2.len(),
            })
        }
        SpectralDistribution::DampedOscillator { .. } => {
            let (lo, hi) = match dist.support() {
                Some(s) => s,
                None => return Ok(exact(0.0)),
            };
            let bp = dist.breakpoints((lo, hi));
            let integrand = |m2: f64| {
                let wm2 = dist.weighted_density(m2);
                if wm2 == 0.0 {
                    0.0
                } else {
                    wm2 / (k2 + m2)
                }
            };
            let opts = QuadratureOptions {
                rel_tol: 1e-10,
                abs_tol: 0.0,
                max_subdivisions: 20_000,
            };
            // for K = 0 the integrand tends to w(0)·m²/m², finite
            integrate(integrand, lo, hi, &bp, opts)
        }
    }
}

fn trapezoid(x: &[f64], f: &[f64], stride: usize) -> f64 {
    let idx: Vec<usize> = (0..x.len())
        .step_by(stride)
        .chain(core::iter::once(x.len() - 1))
        .collect();
    let mut acc = 0.0;
    for w in idx.windows(2) {
        if w[1] == w[0] {
            continue;
        }
        acc += 0.5 * (f[w[0]] + f[w[1]]) * (x[w[1]] - x[w[0]]);
    }
    acc
}
