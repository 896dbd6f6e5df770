//! Electrostatic dipole coupling between two particles and its integral over
//! two parallel half-spaces.
//!
//! Gaussian units throughout: the pair potential is ψ = 1/r with no 4πε₀.

use core::f64::consts::PI;

use libm::sqrt;

use crate::error::{Error, Result};

pub type Matrix3 = [[f64; 3]; 3];
pub type Tensor3 = [[[f64; 3]; 3]; 3];

/// Separation r between two particles, in metres.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeparationVector {
    components: [f64; 3],
    norm: f64,
}

impl SeparationVector {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let norm = sqrt(x * x + y * y + z * z);
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::Singular);
        }
        Ok(Self {
            components: [x, y, z],
            norm,
        })
    }

    pub fn components(&self) -> [f64; 3] {
        self.components
    }

    pub fn norm(&self) -> f64 {
        self.norm
    }
}

impl TryFrom<[f64; 3]> for SeparationVector {
    type Error = Error;

    fn try_from(v: [f64; 3]) -> Result<Self> {
        Self::new(v[0], v[1], v[2])
    }
}

fn delta(i: usize, j: usize) -> f64 {
    if i == j {
        1.0
    } else {
        0.0
    }
}

/// Dipole-dipole tensor ψ_ij = −(3x_ix_j/r⁵ − δ_ij/r³).
pub fn dipole_tensor(sep: &SeparationVector) -> Matrix3 {
    let x = sep.components;
    let r = sep.norm;
    let r2 = r * r;
    let r3 = r2 * r;
    let r5 = r3 * r2;
    let mut psi = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            psi[i][j] = delta(i, j) / r3 - 3.0 * x[i] * x[j] / r5;
        }
    }
    psi
}

/// Force tensor T_lij = ∂ψ_ij/∂x_l
/// = 15x_lx_ix_j/r⁷ − 3(δ_li x_j + δ_lj x_i + δ_ij x_l)/r⁵.
pub fn force_tensor(sep: &SeparationVector) -> Tensor3 {
    let x = sep.components;
    let r = sep.norm;
    let r2 = r * r;
    let r5 = r2 * r2 * r;
    let r7 = r5 * r2;
    let mut t = [[[0.0; 3]; 3]; 3];
    for l in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                t[l][i][j] = 15.0 * x[l] * x[i] * x[j] / r7
                    - 3.0 * (delta(l, i) * x[j] + delta(l, j) * x[i] + delta(i, j) * x[l]) / r5;
            }
        }
    }
    t
}

/// Both coupling tensors at one separation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingTensors {
    pub psi: Matrix3,
    pub t: Tensor3,
}

impl CouplingTensors {
    pub fn at(sep: &SeparationVector) -> Self {
        Self {
            psi: dipole_tensor(sep),
            t: force_tensor(sep),
        }
    }
}

/// G_lq = T_lij T_qij, summed over i and j.
pub fn coupling_strength(sep: &SeparationVector) -> Matrix3 {
    contract(&force_tensor(sep))
}

/// Contraction G_lq = T_lij T_qij of an arbitrary third-rank tensor.
pub fn contract(t: &Tensor3) -> Matrix3 {
    let mut g = [[0.0; 3]; 3];
    for l in 0..3 {
        for q in 0..3 {
            let mut acc = 0.0;
            for i in 0..3 {
                for j in 0..3 {
                    acc += t[l][i][j] * t[q][i][j];
                }
            }
            g[l][q] = acc;
        }
    }
    g
}

/// The dimensionless half-space constant 3π/8.
pub const HALFSPACE_CONSTANT: f64 = 3.0 * PI / 8.0;

/// Geometric factor G = 3πρ₁ρ₂/(8d⁴) for two half-spaces a distance `d` apart,
/// per unit area, for motion parallel to the surfaces.
pub fn halfspace_coupling(d: f64, rho1: f64, rho2: f64) -> Result<f64> {
    if !(d > 0.0) || !d.is_finite() {
        return Err(Error::Domain {
            what: "plate separation must be positive",
            value: d,
        });
    }
    if !(rho1 >= 0.0) || !(rho2 >= 0.0) {
        return Err(Error::Domain {
            what: "number densities must be non-negative",
            value: rho1.min(rho2),
        });
    }
    let d2 = d * d;
    Ok(HALFSPACE_CONSTANT * rho1 * rho2 / (d2 * d2))
}
