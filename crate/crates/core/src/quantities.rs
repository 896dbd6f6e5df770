//! Unit tags, physical constants and conversions.
//!
//! Everything downstream works in an eV-based system: energies (including
//! ħω and k_B T) in eV, lengths in metres, β in eV⁻¹, and forces per area in
//! eV·m⁻³. Conversion to SI happens only when a result is reported.

use core::fmt;

use crate::error::{Error, Result};

/// Reduced Planck constant, J·s (CODATA 2018, exact in the 2019 SI).
pub const HBAR_J_S: f64 = 1.054_571_817e-34;
/// Boltzmann constant, J/K (exact).
pub const K_B_J_PER_K: f64 = 1.380_649e-23;
/// Elementary charge, C; also joules per electronvolt (exact).
pub const ELEMENTARY_CHARGE_C: f64 = 1.602_176_634e-19;
/// Joules per electronvolt.
pub const JOULE_PER_EV: f64 = ELEMENTARY_CHARGE_C;
/// Boltzmann constant in eV/K.
pub const K_B_EV_PER_K: f64 = K_B_J_PER_K / JOULE_PER_EV;
/// ħ in eV·s.
pub const HBAR_EV_S: f64 = HBAR_J_S / JOULE_PER_EV;

/// Unit tag carried by a [`Quantity`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Unit {
    ElectronVolt,
    InverseElectronVolt,
    Joule,
    InverseJoule,
    Metre,
    MetrePerSecond,
    Kelvin,
    /// eV·m⁻³, the engine's internal force-per-area unit.
    EvPerCubicMetre,
    Pascal,
    /// Angular frequency, rad/s.
    PerSecond,
    Dimensionless,
}

impl Unit {
    pub fn symbol(self) -> &'static str {
        match self {
            Unit::ElectronVolt => "eV",
            Unit::InverseElectronVolt => "eV^-1",
            Unit::Joule => "J",
            Unit::InverseJoule => "J^-1",
            Unit::Metre => "m",
            Unit::MetrePerSecond => "m/s",
            Unit::Kelvin => "K",
            Unit::EvPerCubicMetre => "eV/m^3",
            Unit::Pascal => "Pa",
            Unit::PerSecond => "s^-1",
            Unit::Dimensionless => "1",
        }
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// A scalar tagged with its unit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quantity {
    pub value: f64,
    pub unit: Unit,
}

impl Quantity {
    pub const fn new(value: f64, unit: Unit) -> Self {
        Self { value, unit }
    }

    pub fn checked_add(self, rhs: Quantity) -> Result<Quantity> {
        self.same_unit(rhs)?;
        Ok(Quantity::new(self.value + rhs.value, self.unit))
    }

    pub fn checked_sub(self, rhs: Quantity) -> Result<Quantity> {
        self.same_unit(rhs)?;
        Ok(Quantity::new(self.value - rhs.value, self.unit))
    }

    /// Multiplication by a pure number.
    pub fn scale(self, factor: f64) -> Quantity {
        Quantity::new(self.value * factor, self.unit)
    }

    /// Ratio of two quantities of the same unit.
    pub fn ratio(self, rhs: Quantity) -> Result<f64> {
        self.same_unit(rhs)?;
        Ok(self.value / rhs.value)
    }

    /// Returns the value if the tag matches `unit`.
    pub fn value_in(self, unit: Unit) -> Result<f64> {
        if self.unit == unit {
            Ok(self.value)
        } else {
            Err(Error::UnitMismatch {
                left: self.unit,
                right: unit,
            })
        }
    }

    fn same_unit(self, rhs: Quantity) -> Result<()> {
        if self.unit == rhs.unit {
            Ok(())
        } else {
            Err(Error::UnitMismatch {
                left: self.unit,
                right: rhs.unit,
            })
        }
    }

    /// Converts natural-unit tags to their SI counterparts; SI and shared tags pass through.
    pub fn to_si(self) -> Quantity {
        match self.unit {
            Unit::ElectronVolt => Quantity::new(self.value * JOULE_PER_EV, Unit::Joule),
            Unit::InverseElectronVolt => Quantity::new(self.value / JOULE_PER_EV, Unit::InverseJoule),
            Unit::EvPerCubicMetre => Quantity::new(self.value * JOULE_PER_EV, Unit::Pascal),
            _ => self,
        }
    }

    /// Inverse of [`Quantity::to_si`].
    pub fn to_natural(self) -> Quantity {
        match self.unit {
            Unit::Joule => Quantity::new(self.value / JOULE_PER_EV, Unit::ElectronVolt),
            Unit::InverseJoule => Quantity::new(self.value * JOULE_PER_EV, Unit::InverseElectronVolt),
            Unit::Pascal => Quantity::new(self.value / JOULE_PER_EV, Unit::EvPerCubicMetre),
            _ => self,
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.value, self.unit)
    }
}

/// β = 1/(k_B T) in eV⁻¹.
pub fn beta_from_temperature(temperature: Quantity) -> Result<Quantity> {
    let t = temperature.value_in(Unit::Kelvin)?;
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::Domain {
            what: "temperature must be positive",
            value: t,
        });
    }
    Ok(Quantity::new(1.0 / (K_B_EV_PER_K * t), Unit::InverseElectronVolt))
}

/// k_B T in eV.
pub fn thermal_energy(temperature: Quantity) -> Result<Quantity> {
    let beta = beta_from_temperature(temperature)?;
    Ok(Quantity::new(1.0 / beta.value, Unit::ElectronVolt))
}

/// Force per area from eV·m⁻³ to pascals (factor: joules per eV).
pub fn to_si_pressure(f: Quantity) -> Result<Quantity> {
    match f.unit {
        Unit::EvPerCubicMetre => Ok(f.to_si()),
        Unit::Pascal => Ok(f),
        other => Err(Error::UnitMismatch {
            left: other,
            right: Unit::EvPerCubicMetre,
        }),
    }
}

/// ħω in eV to ω in rad/s.
pub fn energy_to_angular_frequency(energy: Quantity) -> Result<Quantity> {
    Ok(Quantity::new(
        energy.value_in(Unit::ElectronVolt)? / HBAR_EV_S,
        Unit::PerSecond,
    ))
}

/// ω in rad/s to ħω in eV.
pub fn angular_frequency_to_energy(omega: Quantity) -> Result<Quantity> {
    Ok(Quantity::new(
        omega.value_in(Unit::PerSecond)? * HBAR_EV_S,
        Unit::ElectronVolt,
    ))
}

pub fn kelvin(t: f64) -> Quantity {
    Quantity::new(t, Unit::Kelvin)
}

pub fn ev(e: f64) -> Quantity {
    Quantity::new(e, Unit::ElectronVolt)
}

pub fn metres(l: f64) -> Quantity {
    Quantity::new(l, Unit::Metre)
}
