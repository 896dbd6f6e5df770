//! Run configuration: JSON with unit-suffixed keys.
//!
//! ```json
//! { "material": "gold", "d_nm": 10, "v_mps": 100, "T_K": 300,
//!   "route": "dense-closed-form",
//!   "sweep": { "parameter": "d_nm", "from": 10, "to": 100, "points": 5, "scale": "log" } }
//! ```

use std::path::Path;

use casimir_core::friction_engine::{Medium, Scenario};
use casimir_core::{DrudeMaterial, SpectralDistribution};
use serde::{Deserialize, Serialize};

use crate::catalog::Catalog;
use crate::error::{CliError, CliResult};

/// Metres per nanometre.
pub const METRE_PER_NM: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum RouteName {
    #[default]
    #[serde(rename = "dense-closed-form")]
    DenseClosedForm,
    #[serde(rename = "dense-quadrature")]
    DenseQuadrature,
    #[serde(rename = "dilute-quadrature")]
    DiluteQuadrature,
}

impl RouteName {
    pub fn as_str(self) -> &'static str {
        match self {
            RouteName::DenseClosedForm => "dense-closed-form",
            RouteName::DenseQuadrature => "dense-quadrature",
            RouteName::DiluteQuadrature => "dilute-quadrature",
        }
    }
}

/// A catalog name or an inline Drude material.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum MaterialSpec {
    Named(String),
    Inline {
        #[serde(rename = "omega_p_eV")]
        omega_p_ev: f64,
        #[serde(rename = "nu_eV")]
        nu_ev: f64,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InlineMaterial {
    #[serde(rename = "omega_p_eV")]
    omega_p_ev: f64,
    #[serde(rename = "nu_eV")]
    nu_ev: f64,
}

impl<'de> Deserialize<'de> for MaterialSpec {
    // Hand-written so that errors inside an inline material keep their field path.
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct SpecVisitor;

        impl<'de> serde::de::Visitor<'de> for SpecVisitor {
            type Value = MaterialSpec;

            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("a catalog name or {\"omega_p_eV\": .., \"nu_eV\": ..}")
            }

            fn visit_str<E: serde::de::Error>(self, v: &str) -> Result<MaterialSpec, E> {
                Ok(MaterialSpec::Named(v.to_string()))
            }

            fn visit_map<A: serde::de::MapAccess<'de>>(self, map: A) -> Result<MaterialSpec, A::Error> {
                let m = InlineMaterial::deserialize(serde::de::value::MapAccessDeserializer::new(map))?;
                Ok(MaterialSpec::Inline {
                    omega_p_ev: m.omega_p_ev,
                    nu_ev: m.nu_ev,
                })
            }
        }

        deserializer.deserialize_any(SpecVisitor)
    }
}

impl Default for MaterialSpec {
    fn default() -> Self {
        MaterialSpec::Named("gold".into())
    }
}

/// Damped-oscillator polarizability of one dilute-medium particle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OscillatorSpec {
    /// Static polarizability, m³.
    pub alpha0_m3: f64,
    #[serde(rename = "omega_eV")]
    pub omega_ev: f64,
    #[serde(rename = "width_eV")]
    pub width_ev: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SweepParameter {
    #[serde(rename = "d_nm")]
    DNm,
    #[serde(rename = "v_mps")]
    VMps,
    #[serde(rename = "T_K")]
    TK,
    #[serde(rename = "nu_eV")]
    NuEv,
    #[serde(rename = "omega_p_eV")]
    OmegaPEv,
}

impl SweepParameter {
    pub fn key(self) -> &'static str {
        match self {
            SweepParameter::DNm => "d_nm",
            SweepParameter::VMps => "v_mps",
            SweepParameter::TK => "T_K",
            SweepParameter::NuEv => "nu_eV",
            SweepParameter::OmegaPEv => "omega_p_eV",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepScale {
    #[default]
    Linear,
    Log,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub parameter: SweepParameter,
    pub from: f64,
    pub to: f64,
    pub points: usize,
    #[serde(default)]
    pub scale: SweepScale,
}

impl SweepSpec {
    /// Parameter values in ascending order.
    pub fn values(&self) -> CliResult<Vec<f64>> {
        if self.points == 0 {
            return Err(CliError::config("sweep.points", "must be at least 1"));
        }
        for (field, x) in [("sweep.from", self.from), ("sweep.to", self.to)] {
            if !x.is_finite() {
                return Err(CliError::config(field, format!("must be finite, got {x}")));
            }
            if self.scale == SweepScale::Log && !(x > 0.0) {
                return Err(CliError::config(
                    field,
                    format!("log sweep needs positive bounds, got {x}"),
                ));
            }
        }
        let n = self.points;
        let mut values: Vec<f64> = (0..n)
            .map(|i| {
                if n == 1 {
                    return self.from;
                }
                let f = i as f64 / (n - 1) as f64;
                match self.scale {
                    SweepScale::Linear => self.from + (self.to - self.from) * f,
                    SweepScale::Log => self.from * (self.to / self.from).powf(f),
                }
            })
            .collect();
        // Pin the end point exactly.
        if n > 1 {
            values[n - 1] = self.to;
        }
        values.sort_by(f64::total_cmp);
        Ok(values)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub material: MaterialSpec,
    /// Second plate; defaults to `material`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub material2: Option<MaterialSpec>,
    pub d_nm: f64,
    pub v_mps: f64,
    #[serde(rename = "T_K")]
    pub t_k: f64,
    #[serde(default)]
    pub route: RouteName,
    /// Number densities, m⁻³ (dilute route; optional for dense quadrature).
    #[serde(default, alias = "rho1", skip_serializing_if = "Option::is_none")]
    pub rho1_per_m3: Option<f64>,
    #[serde(default, alias = "rho2", skip_serializing_if = "Option::is_none")]
    pub rho2_per_m3: Option<f64>,
    /// Particle polarizabilities for the dilute route; the second defaults to the first.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oscillator1: Option<OscillatorSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oscillator2: Option<OscillatorSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSpec>,
}

/// A material after catalog lookup.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResolvedMaterial<'a> {
    pub name: Option<&'a str>,
    pub material: DrudeMaterial,
}

impl RunConfig {
    /// The gold worked example: 300 K, 100 m/s, 10 nm.
    pub fn gold_example() -> Self {
        Self {
            material: MaterialSpec::default(),
            material2: None,
            d_nm: 10.0,
            v_mps: 100.0,
            t_k: 300.0,
            route: RouteName::DenseClosedForm,
            rho1_per_m3: None,
            rho2_per_m3: None,
            oscillator1: None,
            oscillator2: None,
            format: None,
            sweep: None,
        }
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            context: format!("reading config {}", path.display()),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> CliResult<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let cfg: RunConfig = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            CliError::config(if path == "." { "<root>".into() } else { path }, e.inner().to_string())
        })?;
        Ok(cfg)
    }

    /// Checks every value against its unit's domain, reporting the field path.
    pub fn validate(&self, catalog: &Catalog) -> CliResult<()> {
        positive("d_nm", self.d_nm)?;
        non_negative("v_mps", self.v_mps)?;
        positive("T_K", self.t_k)?;
        self.resolve_material("material", &self.material, catalog)?;
        if let Some(m2) = &self.material2 {
            self.resolve_material("material2", m2, catalog)?;
        }
        for (field, rho) in [("rho1_per_m3", self.rho1_per_m3), ("rho2_per_m3", self.rho2_per_m3)] {
            if let Some(rho) = rho {
                positive(field, rho)?;
            }
        }
        for (field, osc) in [("oscillator1", &self.oscillator1), ("oscillator2", &self.oscillator2)] {
            if let Some(o) = osc {
                non_negative(&format!("{field}.alpha0_m3"), o.alpha0_m3)?;
                positive(&format!("{field}.omega_eV"), o.omega_ev)?;
                positive(&format!("{field}.width_eV"), o.width_ev)?;
            }
        }
        match self.route {
            RouteName::DiluteQuadrature => {
                if self.oscillator1.is_none() {
                    return Err(CliError::config(
                        "oscillator1",
                        "the dilute route needs a particle oscillator",
                    ));
                }
                if self.rho1_per_m3.is_none() || self.rho2_per_m3.is_none() {
                    let field = if self.rho1_per_m3.is_none() {
                        "rho1_per_m3"
                    } else {
                        "rho2_per_m3"
                    };
                    return Err(CliError::config(field, "the dilute route needs both number densities"));
                }
            }
            RouteName::DenseClosedForm | RouteName::DenseQuadrature => {
                if self.oscillator1.is_some() || self.oscillator2.is_some() {
                    return Err(CliError::config(
                        "oscillator1",
                        "oscillators apply to the dilute route only",
                    ));
                }
                if self.rho1_per_m3.is_some() != self.rho2_per_m3.is_some() {
                    return Err(CliError::config("rho2_per_m3", "give both densities or neither"));
                }
                if self.route == RouteName::DenseClosedForm {
                    if let Some(m2) = &self.material2 {
                        let a = self.resolve_material("material", &self.material, catalog)?.material;
                        let b = self.resolve_material("material2", m2, catalog)?.material;
                        if a != b {
                            return Err(CliError::config(
                                "material2",
                                "the closed form needs equal plates; use route dense-quadrature",
                            ));
                        }
                    }
                }
            }
        }
        if let Some(sweep) = &self.sweep {
            let material_sweep = matches!(sweep.parameter, SweepParameter::OmegaPEv | SweepParameter::NuEv);
            if material_sweep && self.route == RouteName::DiluteQuadrature {
                return Err(CliError::config(
                    "sweep.parameter",
                    "material sweeps apply to the dense routes only",
                ));
            }
            for x in sweep.values()? {
                self.with_parameter(sweep.parameter, x, catalog)?
                    .validate(catalog)
                    .map_err(|e| match e {
                        CliError::Config { message, .. } => CliError::config("sweep", format!("value {x}: {message}")),
                        other => other,
                    })?;
            }
        }
        Ok(())
    }

    pub fn resolve_material<'a>(
        &self,
        field: &str,
        spec: &'a MaterialSpec,
        catalog: &'a Catalog,
    ) -> CliResult<ResolvedMaterial<'a>> {
        match spec {
            MaterialSpec::Named(name) => {
                let entry = catalog.get(name)?;
                Ok(ResolvedMaterial {
                    name: Some(entry.name.as_str()),
                    material: entry.material()?,
                })
            }
            MaterialSpec::Inline { omega_p_ev, nu_ev } => {
                positive(&format!("{field}.omega_p_eV"), *omega_p_ev)?;
                non_negative(&format!("{field}.nu_eV"), *nu_ev)?;
                Ok(ResolvedMaterial {
                    name: None,
                    material: DrudeMaterial::new(*omega_p_ev, *nu_ev)?,
                })
            }
        }
    }

    /// Both plates after catalog lookup.
    pub fn materials<'a>(&'a self, catalog: &'a Catalog) -> CliResult<[ResolvedMaterial<'a>; 2]> {
        let first = self.resolve_material("material", &self.material, catalog)?;
        let second = match &self.material2 {
            Some(m) => self.resolve_material("material2", m, catalog)?,
            None => first,
        };
        Ok([first, second])
    }

    /// A copy with one sweep parameter replaced. Material parameters are
    /// applied to both plates, which then become inline materials.
    pub fn with_parameter(&self, parameter: SweepParameter, value: f64, catalog: &Catalog) -> CliResult<RunConfig> {
        let mut cfg = self.clone();
        cfg.sweep = None;
        match parameter {
            SweepParameter::DNm => cfg.d_nm = value,
            SweepParameter::VMps => cfg.v_mps = value,
            SweepParameter::TK => cfg.t_k = value,
            SweepParameter::NuEv | SweepParameter::OmegaPEv => {
                let [m1, m2] = self.materials(catalog)?;
                let set = |m: DrudeMaterial| match parameter {
                    SweepParameter::NuEv => MaterialSpec::Inline {
                        omega_p_ev: m.omega_p(),
                        nu_ev: value,
                    },
                    _ => MaterialSpec::Inline {
                        omega_p_ev: value,
                        nu_ev: m.nu(),
                    },
                };
                cfg.material = set(m1.material);
                cfg.material2 = self.material2.as_ref().map(|_| set(m2.material));
            }
        }
        Ok(cfg)
    }

    /// Builds the engine scenario.
    pub fn scenario(&self, catalog: &Catalog) -> CliResult<Scenario> {
        self.validate(catalog)?;
        let separation_m = self.d_nm * METRE_PER_NM;
        let scenario = match self.route {
            RouteName::DiluteQuadrature => {
                let osc1 = self.oscillator1.expect("validated");
                let osc2 = self.oscillator2.unwrap_or(osc1);
                let dist =
                    |o: OscillatorSpec| SpectralDistribution::damped_oscillator(o.alpha0_m3, o.omega_ev, o.width_ev);
                Scenario {
                    medium1: Medium::Dilute {
                        distribution: dist(osc1)?,
                        density: self.rho1_per_m3.expect("validated"),
                    },
                    medium2: Medium::Dilute {
                        distribution: dist(osc2)?,
                        density: self.rho2_per_m3.expect("validated"),
                    },
                    separation_m,
                    speed_mps: self.v_mps,
                    temperature_k: self.t_k,
                    dense_densities: None,
                }
            }
            RouteName::DenseClosedForm | RouteName::DenseQuadrature => {
                let [m1, m2] = self.materials(catalog)?;
                Scenario {
                    medium1: Medium::Drude(m1.material),
                    medium2: Medium::Drude(m2.material),
                    separation_m,
                    speed_mps: self.v_mps,
                    temperature_k: self.t_k,
                    dense_densities: self.rho1_per_m3.zip(self.rho2_per_m3).map(|(a, b)| [a, b]),
                }
            }
        };
        Ok(scenario)
    }
}

fn positive(field: &str, x: f64) -> CliResult<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(CliError::config(field, format!("must be positive and finite, got {x}")))
    }
}

fn non_negative(field: &str, x: f64) -> CliResult<()> {
    if x >= 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(CliError::config(
            field,
            format!("must be non-negative and finite, got {x}"),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(from: f64, to: f64, points: usize, scale: SweepScale) -> SweepSpec {
        SweepSpec {
            parameter: SweepParameter::DNm,
            from,
            to,
            points,
            scale,
        }
    }

    #[test]
    fn sweep_values_hit_both_ends_in_order() {
        let v = spec(10.0, 100.0, 3, SweepScale::Log).values().unwrap();
        assert_eq!(v[0], 10.0);
        assert!((v[1] - 10f64.powf(1.5)).abs() < 1e-12);
        assert_eq!(v[2], 100.0);
        let v = spec(5.0, 1.0, 5, SweepScale::Linear).values().unwrap();
        assert_eq!(v, vec![1.0, 2.0, 3.0, 4.0, 5.0]);
        assert_eq!(spec(7.0, 9.0, 1, SweepScale::Linear).values().unwrap(), vec![7.0]);
    }

    #[test]
    fn bad_sweeps_are_config_errors() {
        assert!(spec(1.0, 2.0, 0, SweepScale::Linear).values().is_err());
        let msg = spec(-1.0, 2.0, 3, SweepScale::Log).values().unwrap_err().to_string();
        assert!(msg.contains("sweep.from"), "{msg}");
    }

    #[test]
    fn unknown_keys_are_rejected_with_their_path() {
        let msg = RunConfig::from_json(r#"{"d_m":1e-8,"v_mps":1,"T_K":300}"#)
            .unwrap_err()
            .to_string();
        assert!(msg.contains("d_m"), "{msg}");
        let msg = RunConfig::from_json(
            r#"{"d_nm":1,"v_mps":1,"T_K":300,"sweep":{"parameter":"d_nm","from":1,"to":2,"points":2,"scale":"cubic"}}"#,
        )
        .unwrap_err()
        .to_string();
        assert!(msg.contains("sweep.scale"), "{msg}");
    }

    #[test]
    fn material_sweep_overrides_both_plates() {
        let catalog = Catalog::builtin();
        let mut cfg = RunConfig::gold_example();
        cfg.material2 = Some(MaterialSpec::Named("gold".into()));
        let swept = cfg.with_parameter(SweepParameter::NuEv, 0.1, &catalog).unwrap();
        let [a, b] = swept.materials(&catalog).unwrap();
        assert_eq!(a.material.nu(), 0.1);
        assert_eq!(b.material.nu(), 0.1);
        assert_eq!(a.material.omega_p(), 9.0);
    }

    #[test]
    fn route_requirements() {
        let catalog = Catalog::builtin();
        let mut cfg = RunConfig::gold_example();
        cfg.route = RouteName::DiluteQuadrature;
        assert!(cfg.validate(&catalog).unwrap_err().to_string().contains("oscillator1"));
        cfg.oscillator1 = Some(OscillatorSpec {
            alpha0_m3: 1e-30,
            omega_ev: 0.2,
            width_ev: 0.01,
        });
        cfg.rho1_per_m3 = Some(1e28);
        assert!(cfg.validate(&catalog).unwrap_err().to_string().contains("rho2_per_m3"));
        cfg.rho2_per_m3 = Some(1e28);
        cfg.validate(&catalog).unwrap();

        let mut cfg = RunConfig::gold_example();
        cfg.material2 = Some(MaterialSpec::Inline {
            omega_p_ev: 8.0,
            nu_ev: 0.035,
        });
        assert!(cfg.validate(&catalog).is_err());
        cfg.route = RouteName::DenseQuadrature;
        cfg.validate(&catalog).unwrap();
    }
}
