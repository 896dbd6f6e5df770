//! Computation and sweep reports, and their table/CSV/JSON renderings.

use std::fmt::Write as _;

use casimir_core::friction_engine::{
    dense_friction_closed_form, dense_friction_quadrature, dilute_friction, FrictionReport,
};
use casimir_core::quantities::{
    beta_from_temperature, energy_to_angular_frequency, ev, kelvin, metres, thermal_energy, Quantity, Unit,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::Catalog;
use crate::config::{Format, RouteName, RunConfig, SweepParameter, SweepScale, METRE_PER_NM};
use crate::error::{CliError, CliResult};

/// Resolved material echo in eV and rad/s.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaterialEcho {
    pub name: Option<String>,
    #[serde(rename = "omega_p_eV")]
    pub omega_p_ev: f64,
    #[serde(rename = "nu_eV")]
    pub nu_ev: f64,
    /// Surface-plasmon energy ħω_p/√2.
    #[serde(rename = "q_eV")]
    pub q_ev: f64,
    pub omega_p_rad_per_s: f64,
    pub nu_per_s: f64,
    pub q_rad_per_s: f64,
}

/// Scenario inputs in natural units (eV, m).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NaturalInputs {
    #[serde(rename = "kT_eV")]
    pub kt_ev: f64,
    #[serde(rename = "beta_per_eV")]
    pub beta_per_ev: f64,
    pub d_nm: f64,
    pub v_mps: f64,
    /// ½βq per plate (dense routes).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub half_beta_q: Option<[f64; 2]>,
}

/// Scenario inputs in SI units.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SiInputs {
    #[serde(rename = "T_K")]
    pub t_k: f64,
    #[serde(rename = "kT_J")]
    pub kt_j: f64,
    #[serde(rename = "beta_per_J")]
    pub beta_per_j: f64,
    pub d_m: f64,
    pub v_mps: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InputEcho {
    pub route: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub materials: Option<[MaterialEcho; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rho_per_m3: Option<[f64; 2]>,
    pub natural: NaturalInputs,
    pub si: SiInputs,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiagnosticsEcho {
    pub rel_error: Option<f64>,
    pub subdivisions: usize,
    pub evaluations: usize,
    pub spectral_overlap: Option<bool>,
    pub normalization: Option<f64>,
}

/// Result of a single computation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComputeReport {
    pub route: &'static str,
    #[serde(rename = "force_Pa")]
    pub force_pa: f64,
    #[serde(rename = "prefactor_Pa")]
    pub prefactor_pa: f64,
    pub suppression_log: f64,
    /// ln|F/Pa|, finite even when the force underflows.
    pub ln_force_magnitude: Option<f64>,
    pub inputs: InputEcho,
    pub diagnostics: DiagnosticsEcho,
}

fn material_echo(name: Option<&str>, m: &casimir_core::DrudeMaterial) -> CliResult<MaterialEcho> {
    let rate = |e: f64| -> CliResult<f64> { Ok(energy_to_angular_frequency(ev(e))?.value) };
    Ok(MaterialEcho {
        name: name.map(str::to_string),
        omega_p_ev: m.omega_p(),
        nu_ev: m.nu(),
        q_ev: m.q(),
        omega_p_rad_per_s: rate(m.omega_p())?,
        nu_per_s: rate(m.nu())?,
        q_rad_per_s: rate(m.q())?,
    })
}

fn echo(cfg: &RunConfig, catalog: &Catalog, route: &'static str) -> CliResult<InputEcho> {
    let t = kelvin(cfg.t_k);
    let kt = thermal_energy(t)?;
    let beta = beta_from_temperature(t)?;
    let (materials, half_beta_q) = match cfg.route {
        RouteName::DiluteQuadrature => (None, None),
        _ => {
            let [a, b] = cfg.materials(catalog)?;
            let hbq = [0.5 * beta.value * a.material.q(), 0.5 * beta.value * b.material.q()];
            (
                Some([material_echo(a.name, &a.material)?, material_echo(b.name, &b.material)?]),
                Some(hbq),
            )
        }
    };
    let d: Quantity = metres(cfg.d_nm * METRE_PER_NM);
    Ok(InputEcho {
        route,
        materials,
        rho_per_m3: cfg.rho1_per_m3.zip(cfg.rho2_per_m3).map(|(a, b)| [a, b]),
        natural: NaturalInputs {
            kt_ev: kt.value_in(Unit::ElectronVolt)?,
            beta_per_ev: beta.value_in(Unit::InverseElectronVolt)?,
            d_nm: cfg.d_nm,
            v_mps: cfg.v_mps,
            half_beta_q,
        },
        si: SiInputs {
            t_k: cfg.t_k,
            kt_j: kt.to_si().value_in(Unit::Joule)?,
            beta_per_j: beta.to_si().value_in(Unit::InverseJoule)?,
            d_m: d.to_si().value_in(Unit::Metre)?,
            v_mps: cfg.v_mps,
        },
    })
}

fn evaluate(cfg: &RunConfig, catalog: &Catalog) -> CliResult<FrictionReport> {
    let scenario = cfg.scenario(catalog)?;
    let report = match cfg.route {
        RouteName::DenseClosedForm => dense_friction_closed_form(&scenario)?,
        RouteName::DenseQuadrature => dense_friction_quadrature(&scenario)?,
        RouteName::DiluteQuadrature => dilute_friction(&scenario)?,
    };
    Ok(report)
}

/// Runs one configuration.
pub fn compute(cfg: &RunConfig, catalog: &Catalog) -> CliResult<ComputeReport> {
    let r = evaluate(cfg, catalog)?;
    let ln_force = r.ln_force_magnitude();
    Ok(ComputeReport {
        route: r.route.as_str(),
        force_pa: r.force_per_area,
        prefactor_pa: r.prefactor,
        suppression_log: r.suppression_log,
        ln_force_magnitude: ln_force.is_finite().then_some(ln_force),
        inputs: echo(cfg, catalog, r.route.as_str())?,
        diagnostics: DiagnosticsEcho {
            rel_error: r.diagnostics.rel_error,
            subdivisions: r.diagnostics.subdivisions,
            evaluations: r.diagnostics.evaluations,
            spectral_overlap: r.diagnostics.spectral_overlap,
            normalization: r.diagnostics.normalization,
        },
    })
}

/// One sweep row; the CSV header is exactly these four names.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub param_value: f64,
    #[serde(rename = "force_Pa")]
    pub force_pa: f64,
    #[serde(rename = "prefactor_Pa")]
    pub prefactor_pa: f64,
    pub suppression_log: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepTable {
    pub parameter: &'static str,
    pub scale: SweepScale,
    pub route: &'static str,
    pub rows: Vec<SweepRow>,
}

/// Runs the sweep block of `cfg` with at most `jobs` worker threads.
/// Rows come back in ascending parameter order whatever the completion order.
pub fn sweep(cfg: &RunConfig, catalog: &Catalog, jobs: usize) -> CliResult<SweepTable> {
    let spec = cfg
        .sweep
        .as_ref()
        .ok_or_else(|| CliError::config("sweep", "the sweep subcommand needs a sweep block"))?;
    cfg.validate(catalog)?;
    let values = spec.values()?;
    let parameter: SweepParameter = spec.parameter;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| CliError::Output(e.to_string()))?;
    let rows: Vec<CliResult<SweepRow>> = pool.install(|| {
        values
            .par_iter()
            .map(|&x| {
                let point = cfg.with_parameter(parameter, x, catalog)?;
                let r = evaluate(&point, catalog)?;
                Ok(SweepRow {
                    param_value: x,
                    force_pa: r.force_per_area,
                    prefactor_pa: r.prefactor,
                    suppression_log: r.suppression_log,
                })
            })
            .collect()
    });
    let rows = rows.into_iter().collect::<CliResult<Vec<_>>>()?;
    Ok(SweepTable {
        parameter: parameter.key(),
        scale: spec.scale,
        route: cfg.route.as_str(),
        rows,
    })
}

fn to_csv<T: Serialize>(rows: &[T]) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).map_err(|e| CliError::Output(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Output(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))
}

fn json<T: Serialize>(value: &T) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Output(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn render_compute(report: &ComputeReport, format: Format) -> CliResult<String> {
    match format {
        Format::Json => json(report),
        // A single computation has no swept parameter; its first column is left empty.
        Format::Csv => {
            #[derive(Serialize)]
            struct Row {
                param_value: Option<f64>,
                #[serde(rename = "force_Pa")]
                force_pa: f64,
                #[serde(rename = "prefactor_Pa")]
                prefactor_pa: f64,
                suppression_log: f64,
            }
            to_csv(&[Row {
                param_value: None,
                force_pa: report.force_pa,
                prefactor_pa: report.prefactor_pa,
                suppression_log: report.suppression_log,
            }])
        }
        Format::Table => {
            let mut s = String::new();
            let i = &report.inputs;
            let _ = writeln!(s, "route              {}", report.route);
            if let Some(ms) = &i.materials {
                for (k, m) in ms.iter().enumerate() {
                    let _ = writeln!(
                        s,
                        "material {}         {} (omega_p {} eV, nu {} eV, q {:.6} eV)",
                        k + 1,
                        m.name.as_deref().unwrap_or("inline"),
                        m.omega_p_ev,
                        m.nu_ev,
                        m.q_ev
                    );
                }
            }
            if let Some([a, b]) = i.rho_per_m3 {
                let _ = writeln!(s, "densities          {a:e} / {b:e} m^-3");
            }
            let _ = writeln!(s, "separation         {} nm ({:e} m)", i.natural.d_nm, i.si.d_m);
            let _ = writeln!(s, "speed              {} m/s", i.natural.v_mps);
            let _ = writeln!(s, "temperature        {} K (kT {:.6e} eV)", i.si.t_k, i.natural.kt_ev);
            if let Some([a, b]) = i.natural.half_beta_q {
                let _ = writeln!(s, "half beta q        {a:.6} / {b:.6}");
            }
            let _ = writeln!(s, "prefactor          {:.6e} Pa", report.prefactor_pa);
            let _ = writeln!(s, "suppression log    {:.6}", report.suppression_log);
            let _ = writeln!(s, "force per area     {:.6e} Pa", report.force_pa);
            if let Some(l) = report.ln_force_magnitude {
                let _ = writeln!(s, "ln|force/Pa|       {l:.6}");
            }
            Ok(s)
        }
    }
}

pub fn render_sweep(table: &SweepTable, format: Format) -> CliResult<String> {
    match format {
        Format::Json => json(table),
        Format::Csv if table.rows.is_empty() => Ok("param_value,force_Pa,prefactor_Pa,suppression_log\n".into()),
        Format::Csv => to_csv(&table.rows),
        Format::Table => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "{:>16} {:>16} {:>16} {:>16}",
                table.parameter, "force_Pa", "prefactor_Pa", "suppression_log"
            );
            for r in &table.rows {
                let _ = writeln!(
                    s,
                    "{:>16.6e} {:>16.6e} {:>16.6e} {:>16.6}",
                    r.param_value, r.force_pa, r.prefactor_pa, r.suppression_log
                );
            }
            Ok(s)
        }
    }
}

pub fn render_catalog(catalog: &Catalog, format: Format) -> CliResult<String> {
    match format {
        Format::Json => json(&catalog.entries()),
        Format::Csv => to_csv(catalog.entries()),
        Format::Table => {
            let mut s = format!("{:<16} {:>12} {:>12}\n", "name", "omega_p_eV", "nu_eV");
            for e in catalog.entries() {
                let _ = writeln!(s, "{:<16} {:>12} {:>12}", e.name, e.omega_p_ev, e.nu_ev);
            }
            Ok(s)
        }
    }
}
