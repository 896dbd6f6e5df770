//! Material catalog: a JSON list of named Drude metals.

use std::path::Path;

use casimir_core::DrudeMaterial;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

const DEFAULT_CATALOG: &str = include_str!("../data/materials.json");

/// One catalog record; energies are ħω_p and ħν in eV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogEntry {
    pub name: String,
    #[serde(rename = "omega_p_eV")]
    pub omega_p_ev: f64,
    #[serde(rename = "nu_eV")]
    pub nu_ev: f64,
}

impl CatalogEntry {
    pub fn material(&self) -> CliResult<DrudeMaterial> {
        Ok(DrudeMaterial::new(self.omega_p_ev, self.nu_ev)?)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

impl Catalog {
    /// The catalog shipped with the binary (gold).
    pub fn builtin() -> Self {
        Self::from_json(DEFAULT_CATALOG, "<builtin>").expect("builtin catalog is valid")
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            context: format!("reading catalog {}", path.display()),
            source,
        })?;
        Self::from_json(&text, &path.display().to_string())
    }

    pub fn from_json(text: &str, origin: &str) -> CliResult<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let entries: Vec<CatalogEntry> = serde_path_to_error::deserialize(de).map_err(|e| CliError::Catalog {
            path: format!("{origin}:{}", e.path()),
            message: e.inner().to_string(),
        })?;
        Self::new(entries).map_err(|e| match e {
            CliError::Catalog { path, message } => CliError::Catalog {
                path: format!("{origin}:{path}"),
                message,
            },
            other => other,
        })
    }

    pub fn new(entries: Vec<CatalogEntry>) -> CliResult<Self> {
        for (i, entry) in entries.iter().enumerate() {
            let at = |field: &str| format!("[{i}].{field}");
            if entry.name.trim().is_empty() {
                return Err(CliError::Catalog {
                    path: at("name"),
                    message: "name must not be empty".into(),
                });
            }
            if entries[..i].iter().any(|e| e.name == entry.name) {
                return Err(CliError::Catalog {
                    path: at("name"),
                    message: format!("duplicate material '{}'", entry.name),
                });
            }
            if !(entry.omega_p_ev > 0.0) || !entry.omega_p_ev.is_finite() {
                return Err(CliError::Catalog {
                    path: at("omega_p_eV"),
                    message: format!("must be a positive energy in eV, got {}", entry.omega_p_ev),
                });
            }
            if !(entry.nu_ev >= 0.0) || !entry.nu_ev.is_finite() {
                return Err(CliError::Catalog {
                    path: at("nu_eV"),
                    message: format!("must be a non-negative energy in eV, got {}", entry.nu_ev),
                });
            }
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn names(&self) -> Vec<String> {
        self.entries.iter().map(|e| e.name.clone()).collect()
    }

    pub fn get(&self, name: &str) -> CliResult<&CatalogEntry> {
        self.entries
            .iter()
            .find(|e| e.name == name)
            .ok_or_else(|| CliError::UnknownMaterial {
                name: name.to_string(),
                available: self.names(),
            })
    }
}

impl Default for Catalog {
    fn default() -> Self {
        Self::builtin()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_has_gold() {
        let gold = Catalog::builtin().get("gold").unwrap().material().unwrap();
        assert_eq!(gold, DrudeMaterial::gold());
    }

    #[test]
    fn unknown_name_lists_available() {
        let err = Catalog::builtin().get("silver").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("silver") && msg.contains("available: gold"), "{msg}");
    }

    #[test]
    fn bad_records_report_their_path() {
        let text = r#"[{"name":"a","omega_p_eV":1,"nu_eV":0.1},{"name":"b","omega_p_eV":-2,"nu_eV":0.1}]"#;
        let msg = Catalog::from_json(text, "cat.json").unwrap_err().to_string();
        assert!(msg.contains("cat.json:[1].omega_p_eV"), "{msg}");

        let text = r#"[{"name":"a","omega_p_eV":1,"nu_eV":0.1},{"name":"a","omega_p_eV":2,"nu_eV":0.1}]"#;
        assert!(Catalog::from_json(text, "x")
            .unwrap_err()
            .to_string()
            .contains("duplicate"));

        let text = r#"[{"name":"a","omega_p_eV":"9","nu_eV":0.1}]"#;
        let msg = Catalog::from_json(text, "x").unwrap_err().to_string();
        assert!(msg.contains("[0].omega_p_eV"), "{msg}");
    }
}
