//! JSON interchange for character tables.
//!
//! Irreducibles are stored as `[re, im]` pairs; power maps are keyed by the
//! prime as a string.

use std::collections::BTreeMap;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{CharacterTable, IMPORTED_TOLERANCE};
use crate::error::TableError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableFile {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub header: Option<String>,
    pub order: u64,
    pub class_sizes: Vec<u64>,
    pub element_orders: Vec<u64>,
    #[serde(default)]
    pub power_maps: BTreeMap<String, Vec<usize>>,
    pub irreducibles: Vec<Vec<[f64; 2]>>,
}

impl TableFile {
    pub fn into_table(self, tolerance: f64) -> Result<CharacterTable, TableError> {
        let power_maps =
            self.power_maps
                .into_iter()
                .map(|(p, map)| {
                    p.trim().parse::<u64>().map(|p| (p, map)).map_err(|_| {
                        TableError::Parse(format!("power map key {p:?} is not a prime"))
                    })
                })
                .collect::<Result<_, _>>()?;
        let table = CharacterTable {
            name: self.name,
            header: self.header,
            order: self.order,
            class_sizes: self.class_sizes,
            element_orders: self.element_orders,
            power_maps,
            values: self
                .irreducibles
                .into_iter()
                .map(|row| {
                    row.into_iter()
                        .map(|[re, im]| Complex64::new(re, im))
                        .collect()
                })
                .collect(),
            tolerance,
        };
        table.validate()?;
        Ok(table)
    }

    pub fn from_table(table: &CharacterTable) -> Self {
        TableFile {
            name: table.name.clone(),
            header: table.header.clone(),
            order: table.order,
            class_sizes: table.class_sizes.clone(),
            element_orders: table.element_orders.clone(),
            power_maps: table
                .power_maps
                .iter()
                .map(|(p, m)| (p.to_string(), m.clone()))
                .collect(),
            irreducibles: table
                .values
                .iter()
                .map(|row| row.iter().map(|z| [z.re, z.im]).collect())
                .collect(),
        }
    }
}

impl CharacterTable {
    /// Parses and validates a table; `tolerance` defaults to the import
    /// tolerance.
    pub fn from_json(text: &str, tolerance: Option<f64>) -> Result<Self, TableError> {
        let file: TableFile =
            serde_json::from_str(text).map_err(|e| TableError::Parse(e.to_string()))?;
        file.into_table(tolerance.unwrap_or(IMPORTED_TOLERANCE))
    }

    pub fn import(path: &Path, tolerance: Option<f64>) -> Result<Self, TableError> {
        Self::from_json(&std::fs::read_to_string(path)?, tolerance)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&TableFile::from_table(self)).expect("table serializes")
    }

    pub fn export(&self, path: &Path) -> Result<(), TableError> {
        std::fs::write(path, self.to_json() + "\n")?;
        Ok(())
    }
}
