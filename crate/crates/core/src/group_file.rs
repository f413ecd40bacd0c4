//! JSON group input: either explicit permutation generators or a
//! presentation with a declared order.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::GroupError;
use crate::group::FiniteGroup;
use crate::perm::Perm;
use crate::presentation::Presentation;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSource {
    Permutations {
        name: String,
        degree: usize,
        generators: Vec<Vec<usize>>,
    },
    Presented {
        name: String,
        presentation: Presentation,
    },
}

impl GroupSource {
    pub fn name(&self) -> &str {
        match self {
            GroupSource::Permutations { name, .. } | GroupSource::Presented { name, .. } => name,
        }
    }

    pub fn from_perms(name: &str, generators: &[Perm]) -> Self {
        GroupSource::Permutations {
            name: name.to_string(),
            degree: generators.first().map_or(1, Perm::degree),
            generators: generators.iter().map(|g| g.images().to_vec()).collect(),
        }
    }

    pub fn build(&self, cap: usize) -> Result<FiniteGroup, GroupError> {
        let group = match self {
            GroupSource::Permutations {
                degree, generators, ..
            } => {
                let mut perms: Vec<Perm> = generators
                    .iter()
                    .map(|g| {
                        if g.len() != *degree {
                            return Err(GroupError::DegreeMismatch {
                                expected: *degree,
                                found: g.len(),
                            });
                        }
                        Perm::from_images(g.clone())
                    })
                    .collect::<Result<_, _>>()?;
                if perms.is_empty() {
                    perms.push(Perm::identity(*degree));
                }
                FiniteGroup::enumerate(&perms, cap)?
            }
            GroupSource::Presented { presentation, .. } => presentation.realize(cap)?,
        };
        Ok(group.with_name(self.name()))
    }

    pub fn from_json(text: &str) -> Result<Self, GroupError> {
        serde_json::from_str(text).map_err(|e| GroupError::Input(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, GroupError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| GroupError::Input(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("group source serializes")
    }
}
