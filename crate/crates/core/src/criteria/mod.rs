//! Oracle and character-table criteria for class powers, and checks of the
//! structural conclusions that follow from each shape.
//!
//! Every `(class, n)` pair gets a [`CriterionReport`]: the brute-force
//! support shape, the verdict of each character criterion with the verdict
//! the shape implies, and the conclusions verified on the group.

mod character;
mod render;
mod scan;
mod theorems;

use serde::Serialize;

use crate::algebra::SupportShape;

pub use character::{
    alpha_multiplicities, bcor_check, char1_check, char2_check, char3_check, eq3_check,
    prod_is_class_check, Alpha, Char2Outcome, Char3Outcome, RowCheck, Witness,
};
pub use render::{
    render, render_census, render_csv, render_json, render_text, ConjectureCensus, Format,
};
pub use scan::{scan_group, scan_table, AnalyzedGroup, ScanOptions, ScanSummary};
pub use theorems::{
    corollary_c3_verify, lemma_l1_check, nocfsgr_verify, theorem1_equivalence_check,
    theorem_a_verify, theorem_b_verify, theorem_c_verify, theorem_d_verify, Theorem1,
};

/// Near-integer threshold for derived multiplicities, relative to the value.
pub const INTEGRALITY_TOLERANCE: f64 = 1e-6;
/// Absolute threshold for the per-character identity that accompanies the
/// trivial-plus-class shape.
pub const IDENTITY_TOLERANCE: f64 = 1e-6;

/// One character-side verdict for a `(class, n)` pair.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CharVerdict {
    pub criterion: String,
    pub holds: bool,
    /// Verdict implied by the oracle shape, when one applies.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CharVerdict {
    pub fn new(criterion: &str, holds: bool) -> Self {
        CharVerdict {
            criterion: criterion.to_string(),
            holds,
            expected: None,
            witness: None,
            d: None,
            m1: None,
            m2: None,
            note: None,
        }
    }

    pub fn agrees(&self) -> bool {
        self.expected.is_none_or(|e| e == self.holds)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Conclusion {
    pub name: String,
    pub holds: bool,
    pub details: String,
}

impl Conclusion {
    pub fn new(name: &str, holds: bool, details: impl Into<String>) -> Self {
        Conclusion {
            name: name.to_string(),
            holds,
            details: details.into(),
        }
    }
}

/// Results for one `(class, n)` pair. Group-level conclusions use
/// `class_id = 0` and `n = 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionReport {
    pub group: String,
    pub class_id: usize,
    pub n: u32,
    /// `None` for table-only inputs.
    pub oracle_shape: Option<SupportShape>,
    pub char_verdicts: Vec<CharVerdict>,
    pub conclusions: Vec<Conclusion>,
    pub agreement: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CriterionReport {
    pub fn is_group_level(&self) -> bool {
        self.n == 0
    }

    /// A hit is any of the studied shapes; for table-only inputs, any of
    /// the three characterizing criteria holding.
    pub fn is_hit(&self) -> bool {
        match &self.oracle_shape {
            Some(shape) => shape.is_hit(),
            None => self
                .char_verdicts
                .iter()
                .any(|v| matches!(v.criterion.as_str(), "char1" | "char2" | "char3") && v.holds),
        }
    }

    pub fn conclusions_passed(&self) -> usize {
        self.conclusions.iter().filter(|c| c.holds).count()
    }

    /// Disagreement between oracle and criteria, or a violated conclusion.
    pub fn is_finding(&self) -> bool {
        !self.agreement || self.conclusions.iter().any(|c| !c.holds)
    }

    pub fn verdict(&self, criterion: &str) -> Option<&CharVerdict> {
        self.char_verdicts.iter().find(|v| v.criterion == criterion)
    }

    pub fn conclusion(&self, name: &str) -> Option<&Conclusion> {
        self.conclusions.iter().find(|c| c.name == name)
    }
}
