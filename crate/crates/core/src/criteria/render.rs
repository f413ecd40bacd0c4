//! JSON, CSV and text renderings of a report list.

use std::fmt::Write;

use serde::Serialize;

use super::scan::ScanSummary;
use super::CriterionReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

pub fn render(reports: &[CriterionReport], format: Format) -> String {
    match format {
        Format::Json => render_json(reports),
        Format::Csv => render_csv(reports),
        Format::Text => render_text(reports),
    }
}

pub fn render_json(reports: &[CriterionReport]) -> String {
    serde_json::to_string_pretty(reports).expect("reports serialize") + "\n"
}

#[derive(Serialize)]
struct CsvRow<'a> {
    group: &'a str,
    class: usize,
    n: u32,
    shape: &'a str,
    agreement: bool,
    conclusions_passed: usize,
    conclusions_total: usize,
}

fn shape_label(r: &CriterionReport) -> &'static str {
    match &r.oracle_shape {
        Some(s) => s.label(),
        None if r.is_group_level() => "group",
        None => "unavailable",
    }
}

pub fn render_csv(reports: &[CriterionReport]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in reports {
        w.serialize(CsvRow {
            group: &r.group,
            class: r.class_id,
            n: r.n,
            shape: shape_label(r),
            agreement: r.agreement,
            conclusions_passed: r.conclusions_passed(),
            conclusions_total: r.conclusions.len(),
        })
        .expect("csv rows serialize");
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("csv is utf-8")
}

/// One line per hit or finding, then a summary line.
pub fn render_text(reports: &[CriterionReport]) -> String {
    let mut out = String::new();
    for r in reports {
        if !(r.is_hit() || r.is_finding()) {
            continue;
        }
        let status = if !r.agreement {
            "DISAGREEMENT"
        } else if r.is_finding() {
            "VIOLATION"
        } else {
            "ok"
        };
        let location = if r.is_group_level() {
            "group-level".to_string()
        } else {
            format!("class {} n={}", r.class_id, r.n)
        };
        let _ = write!(
            out,
            "{} {} {} conclusions {}/{} {}",
            r.group,
            location,
            shape_label(r),
            r.conclusions_passed(),
            r.conclusions.len(),
            status
        );
        for c in r.conclusions.iter().filter(|c| !c.holds) {
            let _ = write!(out, " [{}: {}]", c.name, c.details);
        }
        out.push('\n');
    }
    let s = ScanSummary::of(reports);
    let _ = writeln!(
        out,
        "{} reports, {} hits, {} disagreements, {} violated conclusions",
        s.reports, s.hits, s.disagreements, s.violated_conclusions
    );
    out
}

/// Per-group tally of the instances the two open conjectures speak about.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureCensus {
    pub group: String,
    pub nonabelian_simple: bool,
    pub single_class_hits: usize,
    pub trivial_plus_class_hits: usize,
    pub union_with_inverse_hits: usize,
    /// No power of a nontrivial class is a class; only asked of
    /// nonabelian simple groups.
    pub conjecture_1: Option<bool>,
    pub conjecture_3_checked: usize,
    pub conjecture_3_passed: usize,
}

impl ConjectureCensus {
    /// Table-only reports are tallied by their criterion verdicts.
    pub fn of(group: &str, nonabelian_simple: bool, reports: &[CriterionReport]) -> Self {
        let holds = |r: &CriterionReport, name: &str| r.verdict(name).is_some_and(|v| v.holds);
        let mut census = ConjectureCensus {
            group: group.to_string(),
            nonabelian_simple,
            single_class_hits: 0,
            trivial_plus_class_hits: 0,
            union_with_inverse_hits: 0,
            conjecture_1: None,
            conjecture_3_checked: 0,
            conjecture_3_passed: 0,
        };
        for r in reports.iter().filter(|r| !r.is_group_level()) {
            let (single, trivial_plus, union) = match &r.oracle_shape {
                Some(s) => (
                    s.is_single_class(),
                    s.is_trivial_plus_class(),
                    s.is_union_with_inverse(),
                ),
                None => (holds(r, "char1"), holds(r, "char2"), holds(r, "char3")),
            };
            census.single_class_hits += single as usize;
            census.trivial_plus_class_hits += trivial_plus as usize;
            census.union_with_inverse_hits += union as usize;
            if let Some(c) = r.conclusion("conjecture_3.solvable") {
                census.conjecture_3_checked += 1;
                census.conjecture_3_passed += c.holds as usize;
            }
        }
        if nonabelian_simple {
            census.conjecture_1 = Some(census.single_class_hits == 0);
        }
        census
    }

    pub fn holds(&self) -> bool {
        self.conjecture_1 != Some(false) && self.conjecture_3_passed == self.conjecture_3_checked
    }
}

pub fn render_census(rows: &[ConjectureCensus], format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(rows).expect("census serializes") + "\n",
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for row in rows {
                w.serialize(row).expect("census rows serialize");
            }
            String::from_utf8(w.into_inner().expect("in-memory writer")).expect("csv is utf-8")
        }
        Format::Text => {
            let mut out = String::new();
            for row in rows {
                let _ = write!(
                    out,
                    "{}: {} single-class, {} trivial-plus-class, {} class-plus-inverse hits; conjecture 3 {}/{}",
                    row.group,
                    row.single_class_hits,
                    row.trivial_plus_class_hits,
                    row.union_with_inverse_hits,
                    row.conjecture_3_passed,
                    row.conjecture_3_checked
                );
                if let Some(c1) = row.conjecture_1 {
                    let _ = write!(out, "; conjecture 1 {}", if c1 { "holds" } else { "FAILS" });
                }
                out.push('\n');
            }
            out
        }
    }
}
