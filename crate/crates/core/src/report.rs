//! Serializable classification reports.

use serde::Serialize;

use crate::classify::{ClassificationReport, Gorenstein, SingLocus, TheoremWitness};

/// The report as emitted by the command line, keys in output order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportDocument {
    pub dimension: usize,
    pub group_order: usize,
    pub cyclotomic_order: u64,
    pub in_sl: bool,
    pub has_pseudo_reflections: bool,
    pub fixed_point_free: bool,
    pub isolated: bool,
    pub sing_locus_dim: SingLocus,
    pub cyclic: bool,
    pub abelian: bool,
    pub gorenstein: Gorenstein,
    pub theorem_witness: TheoremWitness,
}

impl ReportDocument {
    pub fn new(report: &ClassificationReport, cyclotomic_order: u64) -> Self {
        ReportDocument {
            dimension: report.dimension,
            group_order: report.group_order,
            cyclotomic_order,
            in_sl: report.in_sl,
            has_pseudo_reflections: report.has_pseudo_reflections,
            fixed_point_free: report.fixed_point_free,
            isolated: report.isolated,
            sing_locus_dim: report.sing_locus_dim,
            cyclic: report.cyclic,
            abelian: report.abelian,
            gorenstein: report.gorenstein,
            theorem_witness: report.theorem_witness,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Key/value pairs in output order, values as printed in the table.
    pub fn rows(&self) -> Vec<(&'static str, String)> {
        vec![
            ("dimension", self.dimension.to_string()),
            ("group_order", self.group_order.to_string()),
            ("cyclotomic_order", self.cyclotomic_order.to_string()),
            ("in_sl", self.in_sl.to_string()),
            ("has_pseudo_reflections", self.has_pseudo_reflections.to_string()),
            ("fixed_point_free", self.fixed_point_free.to_string()),
            ("isolated", self.isolated.to_string()),
            ("sing_locus_dim", self.sing_locus_dim.to_string()),
            ("cyclic", self.cyclic.to_string()),
            ("abelian", self.abelian.to_string()),
            ("gorenstein", self.gorenstein.to_string()),
            ("theorem_witness", self.theorem_witness.to_string()),
        ]
    }

    /// Two aligned columns, one key per line.
    pub fn to_table(&self) -> String {
        let rows = self.rows();
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        rows.iter().map(|(k, v)| format!("{k:<width$}  {v}\n")).collect()
    }
}
