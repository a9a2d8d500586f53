//! Regenerates the published bound tables and compares them cell by cell.

mod mub;
mod sic;
mod thresholds;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bounds::{OptimizerOptions, ScanOptions, DEFAULT_ENUMERATION_CAP};
use crate::error::{Error, Result};

pub use mub::family_scan;
pub use sic::hesse_spectrum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum TableId {
    I,
    II,
    III,
    IV,
    V,
    Eq12,
    Fig3,
}

impl TableId {
    pub const ALL: [TableId; 7] = [
        TableId::I,
        TableId::II,
        TableId::III,
        TableId::IV,
        TableId::V,
        TableId::Eq12,
        TableId::Fig3,
    ];
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableId::I => "I",
            TableId::II => "II",
            TableId::III => "III",
            TableId::IV => "IV",
            TableId::V => "V",
            TableId::Eq12 => "EQ12",
            TableId::Fig3 => "FIG3",
        })
    }
}

impl FromStr for TableId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        TableId::ALL
            .into_iter()
            .find(|t| t.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Unknown {
                kind: "table",
                name: s.into(),
            })
    }
}

/// How precisely a reference value is known, which fixes how closely it can be matched.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Precision {
    /// Exact rational or closed expression.
    Exact,
    /// Decimal with 3–5 significant digits.
    Decimal,
    /// Two-digit value read off a figure.
    Coarse,
}

impl Precision {
    pub fn tolerance(self) -> f64 {
        match self {
            Precision::Exact => 1e-6,
            Precision::Decimal => 5e-4,
            Precision::Coarse => 1e-2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Reference {
    pub text: String,
    pub value: f64,
    pub precision: Precision,
}

pub(crate) fn frac(n: i64, d: i64) -> Reference {
    Reference {
        text: if d == 1 { n.to_string() } else { format!("{n}/{d}") },
        value: n as f64 / d as f64,
        precision: Precision::Exact,
    }
}

pub(crate) fn dec(text: &str) -> Reference {
    Reference {
        text: text.into(),
        value: text.parse().expect("decimal literal"),
        precision: Precision::Decimal,
    }
}

pub(crate) fn coarse(text: &str) -> Reference {
    Reference {
        precision: Precision::Coarse,
        ..dec(text)
    }
}

pub(crate) fn expr(text: &str, value: f64) -> Reference {
    Reference {
        text: text.into(),
        value,
        precision: Precision::Exact,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub label: String,
    pub computed: f64,
    pub reference: Reference,
    pub abs_error: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl TableRow {
    pub fn new(label: impl Into<String>, computed: f64, reference: Reference, tolerance: f64) -> Self {
        let abs_error = (computed - reference.value).abs();
        TableRow {
            label: label.into(),
            computed,
            abs_error,
            tolerance,
            pass: abs_error <= tolerance,
            reference,
        }
    }

    /// Row checked at the tolerance implied by the precision of the reference.
    pub fn at_precision(label: impl Into<String>, computed: f64, reference: Reference) -> Self {
        let tol = reference.precision.tolerance();
        TableRow::new(label, computed, reference, tol)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableReport {
    pub table_id: TableId,
    pub title: String,
    /// Loosest row tolerance in the table.
    pub tolerance: f64,
    pub rows: Vec<TableRow>,
}

impl TableReport {
    pub fn new(table_id: TableId, title: &str, rows: Vec<TableRow>) -> Self {
        TableReport {
            table_id,
            title: title.into(),
            tolerance: rows.iter().map(|r| r.tolerance).fold(0.0, f64::max),
            rows,
        }
    }

    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &TableRow> {
        self.rows.iter().filter(|r| !r.pass)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TableOptions {
    pub seed: u64,
    /// Overrides the per-dimension restart default.
    pub restarts: Option<usize>,
    pub scan: ScanOptions,
    pub enumeration_cap: u128,
}

impl Default for TableOptions {
    fn default() -> Self {
        TableOptions {
            seed: OptimizerOptions::DEFAULT_SEED,
            restarts: None,
            scan: ScanOptions::default(),
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
        }
    }
}

impl TableOptions {
    pub fn optimizer(&self, d: usize) -> OptimizerOptions {
        let base = OptimizerOptions::for_dim(d).with_seed(self.seed);
        match self.restarts {
            Some(r) => base.with_restarts(r),
            None => base,
        }
    }

    pub fn scan(&self) -> ScanOptions {
        ScanOptions {
            optimizer: self.optimizer(4),
            ..self.scan
        }
    }
}

pub trait TableReproducer: Send + Sync {
    fn id(&self) -> TableId;
    fn title(&self) -> &'static str;
    fn reproduce(&self, opts: &TableOptions) -> Result<TableReport>;
}

pub fn registry() -> Vec<Box<dyn TableReproducer>> {
    vec![
        Box::new(mub::MubBoundsTable),
        Box::new(sic::HesseTable),
        Box::new(sic::QubitSicTable),
        Box::new(sic::HesseSubsetTable),
        Box::new(sic::QuartSicTable),
        Box::new(mub::CompleteDesignTable),
        Box::new(thresholds::CriticalValueTable),
    ]
}

pub fn reproduce_table(id: TableId, opts: &TableOptions) -> Result<TableReport> {
    let table = registry().into_iter().find(|t| t.id() == id).expect("every id registered");
    table.reproduce(opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_parse_and_print() {
        for id in TableId::ALL {
            assert_eq!(id.to_string().parse::<TableId>().unwrap(), id);
        }
        assert_eq!("eq12".parse::<TableId>().unwrap(), TableId::Eq12);
        assert!("VI".parse::<TableId>().is_err());
    }

    #[test]
    fn registry_covers_every_id() {
        let ids: Vec<TableId> = registry().iter().map(|t| t.id()).collect();
        assert_eq!(ids, TableId::ALL.to_vec());
    }

    #[test]
    fn row_pass_is_tolerance_check() {
        let r = TableRow::at_precision("x", 0.1126, dec("0.1123"));
        assert!(r.pass && (r.abs_error - 3e-4).abs() < 1e-12);
        assert!(!TableRow::at_precision("y", 1.2927, dec("1.25414")).pass);
        assert_eq!(frac(6, 4).text, "6/4");
    }
}
