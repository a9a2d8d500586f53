use std::io::Write;

use clap::ValueEnum;
use serde::Serialize;
use twodesign::bounds::{BoundRecord, FamilyPoint};
use twodesign::designs::DesignDescriptor;
use twodesign::scan::ScanRow;
use twodesign::states::DetectionVerdict;
use twodesign::tables::TableReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

pub type CliResult<T> = std::result::Result<T, Box<dyn std::error::Error>>;

pub fn json<T: Serialize>(value: &T) -> CliResult<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

pub fn csv<R: Serialize>(rows: impl IntoIterator<Item = R>) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn print(text: &str) -> CliResult<()> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())?;
    Ok(out.flush()?)
}

fn members(descriptor: &DesignDescriptor) -> String {
    descriptor.members.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

#[derive(Serialize)]
pub struct BoundRow {
    design: String,
    d: usize,
    m: usize,
    members: String,
    lower: f64,
    upper: f64,
    upper_cross_check: f64,
    restarts: usize,
    converged: bool,
}

impl From<&BoundRecord> for BoundRow {
    fn from(r: &BoundRecord) -> Self {
        BoundRow {
            design: r.design_kind.to_string(),
            d: r.d,
            m: r.m,
            members: members(&r.descriptor),
            lower: r.lower,
            upper: r.upper,
            upper_cross_check: r.upper_cross_check,
            restarts: r.restarts,
            converged: r.converged,
        }
    }
}

#[derive(Serialize)]
pub struct FamilyRow {
    x: f64,
    y: f64,
    z: f64,
    lower: f64,
}

impl From<&FamilyPoint> for FamilyRow {
    fn from(p: &FamilyPoint) -> Self {
        FamilyRow {
            x: p.x,
            y: p.y,
            z: p.z,
            lower: p.lower,
        }
    }
}

#[derive(Serialize)]
pub struct ScanCsvRow {
    param: f64,
    value: f64,
    verdict: String,
}

impl From<&ScanRow> for ScanCsvRow {
    fn from(r: &ScanRow) -> Self {
        ScanCsvRow {
            param: r.param,
            value: r.value,
            verdict: r.verdict.to_string(),
        }
    }
}

#[derive(Serialize)]
pub struct TableCsvRow<'a> {
    table_id: String,
    label: &'a str,
    computed: f64,
    reference: &'a str,
    reference_value: f64,
    abs_error: f64,
    tolerance: f64,
    pass: bool,
}

pub fn table_rows(report: &TableReport) -> impl Iterator<Item = TableCsvRow<'_>> {
    report.rows.iter().map(|r| TableCsvRow {
        table_id: report.table_id.to_string(),
        label: &r.label,
        computed: r.computed,
        reference: &r.reference.text,
        reference_value: r.reference.value,
        abs_error: r.abs_error,
        tolerance: r.tolerance,
        pass: r.pass,
    })
}

#[derive(Serialize)]
pub struct VectorRow {
    pub index: usize,
    pub component: usize,
    pub re: f64,
    pub im: f64,
}

#[derive(Serialize)]
pub struct VerifyRow {
    pub pass: bool,
    pub max_deviation: f64,
    pub tolerance: f64,
}

#[derive(Serialize)]
pub struct CorrelationRow {
    pub value: f64,
    pub design: String,
    pub conjugate_second: bool,
}

#[derive(Serialize)]
pub struct VerdictRow {
    value: f64,
    lower: f64,
    upper: f64,
    verdict: String,
    design: String,
    conjugate_second: bool,
}

impl From<&DetectionVerdict> for VerdictRow {
    fn from(v: &DetectionVerdict) -> Self {
        VerdictRow {
            value: v.value,
            lower: v.lower_used,
            upper: v.upper_used,
            verdict: v.verdict.to_string(),
            design: v.design_descriptor.to_string(),
            conjugate_second: v.conjugate_second,
        }
    }
}
