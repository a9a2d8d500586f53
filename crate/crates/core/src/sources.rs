//! Where a detection run gets its separable bounds from.

use std::collections::BTreeMap;

use crate::bounds::{bound_record, design_closed_bounds, BoundRecord, OptimizerOptions, SeparableInterval};
use crate::correlations::CorrelationSpec;
use crate::designs::DesignKind;
use crate::error::{Error, Result};

pub trait BoundSource: Send + Sync {
    fn name(&self) -> &'static str;
    fn interval(&self, spec: &CorrelationSpec) -> Result<SeparableInterval>;
}

/// Runs the optimizers for the requested design.
pub struct Recompute {
    pub options: OptimizerOptions,
}

impl BoundSource for Recompute {
    fn name(&self) -> &'static str {
        "recompute"
    }

    fn interval(&self, spec: &CorrelationSpec) -> Result<SeparableInterval> {
        Ok(bound_record(spec, &self.options)?.interval())
    }
}

/// Exact bounds, available for complete designs only.
pub struct ClosedForm;

impl BoundSource for ClosedForm {
    fn name(&self) -> &'static str {
        "closed-form"
    }

    fn interval(&self, spec: &CorrelationSpec) -> Result<SeparableInterval> {
        let descriptor = spec.descriptor();
        let full = match descriptor.kind {
            DesignKind::Mub => descriptor.d + 1,
            DesignKind::Sic => descriptor.d * descriptor.d,
        };
        if descriptor.m != full {
            return Err(Error::UnsupportedCombination(format!(
                "closed-form bounds need a complete design, got {descriptor}"
            )));
        }
        let (lower, upper) = design_closed_bounds(descriptor.d, descriptor.kind)?;
        Ok(SeparableInterval { descriptor, lower, upper })
    }
}

/// Previously computed records, looked up by design descriptor.
pub struct Cached {
    records: Vec<SeparableInterval>,
}

impl Cached {
    pub fn new(records: Vec<SeparableInterval>) -> Self {
        Cached { records }
    }

    /// Accepts a JSON array of bound records or of bare intervals.
    pub fn from_json(text: &str) -> Result<Self> {
        let parse_err = |e: serde_json::Error| Error::ParseAt {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        };
        if let Ok(records) = serde_json::from_str::<Vec<BoundRecord>>(text) {
            return Ok(Cached::new(records.iter().map(BoundRecord::interval).collect()));
        }
        let intervals: Vec<SeparableInterval> = serde_json::from_str(text).map_err(parse_err)?;
        Ok(Cached::new(intervals))
    }
}

impl BoundSource for Cached {
    fn name(&self) -> &'static str {
        "cached"
    }

    fn interval(&self, spec: &CorrelationSpec) -> Result<SeparableInterval> {
        let descriptor = spec.descriptor();
        self.records
            .iter()
            .find(|r| r.descriptor == descriptor)
            .cloned()
            .ok_or_else(|| Error::SpecMismatch {
                spec: descriptor.to_string(),
                bounds: format!("{} cached record(s), none matching", self.records.len()),
            })
    }
}

type Factory = fn(&OptimizerOptions, Option<&str>) -> Result<Box<dyn BoundSource>>;

/// Bound sources by name. `cached` needs the cache file contents.
pub fn bound_sources() -> BTreeMap<&'static str, Factory> {
    let mut m: BTreeMap<&'static str, Factory> = BTreeMap::new();
    m.insert("recompute", |opts, _| Ok(Box::new(Recompute { options: *opts })));
    m.insert("closed-form", |_, _| Ok(Box::new(ClosedForm)));
    m.insert("cached", |_, cache| {
        let text = cache.ok_or_else(|| Error::Parse("cached bound source needs a cache file".into()))?;
        Ok(Box::new(Cached::from_json(text)?))
    });
    m
}

pub fn bound_source(name: &str, opts: &OptimizerOptions, cache: Option<&str>) -> Result<Box<dyn BoundSource>> {
    let factory = bound_sources().get(name).copied().ok_or_else(|| Error::Unknown {
        kind: "bound source",
        name: name.into(),
    })?;
    factory(opts, cache)
}
