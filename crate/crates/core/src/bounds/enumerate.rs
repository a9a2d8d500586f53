//! Bounds for every fixed-size subset of a SIC set.

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{bound_record, BoundRecord, OptimizerOptions};
use crate::correlations::CorrelationSpec;
use crate::designs::SicSet;
use crate::error::{Error, Result};

pub const DEFAULT_ENUMERATION_CAP: u128 = 5_000;

pub fn binomial(n: usize, k: usize) -> u128 {
    num_integer::binomial(n as u128, k as u128)
}

/// Extremes of the separable bounds over all `m`-subsets of a design.
///
/// `lower_min`/`lower_max` are the smallest and largest lower bounds found
/// over the subsets, `upper_min`/`upper_max` likewise for the upper bounds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundSpectrum {
    pub m: usize,
    pub lower_min: f64,
    pub lower_max: f64,
    pub upper_min: f64,
    pub upper_max: f64,
    pub per_subset: Vec<BoundRecord>,
}

impl BoundSpectrum {
    /// Subset with the largest lower bound (first in lexicographic order on ties).
    pub fn best_lower(&self) -> &BoundRecord {
        pick(&self.per_subset, |r| r.lower, true)
    }

    /// Subset with the smallest upper bound.
    pub fn best_upper(&self) -> &BoundRecord {
        pick(&self.per_subset, |r| r.upper, false)
    }
}

fn pick(records: &[BoundRecord], key: impl Fn(&BoundRecord) -> f64, largest: bool) -> &BoundRecord {
    let mut best = &records[0];
    for r in &records[1..] {
        let better = if largest {
            key(r) > key(best) + 1e-12
        } else {
            key(r) < key(best) - 1e-12
        };
        if better {
            best = r;
        }
    }
    best
}

/// Runs both optimizers on every `m`-subset of `sic`, in lexicographic order.
pub fn subset_bound_spectrum(sic: &SicSet, m: usize, opts: &OptimizerOptions, cap: u128) -> Result<BoundSpectrum> {
    let n = sic.len();
    if m == 0 || m > n {
        return Err(Error::ParameterOutOfRange {
            name: "m",
            value: m as f64,
            min: 1.0,
            max: n as f64,
        });
    }
    let count = binomial(n, m);
    if count > cap {
        return Err(Error::EnumerationCapExceeded { count, cap });
    }
    let subsets: Vec<Vec<usize>> = (1..=n).combinations(m).collect();
    let per_subset = subsets
        .par_iter()
        .map(|members| bound_record(&CorrelationSpec::new(sic.subset(members)?), opts))
        .collect::<Result<Vec<_>>>()?;
    let fold = |key: fn(&BoundRecord) -> f64, init: f64, op: fn(f64, f64) -> f64| per_subset.iter().map(key).fold(init, op);
    Ok(BoundSpectrum {
        m,
        lower_min: fold(|r| r.lower, f64::INFINITY, f64::min),
        lower_max: fold(|r| r.lower, f64::NEG_INFINITY, f64::max),
        upper_min: fold(|r| r.upper, f64::INFINITY, f64::min),
        upper_max: fold(|r| r.upper, f64::NEG_INFINITY, f64::max),
        per_subset,
    })
}
