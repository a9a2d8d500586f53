//! Verdicts along a Werner or isotropic line and the exact crossing points.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::SeparableInterval;
use crate::correlations::CorrelationSpec;
use crate::designs::DesignKind;
use crate::error::{Error, Result};
use crate::states::{closed_form_correlation, detect, StateFamily, SymmetricStateSpec, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub param: f64,
    pub value: f64,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParameterScan {
    pub family: StateFamily,
    pub rows: Vec<ScanRow>,
    /// First parameter whose verdict differs from the one at the start of the range.
    pub first_flip: Option<f64>,
}

/// Parameters `start, start + step, …` up to `end`, computed by index to avoid drift.
fn parameter_grid(start: f64, end: f64, step: f64) -> Result<Vec<f64>> {
    if step.is_nan() || step <= 0.0 {
        return Err(Error::ParameterOutOfRange {
            name: "step",
            value: step,
            min: f64::MIN_POSITIVE,
            max: f64::INFINITY,
        });
    }
    let n = ((end - start) / step + 1e-9).floor();
    if n < 0.0 {
        return Err(Error::ParameterOutOfRange {
            name: "end",
            value: end,
            min: start,
            max: f64::INFINITY,
        });
    }
    Ok((0..=n as usize).map(|k| start + k as f64 * step).collect())
}

/// Numerically evaluates the correlation sum of every family member on the grid and classifies it.
pub fn scan_family(
    family: StateFamily,
    spec: &CorrelationSpec,
    bounds: &SeparableInterval,
    range: (f64, f64),
    step: f64,
    tol: f64,
) -> Result<ParameterScan> {
    let d = spec.design.dim();
    let rows = parameter_grid(range.0, range.1, step)?
        .into_par_iter()
        .map(|param| {
            let rho = SymmetricStateSpec::new(family, d, param)?.state()?;
            let v = detect(&rho, spec, bounds, tol)?;
            Ok(ScanRow {
                param,
                value: v.value,
                verdict: v.verdict,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let first_flip = rows
        .first()
        .and_then(|first| rows.iter().find(|r| r.verdict != first.verdict))
        .map(|r| r.param);
    Ok(ParameterScan { family, rows, first_flip })
}

/// Parameters at which the closed-form sum meets each bound.
///
/// Values are not clamped to `[0, 1]`: a crossing outside that range means
/// the family is never detected through that bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalParameters {
    pub at_lower: f64,
    pub at_upper: f64,
}

/// Exact crossing points for a family measured with `m` members of a design.
///
/// Correlation sums of both families are affine in the parameter, so each
/// crossing is one linear solve.
pub fn critical_parameters(
    family: StateFamily,
    d: usize,
    kind: DesignKind,
    m: usize,
    lower: f64,
    upper: f64,
) -> Result<CriticalParameters> {
    let at = |x: f64| Ok::<f64, Error>(closed_form_correlation(&SymmetricStateSpec::new(family, d, x)?, kind, m)?.value);
    let v0 = at(0.0)?;
    let slope = at(1.0)? - v0;
    Ok(CriticalParameters {
        at_lower: (lower - v0) / slope,
        at_upper: (upper - v0) / slope,
    })
}
