//! Separable-state bounds of the correlation sums.
//!
//! Every term of a correlation sum is `|⟨u|e⟩|² |⟨w|f⟩|²` on a product state
//! `|e⟩|f⟩`, and convexity reduces the separable extrema to product states.
//! The minimum is found by alternating exact eigenvector steps. The maximum
//! reduces to a single vector, `max_e Σ |⟨u|e⟩|⁴`, which is cross-checked
//! against a direct two-vector search.

mod enumerate;
mod family;
pub mod optimize;

pub use enumerate::{binomial, subset_bound_spectrum, BoundSpectrum, DEFAULT_ENUMERATION_CAP};
pub use family::{d4_family_scan, d4_pair_scan, FamilyPoint, FamilyScan, ScanOptions};

use serde::{Deserialize, Serialize};

use crate::correlations::CorrelationSpec;
use crate::designs::{DesignDescriptor, DesignKind};
use crate::error::{Error, Result};
use crate::matrix::UnitVector;
use optimize::PairObjective;

/// Agreement required between the single- and two-vector maxima.
pub const CROSS_CHECK_TOL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimizerOptions {
    pub restarts: usize,
    /// Sweep cap for each restart.
    pub max_sweeps: usize,
    /// Extra sweeps for the best restart of a maximization that has not settled.
    pub polish_sweeps: usize,
    /// Stop once a full sweep changes the objective by less than this.
    pub tol: f64,
    pub seed: u64,
}

impl OptimizerOptions {
    pub const DEFAULT_SEED: u64 = 20_240_314;

    pub fn for_dim(d: usize) -> Self {
        OptimizerOptions {
            restarts: if d <= 3 { 64 } else { 256 },
            max_sweeps: 2_000,
            polish_sweeps: 50_000,
            tol: 1e-12,
            seed: Self::DEFAULT_SEED,
        }
    }

    pub fn with_seed(self, seed: u64) -> Self {
        OptimizerOptions { seed, ..self }
    }

    pub fn with_restarts(self, restarts: usize) -> Self {
        OptimizerOptions { restarts, ..self }
    }
}

/// `|e⟩ ⊗ |f⟩`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProductState {
    pub e: UnitVector,
    pub f: UnitVector,
}

impl ProductState {
    pub fn new(e: UnitVector, f: UnitVector) -> Result<Self> {
        if e.dim() != f.dim() {
            return Err(Error::DimensionMismatch {
                expected: e.dim(),
                found: f.dim(),
            });
        }
        Ok(ProductState { e, f })
    }

    pub(crate) fn new_unchecked(e: UnitVector, f: UnitVector) -> Self {
        ProductState { e, f }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LowerBound {
    pub value: f64,
    pub argmin: ProductState,
    pub restarts: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UpperBound {
    pub value: f64,
    pub argmax: UnitVector,
    /// Independent two-vector maximum over product states.
    pub two_vector_value: f64,
    pub restarts: usize,
    pub converged: bool,
}

impl UpperBound {
    pub fn cross_check_gap(&self) -> f64 {
        (self.value - self.two_vector_value).abs()
    }
}

/// Minimum of `Σ_v |⟨u_v|e⟩|² |⟨w_v|f⟩|²` over product states `|e⟩|f⟩`.
pub fn separable_lower_bound(pairs: &[(UnitVector, UnitVector)], opts: &OptimizerOptions) -> Result<LowerBound> {
    let obj = PairObjective::new(pairs)?;
    let best = optimize::minimize(&obj, opts)?;
    Ok(LowerBound {
        value: best.value.max(0.0),
        argmin: best.point,
        restarts: opts.restarts,
        converged: best.converged,
    })
}

/// Maximum of the same objective, via the single-vector reduction.
///
/// The reduction needs every second vector to equal its first vector or its
/// conjugate; other pairings are rejected.
pub fn separable_upper_bound(pairs: &[(UnitVector, UnitVector)], opts: &OptimizerOptions) -> Result<UpperBound> {
    let obj = PairObjective::new(pairs)?;
    if obj.pairing().is_none() {
        return Err(Error::UnsupportedCombination(
            "upper bound needs second vectors equal to the first or to their conjugates".into(),
        ));
    }
    let single = optimize::maximize_diagonal(&obj, opts)?;
    let pair = optimize::maximize_pair(&obj, opts)?;
    let gap = (single.value - pair.value).abs();
    Ok(UpperBound {
        value: single.value,
        argmax: single.point,
        two_vector_value: pair.value,
        restarts: opts.restarts,
        converged: single.converged && gap <= CROSS_CHECK_TOL,
    })
}

/// Both separable bounds for one measurement design.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundRecord {
    pub design_kind: DesignKind,
    pub d: usize,
    pub m: usize,
    pub descriptor: DesignDescriptor,
    pub lower: f64,
    pub upper: f64,
    pub upper_cross_check: f64,
    pub argmin: ProductState,
    pub argmax: UnitVector,
    pub restarts: usize,
    pub converged: bool,
}

impl BoundRecord {
    pub fn interval(&self) -> SeparableInterval {
        SeparableInterval {
            descriptor: self.descriptor.clone(),
            lower: self.lower,
            upper: self.upper,
        }
    }

    /// Fails with `NonConvergence` unless every optimizer settled.
    pub fn require_converged(self) -> Result<Self> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::NonConvergence {
                restarts: self.restarts,
                best: self.upper,
            })
        }
    }
}

/// Computes both bounds for the design in `spec`.
pub fn bound_record(spec: &CorrelationSpec, opts: &OptimizerOptions) -> Result<BoundRecord> {
    let pairs = spec.projector_pairs();
    let lower = separable_lower_bound(&pairs, opts)?;
    let upper = separable_upper_bound(&pairs, opts)?;
    let descriptor = spec.descriptor();
    Ok(BoundRecord {
        design_kind: descriptor.kind,
        d: descriptor.d,
        m: descriptor.m,
        descriptor,
        lower: lower.value,
        upper: upper.value,
        upper_cross_check: upper.two_vector_value,
        argmin: lower.argmin,
        argmax: upper.argmax,
        restarts: opts.restarts,
        converged: lower.converged && upper.converged,
    })
}

/// Separable range `[lower, upper]` attached to the design it was computed for.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeparableInterval {
    pub descriptor: DesignDescriptor,
    pub lower: f64,
    pub upper: f64,
}

/// `1 + (m − 1)/d`, the same for every choice of `m` MUBs.
pub fn closed_form_mub_upper(m: usize, d: usize) -> Result<f64> {
    if m < 1 || m > d + 1 {
        return Err(Error::ParameterOutOfRange {
            name: "m",
            value: m as f64,
            min: 1.0,
            max: (d + 1) as f64,
        });
    }
    Ok(1.0 + (m as f64 - 1.0) / d as f64)
}

/// Exact `(lower, upper)` for a complete design: `(1, 2)` for `d + 1` MUBs,
/// `(d/(d+1), 2d/(d+1))` for a full SIC.
pub fn design_closed_bounds(d: usize, kind: DesignKind) -> Result<(f64, f64)> {
    if d < 2 {
        return Err(Error::UnsupportedDimension(d));
    }
    let d = d as f64;
    Ok(match kind {
        DesignKind::Mub => (1.0, 2.0),
        DesignKind::Sic => (d / (d + 1.0), 2.0 * d / (d + 1.0)),
    })
}
