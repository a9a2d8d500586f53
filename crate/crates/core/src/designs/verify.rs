use serde::{Deserialize, Serialize};

use super::{MubSet, SicSet};
use crate::bipartite::symmetry_projectors;
use crate::error::{Error, Result};
use crate::matrix::{kron, ComplexMatrix, UnitVector};

/// Outcome of checking a design against its defining overlap conditions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub pass: bool,
    pub max_deviation: f64,
    pub tolerance: f64,
    /// MUB sets only: largest `|⟨b_i|b_j⟩ − δ_ij|` within a basis.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub orthonormality_deviation: Option<f64>,
    /// MUB sets only: largest `| |⟨b_i^k|b_j^l⟩|² − 1/d |` across bases.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub unbiasedness_deviation: Option<f64>,
}

pub fn verify_mub(set: &MubSet, tol: f64) -> VerificationReport {
    let d = set.dim() as f64;
    let ortho = set.bases().iter().map(|b| b.orthonormality_deviation()).fold(0.0, f64::max);
    let mut cross = 0.0f64;
    for (k, a) in set.bases().iter().enumerate() {
        for b in &set.bases()[k + 1..] {
            for u in a.vectors() {
                for v in b.vectors() {
                    cross = cross.max((u.overlap_sq(v) - 1.0 / d).abs());
                }
            }
        }
    }
    let max_deviation = ortho.max(cross);
    VerificationReport {
        pass: max_deviation <= tol,
        max_deviation,
        tolerance: tol,
        orthonormality_deviation: Some(ortho),
        unbiasedness_deviation: Some(cross),
    }
}

pub fn verify_sic(set: &SicSet, tol: f64) -> VerificationReport {
    let target = 1.0 / (set.dim() as f64 + 1.0);
    let mut dev = 0.0f64;
    for (k, a) in set.vectors().iter().enumerate() {
        for b in &set.vectors()[k + 1..] {
            dev = dev.max((a.overlap_sq(b) - target).abs());
        }
    }
    VerificationReport {
        pass: dev <= tol,
        max_deviation: dev,
        tolerance: tol,
        orthonormality_deviation: None,
        unbiasedness_deviation: None,
    }
}

/// `‖(1/n) Σ |ψ⟩⟨ψ|^⊗2 − 2Π_sym/(d(d+1))‖_max`, the distance from the
/// two-fold frame operator to that of a 2-design.
pub fn verify_2design(vectors: &[UnitVector]) -> Result<f64> {
    let d = vectors.first().ok_or(Error::UnsupportedDimension(0))?.dim();
    if let Some(v) = vectors.iter().find(|v| v.dim() != d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: v.dim(),
        });
    }
    let n = d * d;
    let mut frame = ComplexMatrix::zeros(n, n);
    for v in vectors {
        let p = v.projector();
        frame = &frame + &kron(&p, &p)?;
    }
    let frame = frame.scale_real(1.0 / vectors.len() as f64);
    let (sym, _) = symmetry_projectors(d)?;
    let target = sym.scale_real(2.0 / (d * (d + 1)) as f64);
    Ok(frame.max_abs_diff(&target))
}
