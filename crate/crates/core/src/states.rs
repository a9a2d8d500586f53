//! Werner and isotropic families, their closed-form correlation sums, the
//! symmetric-projector witness, and the two-sided detection test.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bipartite::{max_entangled_state, symmetry_projectors, BipartiteDensityMatrix};
use crate::bounds::SeparableInterval;
use crate::correlations::{correlation_sum, CorrelationSpec};
use crate::designs::{DesignDescriptor, DesignKind};
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StateFamily {
    Werner,
    Isotropic,
}

impl fmt::Display for StateFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StateFamily::Werner => "werner",
            StateFamily::Isotropic => "isotropic",
        })
    }
}

impl std::str::FromStr for StateFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "werner" => Ok(StateFamily::Werner),
            "isotropic" => Ok(StateFamily::Isotropic),
            _ => Err(Error::Unknown {
                kind: "state family",
                name: s.into(),
            }),
        }
    }
}

impl StateFamily {
    /// Second-party convention under which this family's sums do not depend on the design.
    pub fn natural_conjugation(self) -> bool {
        matches!(self, StateFamily::Isotropic)
    }

    fn parameter_name(self) -> &'static str {
        match self {
            StateFamily::Werner => "p",
            StateFamily::Isotropic => "q",
        }
    }
}

/// One member of a symmetric family: `ρ_W(p)` or `ρ_iso(q)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymmetricStateSpec {
    pub family: StateFamily,
    pub d: usize,
    pub parameter: f64,
}

impl SymmetricStateSpec {
    pub fn new(family: StateFamily, d: usize, parameter: f64) -> Result<Self> {
        check_parameter(family.parameter_name(), parameter)?;
        if d < 2 {
            return Err(Error::UnsupportedDimension(d));
        }
        Ok(SymmetricStateSpec { family, d, parameter })
    }

    pub fn state(&self) -> Result<BipartiteDensityMatrix> {
        match self.family {
            StateFamily::Werner => werner_state(self.d, self.parameter),
            StateFamily::Isotropic => isotropic_state(self.d, self.parameter),
        }
    }
}

fn check_parameter(name: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::ParameterOutOfRange {
            name,
            value,
            min: 0.0,
            max: 1.0,
        })
    }
}

/// `p·Π_sym/tr Π_sym + (1 − p)·Π_asym/tr Π_asym`.
pub fn werner_state(d: usize, p: f64) -> Result<BipartiteDensityMatrix> {
    check_parameter("p", p)?;
    let (sym, asym) = symmetry_projectors(d)?;
    let df = d as f64;
    let m = &sym.scale_real(2.0 * p / (df * (df + 1.0))) + &asym.scale_real(2.0 * (1.0 - p) / (df * (df - 1.0)));
    Ok(BipartiteDensityMatrix::from_matrix_unchecked(m, d))
}

/// `q|Φ⁺⟩⟨Φ⁺| + (1 − q)𝟙/d²`.
pub fn isotropic_state(d: usize, q: f64) -> Result<BipartiteDensityMatrix> {
    check_parameter("q", q)?;
    let phi = max_entangled_state(d)?.projector();
    let n = d * d;
    let m = &phi.scale_real(q) + &ComplexMatrix::identity(n).scale_real((1.0 - q) / n as f64);
    Ok(BipartiteDensityMatrix::from_matrix_unchecked(m, d))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClosedFormValue {
    pub value: f64,
    /// Convention under which `value` holds for every design of the given size.
    pub conjugate_second: bool,
}

/// Design-independent correlation sum of a symmetric state over `m` bases or vectors.
///
/// Werner values hold with the plain convention, isotropic values with the
/// second party conjugated.
pub fn closed_form_correlation(spec: &SymmetricStateSpec, kind: DesignKind, m: usize) -> Result<ClosedFormValue> {
    let d = spec.d as f64;
    let x = spec.parameter;
    let max_m = match kind {
        DesignKind::Mub => spec.d + 1,
        DesignKind::Sic => spec.d * spec.d,
    };
    if m == 0 || m > max_m {
        return Err(Error::UnsupportedCombination(format!(
            "{} with {m} {kind} members in d = {}",
            spec.family, spec.d
        )));
    }
    let m = m as f64;
    let value = match (spec.family, kind) {
        (StateFamily::Werner, DesignKind::Mub) => 2.0 * x * m / (d + 1.0),
        (StateFamily::Werner, DesignKind::Sic) => 2.0 * x * m / (d * (d + 1.0)),
        (StateFamily::Isotropic, DesignKind::Mub) => m * (x * (d - 1.0) + 1.0) / d,
        (StateFamily::Isotropic, DesignKind::Sic) => m * (x * (d - 1.0) + 1.0) / (d * d),
    };
    Ok(ClosedFormValue {
        value,
        conjugate_second: spec.family.natural_conjugation(),
    })
}

/// Normalized symmetric projector obtained by mixing the swap-partial-transpose
/// witness with the identity, together with its separable minimum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpaWitness {
    pub operator: ComplexMatrix,
    /// Mixing weight `d/(d+1)` that makes the operator positive.
    pub mixing: f64,
    /// Minimum of `tr[W σ]` over separable `σ`: `1/(d(d+1))`.
    pub separable_floor: f64,
}

pub fn spa_witness(d: usize) -> Result<SpaWitness> {
    let (sym, _) = symmetry_projectors(d)?;
    let df = d as f64;
    let mixing = df / (df + 1.0);
    // the swap-transposed witness has separable minimum 1/d² before mixing
    let floor = mixing / (df * df);
    Ok(SpaWitness {
        operator: sym.scale_real(2.0 / (df * (df + 1.0))),
        mixing,
        separable_floor: floor,
    })
}

/// `tr[W ρ]` for a Hermitian `W`.
pub fn witness_expectation(w: &ComplexMatrix, rho: &BipartiteDensityMatrix) -> Result<f64> {
    let n = rho.matrix().rows();
    if w.rows() != n || w.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: w.rows(),
        });
    }
    let dev = w.hermiticity_deviation();
    if dev > 1e-10 {
        return Err(Error::NotHermitian(dev));
    }
    Ok(w.trace_product(rho.matrix())?.re)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    EntangledByLower,
    EntangledByUpper,
    Inconclusive,
}

impl Verdict {
    pub fn is_entangled(self) -> bool {
        !matches!(self, Verdict::Inconclusive)
    }

    /// Classifies `value` against `[lower, upper]`; values within `tol` of a bound are inconclusive.
    pub fn classify(value: f64, lower: f64, upper: f64, tol: f64) -> Verdict {
        if value < lower - tol {
            Verdict::EntangledByLower
        } else if value > upper + tol {
            Verdict::EntangledByUpper
        } else {
            Verdict::Inconclusive
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectionVerdict {
    pub value: f64,
    pub lower_used: f64,
    pub upper_used: f64,
    pub verdict: Verdict,
    pub design_descriptor: DesignDescriptor,
    pub conjugate_second: bool,
}

/// Evaluates the correlation sum of `rho` and tests it against both separable bounds.
pub fn detect(rho: &BipartiteDensityMatrix, spec: &CorrelationSpec, bounds: &SeparableInterval, tol: f64) -> Result<DetectionVerdict> {
    let descriptor = spec.descriptor();
    if descriptor != bounds.descriptor {
        return Err(Error::SpecMismatch {
            spec: descriptor.to_string(),
            bounds: bounds.descriptor.to_string(),
        });
    }
    let value = correlation_sum(rho, spec)?;
    Ok(DetectionVerdict {
        value,
        lower_used: bounds.lower,
        upper_used: bounds.upper,
        verdict: Verdict::classify(value, bounds.lower, bounds.upper, tol),
        design_descriptor: descriptor,
        conjugate_second: spec.conjugate_second,
    })
}
