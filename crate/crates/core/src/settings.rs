//! Numeric tolerances shared across the crate.

use serde::{Deserialize, Serialize};

/// Largest bipartite dimension (d²) any operator may reach.
pub const MAX_BIPARTITE_DIM: usize = 64;

/// Largest local dimension accepted by constructors of fixed operators.
pub const MAX_LOCAL_DIM: usize = 8;

/// One record holding every tolerance the library uses.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Hermiticity, trace and design-overlap checks.
    pub structural: f64,
    /// Minimum eigenvalue allowed for a density matrix.
    pub positivity: f64,
    /// Norm of a unit vector, orthonormality of a basis.
    pub unit_norm: f64,
    /// Margin applied when comparing a value to a separable bound.
    pub verdict: f64,
    /// Eigenvalues closer than this are treated as degenerate.
    pub degeneracy: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        structural: 1e-10,
        positivity: 1e-9,
        unit_norm: 1e-12,
        verdict: 1e-9,
        degeneracy: 1e-12,
    };
}
