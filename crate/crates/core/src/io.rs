//! JSON form of two-qudit density matrices.
//!
//! ```json
//! {"local_dim": 2, "matrix": [[[0.25, 0.0], [0.0, 0.0], ...], ...]}
//! ```
//! Each entry is `[re, im]`; rows are in the `i·d + j` product order.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bipartite::{validate_density, BipartiteDensityMatrix};
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::settings::Tolerances;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DensityFile {
    pub local_dim: usize,
    pub matrix: Vec<Vec<[f64; 2]>>,
}

impl DensityFile {
    pub fn from_state(rho: &BipartiteDensityMatrix) -> Self {
        let m = rho.matrix();
        DensityFile {
            local_dim: rho.local_dim(),
            matrix: (0..m.rows())
                .map(|r| (0..m.cols()).map(|c| [m[(r, c)].re, m[(r, c)].im]).collect())
                .collect(),
        }
    }

    pub fn to_state(&self, tol: &Tolerances) -> Result<BipartiteDensityMatrix> {
        let n = self.local_dim * self.local_dim;
        if self.matrix.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: self.matrix.len(),
            });
        }
        let mut data = Vec::with_capacity(n * n);
        for row in &self.matrix {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            data.extend(row.iter().map(|&[re, im]| Complex64::new(re, im)));
        }
        validate_density(ComplexMatrix::from_row_major(n, n, data)?, self.local_dim, tol)
    }
}

/// Parses and validates a density matrix; syntax errors report line and column.
pub fn parse_density(text: &str, tol: &Tolerances) -> Result<BipartiteDensityMatrix> {
    let file: DensityFile = serde_json::from_str(text).map_err(|e| Error::ParseAt {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    file.to_state(tol)
}

pub fn density_to_json(rho: &BipartiteDensityMatrix) -> String {
    serde_json::to_string_pretty(&DensityFile::from_state(rho)).expect("plain data")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::werner_state;

    #[test]
    fn round_trip() {
        let rho = werner_state(3, 0.2).unwrap();
        let back = parse_density(&density_to_json(&rho), &Tolerances::DEFAULT).unwrap();
        assert_eq!(back, rho);
    }

    #[test]
    fn malformed_json_reports_position() {
        let err = parse_density("{\n  \"local_dim\": 2,\n  \"matrix\": [[[1, 0],\n ]", &Tolerances::DEFAULT).unwrap_err();
        match err {
            Error::ParseAt { line, column, .. } => assert!(line >= 4 && column >= 1, "{line}:{column}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn invalid_state_rejected() {
        let text = r#"{"local_dim": 2, "matrix": [[[1,0],[0,0],[0,0],[0,0]],[[0,0],[1,0],[0,0],[0,0]],[[0,0],[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0],[0,0]]]}"#;
        assert!(matches!(parse_density(text, &Tolerances::DEFAULT), Err(Error::NotUnitTrace(_))));
        let short = r#"{"local_dim": 2, "matrix": [[[1,0]]]}"#;
        assert!(matches!(
            parse_density(short, &Tolerances::DEFAULT),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
