//! Bipartite `d ⊗ d` operators: density matrices, partial transpose, the swap
//! operator and the symmetric/antisymmetric projectors.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{eigvalsh, ComplexMatrix, UnitVector, ONE, ZERO};
use crate::settings::{Tolerances, MAX_LOCAL_DIM};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Subsystem {
    A,
    B,
}

/// Validated `d² × d²` density matrix of a two-qudit system.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BipartiteDensityMatrix {
    local_dim: usize,
    matrix: ComplexMatrix,
}

impl BipartiteDensityMatrix {
    pub fn local_dim(&self) -> usize {
        self.local_dim
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// Wraps a matrix already known to be a valid state on `C^d ⊗ C^d`.
    pub(crate) fn from_matrix_unchecked(matrix: ComplexMatrix, local_dim: usize) -> Self {
        BipartiteDensityMatrix { local_dim, matrix }
    }

    /// `𝟙/d²`.
    pub fn maximally_mixed(d: usize) -> Self {
        let n = d * d;
        BipartiteDensityMatrix {
            local_dim: d,
            matrix: ComplexMatrix::identity(n).scale_real(1.0 / n as f64),
        }
    }

    /// `|e⟩⟨e| ⊗ |f⟩⟨f|`.
    pub fn product(e: &UnitVector, f: &UnitVector) -> Result<Self> {
        if e.dim() != f.dim() {
            return Err(Error::DimensionMismatch {
                expected: e.dim(),
                found: f.dim(),
            });
        }
        Ok(BipartiteDensityMatrix {
            local_dim: e.dim(),
            matrix: e.tensor(f).projector(),
        })
    }

    /// `|ψ⟩⟨ψ|` for a pure state on `C^d ⊗ C^d`.
    pub fn pure(psi: &UnitVector, d: usize) -> Result<Self> {
        if psi.dim() != d * d {
            return Err(Error::DimensionMismatch {
                expected: d * d,
                found: psi.dim(),
            });
        }
        Ok(BipartiteDensityMatrix {
            local_dim: d,
            matrix: psi.projector(),
        })
    }

    /// Convex combination `Σ wᵢ ρᵢ`; weights must be non-negative and sum to 1.
    pub fn mixture(parts: &[(f64, &BipartiteDensityMatrix)]) -> Result<Self> {
        let first = parts.first().ok_or_else(|| Error::Parse("empty mixture".into()))?;
        let d = first.1.local_dim;
        let mut acc = ComplexMatrix::zeros(d * d, d * d);
        let mut total = 0.0;
        for (w, rho) in parts {
            if rho.local_dim != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: rho.local_dim,
                });
            }
            if *w < 0.0 {
                return Err(Error::ParameterOutOfRange {
                    name: "weight",
                    value: *w,
                    min: 0.0,
                    max: 1.0,
                });
            }
            total += w;
            acc = &acc + &rho.matrix.scale_real(*w);
        }
        if (total - 1.0).abs() > Tolerances::DEFAULT.structural {
            return Err(Error::NotUnitTrace((total - 1.0).abs()));
        }
        Ok(BipartiteDensityMatrix { local_dim: d, matrix: acc })
    }

    /// Reduced state on A (trace over B).
    pub fn partial_trace_b(&self) -> ComplexMatrix {
        let d = self.local_dim;
        ComplexMatrix::from_fn(d, d, |i, k| (0..d).map(|j| self.matrix[(i * d + j, k * d + j)]).sum())
    }

    /// Transpose of both factors. Equals the plain matrix transpose.
    pub fn full_transpose(&self) -> BipartiteDensityMatrix {
        BipartiteDensityMatrix {
            local_dim: self.local_dim,
            matrix: self.matrix.transpose(),
        }
    }
}

/// Checks Hermiticity, unit trace and positivity of a candidate density matrix.
pub fn validate_density(m: ComplexMatrix, d: usize, tol: &Tolerances) -> Result<BipartiteDensityMatrix> {
    let n = d * d;
    if m.rows() != n || m.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: m.rows(),
        });
    }
    let herm = m.hermiticity_deviation();
    if herm > tol.structural {
        return Err(Error::NotHermitian(herm));
    }
    let tr = m.trace();
    let trace_dev = (tr - ONE).norm();
    if trace_dev > tol.structural {
        return Err(Error::NotUnitTrace(trace_dev));
    }
    let min_eig = eigvalsh(&m)?[0];
    if min_eig < -tol.positivity {
        return Err(Error::NotPositive(min_eig));
    }
    Ok(BipartiteDensityMatrix { local_dim: d, matrix: m })
}

/// Partial transpose of an arbitrary `d² × d²` operator on one factor.
pub fn partial_transpose_operator(m: &ComplexMatrix, d: usize, subsystem: Subsystem) -> Result<ComplexMatrix> {
    let n = d * d;
    if m.rows() != n || m.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: m.rows(),
        });
    }
    Ok(ComplexMatrix::from_fn(n, n, |r, c| {
        let (i, j) = (r / d, r % d);
        let (k, l) = (c / d, c % d);
        match subsystem {
            Subsystem::A => m[(k * d + j, i * d + l)],
            Subsystem::B => m[(i * d + l, k * d + j)],
        }
    }))
}

pub fn partial_transpose(rho: &BipartiteDensityMatrix, subsystem: Subsystem) -> ComplexMatrix {
    partial_transpose_operator(&rho.matrix, rho.local_dim, subsystem).expect("validated shape")
}

/// Smallest eigenvalue of the partial transpose on B; negative means NPT.
pub fn min_partial_transpose_eigenvalue(rho: &BipartiteDensityMatrix) -> f64 {
    let pt = partial_transpose(rho, Subsystem::B);
    eigvalsh(&pt).expect("square")[0]
}

fn check_local_dim(d: usize) -> Result<()> {
    if (2..=MAX_LOCAL_DIM).contains(&d) {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(d))
    }
}

/// Swap operator `Π |i⟩|j⟩ = |j⟩|i⟩`.
pub fn swap_operator(d: usize) -> Result<ComplexMatrix> {
    check_local_dim(d)?;
    let n = d * d;
    let mut m = ComplexMatrix::zeros(n, n);
    for i in 0..d {
        for j in 0..d {
            m[(j * d + i, i * d + j)] = ONE;
        }
    }
    Ok(m)
}

/// `(Π_sym, Π_asym) = ((𝟙⊗𝟙 ± Π)/2)`.
pub fn symmetry_projectors(d: usize) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let swap = swap_operator(d)?;
    let id = ComplexMatrix::identity(d * d);
    let sym = (&id + &swap).scale_real(0.5);
    let asym = (&id - &swap).scale_real(0.5);
    Ok((sym, asym))
}

/// `|Φ⁺⟩ = (1/√d) Σᵢ |ii⟩`.
pub fn max_entangled_state(d: usize) -> Result<UnitVector> {
    if d < 2 {
        return Err(Error::UnsupportedDimension(d));
    }
    let amp = Complex64::new(1.0 / (d as f64).sqrt(), 0.0);
    let mut v = vec![ZERO; d * d];
    for i in 0..d {
        v[i * d + i] = amp;
    }
    UnitVector::new(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{eigh, kron};

    #[test]
    fn maximally_mixed_is_accepted() {
        let m = ComplexMatrix::identity(9).scale_real(1.0 / 9.0);
        assert!(validate_density(m, 3, &Tolerances::default()).is_ok());
    }

    #[test]
    fn wrong_trace_reports_violation() {
        let m = ComplexMatrix::identity(4).scale_real(1.1 / 4.0);
        match validate_density(m, 2, &Tolerances::default()) {
            Err(Error::NotUnitTrace(v)) => assert!((v - 0.1).abs() < 1e-12),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn non_hermitian_rejected() {
        let mut m = ComplexMatrix::identity(4).scale_real(0.25);
        m[(0, 1)] = Complex64::new(0.0, 0.2);
        assert!(matches!(
            validate_density(m, 2, &Tolerances::default()),
            Err(Error::NotHermitian(_))
        ));
    }

    #[test]
    fn negative_spectrum_rejected() {
        let m = ComplexMatrix::diagonal(&[
            Complex64::new(0.6, 0.0),
            Complex64::new(0.6, 0.0),
            Complex64::new(-0.2, 0.0),
            Complex64::new(0.0, 0.0),
        ]);
        match validate_density(m, 2, &Tolerances::default()) {
            Err(Error::NotPositive(v)) => assert!((v + 0.2).abs() < 1e-12),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn swap_partial_transpose_is_scaled_max_entangled_projector() {
        for d in 2..=4 {
            let pt = partial_transpose_operator(&swap_operator(d).unwrap(), d, Subsystem::B).unwrap();
            let phi = max_entangled_state(d).unwrap().projector().scale_real(d as f64);
            assert!(pt.max_abs_diff(&phi) < 1e-13, "d={d}");
        }
    }

    #[test]
    fn partial_transpose_of_product_transposes_factor() {
        let a = UnitVector::normalize(vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 2.0)]).unwrap();
        let b = UnitVector::normalize(vec![Complex64::new(1.0, 1.0), Complex64::new(0.5, -1.0)]).unwrap();
        let rho = BipartiteDensityMatrix::product(&a, &b).unwrap();
        let expected = kron(&a.projector(), &b.projector().transpose()).unwrap();
        assert!(partial_transpose(&rho, Subsystem::B).max_abs_diff(&expected) < 1e-15);
        let expected_a = kron(&a.projector().transpose(), &b.projector()).unwrap();
        assert!(partial_transpose(&rho, Subsystem::A).max_abs_diff(&expected_a) < 1e-15);
    }

    #[test]
    fn projector_traces_and_resolution() {
        let (s, a) = symmetry_projectors(2).unwrap();
        assert!((s.trace().re - 3.0).abs() < 1e-15);
        assert!((a.trace().re - 1.0).abs() < 1e-15);
        let (s3, a3) = symmetry_projectors(3).unwrap();
        assert_eq!(&s3 + &a3, ComplexMatrix::identity(9));
        let (s4, a4) = symmetry_projectors(4).unwrap();
        assert!(s4.matmul(&a4).unwrap().max_abs() < 1e-14);
    }

    #[test]
    fn projectors_idempotent_with_expected_rank() {
        for d in 2..=5 {
            let (s, a) = symmetry_projectors(d).unwrap();
            for (p, rank) in [(&s, d * (d + 1) / 2), (&a, d * (d - 1) / 2)] {
                assert!(p.matmul(p).unwrap().max_abs_diff(p) < 1e-14);
                assert!(p.hermiticity_deviation() < 1e-15);
                let count = eigh(p).unwrap().values.iter().filter(|&&x| x > 0.5).count();
                assert_eq!(count, rank);
            }
        }
    }

    #[test]
    fn projectors_reject_large_dimension() {
        assert_eq!(symmetry_projectors(9).unwrap_err(), Error::UnsupportedDimension(9));
        assert_eq!(symmetry_projectors(1).unwrap_err(), Error::UnsupportedDimension(1));
    }

    #[test]
    fn max_entangled_marginal_is_maximally_mixed() {
        let phi = max_entangled_state(3).unwrap();
        let rho = BipartiteDensityMatrix::pure(&phi, 3).unwrap();
        let red = rho.partial_trace_b();
        assert!(red.max_abs_diff(&ComplexMatrix::identity(3).scale_real(1.0 / 3.0)) < 1e-15);
        let two = max_entangled_state(2).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((two[0].re - r).abs() < 1e-15 && (two[3].re - r).abs() < 1e-15);
        assert_eq!(two[1], ZERO);
    }
}
