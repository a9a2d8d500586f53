//! Coincidence-probability sums `I^(M)`, `I^(S)` and the operators behind them.

use serde::{Deserialize, Serialize};

use crate::bipartite::BipartiteDensityMatrix;
use crate::designs::{Design, DesignDescriptor, MubSet, SicSet};
use crate::error::{Error, Result};
use crate::matrix::{kron, ComplexMatrix, UnitVector};

/// Which design is measured, and how the second party's projectors are formed.
///
/// With `conjugate_second` unset both parties project onto `|v⟩`; when set,
/// the second party projects onto `|v*⟩`, the convention under which
/// `U ⊗ U*`-invariant states (isotropic family) have design-independent sums.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationSpec {
    pub design: Design,
    #[serde(default)]
    pub conjugate_second: bool,
}

impl CorrelationSpec {
    pub fn new(design: impl Into<Design>) -> Self {
        CorrelationSpec {
            design: design.into(),
            conjugate_second: false,
        }
    }

    pub fn conjugated(design: impl Into<Design>) -> Self {
        CorrelationSpec {
            design: design.into(),
            conjugate_second: true,
        }
    }

    pub fn descriptor(&self) -> DesignDescriptor {
        self.design.descriptor()
    }

    /// `(first, second)` local vectors for every term of the sum.
    pub fn projector_pairs(&self) -> Vec<(UnitVector, UnitVector)> {
        self.design
            .vectors()
            .into_iter()
            .map(|v| {
                let w = if self.conjugate_second { v.conj() } else { v.clone() };
                (v, w)
            })
            .collect()
    }

    fn check_dim(&self, rho: &BipartiteDensityMatrix) -> Result<()> {
        if self.design.dim() != rho.local_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.design.dim(),
                found: rho.local_dim(),
            });
        }
        Ok(())
    }
}

/// `tr[(|u⟩⟨u| ⊗ |v⟩⟨v|) ρ]`.
pub fn coincidence_probability(rho: &BipartiteDensityMatrix, u: &UnitVector, v: &UnitVector) -> Result<f64> {
    let d = rho.local_dim();
    for w in [u, v] {
        if w.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: w.dim(),
            });
        }
    }
    Ok(u.tensor(v).expectation(rho.matrix()))
}

/// Sum of coincidence probabilities over every projector of the design.
pub fn correlation_sum(rho: &BipartiteDensityMatrix, spec: &CorrelationSpec) -> Result<f64> {
    spec.check_dim(rho)?;
    spec.projector_pairs().iter().map(|(u, v)| coincidence_probability(rho, u, v)).sum()
}

/// `I^(M)_{m,d}(ρ) = Σ_k Σ_i Pr(i, i | 𝓑_k, 𝓑_k)`.
pub fn correlation_sum_mub(rho: &BipartiteDensityMatrix, mubs: &MubSet, conjugate_second: bool) -> Result<f64> {
    correlation_sum(
        rho,
        &CorrelationSpec {
            design: Design::Mub(mubs.clone()),
            conjugate_second,
        },
    )
}

/// `I^(S)_{m̃,d}(ρ) = Σ_j Pr(j, j | S_m̃, S_m̃)`.
pub fn correlation_sum_sic(rho: &BipartiteDensityMatrix, sics: &SicSet, conjugate_second: bool) -> Result<f64> {
    correlation_sum(
        rho,
        &CorrelationSpec {
            design: Design::Sic(sics.clone()),
            conjugate_second,
        },
    )
}

/// `W = Σ |v⟩⟨v| ⊗ |w⟩⟨w|`, so that `tr[W ρ]` is the correlation sum.
pub fn design_witness_operator(spec: &CorrelationSpec) -> ComplexMatrix {
    let d = spec.design.dim();
    let mut w = ComplexMatrix::zeros(d * d, d * d);
    for (u, v) in spec.projector_pairs() {
        w = &w + &kron(&u.projector(), &v.projector()).expect("d ≤ 8");
    }
    w
}

/// Measurement-device-independent form of a design witness.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MdiWitness {
    /// `Σ (|u⟩⟨u|)ᵀ ⊗ (|v⟩⟨v|)ᵀ`.
    pub operator: ComplexMatrix,
    /// States each party prepares, one pair per term: `|u*⟩`, `|v*⟩`.
    pub preparations: Vec<(UnitVector, UnitVector)>,
    /// Basis in which the local transposes are taken.
    pub transpose_basis: String,
}

/// Transposes each local factor of the design witness in the computational basis.
///
/// The local projectors are rank one with unit trace, so the normalized
/// preparations `M/tr[M]` are just the conjugated design vectors.
pub fn mdi_conversion(spec: &CorrelationSpec) -> MdiWitness {
    let d = spec.design.dim();
    let mut op = ComplexMatrix::zeros(d * d, d * d);
    let mut preparations = Vec::new();
    for (u, v) in spec.projector_pairs() {
        let a = u.projector().transpose();
        let b = v.projector().transpose();
        op = &op + &kron(&a, &b).expect("d ≤ 8");
        preparations.push((u.conj(), v.conj()));
    }
    MdiWitness {
        operator: op,
        preparations,
        transpose_basis: "computational".into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipartite::{max_entangled_state, symmetry_projectors};
    use crate::designs::{sic_povm, standard_mubs};
    use crate::matrix::ONE;
    use num_complex::Complex64;

    #[test]
    fn projector_on_itself_has_probability_one() {
        let u = UnitVector::normalize(vec![ONE, Complex64::new(0.3, -0.2), Complex64::new(0.0, 1.0)]).unwrap();
        let v = UnitVector::normalize(vec![Complex64::new(0.5, 0.5), ONE, ONE]).unwrap();
        let rho = BipartiteDensityMatrix::product(&u, &v).unwrap();
        assert!((coincidence_probability(&rho, &u, &v).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn maximally_mixed_gives_inverse_square() {
        let rho = BipartiteDensityMatrix::maximally_mixed(3);
        let u = UnitVector::basis(3, 1);
        let v = UnitVector::normalize(vec![ONE, ONE, ONE]).unwrap();
        assert!((coincidence_probability(&rho, &u, &v).unwrap() - 1.0 / 9.0).abs() < 1e-15);
        let mubs = standard_mubs(3).unwrap();
        for m in 1..=4 {
            let got = correlation_sum_mub(&rho, &mubs.prefix(m).unwrap(), false).unwrap();
            assert!((got - m as f64 / 3.0).abs() < 1e-14);
        }
        let sic = sic_povm(3).unwrap();
        for m in 1..=9 {
            let got = correlation_sum_sic(&rho, &sic.prefix(m).unwrap(), false).unwrap();
            assert!((got - m as f64 / 9.0).abs() < 1e-14);
        }
    }

    #[test]
    fn dimension_mismatch_reported() {
        let rho = BipartiteDensityMatrix::maximally_mixed(2);
        let spec = CorrelationSpec::new(standard_mubs(3).unwrap());
        assert!(matches!(correlation_sum(&rho, &spec), Err(Error::DimensionMismatch { .. })));
        let u = UnitVector::basis(3, 0);
        assert!(coincidence_probability(&rho, &u, &u).is_err());
    }

    #[test]
    fn phi_plus_with_conjugated_full_mubs_sums_to_m() {
        let rho = BipartiteDensityMatrix::pure(&max_entangled_state(3).unwrap(), 3).unwrap();
        let spec = CorrelationSpec::conjugated(standard_mubs(3).unwrap());
        assert!((correlation_sum(&rho, &spec).unwrap() - 4.0).abs() < 1e-13);
    }

    #[test]
    fn single_basis_witness_is_diagonal() {
        let spec = CorrelationSpec::new(standard_mubs(2).unwrap().prefix(1).unwrap());
        let w = design_witness_operator(&spec);
        let expected = ComplexMatrix::diagonal(&[ONE, Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), ONE]);
        assert!(w.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn full_mub_witness_is_twice_symmetric_projector() {
        for d in 2..=4 {
            let w = design_witness_operator(&CorrelationSpec::new(standard_mubs(d).unwrap()));
            let (sym, _) = symmetry_projectors(d).unwrap();
            assert!(w.max_abs_diff(&sym.scale_real(2.0)) < 1e-13, "d={d}");
        }
    }

    #[test]
    fn mdi_double_transpose_is_original() {
        let spec = CorrelationSpec::new(sic_povm(2).unwrap());
        let mdi = mdi_conversion(&spec);
        let back = mdi.operator.transpose();
        assert!(back.max_abs_diff(&design_witness_operator(&spec)) < 1e-15);
        assert_eq!(mdi.preparations.len(), 4);
        assert!((mdi.operator.trace() - design_witness_operator(&spec).trace()).norm() < 1e-14);
    }

    #[test]
    fn mdi_of_computational_basis_is_unchanged() {
        let spec = CorrelationSpec::new(standard_mubs(3).unwrap().prefix(1).unwrap());
        let mdi = mdi_conversion(&spec);
        assert_eq!(mdi.operator, design_witness_operator(&spec));
        assert_eq!(mdi.transpose_basis, "computational");
    }
}
