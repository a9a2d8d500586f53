//! Mutually unbiased bases, SIC sets, and checks of the 2-design condition.

mod mub;
mod sic;
mod verify;

pub use mub::{mub_pair_family_d4, mub_triple_family_d4, standard_mubs};
pub use sic::{fiducial, hw_displacement, sic_povm};
pub use verify::{verify_2design, verify_mub, verify_sic, VerificationReport};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, UnitVector};
use crate::settings::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum DesignKind {
    Mub,
    Sic,
}

impl fmt::Display for DesignKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DesignKind::Mub => "MUB",
            DesignKind::Sic => "SIC",
        })
    }
}

impl std::str::FromStr for DesignKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "mub" => Ok(DesignKind::Mub),
            "sic" => Ok(DesignKind::Sic),
            _ => Err(Error::Unknown {
                kind: "design",
                name: s.into(),
            }),
        }
    }
}

/// Where a design's vectors came from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Provenance {
    /// Complete MUB set for d ≤ 4.
    Standard,
    /// `𝒯(x, y, z)` triple (or `𝒫(x)` pair) in d = 4.
    Family {
        x: f64,
        y: f64,
        z: f64,
    },
    /// Heisenberg–Weyl orbit of a fiducial vector.
    Fiducial,
    /// Vectors listed explicitly (d = 2 tetrahedron, d = 3 Hesse list).
    Explicit,
    Custom,
}

/// Identifies a measurement: which design, and which members of it.
///
/// `members` are 1-based positions in the parent set (bases of a MUB set,
/// vectors of a SIC set), so `[1, 2, 3, 4, 5, 7]` reads like the subset
/// labels commonly used for the Hesse SIC.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DesignDescriptor {
    pub kind: DesignKind,
    pub d: usize,
    pub m: usize,
    pub provenance: Provenance,
    pub members: Vec<usize>,
}

impl fmt::Display for DesignDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let members: Vec<String> = self.members.iter().map(usize::to_string).collect();
        write!(f, "{} d={} m={} members=({})", self.kind, self.d, self.m, members.join(","))?;
        if let Provenance::Family { x, y, z } = self.provenance {
            write!(f, " family({x:.6},{y:.6},{z:.6})")?;
        }
        Ok(())
    }
}

/// `d` orthonormal vectors in `C^d`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrthonormalBasis {
    vectors: Vec<UnitVector>,
}

impl OrthonormalBasis {
    pub fn new(vectors: Vec<UnitVector>) -> Result<Self> {
        let basis = OrthonormalBasis { vectors };
        let d = basis.dim();
        if basis.vectors.len() != d || basis.vectors.iter().any(|v| v.dim() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: basis.vectors.len(),
            });
        }
        let dev = basis.orthonormality_deviation();
        if dev > Tolerances::DEFAULT.unit_norm {
            return Err(Error::NotOrthonormal(dev));
        }
        Ok(basis)
    }

    /// Basis whose elements are the columns of a square matrix.
    pub fn from_columns(m: &ComplexMatrix) -> Result<Self> {
        let vectors = (0..m.cols()).map(|c| UnitVector::new(m.column(c))).collect::<Result<Vec<_>>>()?;
        Self::new(vectors)
    }

    #[cfg(test)]
    pub(crate) fn unchecked(vectors: Vec<UnitVector>) -> Self {
        OrthonormalBasis { vectors }
    }

    pub fn dim(&self) -> usize {
        self.vectors.first().map_or(0, UnitVector::dim)
    }

    pub fn vectors(&self) -> &[UnitVector] {
        &self.vectors
    }

    /// Largest `|⟨b_i|b_j⟩ − δ_ij|`.
    pub fn orthonormality_deviation(&self) -> f64 {
        let mut dev = 0.0f64;
        for (i, a) in self.vectors.iter().enumerate() {
            for (j, b) in self.vectors.iter().enumerate().skip(i) {
                let target = if i == j { 1.0 } else { 0.0 };
                dev = dev.max((a.inner(b) - target).norm());
            }
        }
        dev
    }

    pub fn as_matrix(&self) -> ComplexMatrix {
        ComplexMatrix::from_columns(&self.vectors)
    }
}

/// An ordered list of pairwise mutually unbiased bases.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MubSet {
    dim: usize,
    bases: Vec<OrthonormalBasis>,
    provenance: Provenance,
    members: Vec<usize>,
}

impl MubSet {
    /// Validates unbiasedness within the structural tolerance.
    ///
    /// A single basis is accepted: it is the trivial (vacuously unbiased)
    /// measurement and appears as the `m = 1` case of the correlation sums.
    pub fn new(bases: Vec<OrthonormalBasis>, provenance: Provenance) -> Result<Self> {
        let dim = bases.first().map_or(0, OrthonormalBasis::dim);
        if bases.is_empty() || bases.len() > dim + 1 {
            return Err(Error::ParameterOutOfRange {
                name: "m",
                value: bases.len() as f64,
                min: 1.0,
                max: (dim + 1) as f64,
            });
        }
        let members = (1..=bases.len()).collect();
        let set = MubSet {
            dim,
            bases,
            provenance,
            members,
        };
        let report = verify_mub(&set, Tolerances::DEFAULT.structural);
        if !report.pass {
            return Err(Error::InvalidDesign(report.max_deviation));
        }
        Ok(set)
    }

    /// Skips validation; used to feed deliberately broken sets to the verifier.
    pub fn unchecked(bases: Vec<OrthonormalBasis>, provenance: Provenance) -> Self {
        let dim = bases.first().map_or(0, OrthonormalBasis::dim);
        let members = (1..=bases.len()).collect();
        MubSet {
            dim,
            bases,
            provenance,
            members,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    pub fn bases(&self) -> &[OrthonormalBasis] {
        &self.bases
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    /// Keeps the bases at the given 1-based positions, in the order given.
    pub fn subset(&self, members: &[usize]) -> Result<MubSet> {
        let bases = pick(&self.bases, members)?;
        Ok(MubSet {
            dim: self.dim,
            bases,
            provenance: self.provenance,
            members: members.iter().map(|&k| self.members[k - 1]).collect(),
        })
    }

    /// The first `m` bases.
    pub fn prefix(&self, m: usize) -> Result<MubSet> {
        self.subset(&(1..=m).collect::<Vec<_>>())
    }

    /// All `m·d` basis vectors, basis by basis.
    pub fn vectors(&self) -> Vec<UnitVector> {
        self.bases.iter().flat_map(|b| b.vectors().iter().cloned()).collect()
    }

    pub fn descriptor(&self) -> DesignDescriptor {
        DesignDescriptor {
            kind: DesignKind::Mub,
            d: self.dim,
            m: self.len(),
            provenance: self.provenance,
            members: self.members.clone(),
        }
    }
}

/// Equiangular vectors with `|⟨s_k|s_l⟩|² = 1/(d+1)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SicSet {
    dim: usize,
    vectors: Vec<UnitVector>,
    labels: Option<Vec<(usize, usize)>>,
    provenance: Provenance,
    members: Vec<usize>,
}

impl SicSet {
    pub fn new(vectors: Vec<UnitVector>, labels: Option<Vec<(usize, usize)>>, provenance: Provenance) -> Result<Self> {
        let set = Self::unchecked(vectors, labels, provenance);
        if set.vectors.is_empty() || set.vectors.len() > set.dim * set.dim {
            return Err(Error::ParameterOutOfRange {
                name: "m",
                value: set.vectors.len() as f64,
                min: 1.0,
                max: (set.dim * set.dim) as f64,
            });
        }
        if let Some(l) = &set.labels {
            if l.len() != set.vectors.len() {
                return Err(Error::DimensionMismatch {
                    expected: set.vectors.len(),
                    found: l.len(),
                });
            }
        }
        let report = verify_sic(&set, Tolerances::DEFAULT.structural);
        if !report.pass {
            return Err(Error::InvalidDesign(report.max_deviation));
        }
        Ok(set)
    }

    pub fn unchecked(vectors: Vec<UnitVector>, labels: Option<Vec<(usize, usize)>>, provenance: Provenance) -> Self {
        let dim = vectors.first().map_or(0, UnitVector::dim);
        let members = (1..=vectors.len()).collect();
        SicSet {
            dim,
            vectors,
            labels,
            provenance,
            members,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[UnitVector] {
        &self.vectors
    }

    /// Heisenberg–Weyl labels `(a, b)` when the set is an orbit.
    pub fn labels(&self) -> Option<&[(usize, usize)]> {
        self.labels.as_deref()
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    /// Keeps the vectors at the given 1-based positions.
    pub fn subset(&self, members: &[usize]) -> Result<SicSet> {
        let vectors = pick(&self.vectors, members)?;
        let labels = self.labels.as_ref().map(|l| members.iter().map(|&k| l[k - 1]).collect());
        Ok(SicSet {
            dim: self.dim,
            vectors,
            labels,
            provenance: self.provenance,
            members: members.iter().map(|&k| self.members[k - 1]).collect(),
        })
    }

    pub fn prefix(&self, m: usize) -> Result<SicSet> {
        self.subset(&(1..=m).collect::<Vec<_>>())
    }

    /// 1-based position of the vector labelled `(a, b)`.
    pub fn position_of_label(&self, label: (usize, usize)) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|&l| l == label).map(|k| k + 1)
    }

    pub fn descriptor(&self) -> DesignDescriptor {
        DesignDescriptor {
            kind: DesignKind::Sic,
            d: self.dim,
            m: self.len(),
            provenance: self.provenance,
            members: self.members.clone(),
        }
    }
}

fn pick<T: Clone>(items: &[T], members: &[usize]) -> Result<Vec<T>> {
    members
        .iter()
        .map(|&k| {
            if k == 0 || k > items.len() {
                Err(Error::IndexOutOfRange {
                    index: k,
                    len: items.len(),
                })
            } else {
                Ok(items[k - 1].clone())
            }
        })
        .collect()
}

/// Either kind of measurement design.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "UPPERCASE")]
pub enum Design {
    Mub(MubSet),
    Sic(SicSet),
}

impl Design {
    pub fn kind(&self) -> DesignKind {
        match self {
            Design::Mub(_) => DesignKind::Mub,
            Design::Sic(_) => DesignKind::Sic,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Design::Mub(s) => s.dim(),
            Design::Sic(s) => s.dim(),
        }
    }

    /// Number of bases (MUB) or vectors (SIC).
    pub fn size(&self) -> usize {
        match self {
            Design::Mub(s) => s.len(),
            Design::Sic(s) => s.len(),
        }
    }

    /// Every rank-one projector of the design, as vectors.
    pub fn vectors(&self) -> Vec<UnitVector> {
        match self {
            Design::Mub(s) => s.vectors(),
            Design::Sic(s) => s.vectors().to_vec(),
        }
    }

    pub fn descriptor(&self) -> DesignDescriptor {
        match self {
            Design::Mub(s) => s.descriptor(),
            Design::Sic(s) => s.descriptor(),
        }
    }

    /// The standard full design of the given kind.
    pub fn standard(kind: DesignKind, d: usize) -> Result<Design> {
        Ok(match kind {
            DesignKind::Mub => Design::Mub(standard_mubs(d)?),
            DesignKind::Sic => Design::Sic(sic_povm(d)?),
        })
    }

    /// Members of the standard design at the given 1-based positions.
    pub fn standard_subset(kind: DesignKind, d: usize, members: &[usize]) -> Result<Design> {
        Ok(match Design::standard(kind, d)? {
            Design::Mub(s) => Design::Mub(s.subset(members)?),
            Design::Sic(s) => Design::Sic(s.subset(members)?),
        })
    }
}

impl From<MubSet> for Design {
    fn from(s: MubSet) -> Self {
        Design::Mub(s)
    }
}

impl From<SicSet> for Design {
    fn from(s: SicSet) -> Self {
        Design::Sic(s)
    }
}
