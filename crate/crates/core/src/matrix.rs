//! Dense complex matrices and unit vectors.
//!
//! Everything here is small (at most 64×64), so matrices are stored as a
//! flat row-major `Vec` and eigen-decompositions go through `nalgebra`.
//! Bipartite indices follow the row-major convention `(i, j) ↦ i·d + j`.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::settings::{Tolerances, MAX_BIPARTITE_DIM};

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Row-major dense complex matrix.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, " ")?;
            for c in 0..self.cols {
                let z = self[(r, c)];
                write!(f, " {:+.4}{:+.4}i", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    /// Builds a matrix from row-major entries, rejecting non-finite values.
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Parse("matrix contains a non-finite entry".into()));
        }
        Ok(ComplexMatrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        ComplexMatrix { rows, cols, data }
    }

    /// Diagonal matrix with the given entries.
    pub fn diagonal(entries: &[Complex64]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |r, c| if r == c { entries[r] } else { ZERO })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[UnitVector]) -> Self {
        let rows = columns.first().map_or(0, UnitVector::dim);
        Self::from_fn(rows, columns.len(), |r, c| columns[c][r])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn column(&self, c: usize) -> Vec<Complex64> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)])
    }

    pub fn conj(&self) -> Self {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(Complex64::conj).collect(),
        }
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn scale(&self, s: Complex64) -> Self {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn matmul(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = ComplexMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a == ZERO {
                    continue;
                }
                for c in 0..other.cols {
                    out.data[r * other.cols + c] += a * other[(k, c)];
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows).map(|r| (0..self.cols).map(|c| self[(r, c)] * v[c]).sum()).collect())
    }

    /// `tr[self · other]` without forming the product.
    pub fn trace_product(&self, other: &ComplexMatrix) -> Result<Complex64> {
        if self.cols != other.rows || self.rows != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut acc = ZERO;
        for r in 0..self.rows {
            for c in 0..self.cols {
                acc += self[(r, c)] * other[(c, r)];
            }
        }
        Ok(acc)
    }

    /// Largest `|a_ij − b_ij|`.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest `|a_ij − conj(a_ji)|`; infinite for non-square input.
    pub fn hermiticity_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut dev = 0.0f64;
        for r in 0..self.rows {
            for c in r..self.cols {
                dev = dev.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        dev
    }

    pub(crate) fn to_nalgebra(&self) -> DMatrix<Complex64> {
        DMatrix::from_row_slice(self.rows, self.cols, &self.data)
    }

    pub(crate) fn from_nalgebra(m: &DMatrix<Complex64>) -> Self {
        Self::from_fn(m.nrows(), m.ncols(), |r, c| m[(r, c)])
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[r * self.cols + c]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs).expect("matrix product dimensions")
    }
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let rows = a.rows * b.rows;
    let cols = a.cols * b.cols;
    if rows > MAX_BIPARTITE_DIM || cols > MAX_BIPARTITE_DIM {
        return Err(Error::DimensionOverflow(rows.max(cols), MAX_BIPARTITE_DIM));
    }
    let mut out = ComplexMatrix::zeros(rows, cols);
    for ar in 0..a.rows {
        for ac in 0..a.cols {
            let x = a[(ar, ac)];
            if x == ZERO {
                continue;
            }
            for br in 0..b.rows {
                for bc in 0..b.cols {
                    out[(ar * b.rows + br, ac * b.cols + bc)] = x * b[(br, bc)];
                }
            }
        }
    }
    Ok(out)
}

/// A normalized complex vector.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Complex64>", into = "Vec<Complex64>")]
pub struct UnitVector(Vec<Complex64>);

impl fmt::Debug for UnitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.0.iter().map(|z| format!("{:+.6}{:+.6}i", z.re, z.im)))
            .finish()
    }
}

impl TryFrom<Vec<Complex64>> for UnitVector {
    type Error = Error;
    fn try_from(v: Vec<Complex64>) -> Result<Self> {
        UnitVector::new(v)
    }
}

impl From<UnitVector> for Vec<Complex64> {
    fn from(v: UnitVector) -> Self {
        v.0
    }
}

impl Index<usize> for UnitVector {
    type Output = Complex64;
    fn index(&self, i: usize) -> &Complex64 {
        &self.0[i]
    }
}

impl UnitVector {
    /// Accepts entries whose Euclidean norm is 1 within the unit-norm tolerance.
    pub fn new(entries: Vec<Complex64>) -> Result<Self> {
        let dev = (norm(&entries) - 1.0).abs();
        if entries.is_empty() || dev.is_nan() || dev > Tolerances::DEFAULT.unit_norm {
            return Err(Error::NotNormalized(dev));
        }
        Ok(UnitVector(entries))
    }

    /// Rescales arbitrary nonzero entries to unit norm.
    pub fn normalize(entries: Vec<Complex64>) -> Result<Self> {
        let n = norm(&entries);
        if n <= 0.0 || !n.is_finite() {
            return Err(Error::NotNormalized(f64::NAN));
        }
        Ok(UnitVector(entries.into_iter().map(|z| z / n).collect()))
    }

    /// Computational basis vector `|index⟩`.
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut v = vec![ZERO; dim];
        v[index] = ONE;
        UnitVector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.0
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &UnitVector) -> Complex64 {
        inner(&self.0, &other.0)
    }

    /// `|⟨self|other⟩|²`.
    pub fn overlap_sq(&self, other: &UnitVector) -> f64 {
        self.inner(other).norm_sqr()
    }

    pub fn conj(&self) -> UnitVector {
        UnitVector(self.0.iter().map(Complex64::conj).collect())
    }

    /// `|self⟩ ⊗ |other⟩`.
    pub fn tensor(&self, other: &UnitVector) -> UnitVector {
        let mut out = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.0 {
            for b in &other.0 {
                out.push(a * b);
            }
        }
        UnitVector(out)
    }

    /// `|self⟩⟨self|`.
    pub fn projector(&self) -> ComplexMatrix {
        let n = self.dim();
        ComplexMatrix::from_fn(n, n, |r, c| self.0[r] * self.0[c].conj())
    }

    /// `⟨self|m|self⟩`, real part.
    pub fn expectation(&self, m: &ComplexMatrix) -> f64 {
        let mut acc = ZERO;
        for r in 0..m.rows() {
            let mut row = ZERO;
            for c in 0..m.cols() {
                row += m[(r, c)] * self.0[c];
            }
            acc += self.0[r].conj() * row;
        }
        acc.re
    }
}

pub fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt()
}

/// `Σ conj(a_i) b_i`.
pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    /// Eigenvectors as columns, in the order of `values`.
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        self.vectors.column(k)
    }

    /// Eigenvector for the smallest eigenvalue.
    ///
    /// When the bottom of the spectrum is degenerate (within `degeneracy`), the
    /// candidate with the lexicographically largest real parts wins, so the
    /// reported vector does not depend on hidden solver ordering.
    pub fn min_vector(&self, degeneracy: f64) -> Vec<Complex64> {
        let lo = self.values[0];
        let candidates: Vec<usize> = (0..self.values.len()).filter(|&k| self.values[k] - lo <= degeneracy).collect();
        self.pick(&candidates)
    }

    /// Eigenvector for the largest eigenvalue, with the same tie-break.
    pub fn max_vector(&self, degeneracy: f64) -> Vec<Complex64> {
        let hi = *self.values.last().expect("nonempty spectrum");
        let candidates: Vec<usize> = (0..self.values.len()).filter(|&k| hi - self.values[k] <= degeneracy).collect();
        self.pick(&candidates)
    }

    fn pick(&self, candidates: &[usize]) -> Vec<Complex64> {
        let mut best = self.vector(candidates[0]);
        for &k in &candidates[1..] {
            let v = self.vector(k);
            if lexicographically_greater(&v, &best) {
                best = v;
            }
        }
        best
    }
}

pub(crate) fn lexicographically_greater(a: &[Complex64], b: &[Complex64]) -> bool {
    for (x, y) in a.iter().zip(b) {
        if x.re > y.re {
            return true;
        }
        if x.re < y.re {
            return false;
        }
    }
    false
}

/// Dense Hermitian eigensolver. Only the lower triangle's Hermitian part is used.
pub fn eigh(m: &ComplexMatrix) -> Result<HermitianEigen> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            found: m.cols(),
        });
    }
    let eig = SymmetricEigen::new(m.to_nalgebra());
    let mut order: Vec<usize> = (0..m.rows()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vecs = ComplexMatrix::from_nalgebra(&eig.eigenvectors);
    let vectors = ComplexMatrix::from_fn(m.rows(), m.rows(), |r, c| vecs[(r, order[c])]);
    Ok(HermitianEigen { values, vectors })
}

/// Eigenvalues only, ascending.
pub fn eigvalsh(m: &ComplexMatrix) -> Result<Vec<f64>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            found: m.cols(),
        });
    }
    let mut v: Vec<f64> = m.to_nalgebra().symmetric_eigenvalues().iter().copied().collect();
    v.sort_by(f64::total_cmp);
    Ok(v)
}
