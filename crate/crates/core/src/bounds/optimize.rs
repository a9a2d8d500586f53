//! Multistart alternating-eigenvector optimizers over product states.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rayon::prelude::*;

use super::{OptimizerOptions, ProductState};
use crate::error::{Error, Result};
use crate::matrix::{lexicographically_greater, UnitVector};
use crate::sampling::{random_unit_vector, stream_rng};
use crate::settings::Tolerances;

/// The bilinear map `(e, f) ↦ Σ_v |⟨u_v|e⟩|² |⟨w_v|f⟩|²` for a list of local pairs.
#[derive(Debug, Clone)]
pub struct PairObjective {
    dim: usize,
    first: Vec<UnitVector>,
    second: Vec<UnitVector>,
    first_proj: Vec<DMatrix<Complex64>>,
    second_proj: Vec<DMatrix<Complex64>>,
}

impl PairObjective {
    pub fn new(pairs: &[(UnitVector, UnitVector)]) -> Result<Self> {
        let d = match pairs.first() {
            Some((u, _)) => u.dim(),
            None => return Err(Error::InvalidDesign(0.0)),
        };
        for (u, w) in pairs {
            for v in [u, w] {
                if v.dim() != d {
                    return Err(Error::DimensionMismatch {
                        expected: d,
                        found: v.dim(),
                    });
                }
            }
        }
        let first: Vec<UnitVector> = pairs.iter().map(|p| p.0.clone()).collect();
        let second: Vec<UnitVector> = pairs.iter().map(|p| p.1.clone()).collect();
        Ok(PairObjective {
            dim: d,
            first_proj: first.iter().map(projector).collect(),
            second_proj: second.iter().map(projector).collect(),
            first,
            second,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.first.len()
    }

    pub fn is_empty(&self) -> bool {
        self.first.is_empty()
    }

    pub fn value(&self, e: &UnitVector, f: &UnitVector) -> f64 {
        self.first
            .iter()
            .zip(&self.second)
            .map(|(u, w)| u.overlap_sq(e) * w.overlap_sq(f))
            .sum()
    }

    /// Single-vector objective `Σ_v |⟨u_v|e⟩|⁴`.
    pub fn diagonal_value(&self, e: &UnitVector) -> f64 {
        self.first.iter().map(|u| u.overlap_sq(e).powi(2)).sum()
    }

    /// `Σ_v |⟨w_v|f⟩|² |u_v⟩⟨u_v|`: the objective as a quadratic form in `e`.
    fn first_operator(&self, f: &UnitVector) -> DMatrix<Complex64> {
        weighted(&self.first_proj, self.second.iter().map(|w| w.overlap_sq(f)), self.dim)
    }

    fn second_operator(&self, e: &UnitVector) -> DMatrix<Complex64> {
        weighted(&self.second_proj, self.first.iter().map(|u| u.overlap_sq(e)), self.dim)
    }

    fn diagonal_operator(&self, e: &UnitVector) -> DMatrix<Complex64> {
        weighted(&self.first_proj, self.first.iter().map(|u| u.overlap_sq(e)), self.dim)
    }

    /// Whether every second vector is the first one (`Some(false)`) or its
    /// conjugate (`Some(true)`). The single-vector reduction needs one of these.
    pub fn pairing(&self) -> Option<bool> {
        let close = |a: &UnitVector, b: &UnitVector| a.entries().iter().zip(b.entries()).all(|(x, y)| (x - y).norm() < 1e-12);
        if self.first.iter().zip(&self.second).all(|(u, w)| close(u, w)) {
            Some(false)
        } else if self.first.iter().zip(&self.second).all(|(u, w)| close(&u.conj(), w)) {
            Some(true)
        } else {
            None
        }
    }
}

fn projector(v: &UnitVector) -> DMatrix<Complex64> {
    let d = v.dim();
    let x = v.entries();
    DMatrix::from_fn(d, d, |r, c| x[r] * x[c].conj())
}

fn weighted(projs: &[DMatrix<Complex64>], weights: impl Iterator<Item = f64>, d: usize) -> DMatrix<Complex64> {
    let mut acc = DMatrix::zeros(d, d);
    for (p, w) in projs.iter().zip(weights) {
        acc.zip_apply(p, |a, x| *a += x * w);
    }
    acc
}

/// Eigenvector at one end of the spectrum, with the crate-wide degeneracy tie-break.
fn extreme_eigvec(m: DMatrix<Complex64>, largest: bool) -> UnitVector {
    let eig = SymmetricEigen::new(m);
    let vals = &eig.eigenvalues;
    let target = if largest { vals.max() } else { vals.min() };
    let degeneracy = Tolerances::DEFAULT.degeneracy;
    let mut best: Option<Vec<Complex64>> = None;
    for k in 0..vals.len() {
        if (vals[k] - target).abs() > degeneracy {
            continue;
        }
        let v: Vec<Complex64> = eig.eigenvectors.column(k).iter().copied().collect();
        if best.as_ref().is_none_or(|b| lexicographically_greater(&v, b)) {
            best = Some(v);
        }
    }
    UnitVector::normalize(best.expect("nonempty spectrum")).expect("eigenvector")
}

fn min_eigvec(m: DMatrix<Complex64>) -> UnitVector {
    extreme_eigvec(m, false)
}

fn max_eigvec(m: DMatrix<Complex64>) -> UnitVector {
    extreme_eigvec(m, true)
}

/// Outcome of one local search.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalSearch<T> {
    pub value: f64,
    pub point: T,
    pub sweeps: usize,
    pub converged: bool,
}

/// Alternating exact minimization from `(e, f)`; returns the objective after every sweep.
pub fn descend(
    obj: &PairObjective,
    mut e: UnitVector,
    mut f: UnitVector,
    max_sweeps: usize,
    tol: f64,
) -> (LocalSearch<ProductState>, Vec<f64>) {
    let mut value = obj.value(&e, &f);
    let mut trace = vec![value];
    let mut converged = false;
    let mut sweeps = 0;
    while sweeps < max_sweeps {
        sweeps += 1;
        e = min_eigvec(obj.first_operator(&f));
        f = min_eigvec(obj.second_operator(&e));
        let next = obj.value(&e, &f);
        trace.push(next);
        let step = value - next;
        value = value.min(next);
        if step.abs() < tol {
            converged = true;
            break;
        }
    }
    (
        LocalSearch {
            value,
            point: ProductState::new_unchecked(e, f),
            sweeps,
            converged,
        },
        trace,
    )
}

/// Alternating exact maximization from `(e, f)`.
pub fn ascend_pair(
    obj: &PairObjective,
    mut e: UnitVector,
    mut f: UnitVector,
    max_sweeps: usize,
    tol: f64,
) -> (LocalSearch<ProductState>, Vec<f64>) {
    let mut value = obj.value(&e, &f);
    let mut trace = vec![value];
    let mut converged = false;
    let mut sweeps = 0;
    while sweeps < max_sweeps {
        sweeps += 1;
        e = max_eigvec(obj.first_operator(&f));
        f = max_eigvec(obj.second_operator(&e));
        let next = obj.value(&e, &f);
        trace.push(next);
        let step = next - value;
        value = value.max(next);
        if step.abs() < tol {
            converged = true;
            break;
        }
    }
    (
        LocalSearch {
            value,
            point: ProductState::new_unchecked(e, f),
            sweeps,
            converged,
        },
        trace,
    )
}

/// Fixed-point iteration `e ← top eigenvector of Σ_v |⟨u_v|e⟩|² |u_v⟩⟨u_v|`.
///
/// Non-decreasing in `Σ_v |⟨u_v|e⟩|⁴` at every step.
pub fn ascend_diagonal(obj: &PairObjective, mut e: UnitVector, max_sweeps: usize, tol: f64) -> (LocalSearch<UnitVector>, Vec<f64>) {
    let mut value = obj.diagonal_value(&e);
    let mut trace = vec![value];
    let mut converged = false;
    let mut sweeps = 0;
    while sweeps < max_sweeps {
        sweeps += 1;
        let next_e = max_eigvec(obj.diagonal_operator(&e));
        let next = obj.diagonal_value(&next_e);
        trace.push(next);
        let step = next - value;
        if next >= value {
            e = next_e;
            value = next;
        }
        if step.abs() < tol {
            converged = true;
            break;
        }
    }
    (
        LocalSearch {
            value,
            point: e,
            sweeps,
            converged,
        },
        trace,
    )
}

/// Picks the best result; ties go to the lowest restart index.
fn best<T: Clone>(results: Vec<LocalSearch<T>>, minimize: bool) -> LocalSearch<T> {
    let mut it = results.into_iter();
    let mut best = it.next().expect("at least one restart");
    for r in it {
        let better = if minimize { r.value < best.value } else { r.value > best.value };
        if better {
            best = r;
        }
    }
    best
}

fn restarts_checked(opts: &OptimizerOptions) -> Result<usize> {
    if opts.restarts == 0 {
        return Err(Error::ParameterOutOfRange {
            name: "restarts",
            value: 0.0,
            min: 1.0,
            max: f64::INFINITY,
        });
    }
    Ok(opts.restarts)
}

/// Multistart minimum of the objective over product states.
pub fn minimize(obj: &PairObjective, opts: &OptimizerOptions) -> Result<LocalSearch<ProductState>> {
    let n = restarts_checked(opts)?;
    let d = obj.dim();
    let results: Vec<_> = (0..n as u64)
        .into_par_iter()
        .map(|k| {
            let mut rng = stream_rng(opts.seed, k);
            let e = random_unit_vector(d, &mut rng);
            let f = random_unit_vector(d, &mut rng);
            descend(obj, e, f, opts.max_sweeps, opts.tol).0
        })
        .collect();
    Ok(best(results, true))
}

/// Multistart maximum of `Σ_v |⟨u_v|e⟩|⁴`, polished from the best restart.
pub fn maximize_diagonal(obj: &PairObjective, opts: &OptimizerOptions) -> Result<LocalSearch<UnitVector>> {
    let n = restarts_checked(opts)?;
    let d = obj.dim();
    let results: Vec<_> = (0..n as u64)
        .into_par_iter()
        .map(|k| {
            let e = random_unit_vector(d, &mut stream_rng(opts.seed, k));
            ascend_diagonal(obj, e, opts.max_sweeps, opts.tol).0
        })
        .collect();
    let top = best(results, false);
    if top.converged || opts.polish_sweeps == 0 {
        return Ok(top);
    }
    let (polished, _) = ascend_diagonal(obj, top.point.clone(), opts.polish_sweeps, opts.tol);
    Ok(LocalSearch {
        sweeps: top.sweeps + polished.sweeps,
        ..polished
    })
}

/// Multistart two-vector maximum over product states, independent of the single-vector path.
pub fn maximize_pair(obj: &PairObjective, opts: &OptimizerOptions) -> Result<LocalSearch<ProductState>> {
    let n = restarts_checked(opts)?;
    let d = obj.dim();
    // separate stream range so the two maximizers start from different points
    let offset = 1u64 << 40;
    let results: Vec<_> = (0..n as u64)
        .into_par_iter()
        .map(|k| {
            let mut rng = stream_rng(opts.seed, offset + k);
            let e = random_unit_vector(d, &mut rng);
            let f = random_unit_vector(d, &mut rng);
            ascend_pair(obj, e, f, opts.max_sweeps, opts.tol).0
        })
        .collect();
    let top = best(results, false);
    if top.converged || opts.polish_sweeps == 0 {
        return Ok(top);
    }
    let p = top.point.clone();
    let (polished, _) = ascend_pair(obj, p.e, p.f, opts.polish_sweeps, opts.tol);
    Ok(LocalSearch {
        sweeps: top.sweeps + polished.sweeps,
        ..polished
    })
}
