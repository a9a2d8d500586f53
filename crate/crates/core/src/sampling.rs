//! Seeded random states for multistart optimization and property checks.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::bipartite::BipartiteDensityMatrix;
use crate::error::Result;
use crate::matrix::{ComplexMatrix, UnitVector};

/// Independent generator for work item `stream` under a master `seed`.
///
/// Results depend only on `(seed, stream)`, so parallel work items stay
/// reproducible regardless of scheduling.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn gaussian(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-random pure state on `C^d`.
pub fn random_unit_vector(d: usize, rng: &mut impl Rng) -> UnitVector {
    loop {
        let v: Vec<Complex64> = (0..d).map(|_| gaussian(rng)).collect();
        if let Ok(u) = UnitVector::normalize(v) {
            return u;
        }
    }
}

/// Random single-system density matrix `G G† / tr(G G†)` from a Ginibre matrix.
pub fn random_density(d: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let g = ComplexMatrix::from_fn(d, d, |_, _| gaussian(rng));
    let m = g.matmul(&g.adjoint()).expect("square");
    let t = m.trace().re;
    m.scale_real(1.0 / t)
}

/// Random full-rank two-qudit state.
pub fn random_bipartite_state(d: usize, rng: &mut impl Rng) -> BipartiteDensityMatrix {
    let m = random_density(d * d, rng);
    BipartiteDensityMatrix::from_matrix_unchecked(m, d)
}

/// Convex mixture of `terms` random product states with random weights.
pub fn random_separable_state(d: usize, terms: usize, rng: &mut impl Rng) -> Result<BipartiteDensityMatrix> {
    let weights: Vec<f64> = (0..terms).map(|_| rng.random::<f64>() + 1e-3).collect();
    let total: f64 = weights.iter().sum();
    let parts = (0..terms)
        .map(|_| BipartiteDensityMatrix::product(&random_unit_vector(d, rng), &random_unit_vector(d, rng)))
        .collect::<Result<Vec<_>>>()?;
    let mix: Vec<(f64, &BipartiteDensityMatrix)> = weights.iter().map(|w| w / total).zip(parts.iter()).collect();
    BipartiteDensityMatrix::mixture(&mix)
}
