use std::f64::consts::PI;

use num_complex::Complex64;

use super::{Provenance, SicSet};
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, UnitVector, ZERO};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn cis(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

/// `e^{−iabπ/d} X^a Z^b` with `Z|j⟩ = ω^j|j⟩`, `X|j⟩ = |j+1 mod d⟩`.
pub fn hw_displacement(d: usize, a: usize, b: usize) -> Result<ComplexMatrix> {
    if d < 2 {
        return Err(Error::UnsupportedDimension(d));
    }
    for (index, v) in [(a, a), (b, b)] {
        if v >= d {
            return Err(Error::IndexOutOfRange { index, len: d });
        }
    }
    let phase = cis(-((a * b) as f64) * PI / d as f64);
    let mut m = ComplexMatrix::zeros(d, d);
    for j in 0..d {
        // X^a Z^b |j⟩ = ω^{bj} |j + a⟩
        let omega = cis(2.0 * PI * ((b * j) % d) as f64 / d as f64);
        m[((j + a) % d, j)] = phase * omega;
    }
    Ok(m)
}

/// Fiducial vector whose Heisenberg–Weyl orbit is a SIC-POVM.
pub fn fiducial(d: usize) -> Result<UnitVector> {
    let v = match d {
        2 => {
            let s3 = 3f64.sqrt();
            vec![
                c((3.0 + s3).sqrt() / 6f64.sqrt(), 0.0),
                cis(PI / 4.0) * ((3.0 - s3).sqrt() / 6f64.sqrt()),
            ]
        }
        3 => {
            let r = std::f64::consts::FRAC_1_SQRT_2;
            vec![ZERO, c(r, 0.0), c(-r, 0.0)]
        }
        4 => {
            // Γ = (√5 − 1)/2
            let g = (5f64.sqrt() - 1.0) / 2.0;
            let alpha_p = c(1.0, 0.0) + cis(-PI / 4.0);
            let alpha_m = c(1.0, 0.0) - cis(-PI / 4.0);
            let shift = c(0.0, g.powf(-1.5));
            let beta_p = cis(PI / 4.0) + shift;
            let beta_m = cis(PI / 4.0) - shift;
            let n = 1.0 / (2.0 * (3.0 + g).sqrt());
            [alpha_p, beta_p, alpha_m, beta_m].iter().map(|z| z * n).collect()
        }
        _ => return Err(Error::UnsupportedDimension(d)),
    };
    UnitVector::normalize(v)
}

/// Displacement label `(a, b)`.
pub type OrbitLabel = (usize, usize);

/// Heisenberg–Weyl orbit of `fiducial(d)`, labels `(a, b)` in lexicographic order.
pub fn hw_orbit(d: usize) -> Result<(Vec<UnitVector>, Vec<OrbitLabel>)> {
    let f = fiducial(d)?;
    let mut vectors = Vec::with_capacity(d * d);
    let mut labels = Vec::with_capacity(d * d);
    for a in 0..d {
        for b in 0..d {
            let v = hw_displacement(d, a, b)?.apply(f.entries())?;
            vectors.push(UnitVector::normalize(v)?);
            labels.push((a, b));
        }
    }
    Ok((vectors, labels))
}

/// The SIC-POVM used for each supported dimension.
///
/// d = 2 is the explicit tetrahedron, d = 3 the explicit Hesse list in order
/// `s₁ … s₉`, d = 4 the orbit of the golden-ratio fiducial.
pub fn sic_povm(d: usize) -> Result<SicSet> {
    match d {
        2 => {
            let s3 = 1.0 / 3f64.sqrt();
            let r2 = 2f64.sqrt();
            let raw = vec![
                vec![c(1.0, 0.0), ZERO],
                vec![c(s3, 0.0), c(r2 * s3, 0.0)],
                vec![cis(-PI / 3.0) * s3, cis(PI / 3.0) * (r2 * s3)],
                vec![cis(PI / 3.0) * s3, cis(-PI / 3.0) * (r2 * s3)],
            ];
            let vectors = raw.into_iter().map(UnitVector::normalize).collect::<Result<Vec<_>>>()?;
            SicSet::new(vectors, None, Provenance::Explicit)
        }
        3 => {
            let r = std::f64::consts::FRAC_1_SQRT_2;
            let o = c(1.0, 0.0);
            let w = cis(2.0 * PI / 3.0);
            let w2 = w * w;
            let raw = [
                [ZERO, o, -o],
                [-o, ZERO, o],
                [o, -o, ZERO],
                [ZERO, w, -w2],
                [-w, ZERO, o],
                [w2, -o, ZERO],
                [ZERO, w2, -w],
                [-w2, ZERO, o],
                [w, -o, ZERO],
            ];
            let vectors = raw
                .iter()
                .map(|v| UnitVector::normalize(v.iter().map(|z| z * r).collect()))
                .collect::<Result<Vec<_>>>()?;
            // s_j is the orbit element (a, b) = ((j−1) mod 3, (j−1) div 3), up to phase
            let labels = (0..9).map(|k| (k % 3, k / 3)).collect();
            SicSet::new(vectors, Some(labels), Provenance::Explicit)
        }
        4 => {
            let (vectors, labels) = hw_orbit(4)?;
            SicSet::new(vectors, Some(labels), Provenance::Fiducial)
        }
        _ => Err(Error::UnsupportedDimension(d)),
    }
}
