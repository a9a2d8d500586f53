use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;

use super::{MubSet, OrthonormalBasis, Provenance};
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn cis(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

/// Basis from a row-major matrix whose columns are the basis vectors.
fn basis(n: usize, scale: f64, rows: &[Complex64]) -> OrthonormalBasis {
    let m = ComplexMatrix::from_row_major(n, n, rows.iter().map(|z| z * scale).collect()).expect("square literal");
    OrthonormalBasis::from_columns(&m).expect("literal basis is orthonormal")
}

fn identity_basis(d: usize) -> OrthonormalBasis {
    OrthonormalBasis::from_columns(&ComplexMatrix::identity(d)).expect("identity")
}

/// Complete sets of `d + 1` MUBs for `d ∈ {2, 3, 4}`.
///
/// d = 4 is ordered as `𝒯(π/2, π/2, π/2)` followed by `𝓑₄`, `𝓑₅`.
pub fn standard_mubs(d: usize) -> Result<MubSet> {
    let bases = match d {
        2 => {
            let (o, i) = (c(1.0, 0.0), c(0.0, 1.0));
            vec![
                identity_basis(2),
                basis(2, FRAC_1_SQRT_2, &[o, o, o, -o]),
                // eigenbasis of σ_y
                basis(2, FRAC_1_SQRT_2, &[o, o, i, -i]),
            ]
        }
        3 => {
            let o = c(1.0, 0.0);
            let w = cis(2.0 * PI / 3.0);
            let w2 = w * w;
            let s = 1.0 / 3f64.sqrt();
            vec![
                identity_basis(3),
                basis(3, s, &[o, o, o, o, w, w2, o, w2, w]),
                basis(3, s, &[o, o, o, w, w2, o, w, o, w2]),
                basis(3, s, &[o, o, o, w2, o, w, w2, w, o]),
            ]
        }
        4 => {
            let (o, i) = (c(1.0, 0.0), c(0.0, 1.0));
            let mut bases = triple_d4(PI / 2.0, PI / 2.0, PI / 2.0);
            bases.push(basis(4, 0.5, &[o, o, o, o, i, -i, i, -i, -o, -o, o, o, i, -i, -i, i]));
            bases.push(basis(4, 0.5, &[o, o, o, o, i, -i, i, -i, i, -i, -i, i, -o, -o, o, o]));
            bases
        }
        _ => return Err(Error::UnsupportedDimension(d)),
    };
    MubSet::new(bases, Provenance::Standard)
}

fn b2_d4(x: f64) -> OrthonormalBasis {
    let o = c(1.0, 0.0);
    let p = c(0.0, 1.0) * cis(x);
    basis(4, 0.5, &[o, o, o, o, o, o, -o, -o, o, -o, p, -p, o, -o, -p, p])
}

fn b3_d4(y: f64, z: f64) -> OrthonormalBasis {
    let o = c(1.0, 0.0);
    let (ey, ez) = (cis(y), cis(z));
    basis(4, 0.5, &[o, o, o, o, o, o, -o, -o, -ey, ey, ez, -ez, ey, -ey, ez, -ez])
}

fn triple_d4(x: f64, y: f64, z: f64) -> Vec<OrthonormalBasis> {
    vec![identity_basis(4), b2_d4(x), b3_d4(y, z)]
}

fn check_angle(name: &'static str, v: f64) -> Result<()> {
    // tolerate rounding at the interval ends
    if (-1e-12..=PI + 1e-12).contains(&v) {
        Ok(())
    } else {
        Err(Error::ParameterOutOfRange {
            name,
            value: v,
            min: 0.0,
            max: PI,
        })
    }
}

/// The three-parameter family `𝒯(x, y, z) = {𝓑₁, 𝓑₂(x), 𝓑₃(y, z)}` in d = 4.
pub fn mub_triple_family_d4(x: f64, y: f64, z: f64) -> Result<MubSet> {
    check_angle("x", x)?;
    check_angle("y", y)?;
    check_angle("z", z)?;
    MubSet::new(triple_d4(x, y, z), Provenance::Family { x, y, z })
}

/// The one-parameter family of pairs `𝒫(x) = {𝓑₁, 𝓑₂(x)}` in d = 4.
pub fn mub_pair_family_d4(x: f64) -> Result<MubSet> {
    check_angle("x", x)?;
    MubSet::new(vec![identity_basis(4), b2_d4(x)], Provenance::Family { x, y: 0.0, z: 0.0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::verify_mub;

    #[test]
    fn standard_sets_have_d_plus_one_bases() {
        for d in 2..=4 {
            let s = standard_mubs(d).unwrap();
            assert_eq!(s.len(), d + 1);
            let r = verify_mub(&s, 1e-12);
            assert!(r.pass, "d={d} {r:?}");
        }
    }

    #[test]
    fn d2_cross_overlaps_are_one_half() {
        let s = standard_mubs(2).unwrap();
        for (k, a) in s.bases().iter().enumerate() {
            for b in &s.bases()[k + 1..] {
                for u in a.vectors() {
                    for v in b.vectors() {
                        assert!((u.overlap_sq(v) - 0.5).abs() < 1e-15);
                    }
                }
            }
        }
    }

    #[test]
    fn d3_matches_explicit_omega_matrices() {
        let s = standard_mubs(3).unwrap();
        let w = cis(2.0 * PI / 3.0);
        let r = 1.0 / 3f64.sqrt();
        // 𝓑₃ second row reads (ω, ω², 1)
        let b3 = s.bases()[2].as_matrix();
        for (col, expected) in [w, w * w, c(1.0, 0.0)].iter().enumerate() {
            assert!((b3[(1, col)] - expected * r).norm() < 1e-15);
        }
        // 𝓑₄ third row reads (ω², ω, 1)
        let b4 = s.bases()[3].as_matrix();
        for (col, expected) in [w * w, w, c(1.0, 0.0)].iter().enumerate() {
            assert!((b4[(2, col)] - expected * r).norm() < 1e-15);
        }
    }

    #[test]
    fn unsupported_dimension() {
        assert_eq!(standard_mubs(5).unwrap_err(), Error::UnsupportedDimension(5));
    }

    #[test]
    fn family_members_are_valid_for_corner_parameters() {
        for (x, y, z) in [(0.0, 0.0, 0.0), (PI / 2.0, 0.0, 0.0), (PI, PI, PI), (0.3, 2.1, 1.7)] {
            let t = mub_triple_family_d4(x, y, z).unwrap();
            assert!(verify_mub(&t, 1e-12).pass);
        }
    }

    #[test]
    fn extendible_triple_is_standard_prefix() {
        let t = mub_triple_family_d4(PI / 2.0, PI / 2.0, PI / 2.0).unwrap();
        let s = standard_mubs(4).unwrap();
        for (a, b) in t.bases().iter().zip(s.bases()) {
            for (u, v) in a.vectors().iter().zip(b.vectors()) {
                assert!((u.overlap_sq(v) - 1.0).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn angle_out_of_range_rejected() {
        assert!(matches!(
            mub_triple_family_d4(4.0, 0.0, 0.0),
            Err(Error::ParameterOutOfRange { name: "x", .. })
        ));
    }
}
