use num_complex::Complex64;
use proptest::prelude::*;
use rand::Rng;

use twodesign::bipartite::{
    max_entangled_state, partial_transpose_operator, swap_operator, symmetry_projectors, BipartiteDensityMatrix, Subsystem,
};
use twodesign::bounds::optimize::{ascend_diagonal, ascend_pair, descend, PairObjective};
use twodesign::bounds::{bound_record, separable_lower_bound, separable_upper_bound, OptimizerOptions, CROSS_CHECK_TOL};
use twodesign::correlations::{coincidence_probability, correlation_sum, design_witness_operator, mdi_conversion, CorrelationSpec};
use twodesign::designs::{sic_povm, standard_mubs, verify_2design, verify_mub, verify_sic, Design, DesignKind};
use twodesign::matrix::{eigvalsh, kron, ComplexMatrix, UnitVector};
use twodesign::sampling::{random_bipartite_state, random_density, random_unit_vector, stream_rng};
use twodesign::states::{closed_form_correlation, spa_witness, StateFamily, SymmetricStateSpec};

fn random_matrix(rows: usize, cols: usize, rng: &mut impl Rng) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    })
}

fn quick(d: usize) -> OptimizerOptions {
    OptimizerOptions::for_dim(d).with_restarts(16)
}

fn pairs(v: Vec<UnitVector>) -> Vec<(UnitVector, UnitVector)> {
    v.into_iter().map(|u| (u.clone(), u)).collect()
}

fn small_designs() -> Vec<Design> {
    let mut out = Vec::new();
    for d in 2..=3 {
        let mubs = standard_mubs(d).unwrap();
        for m in 1..=d + 1 {
            out.push(Design::Mub(mubs.prefix(m).unwrap()));
        }
        let sic = sic_povm(d).unwrap();
        for m in [2, d + 1, d * d] {
            out.push(Design::Sic(sic.prefix(m).unwrap()));
        }
    }
    out
}

#[test]
fn every_constructed_design_passes_its_verifier() {
    for d in 2..=4 {
        assert!(verify_mub(&standard_mubs(d).unwrap(), 1e-10).pass);
        assert!(verify_sic(&sic_povm(d).unwrap(), 1e-10).pass);
    }
}

#[test]
fn dropping_any_vector_breaks_the_design_condition() {
    for d in 2..=4 {
        for full in [standard_mubs(d).unwrap().vectors(), sic_povm(d).unwrap().vectors().to_vec()] {
            assert!(verify_2design(&full).unwrap() < 1e-12);
            for k in 0..full.len() {
                let mut v = full.clone();
                v.remove(k);
                assert!(verify_2design(&v).unwrap() > 1e-3, "d={d} k={k}");
            }
        }
    }
}

#[test]
fn swap_partial_transpose_is_scaled_phi_plus() {
    for d in 2..=4 {
        let gamma = partial_transpose_operator(&swap_operator(d).unwrap(), d, Subsystem::B).unwrap();
        let phi = max_entangled_state(d).unwrap().projector().scale_real(d as f64);
        assert!(gamma.max_abs_diff(&phi) < 1e-13);
    }
}

#[test]
fn symmetry_projectors_are_orthogonal_projectors_of_the_right_rank() {
    for d in 2..=4 {
        let (sym, asym) = symmetry_projectors(d).unwrap();
        for (p, rank) in [(&sym, d * (d + 1) / 2), (&asym, d * (d - 1) / 2)] {
            assert!(p.matmul(p).unwrap().max_abs_diff(p) < 1e-13);
            assert!(p.hermiticity_deviation() < 1e-15);
            let evs = eigvalsh(p).unwrap();
            assert_eq!(evs.iter().filter(|&&x| x > 0.5).count(), rank);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn kron_is_bilinear_and_associative(seed in any::<u64>(), alpha in -2.0f64..2.0) {
        let mut rng = stream_rng(seed, 0);
        let a = random_matrix(2, 2, &mut rng);
        let a2 = random_matrix(2, 2, &mut rng);
        let b = random_matrix(3, 3, &mut rng);
        let c = random_matrix(2, 2, &mut rng);
        let lhs = kron(&(&a + &a2.scale_real(alpha)), &b).unwrap();
        let rhs = &kron(&a, &b).unwrap() + &kron(&a2, &b).unwrap().scale_real(alpha);
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
        let left = kron(&kron(&a, &b).unwrap(), &c).unwrap();
        let right = kron(&a, &kron(&b, &c).unwrap()).unwrap();
        prop_assert!(left.max_abs_diff(&right) < 1e-13);
        // entrywise oracle
        for r in 0..6 {
            for s in 0..6 {
                let want = a[(r / 3, s / 3)] * b[(r % 3, s % 3)];
                prop_assert!((kron(&a, &b).unwrap()[(r, s)] - want).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn partial_transpose_is_trace_preserving_involution(seed in any::<u64>(), d in 2usize..=4) {
        let m = random_matrix(d * d, d * d, &mut stream_rng(seed, 1));
        for sub in [Subsystem::A, Subsystem::B] {
            let once = partial_transpose_operator(&m, d, sub).unwrap();
            prop_assert!((once.trace() - m.trace()).norm() < 1e-13);
            prop_assert!(partial_transpose_operator(&once, d, sub).unwrap().max_abs_diff(&m) < 1e-15);
        }
        let both = partial_transpose_operator(&partial_transpose_operator(&m, d, Subsystem::A).unwrap(), d, Subsystem::B).unwrap();
        prop_assert!(both.max_abs_diff(&m.transpose()) < 1e-15);
    }

    #[test]
    fn phi_plus_overlap_with_conjugate_product(seed in any::<u64>()) {
        let d = 3;
        let rho = BipartiteDensityMatrix::pure(&max_entangled_state(d).unwrap(), d).unwrap();
        let u = random_unit_vector(d, &mut stream_rng(seed, 2));
        let p = coincidence_probability(&rho, &u, &u.conj()).unwrap();
        prop_assert!((p - 1.0 / d as f64).abs() < 1e-12);
    }

    #[test]
    fn purity_identities(seed in any::<u64>(), d in 2usize..=4) {
        let rho = random_density(d, &mut stream_rng(seed, 3));
        let purity = rho.trace_product(&rho).unwrap().re;
        let mub: f64 = standard_mubs(d).unwrap().vectors().iter().map(|v| v.expectation(&rho).powi(2)).sum();
        prop_assert!((mub - (1.0 + purity)).abs() < 1e-10);
        let sic: f64 = sic_povm(d).unwrap().vectors().iter().map(|v| v.expectation(&rho).powi(2)).sum();
        let df = d as f64;
        prop_assert!((sic - df * df * (1.0 + purity) / (df * (df + 1.0))).abs() < 1e-10);
    }

    #[test]
    fn correlation_sum_is_linear_bounded_and_matches_witness(seed in any::<u64>(), alpha in 0.0f64..=1.0, conj in any::<bool>()) {
        let mut rng = stream_rng(seed, 4);
        for design in small_designs() {
            let d = design.dim();
            let n = design.size() * if design.kind() == DesignKind::Mub { d } else { 1 };
            let spec = CorrelationSpec { design, conjugate_second: conj };
            let r1 = random_bipartite_state(d, &mut rng);
            let r2 = random_bipartite_state(d, &mut rng);
            let mix = BipartiteDensityMatrix::mixture(&[(alpha, &r1), (1.0 - alpha, &r2)]).unwrap();
            let (i1, i2, im) = (correlation_sum(&r1, &spec).unwrap(), correlation_sum(&r2, &spec).unwrap(), correlation_sum(&mix, &spec).unwrap());
            prop_assert!((im - (alpha * i1 + (1.0 - alpha) * i2)).abs() < 1e-12);
            prop_assert!(i1 >= -1e-12 && i1 <= n as f64 + 1e-12);
            let w = design_witness_operator(&spec);
            prop_assert!((w.trace_product(r1.matrix()).unwrap().re - i1).abs() < 1e-12);
        }
    }

    #[test]
    fn mdi_witness_pairs_with_transposed_state(seed in any::<u64>(), d in 2usize..=3) {
        let rho = random_bipartite_state(d, &mut stream_rng(seed, 5));
        for design in [Design::Mub(standard_mubs(d).unwrap()), Design::Sic(sic_povm(d).unwrap())] {
            let spec = CorrelationSpec::new(design);
            let mdi = mdi_conversion(&spec);
            let lhs = mdi.operator.trace_product(rho.full_transpose().matrix()).unwrap().re;
            prop_assert!((lhs - correlation_sum(&rho, &spec).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn closed_forms_match_numeric_sums(seed in any::<u64>(), d in 2usize..=3) {
        let x: f64 = stream_rng(seed, 6).random();
        for family in [StateFamily::Werner, StateFamily::Isotropic] {
            let state = SymmetricStateSpec::new(family, d, x).unwrap();
            let rho = state.state().unwrap();
            for kind in [DesignKind::Mub, DesignKind::Sic] {
                let design = Design::standard(kind, d).unwrap();
                let cf = closed_form_correlation(&state, kind, design.size()).unwrap();
                let num = correlation_sum(&rho, &CorrelationSpec { design, conjugate_second: cf.conjugate_second }).unwrap();
                prop_assert!((num - cf.value).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn spa_floor_holds_on_product_states(seed in any::<u64>(), d in 2usize..=3) {
        let spa = spa_witness(d).unwrap();
        let mut rng = stream_rng(seed, 7);
        for _ in 0..50 {
            let sigma = BipartiteDensityMatrix::product(&random_unit_vector(d, &mut rng), &random_unit_vector(d, &mut rng)).unwrap();
            prop_assert!(spa.operator.trace_product(sigma.matrix()).unwrap().re >= spa.separable_floor - 1e-9);
        }
    }

    #[test]
    fn alternating_updates_are_monotone(seed in any::<u64>(), d in 2usize..=4) {
        let sic = sic_povm(d).unwrap();
        let obj = PairObjective::new(&pairs(sic.prefix(d + 1).unwrap().vectors().to_vec())).unwrap();
        let mut rng = stream_rng(seed, 8);
        let (e, f) = (random_unit_vector(d, &mut rng), random_unit_vector(d, &mut rng));
        let (_, down) = descend(&obj, e.clone(), f.clone(), 200, 1e-12);
        prop_assert!(down.windows(2).all(|w| w[1] <= w[0] + 1e-13));
        let (_, up) = ascend_pair(&obj, e.clone(), f, 200, 1e-12);
        prop_assert!(up.windows(2).all(|w| w[1] >= w[0] - 1e-13));
        let (_, single) = ascend_diagonal(&obj, e, 200, 1e-12);
        prop_assert!(single.windows(2).all(|w| w[1] >= w[0] - 1e-13));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn random_product_states_lie_inside_bounds(seed in any::<u64>()) {
        let mut rng = stream_rng(seed, 9);
        for design in small_designs() {
            let spec = CorrelationSpec::new(design);
            let d = spec.design.dim();
            let rec = bound_record(&spec, &quick(d)).unwrap();
            prop_assert!(rec.lower <= rec.upper && rec.lower >= 0.0);
            for _ in 0..40 {
                let sigma = BipartiteDensityMatrix::product(&random_unit_vector(d, &mut rng), &random_unit_vector(d, &mut rng)).unwrap();
                let v = correlation_sum(&sigma, &spec).unwrap();
                prop_assert!(v >= rec.lower - 1e-8 && v <= rec.upper + 1e-8);
            }
        }
    }

    #[test]
    fn bounds_grow_with_nested_designs(seed in any::<u64>()) {
        let opts = quick(3).with_seed(seed);
        let sic = sic_povm(3).unwrap();
        let mut previous = (0.0, 0.0);
        for m in 1..=9 {
            let p = pairs(sic.prefix(m).unwrap().vectors().to_vec());
            let lo = separable_lower_bound(&p, &opts).unwrap().value;
            let hi = separable_upper_bound(&p, &opts).unwrap().value;
            prop_assert!(lo >= previous.0 - 1e-8 && hi >= previous.1 - 1e-8, "m={}", m);
            previous = (lo, hi);
        }
    }

    #[test]
    fn bounds_ignore_second_party_conjugation(seed in any::<u64>()) {
        let opts = quick(3).with_seed(seed);
        for design in [Design::Sic(sic_povm(3).unwrap().prefix(5).unwrap()), Design::Mub(standard_mubs(3).unwrap().prefix(2).unwrap())] {
            let plain = bound_record(&CorrelationSpec::new(design.clone()), &opts).unwrap();
            let conj = bound_record(&CorrelationSpec::conjugated(design), &opts).unwrap();
            prop_assert!((plain.lower - conj.lower).abs() < 1e-8);
            prop_assert!((plain.upper - conj.upper).abs() < 1e-8);
        }
    }
}

#[test]
fn single_vector_maximum_matches_two_vector_search() {
    for design in small_designs() {
        let d = design.dim();
        let hi = separable_upper_bound(&pairs(design.vectors()), &OptimizerOptions::for_dim(d)).unwrap();
        assert!(
            hi.cross_check_gap() < CROSS_CHECK_TOL,
            "{} gap {}",
            design.descriptor(),
            hi.cross_check_gap()
        );
    }
}

#[test]
fn fixed_seed_gives_identical_records() {
    let spec = CorrelationSpec::new(sic_povm(3).unwrap().subset(&[1, 2, 3, 4, 5, 7]).unwrap());
    let opts = quick(3).with_seed(99);
    let a = bound_record(&spec, &opts).unwrap();
    let b = bound_record(&spec, &opts).unwrap();
    assert_eq!(a, b);
    let json = serde_json::to_string(&a).unwrap();
    assert_eq!(serde_json::from_str::<twodesign::bounds::BoundRecord>(&json).unwrap(), a);
}
