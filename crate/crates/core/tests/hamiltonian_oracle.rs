use bellgems_core::gen::{random_dense, random_type_i};
use bellgems_core::hamiltonian::{
    assemble_dense, gem_matrix, gem_matrix_element, gem_matrix_oracle, HamiltonianSpec,
    HamiltonianTerm,
};
use bellgems_core::pauli::{trace_case, PauliString};
use bellgems_core::{hermiticity_deviation, max_abs_diff, Complex64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn master_expression_matches_change_of_basis() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for d in 1..=2 {
        for _ in 0..100 {
            let count = rng.gen_range(1..=50);
            let spec = random_dense(&mut rng, 2 * d, count, &[1.0]);
            let formula = gem_matrix(&spec, 0.5).unwrap();
            let oracle = gem_matrix_oracle(&spec, 0.5).unwrap();
            assert!(max_abs_diff(&formula, &oracle) <= 1e-12);
            assert!(hermiticity_deviation(&formula) <= 1e-13);
            assert!(hermiticity_deviation(&oracle) <= 1e-13);
            let dense = assemble_dense(&spec, 0.5).unwrap();
            assert!(hermiticity_deviation(&dense) <= 1e-13);
            assert!(formula.trace().norm() <= 1e-12);
            assert!(dense.trace().norm() <= 1e-12);
        }
    }
}

#[test]
fn master_expression_d3_spot_check() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..5 {
        let spec = random_dense(&mut rng, 6, 30, &[1.0]);
        let diff = max_abs_diff(
            &gem_matrix(&spec, 1.0).unwrap(),
            &gem_matrix_oracle(&spec, 1.0).unwrap(),
        );
        assert!(diff <= 1e-12);
    }
}

#[test]
fn time_dependent_elements_follow_schedule() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let spec = random_type_i(&mut rng, 2, &[0.3, 0.7, 1.0]);
    for t in [0.0, 0.3, 0.31, 0.7, 0.9, 1.0] {
        let diff = max_abs_diff(
            &gem_matrix(&spec, t).unwrap(),
            &gem_matrix_oracle(&spec, t).unwrap(),
        );
        assert!(diff <= 1e-12, "t = {t}");
    }
}

#[test]
fn vanishing_positions_give_exact_zero() {
    // For every (bra, ket, string) with some vanishing position, the single
    // string's element is exactly zero.
    let d = 2;
    for index in 1..256 {
        let string = PauliString::from_index(index, 4).unwrap();
        let spec = HamiltonianSpec::new(
            4,
            vec![HamiltonianTerm::constant(string.clone(), 0.731, 1.0).unwrap()],
        )
        .unwrap();
        let j = string.axes();
        for bra in 0..16 {
            let bra_s = PauliString::from_index(bra, d).unwrap();
            for ket in 0..16 {
                let ket_s = PauliString::from_index(ket, d).unwrap();
                let vanishing = (0..d).any(|s| {
                    trace_case(bra_s.axes()[s], j[d + s], ket_s.axes()[s], j[s]).is_vanishing()
                });
                let value = gem_matrix_element(&spec, 0.0, bra, ket).unwrap();
                if vanishing {
                    assert_eq!(value, Complex64::new(0.0, 0.0));
                } else {
                    assert!((value.norm() - 0.731).abs() < 1e-15);
                }
            }
        }
    }
}
