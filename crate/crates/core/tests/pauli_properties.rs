use bellgems_core::pauli::{pauli_matrix, tensor_product, PauliAxis, PauliString, PauliVariant};
use bellgems_core::{max_abs_diff, ComplexMatrix};
use proptest::prelude::*;

fn dense(axis: u8, gem: bool) -> ComplexMatrix {
    let variant = if gem {
        PauliVariant::Gem
    } else {
        PauliVariant::Standard
    };
    let m = pauli_matrix(PauliAxis::new(axis).unwrap(), variant);
    ComplexMatrix::from_fn(2, 2, |r, k| m[(r, k)])
}

proptest! {
    #[test]
    fn tensor_product_of_paulis_is_unitary(
        factors in prop::collection::vec((0u8..4, any::<bool>()), 1..=6)
    ) {
        let mats: Vec<ComplexMatrix> = factors.iter().map(|&(a, g)| dense(a, g)).collect();
        let m = tensor_product(&mats).unwrap();
        let dim = 1 << factors.len();
        prop_assert_eq!(m.shape(), (dim, dim));
        let dev = max_abs_diff(&(m.adjoint() * &m), &ComplexMatrix::identity(dim, dim));
        prop_assert!(dev <= 1e-13);
    }

    #[test]
    fn string_index_round_trip(n in 0usize..=4, seed in any::<u64>()) {
        let index = (seed % 4u64.pow(n as u32)) as usize;
        let s = PauliString::from_index(index, n).unwrap();
        prop_assert_eq!(s.index(), index);
        prop_assert_eq!(PauliString::new(s.axes().to_vec()), s);
    }
}
