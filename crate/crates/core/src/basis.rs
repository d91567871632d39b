//! The Bell gems basis of `n = 2d` qubits and correspondent-site bookkeeping.
//!
//! Computational basis states are ordered `|q₁ … q_n⟩` with qubit 1 the most
//! significant bit. The first register (`ε₁ … ε_d`) sits on qubits `1..=d`,
//! the second (`δ₁ … δ_d`) on qubits `d+1..=2d`.
//!
//! Gem `I` (base-4 digits `i₁ … i_d`) has amplitude
//! `(σ̃_{i₁} ⊗ … ⊗ σ̃_{i_d})_{E,D} / √(2^d)` on the basis state `|E⟩ ⊗ |D⟩`.

use alloc::vec::Vec;

// f64 math in no_std builds; shadowed by the inherent methods when std is linked.
#[allow(unused_imports)]
use num_traits::Float;

use crate::pauli::{pauli_matrix, tensor_product, to_dense, PauliString, PauliVariant};
use crate::{c, ComplexMatrix, ComplexVector, Error, DEFAULT_D_MAX};

/// Column `I` of `matrix` is the gem `|Ψ_I⟩` in the computational basis.
#[derive(Clone, Debug, PartialEq)]
pub struct BellGemsBasis {
    d: usize,
    matrix: ComplexMatrix,
}

impl BellGemsBasis {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        2 * self.d
    }

    pub fn dim(&self) -> usize {
        1 << (2 * self.d)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// `B† M B`: expresses a computational-basis operator in the gem basis.
    pub fn to_gem(&self, m: &ComplexMatrix) -> ComplexMatrix {
        self.matrix.adjoint() * m * &self.matrix
    }

    /// `B M B†`: back to the computational basis.
    pub fn from_gem(&self, m: &ComplexMatrix) -> ComplexMatrix {
        &self.matrix * m * self.matrix.adjoint()
    }
}

fn check_d(d: usize, d_max: usize) -> Result<(), Error> {
    if d == 0 || d > d_max {
        Err(Error::HalfSizeOutOfRange { d, max: d_max })
    } else {
        Ok(())
    }
}

/// Builds the basis for `1 <= d <= DEFAULT_D_MAX`.
pub fn build_basis(d: usize) -> Result<BellGemsBasis, Error> {
    build_basis_with_limit(d, DEFAULT_D_MAX)
}

/// Builds the basis by summing over the `(E, D)` register pairs entry by entry.
pub fn build_basis_with_limit(d: usize, d_max: usize) -> Result<BellGemsBasis, Error> {
    check_d(d, d_max)?;
    let half = 1usize << d;
    let dim = half * half;
    let norm = (1.0 / half as f64).sqrt();
    let gem: Vec<_> = crate::pauli::PauliAxis::ALL
        .iter()
        .map(|&a| pauli_matrix(a, PauliVariant::Gem))
        .collect();

    let mut matrix = ComplexMatrix::zeros(dim, dim);
    for label in 0..dim {
        let digits = PauliString::from_index(label, d)?;
        for e in 0..half {
            for dd in 0..half {
                // bit (d-1-s) of E / D is ε_{s+1} / δ_{s+1}
                let mut amp = 1.0;
                for (s, axis) in digits.axes().iter().enumerate() {
                    let shift = d - 1 - s;
                    let entry = gem[axis.value() as usize][((e >> shift) & 1, (dd >> shift) & 1)];
                    amp *= entry.re;
                    if amp == 0.0 {
                        break;
                    }
                }
                if amp != 0.0 {
                    matrix[(e * half + dd, label)] = c(amp * norm, 0.0);
                }
            }
        }
    }
    Ok(BellGemsBasis { d, matrix })
}

/// The single gem `|Ψ_I⟩`, obtained by reshaping the `d`-fold Kronecker
/// product of σ̃ factors row-major into a vector.
pub fn gem_state(d: usize, index: usize) -> Result<ComplexVector, Error> {
    check_d(d, DEFAULT_D_MAX)?;
    let digits = PauliString::from_index(index, d)?;
    let factors: Vec<ComplexMatrix> = digits
        .axes()
        .iter()
        .map(|&a| to_dense(&pauli_matrix(a, PauliVariant::Gem)))
        .collect();
    let op = tensor_product(&factors)?;
    let half = 1usize << d;
    let norm = (1.0 / half as f64).sqrt();
    Ok(ComplexVector::from_fn(half * half, |row, _| {
        op[(row / half, row % half)] * norm
    }))
}

/// Site paired with `site` (1-based): `site ± d`.
pub fn correspondent(site: usize, d: usize) -> Result<usize, Error> {
    if site == 0 || site > 2 * d {
        return Err(Error::SiteOutOfRange { site, max: 2 * d });
    }
    Ok(if site <= d { site + d } else { site - d })
}

/// 1-based position of `site` within its register, in `1..=d`.
pub fn register_position(site: usize, d: usize) -> usize {
    (site - 1) % d + 1
}

/// The `d` correspondent pairs `(k, k + d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrespondencePartition {
    pub d: usize,
    pub pairs: Vec<(usize, usize)>,
}

impl CorrespondencePartition {
    pub fn new(d: usize) -> Self {
        CorrespondencePartition {
            d,
            pairs: (1..=d).map(|k| (k, k + d)).collect(),
        }
    }

    pub fn pair_of(&self, site: usize) -> Option<(usize, usize)> {
        self.pairs
            .iter()
            .copied()
            .find(|&(a, b)| a == site || b == site)
    }

    pub fn are_correspondent(&self, a: usize, b: usize) -> bool {
        a != b && self.pair_of(a) == self.pair_of(b) && self.pair_of(a).is_some()
    }
}
