//! SU(2) block decomposition of 2d-qubit Pauli-string Hamiltonians in the
//! Bell gems basis.
//!
//! The crate is `no_std` and only needs `alloc`. It covers:
//!
//! - [`pauli`]: Pauli matrices (standard and real "gem" variant), base-4
//!   Pauli-string indexing, Kronecker products and the four-factor trace rule.
//! - [`basis`]: construction of the Bell gems basis and correspondent sites.
//! - [`hamiltonian`]: piecewise-constant Pauli-string Hamiltonians, their dense
//!   matrices and their matrix elements in the Bell gems basis.
//! - [`classify`]: structural Type I / Type II interaction detection.
//! - [`decomposition`]: eigen-pairing rotations, 2×2 block extraction and
//!   block parameters.
//! - [`evolution`]: blockwise time-ordered propagators and group-structure
//!   checks.
//!
//! Units: ħ = 1 everywhere, so energies and inverse times share a unit.

#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod basis;
pub mod classify;
pub mod decomposition;
mod error;
pub mod evolution;
#[cfg(feature = "gen")]
pub mod gen;
pub mod hamiltonian;
pub mod pauli;

pub use error::Error;
pub use num_complex::Complex64;

/// Dense complex matrix used throughout the crate.
pub type ComplexMatrix = nalgebra::DMatrix<Complex64>;
/// Dense complex column vector (state vectors).
pub type ComplexVector = nalgebra::DVector<Complex64>;
/// 2×2 complex matrix (Pauli factors, pair blocks, block propagators).
pub type Matrix2c = nalgebra::Matrix2<Complex64>;

/// Largest supported half-system size `d` (matrix dimension `4^d`).
pub const DEFAULT_D_MAX: usize = 4;

/// `max |M_ij|`, zero for an empty matrix.
pub fn max_abs(m: &ComplexMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// `max |A_ij - B_ij|`. Panics when the shapes differ.
pub fn max_abs_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape(), "shape mismatch");
    a.iter()
        .zip(b.iter())
        .fold(0.0, |acc, (x, y)| acc.max((x - y).norm()))
}

/// `max |M - M^†|`.
pub fn hermiticity_deviation(m: &ComplexMatrix) -> f64 {
    max_abs_diff(m, &m.adjoint())
}

pub(crate) fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
