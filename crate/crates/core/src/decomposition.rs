//! The SU(2) decomposition: pairing eigenvectors into rotated two-state
//! subspaces, reading 2×2 blocks off a Hamiltonian, and the Pauli-like
//! parametrization of each block.

use alloc::vec;
use alloc::vec::Vec;

// f64 math in no_std builds; shadowed by the inherent methods when std is linked.
use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;

use crate::{
    c, hermiticity_deviation, max_abs, Complex64, ComplexMatrix, ComplexVector, Error, Matrix2c,
};

/// One eigenvalue with its unit eigenvector.
#[derive(Clone, Debug, PartialEq)]
pub struct Eigenpair {
    pub value: f64,
    pub vector: ComplexVector,
}

/// Spectrum grouped into consecutive pairs `(b_{2i-1}, b_{2i})`.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenPairing {
    pub pairs: Vec<(Eigenpair, Eigenpair)>,
}

/// How eigenvalues are grouped into pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairingRule {
    /// Sort ascending and pair neighbours.
    AscendingConsecutive,
    /// A permutation of the ascending eigen-indices; consecutive entries of
    /// the permuted list form the pairs.
    Custom(Vec<usize>),
}

/// Default edge threshold for a matrix: `1e-10 · max(1, max |M_ij|)`.
pub fn default_tolerance(m: &ComplexMatrix) -> f64 {
    scaled_tolerance(m, 1e-10)
}

/// `relative · max(1, max |M_ij|)`.
pub fn scaled_tolerance(m: &ComplexMatrix, relative: f64) -> f64 {
    relative * max_abs(m).max(1.0)
}

fn check_square_even(m: &ComplexMatrix) -> Result<usize, Error> {
    let (rows, cols) = m.shape();
    if rows != cols {
        return Err(Error::NotSquare { rows, cols });
    }
    if rows % 2 == 1 {
        return Err(Error::OddDimension(rows));
    }
    Ok(rows)
}

fn check_hermitian(m: &ComplexMatrix, tol: f64) -> Result<(), Error> {
    let dev = hermiticity_deviation(m);
    if dev > tol {
        Err(Error::NonHermitian(dev))
    } else {
        Ok(())
    }
}

/// Eigenvalues (ascending) and matching eigenvector columns of a Hermitian
/// matrix.
pub fn hermitian_eigen(m: &ComplexMatrix) -> (Vec<f64>, ComplexMatrix) {
    let eig = m.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = ComplexMatrix::from_fn(m.nrows(), order.len(), |r, k| {
        eig.eigenvectors[(r, order[k])]
    });
    (values, vectors)
}

/// Ascending eigenvalues of a Hermitian matrix.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Vec<f64> {
    let mut values: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(f64::total_cmp);
    values
}

/// Full spectral decomposition of `h`, grouped into pairs by `rule`.
///
/// Degenerate eigenspaces keep whatever orthonormal basis the solver returns.
pub fn eigen_pairing(h: &ComplexMatrix, rule: &PairingRule) -> Result<EigenPairing, Error> {
    let dim = check_square_even(h)?;
    check_hermitian(h, 1e-12 * max_abs(h).max(1.0))?;
    let (values, vectors) = hermitian_eigen(h);
    let order: Vec<usize> = match rule {
        PairingRule::AscendingConsecutive => (0..dim).collect(),
        PairingRule::Custom(order) => {
            check_permutation(order, dim)?;
            order.clone()
        }
    };
    let pair = |k: usize| Eigenpair {
        value: values[k],
        vector: vectors.column(k).into_owned(),
    };
    Ok(EigenPairing {
        pairs: order.chunks(2).map(|p| (pair(p[0]), pair(p[1]))).collect(),
    })
}

fn check_permutation(order: &[usize], dim: usize) -> Result<(), Error> {
    if order.len() != dim {
        return Err(Error::InvalidPairing("wrong length"));
    }
    let mut seen = vec![false; dim];
    for &k in order {
        if k >= dim || core::mem::replace(&mut seen[k], true) {
            return Err(Error::InvalidPairing("not a permutation"));
        }
    }
    Ok(())
}

/// Per-pair rotation amplitudes `(A_i, B_i)` with `|A|² + |B|² = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct RotationCoefficients {
    pairs: Vec<(Complex64, Complex64)>,
}

fn check_normalized(a: Complex64, b: Complex64) -> Result<(), Error> {
    let norm = a.norm_sqr() + b.norm_sqr();
    if (norm - 1.0).abs() > 1e-12 {
        Err(Error::NotNormalized(norm))
    } else {
        Ok(())
    }
}

impl RotationCoefficients {
    pub fn new(pairs: Vec<(Complex64, Complex64)>) -> Result<Self, Error> {
        for &(a, b) in &pairs {
            check_normalized(a, b)?;
        }
        Ok(RotationCoefficients { pairs })
    }

    /// `A = 1`, `B = 0` for `count` pairs.
    pub fn identity(count: usize) -> Self {
        RotationCoefficients {
            pairs: vec![(c(1.0, 0.0), c(0.0, 0.0)); count],
        }
    }

    pub fn pairs(&self) -> &[(Complex64, Complex64)] {
        &self.pairs
    }
}

/// `[[A*, B*], [-B, A]]`: columns are `|α_j⟩`, `|α_k⟩` in the `(b_{2i-1}, b_{2i})`
/// coordinates.
pub fn pair_rotation(a: Complex64, b: Complex64) -> Matrix2c {
    Matrix2c::new(a.conj(), b.conj(), -b, a)
}

/// Rotated states `|α_j(i)⟩ = A*|b_{2i-1}⟩ - B|b_{2i}⟩`,
/// `|α_k(i)⟩ = B*|b_{2i-1}⟩ + A|b_{2i}⟩`, in pair order.
pub fn alpha_basis(
    pairing: &EigenPairing,
    coeffs: &RotationCoefficients,
) -> Result<Vec<ComplexVector>, Error> {
    if coeffs.pairs.len() != pairing.pairs.len() {
        return Err(Error::CoefficientMismatch {
            expected: pairing.pairs.len(),
            found: coeffs.pairs.len(),
        });
    }
    let mut states = Vec::with_capacity(2 * pairing.pairs.len());
    for ((lo, hi), &(a, b)) in pairing.pairs.iter().zip(&coeffs.pairs) {
        check_normalized(a, b)?;
        states.push(&lo.vector * a.conj() - &hi.vector * b);
        states.push(&lo.vector * b.conj() + &hi.vector * a);
    }
    Ok(states)
}

/// `W† M W` where the columns of `W` are `states`.
pub fn matrix_in_states(m: &ComplexMatrix, states: &[ComplexVector]) -> ComplexMatrix {
    let w = ComplexMatrix::from_columns(states);
    w.adjoint() * m * w
}

/// Largest entry outside the consecutive 2×2 diagonal blocks.
pub fn consecutive_block_residual(m: &ComplexMatrix) -> f64 {
    let mut worst: f64 = 0.0;
    for r in 0..m.nrows() {
        for k in 0..m.ncols() {
            if r / 2 != k / 2 {
                worst = worst.max(m[(r, k)].norm());
            }
        }
    }
    worst
}

/// A pairing of basis states into independent two-state subspaces with the
/// Hamiltonian block of each.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockDecomposition {
    /// `(j, k)` with `j < k`, sorted by `j`.
    pub pairs: Vec<(usize, usize)>,
    /// Whether the pair has a coupling above tolerance (otherwise the pair is
    /// two isolated states grouped by index order).
    pub coupled: Vec<bool>,
    /// `[[M_jj, M_jk], [M_kj, M_kk]]` per pair.
    pub blocks: Vec<Matrix2c>,
    /// Largest magnitude outside the paired positions.
    pub residual: f64,
    pub tol: f64,
}

impl BlockDecomposition {
    pub fn dim(&self) -> usize {
        2 * self.pairs.len()
    }

    /// `partner[j] = k` and `partner[k] = j` for every pair.
    pub fn partner_permutation(&self) -> Vec<usize> {
        let mut partner = vec![0; self.dim()];
        for &(j, k) in &self.pairs {
            partner[j] = k;
            partner[k] = j;
        }
        partner
    }

    /// Eigenvalues of all blocks, ascending.
    pub fn block_spectrum(&self) -> Vec<f64> {
        let mut values: Vec<f64> = self
            .blocks
            .iter()
            .flat_map(|b| {
                let p = block_params_from_matrix(b);
                [p.delta_plus - p.delta_minus, p.delta_plus + p.delta_minus]
            })
            .collect();
        values.sort_by(f64::total_cmp);
        values
    }

    /// Block-diagonal matrix with `blocks` scattered back through `pairs`.
    pub fn assemble(&self, blocks: &[Matrix2c]) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.dim(), self.dim());
        for (&(j, k), b) in self.pairs.iter().zip(blocks) {
            out[(j, j)] = b[(0, 0)];
            out[(j, k)] = b[(0, 1)];
            out[(k, j)] = b[(1, 0)];
            out[(k, k)] = b[(1, 1)];
        }
        out
    }
}

/// Off-diagonal positions `(r, k)`, `r < k`, with `|M_rk| > tol`.
pub fn coupling_edges(m: &ComplexMatrix, tol: f64) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for r in 0..m.nrows() {
        for k in r + 1..m.ncols() {
            if m[(r, k)].norm() > tol || m[(k, r)].norm() > tol {
                edges.push((r, k));
            }
        }
    }
    edges
}

/// Connected components of the graph on `0..dim`, each sorted, ordered by
/// smallest member.
pub fn components(dim: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adjacency = vec![Vec::new(); dim];
    for &(a, b) in edges {
        adjacency[a].push(b);
        adjacency[b].push(a);
    }
    let mut seen = vec![false; dim];
    let mut out = Vec::new();
    for start in 0..dim {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut component = vec![start];
        let mut cursor = 0;
        while cursor < component.len() {
            for &next in &adjacency[component[cursor]] {
                if !seen[next] {
                    seen[next] = true;
                    component.push(next);
                }
            }
            cursor += 1;
        }
        component.sort_unstable();
        out.push(component);
    }
    out
}

/// A pair of states and whether they are coupled.
pub(crate) type PairSlot = ((usize, usize), bool);

/// Pairs coupled states and then the isolated ones in ascending order.
/// Returns the first component with three or more states on failure.
pub(crate) fn pair_up(
    dim: usize,
    edges: &[(usize, usize)],
) -> Result<Vec<PairSlot>, Vec<usize>> {
    let mut pairs = Vec::with_capacity(dim / 2);
    let mut isolated = Vec::new();
    for component in components(dim, edges) {
        match *component.as_slice() {
            [single] => isolated.push(single),
            [a, b] => pairs.push(((a, b), true)),
            _ => return Err(component),
        }
    }
    pairs.extend(isolated.chunks(2).map(|p| ((p[0], p[1]), false)));
    pairs.sort_unstable_by_key(|&((a, _), _)| a);
    Ok(pairs)
}

pub(crate) fn read_block(m: &ComplexMatrix, j: usize, k: usize) -> Matrix2c {
    Matrix2c::new(m[(j, j)], m[(j, k)], m[(k, j)], m[(k, k)])
}

fn off_block_max(m: &ComplexMatrix, partner: &[usize]) -> (f64, usize, usize) {
    let mut worst = (0.0, 0, 0);
    for r in 0..m.nrows() {
        for k in 0..m.ncols() {
            if r != k && partner[r] != k {
                let v = m[(r, k)].norm();
                if v > worst.0 {
                    worst = (v, r, k);
                }
            }
        }
    }
    worst
}

fn decomposition_from_pairs(
    m: &ComplexMatrix,
    pairs: Vec<(usize, usize)>,
    coupled: Vec<bool>,
    tol: f64,
) -> BlockDecomposition {
    let blocks = pairs.iter().map(|&(j, k)| read_block(m, j, k)).collect();
    let mut dec = BlockDecomposition {
        pairs,
        coupled,
        blocks,
        residual: 0.0,
        tol,
    };
    dec.residual = off_block_max(m, &dec.partner_permutation()).0;
    dec
}

/// Finds the 2×2 block structure of a Hermitian matrix.
///
/// States `r ≠ k` are coupled when `|M_rk| > tol`. Every coupled component
/// must contain at most two states.
pub fn extract_blocks(m: &ComplexMatrix, tol: f64) -> Result<BlockDecomposition, Error> {
    let dim = check_square_even(m)?;
    check_hermitian(m, tol.max(1e-12 * max_abs(m).max(1.0)))?;
    let edges = coupling_edges(m, tol);
    let paired =
        pair_up(dim, &edges).map_err(|component| Error::BlockStructureViolation { component })?;
    let (pairs, coupled) = paired.into_iter().unzip();
    Ok(decomposition_from_pairs(m, pairs, coupled, tol))
}

/// Reads blocks for a caller-supplied pairing, failing when any entry outside
/// the pairing exceeds `tol`.
pub fn extract_blocks_with_pairing(
    m: &ComplexMatrix,
    pairs: &[(usize, usize)],
    tol: f64,
) -> Result<BlockDecomposition, Error> {
    let dim = check_square_even(m)?;
    check_hermitian(m, tol.max(1e-12 * max_abs(m).max(1.0)))?;
    if pairs.iter().any(|&(a, b)| a == b) {
        return Err(Error::InvalidPairing("state paired with itself"));
    }
    let order: Vec<usize> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
    check_permutation(&order, dim)?;

    let mut sorted: Vec<(usize, usize)> =
        pairs.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    sorted.sort_unstable();
    let coupled = sorted
        .iter()
        .map(|&(a, b)| m[(a, b)].norm() > tol)
        .collect();
    let dec = decomposition_from_pairs(m, sorted, coupled, tol);
    let (magnitude, row, col) = off_block_max(m, &dec.partner_permutation());
    if magnitude > tol {
        return Err(Error::OffBlockCoupling {
            row,
            col,
            magnitude,
        });
    }
    Ok(dec)
}

/// Pauli-like coordinates of one 2×2 block.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlockParams {
    /// Mean pair energy `(E_hi + E_lo) / 2`.
    pub delta_plus: f64,
    /// Half gap `(E_hi - E_lo) / 2`.
    pub delta_minus: f64,
    pub r_a: f64,
    pub r_b: f64,
    /// `γ_A - γ_B` in `(-π, π]`.
    pub gamma: f64,
}

/// Reduces an angle to `(-π, π]`.
pub fn reduce_angle(x: f64) -> f64 {
    let mut y = x % (2.0 * PI);
    if y <= -PI {
        y += 2.0 * PI;
    } else if y > PI {
        y -= 2.0 * PI;
    }
    y
}

/// Block parameters for the pair `(E_lo, E_hi)` rotated by `(A, B)`.
pub fn block_params(
    e_lo: f64,
    e_hi: f64,
    a: Complex64,
    b: Complex64,
) -> Result<BlockParams, Error> {
    check_normalized(a, b)?;
    let (r_a, r_b) = (a.norm(), b.norm());
    let gamma = if r_a == 0.0 || r_b == 0.0 {
        0.0
    } else {
        reduce_angle(a.arg() - b.arg())
    };
    Ok(BlockParams {
        delta_plus: (e_hi + e_lo) / 2.0,
        delta_minus: (e_hi - e_lo) / 2.0,
        r_a,
        r_b,
        gamma,
    })
}

/// Parameters of an arbitrary Hermitian 2×2 block, with `Δ⁻ >= 0`.
pub fn block_params_from_matrix(s: &Matrix2c) -> BlockParams {
    let delta_plus = (s[(0, 0)].re + s[(1, 1)].re) / 2.0;
    let z = (s[(0, 0)].re - s[(1, 1)].re) / 2.0;
    let w = (s[(0, 1)] + s[(1, 0)].conj()) / 2.0;
    let delta_minus = z.hypot(w.norm());
    if delta_minus == 0.0 {
        return BlockParams {
            delta_plus,
            delta_minus,
            r_a: 1.0,
            r_b: 0.0,
            gamma: 0.0,
        };
    }
    let ratio = (z / delta_minus).clamp(-1.0, 1.0);
    let r_a = ((1.0 - ratio) / 2.0).sqrt();
    let r_b = ((1.0 + ratio) / 2.0).sqrt();
    let gamma = if w.norm() == 0.0 {
        0.0
    } else {
        reduce_angle((-w).arg())
    };
    BlockParams {
        delta_plus,
        delta_minus,
        r_a,
        r_b,
        gamma,
    }
}

/// `Δ⁺I - 2r_A r_B Δ⁻ cosΓ X + 2r_A r_B Δ⁻ sinΓ Y - (r_A² - r_B²) Δ⁻ Z`.
pub fn reconstruct_block(p: &BlockParams) -> Matrix2c {
    let x = -2.0 * p.r_a * p.r_b * p.delta_minus * p.gamma.cos();
    let y = 2.0 * p.r_a * p.r_b * p.delta_minus * p.gamma.sin();
    let z = -(p.r_a * p.r_a - p.r_b * p.r_b) * p.delta_minus;
    Matrix2c::new(
        c(p.delta_plus + z, 0.0),
        c(x, -y),
        c(x, y),
        c(p.delta_plus - z, 0.0),
    )
}

/// `S = Δ⁺I + S⁰` with `Δ⁺ = Tr(S)/2` and `S⁰` traceless.
pub fn split_block(s: &Matrix2c) -> (f64, Matrix2c) {
    let delta_plus = s.trace().re / 2.0;
    (delta_plus, s - Matrix2c::identity() * c(delta_plus, 0.0))
}
