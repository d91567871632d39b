//! Blockwise time-ordered propagators and checks of the resulting
//! `U(1)^(2^(n-1)-1) × SU(2)^(2^(n-1))` structure.
//!
//! Time ordering: later segments multiply on the left.

use alloc::vec::Vec;

// f64 math in no_std builds; shadowed by the inherent methods when std is linked.
#[allow(unused_imports)]
use num_traits::Float;

use crate::basis::build_basis;
use crate::decomposition::{
    coupling_edges, extract_blocks_with_pairing, hermitian_eigen, pair_up, read_block,
    scaled_tolerance,
};
use crate::hamiltonian::{assemble_dense, gem_matrix, HamiltonianSpec};
use crate::{c, hermiticity_deviation, max_abs, Complex64, ComplexMatrix, Error, Matrix2c};

/// Piecewise-constant 2×2 generator: `(duration, block)` in time order.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockSchedule {
    segments: Vec<(f64, Matrix2c)>,
}

impl BlockSchedule {
    pub fn new(segments: Vec<(f64, Matrix2c)>) -> Result<Self, Error> {
        for (tau, block) in &segments {
            if !(*tau > 0.0) || !tau.is_finite() {
                return Err(Error::InvalidSchedule("segment durations must be positive"));
            }
            let dev = (block - block.adjoint())
                .iter()
                .fold(0.0f64, |m, z| m.max(z.norm()));
            let scale = block.iter().fold(1.0f64, |m, z| m.max(z.norm()));
            if dev > 1e-12 * scale {
                return Err(Error::NonHermitian(dev));
            }
        }
        Ok(BlockSchedule { segments })
    }

    pub fn segments(&self) -> &[(f64, Matrix2c)] {
        &self.segments
    }

    /// `∫ Δ⁺ dt`.
    pub fn integrated_mean_energy(&self) -> f64 {
        self.segments
            .iter()
            .map(|(tau, s)| tau * (s[(0, 0)].re + s[(1, 1)].re) / 2.0)
            .sum()
    }
}

/// `exp(-i S τ)` in closed form: with `S = aI + b·σ`,
/// `e^{-iaτ}(cos(|b|τ) I - i sin(|b|τ) b̂·σ)`.
pub fn segment_exponential(s: &Matrix2c, tau: f64) -> Matrix2c {
    let a = (s[(0, 0)].re + s[(1, 1)].re) / 2.0;
    let bz = (s[(0, 0)].re - s[(1, 1)].re) / 2.0;
    // b·σ has (0,1) entry bx - i by
    let w = (s[(0, 1)] + s[(1, 0)].conj()) / 2.0;
    let norm = bz.hypot(w.norm());
    let phase = Complex64::from_polar(1.0, -a * tau);
    if norm == 0.0 {
        return Matrix2c::identity() * phase;
    }
    let (sin, cos) = (norm * tau).sin_cos();
    let k = c(0.0, -sin / norm);
    let rotation = Matrix2c::new(
        c(cos, 0.0) + k * bz,
        k * w,
        k * w.conj(),
        c(cos, 0.0) - k * bz,
    );
    rotation * phase
}

/// Time-ordered product of the segment exponentials.
pub fn block_propagator(schedule: &BlockSchedule) -> Result<Matrix2c, Error> {
    if schedule.segments.is_empty() {
        return Err(Error::EmptySchedule);
    }
    Ok(schedule
        .segments
        .iter()
        .fold(Matrix2c::identity(), |u, (tau, s)| {
            segment_exponential(s, *tau) * u
        }))
}

/// Blockwise evolution in the Bell gems basis.
#[derive(Clone, Debug, PartialEq)]
pub struct PropagatorResult {
    /// `S_U_i`, one per pair.
    pub block_unitaries: Vec<Matrix2c>,
    /// `φ_i = -∫ Δ⁺_i dt`.
    pub global_phases: Vec<f64>,
    /// Full propagator in the gem basis.
    pub assembled: ComplexMatrix,
    /// `(j, k)` gem labels of each block.
    pub pairing: Vec<(usize, usize)>,
    /// Per-pair generator schedules.
    pub schedules: Vec<BlockSchedule>,
}

/// Evolution over `[0, t]`.
pub fn evolve(
    spec: &HamiltonianSpec,
    t: f64,
    relative_tol: f64,
) -> Result<PropagatorResult, Error> {
    evolve_interval(spec, 0.0, t, relative_tol)
}

/// Pieces of `[t0, t1]` on the spec's segment grid as `(duration, midpoint)`.
fn slices(spec: &HamiltonianSpec, t0: f64, t1: f64) -> Result<Vec<(f64, f64)>, Error> {
    spec.check_time(t0)?;
    spec.check_time(t1)?;
    if t1 < t0 {
        return Err(Error::TimeOutOfRange {
            t: t1,
            duration: spec.duration().unwrap_or(0.0),
        });
    }
    Ok(spec
        .segments()
        .into_iter()
        .filter_map(|(start, end)| {
            let (lo, hi) = (start.max(t0), end.min(t1));
            (hi > lo).then(|| (hi - lo, (lo + hi) / 2.0))
        })
        .collect())
}

/// Evolution over `[t0, t1]`, discovering the pairing from the coupling
/// graph.
///
/// Each segment's gem matrix is thresholded at
/// `relative_tol · max(1, max |M_ij|)`. The union of all segments' couplings
/// must still split into components of at most two states; otherwise the
/// first segment that breaks the split is reported as `PairingDrift`.
pub fn evolve_interval(
    spec: &HamiltonianSpec,
    t0: f64,
    t1: f64,
    relative_tol: f64,
) -> Result<PropagatorResult, Error> {
    let d = spec.d()?;
    let dim = 1usize << (2 * d);
    let mut generators = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (segment, (tau, mid)) in slices(spec, t0, t1)?.into_iter().enumerate() {
        let gem = gem_matrix(spec, mid)?;
        let own = coupling_edges(&gem, scaled_tolerance(&gem, relative_tol));
        pair_up(dim, &own).map_err(|component| Error::BlockStructureViolation { component })?;
        edges.extend(own);
        pair_up(dim, &edges).map_err(|component| Error::PairingDrift { segment, component })?;
        generators.push((tau, gem));
    }
    let pairing: Vec<(usize, usize)> = pair_up(dim, &edges)
        .expect("checked per segment")
        .into_iter()
        .map(|(p, _)| p)
        .collect();
    Ok(propagate(dim, pairing, &generators))
}

/// Evolution over `[t0, t1]` with a fixed, caller-supplied pairing.
pub fn evolve_with_pairing(
    spec: &HamiltonianSpec,
    t0: f64,
    t1: f64,
    pairs: &[(usize, usize)],
    relative_tol: f64,
) -> Result<PropagatorResult, Error> {
    let d = spec.d()?;
    let dim = 1usize << (2 * d);
    let mut generators = Vec::new();
    let mut pairing = None;
    for (tau, mid) in slices(spec, t0, t1)? {
        let gem = gem_matrix(spec, mid)?;
        let dec = extract_blocks_with_pairing(&gem, pairs, scaled_tolerance(&gem, relative_tol))?;
        pairing = Some(dec.pairs);
        generators.push((tau, gem));
    }
    let pairing = match pairing {
        Some(p) => p,
        None => extract_blocks_with_pairing(&ComplexMatrix::zeros(dim, dim), pairs, 1.0)?.pairs,
    };
    Ok(propagate(dim, pairing, &generators))
}

fn propagate(
    dim: usize,
    pairing: Vec<(usize, usize)>,
    generators: &[(f64, ComplexMatrix)],
) -> PropagatorResult {
    let mut block_unitaries = Vec::with_capacity(pairing.len());
    let mut global_phases = Vec::with_capacity(pairing.len());
    let mut schedules = Vec::with_capacity(pairing.len());
    let mut assembled = ComplexMatrix::zeros(dim, dim);
    for &(j, k) in &pairing {
        let schedule = BlockSchedule {
            segments: generators
                .iter()
                .map(|(tau, gem)| (*tau, read_block(gem, j, k)))
                .collect(),
        };
        let u = block_propagator(&schedule).unwrap_or_else(|_| Matrix2c::identity());
        assembled[(j, j)] = u[(0, 0)];
        assembled[(j, k)] = u[(0, 1)];
        assembled[(k, j)] = u[(1, 0)];
        assembled[(k, k)] = u[(1, 1)];
        global_phases.push(-schedule.integrated_mean_energy());
        block_unitaries.push(u);
        schedules.push(schedule);
    }
    PropagatorResult {
        block_unitaries,
        global_phases,
        assembled,
        pairing,
        schedules,
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnitarityReport {
    /// `max |U†U - I|`.
    pub max_deviation: f64,
    pub pass: bool,
}

pub fn verify_unitary(u: &ComplexMatrix, tol: f64) -> UnitarityReport {
    let gram = u.adjoint() * u;
    let max_deviation = crate::max_abs_diff(&gram, &ComplexMatrix::identity(u.nrows(), u.ncols()));
    UnitarityReport {
        max_deviation,
        pass: max_deviation <= tol,
    }
}

fn det2(m: &Matrix2c) -> Complex64 {
    m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]
}

/// Per-block and global checks of the propagator's group structure.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupStructureReport {
    /// `max |S_U† S_U - I|` per block.
    pub block_unitarity: Vec<f64>,
    pub determinants: Vec<Complex64>,
    /// `|det S_U_i - e^{2iφ_i}|` per block.
    pub phase_deviation: Vec<f64>,
    pub determinant_product: Complex64,
    /// `|Π det S_U_i - 1|`.
    pub product_deviation: f64,
    /// The U(1) factors `φ_i`.
    pub u1_phases: Vec<f64>,
    /// `e^{-iφ_i} S_U_i`, each in SU(2).
    pub su2_factors: Vec<Matrix2c>,
    pub unitary_pass: bool,
    pub phase_pass: bool,
    pub product_pass: bool,
}

impl GroupStructureReport {
    pub fn pass(&self) -> bool {
        self.unitary_pass && self.phase_pass && self.product_pass
    }
}

pub fn verify_group_structure(r: &PropagatorResult, tol: f64) -> GroupStructureReport {
    let block_unitarity: Vec<f64> = r
        .block_unitaries
        .iter()
        .map(|u| {
            (u.adjoint() * u - Matrix2c::identity())
                .iter()
                .fold(0.0, |m, z| m.max(z.norm()))
        })
        .collect();
    let determinants: Vec<Complex64> = r.block_unitaries.iter().map(det2).collect();
    let phase_deviation: Vec<f64> = determinants
        .iter()
        .zip(&r.global_phases)
        .map(|(det, &phi)| (det - Complex64::from_polar(1.0, 2.0 * phi)).norm())
        .collect();
    let determinant_product = determinants.iter().fold(c(1.0, 0.0), |acc, d| acc * d);
    let product_deviation = (determinant_product - c(1.0, 0.0)).norm();
    let su2_factors = r
        .block_unitaries
        .iter()
        .zip(&r.global_phases)
        .map(|(u, &phi)| u * Complex64::from_polar(1.0, -phi))
        .collect();
    GroupStructureReport {
        unitary_pass: block_unitarity.iter().all(|&v| v <= tol),
        phase_pass: phase_deviation.iter().all(|&v| v <= tol),
        product_pass: product_deviation <= tol,
        block_unitarity,
        determinants,
        phase_deviation,
        determinant_product,
        product_deviation,
        u1_phases: r.global_phases.clone(),
        su2_factors,
    }
}

/// `exp(-i H τ)` for Hermitian `H` via its eigendecomposition.
pub fn hermitian_exponential(h: &ComplexMatrix, tau: f64) -> Result<ComplexMatrix, Error> {
    let dev = hermiticity_deviation(h);
    if dev > 1e-12 * max_abs(h).max(1.0) {
        return Err(Error::NonHermitian(dev));
    }
    let (values, vectors) = hermitian_eigen(h);
    let mut scaled = vectors.clone();
    for (k, e) in values.iter().enumerate() {
        let phase = Complex64::from_polar(1.0, -e * tau);
        for r in 0..scaled.nrows() {
            scaled[(r, k)] *= phase;
        }
    }
    Ok(scaled * vectors.adjoint())
}

/// Dense propagator over `[t0, t1]` in the computational basis, one full
/// matrix exponential per segment.
pub fn dense_propagator(spec: &HamiltonianSpec, t0: f64, t1: f64) -> Result<ComplexMatrix, Error> {
    let dim = 1usize << spec.n();
    let mut u = ComplexMatrix::identity(dim, dim);
    for (tau, mid) in slices(spec, t0, t1)? {
        u = hermitian_exponential(&assemble_dense(spec, mid)?, tau)? * u;
    }
    Ok(u)
}

/// [`dense_propagator`] conjugated into the Bell gems basis.
pub fn dense_gem_propagator(
    spec: &HamiltonianSpec,
    t0: f64,
    t1: f64,
) -> Result<ComplexMatrix, Error> {
    let basis = build_basis(spec.d()?)?;
    Ok(basis.to_gem(&dense_propagator(spec, t0, t1)?))
}
