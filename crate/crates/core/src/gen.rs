//! Random Hamiltonians and matrices for property tests and benchmarks.
//!
//! Coefficients are drawn uniformly from `[-1, 1]`.

use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::hamiltonian::{CoefficientSchedule, HamiltonianSpec, HamiltonianTerm};
use crate::pauli::{PauliAxis, PauliString};
use crate::{c, Complex64, ComplexMatrix};

fn axis<R: Rng + ?Sized>(rng: &mut R) -> PauliAxis {
    PauliAxis::new(rng.gen_range(1..=3)).expect("1..=3")
}

/// `segments` increasing breakpoints ending at `duration`.
pub fn random_grid<R: Rng + ?Sized>(rng: &mut R, segments: usize, duration: f64) -> Vec<f64> {
    let mut cuts: Vec<f64> = (1..segments.max(1))
        .map(|_| rng.gen_range(0.05..0.95) * duration)
        .collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    cuts.push(duration);
    cuts
}

pub fn random_schedule<R: Rng + ?Sized>(rng: &mut R, grid: &[f64]) -> CoefficientSchedule {
    CoefficientSchedule::new(
        grid.iter()
            .map(|&t| (t, rng.gen_range(-1.0..=1.0)))
            .collect(),
    )
    .expect("valid grid")
}

fn make_spec<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    strings: Vec<PauliString>,
    grid: &[f64],
) -> HamiltonianSpec {
    let terms = strings
        .into_iter()
        .map(|s| HamiltonianTerm::new(s, random_schedule(rng, grid)))
        .collect();
    HamiltonianSpec::new(n, terms).expect("generated spec is valid")
}

/// Correspondent couplings `σ_a^(k) σ_a^(k+d)`, each kept with probability 3/4
/// (at least one overall).
fn diagonal_strings<R: Rng + ?Sized>(rng: &mut R, d: usize) -> Vec<PauliString> {
    let mut out = Vec::new();
    for k in 1..=d {
        for a in 1..=3 {
            if rng.gen_bool(0.75) {
                let a = PauliAxis::new(a).expect("1..=3");
                out.push(PauliString::with_sites(2 * d, &[(k, a), (k + d, a)]).expect("in range"));
            }
        }
    }
    if out.is_empty() {
        let a = axis(rng);
        out.push(PauliString::with_sites(2 * d, &[(1, a), (1 + d, a)]).expect("in range"));
    }
    out
}

/// Random Type I spec: correspondent couplings plus fields along one axis on
/// one or both sites of a single correspondent pair.
pub fn random_type_i<R: Rng + ?Sized>(rng: &mut R, d: usize, grid: &[f64]) -> HamiltonianSpec {
    let mut strings = diagonal_strings(rng, d);
    let k = rng.gen_range(1..=d);
    let a = axis(rng);
    let sites: &[usize] = match rng.gen_range(0..3) {
        0 => &[k],
        1 => &[k + d],
        _ => &[k, k + d],
    };
    for &site in sites {
        strings.push(PauliString::single(2 * d, site, a).expect("in range"));
    }
    make_spec(rng, 2 * d, strings, grid)
}

/// Random Type II spec (`d >= 2`): correspondent couplings plus a non-empty
/// subset of the four cross couplings between two correspondent pairs.
pub fn random_type_ii<R: Rng + ?Sized>(rng: &mut R, d: usize, grid: &[f64]) -> HamiltonianSpec {
    assert!(d >= 2, "Type II needs two correspondent pairs");
    let mut strings = diagonal_strings(rng, d);
    let mut positions: Vec<usize> = (1..=d).collect();
    positions.shuffle(rng);
    let (k, k_prime) = (
        positions[0].min(positions[1]),
        positions[0].max(positions[1]),
    );
    let a = axis(rng);
    let edges = crate::classify::type_ii_edges(k, k_prime, d);
    let mask = rng.gen_range(1..16u8);
    for (bit, &(p, q)) in edges.iter().enumerate() {
        if mask >> bit & 1 == 1 {
            strings.push(PauliString::with_sites(2 * d, &[(p, a), (q, a)]).expect("in range"));
        }
    }
    make_spec(rng, 2 * d, strings, grid)
}

/// `count` uniformly random non-identity strings on `n` sites (repeats merge).
pub fn random_dense<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    count: usize,
    grid: &[f64],
) -> HamiltonianSpec {
    let limit = 4usize.pow(n as u32);
    let strings = (0..count)
        .map(|_| PauliString::from_index(rng.gen_range(1..limit), n).expect("in range"))
        .collect();
    make_spec(rng, n, strings, grid)
}

/// Random Hermitian matrix with zero trace.
pub fn random_hermitian_traceless<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(dim, dim);
    for r in 0..dim {
        m[(r, r)] = c(rng.gen_range(-1.0..=1.0), 0.0);
        for k in r + 1..dim {
            let z = c(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0));
            m[(r, k)] = z;
            m[(k, r)] = z.conj();
        }
    }
    let shift = m.trace() / dim as f64;
    for r in 0..dim {
        m[(r, r)] -= shift;
    }
    m
}

/// `(A, B)` with `|A|² + |B|² = 1` and uniform phases.
pub fn random_rotation<R: Rng + ?Sized>(rng: &mut R) -> (Complex64, Complex64) {
    let theta: f64 = rng.gen_range(0.0..core::f64::consts::FRAC_PI_2);
    let (sin, cos) = num_traits::Float::sin_cos(theta);
    let pa = rng.gen_range(-core::f64::consts::PI..core::f64::consts::PI);
    let pb = rng.gen_range(-core::f64::consts::PI..core::f64::consts::PI);
    (
        Complex64::from_polar(cos, pa),
        Complex64::from_polar(sin, pb),
    )
}
