//! Pauli matrices, base-4 Pauli-string indexing and the four-factor trace rule.

use alloc::vec::Vec;
use core::fmt;

use crate::{c, Complex64, ComplexMatrix, Error, Matrix2c};

/// One Pauli factor: 0 = identity, 1 = x, 2 = y, 3 = z.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliAxis(u8);

impl PauliAxis {
    pub const I: PauliAxis = PauliAxis(0);
    pub const X: PauliAxis = PauliAxis(1);
    pub const Y: PauliAxis = PauliAxis(2);
    pub const Z: PauliAxis = PauliAxis(3);
    pub const ALL: [PauliAxis; 4] = [Self::I, Self::X, Self::Y, Self::Z];

    pub fn new(value: u8) -> Result<Self, Error> {
        if value < 4 {
            Ok(PauliAxis(value))
        } else {
            Err(Error::AxisOutOfRange(value))
        }
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn is_identity(self) -> bool {
        self.0 == 0
    }
}

impl TryFrom<u8> for PauliAxis {
    type Error = Error;

    fn try_from(value: u8) -> Result<Self, Error> {
        PauliAxis::new(value)
    }
}

impl fmt::Display for PauliAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(["I", "X", "Y", "Z"][self.0 as usize])
    }
}

/// Which 2×2 matrix set a [`PauliAxis`] refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PauliVariant {
    /// σ₀..σ₃.
    Standard,
    /// σ̃ᵢ = σᵢ for i ∈ {0, 1, 3} and σ̃₂ = iσ₂, all real.
    Gem,
}

/// The 2×2 matrix of `axis` in the requested variant.
pub fn pauli_matrix(axis: PauliAxis, variant: PauliVariant) -> Matrix2c {
    let z = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    match (axis.0, variant) {
        (0, _) => Matrix2c::new(one, z, z, one),
        (1, _) => Matrix2c::new(z, one, one, z),
        (2, PauliVariant::Standard) => Matrix2c::new(z, c(0.0, -1.0), c(0.0, 1.0), z),
        (2, PauliVariant::Gem) => Matrix2c::new(z, one, -one, z),
        (3, _) => Matrix2c::new(one, z, z, -one),
        _ => unreachable!("PauliAxis holds 0..=3"),
    }
}

/// An n-site product of Pauli factors. Site 1 is the most significant base-4
/// digit of [`PauliString::index`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    axes: Vec<PauliAxis>,
}

impl PauliString {
    pub fn new(axes: Vec<PauliAxis>) -> Self {
        PauliString { axes }
    }

    /// Builds a string from raw axis values.
    pub fn from_values(values: &[u8]) -> Result<Self, Error> {
        values
            .iter()
            .map(|&v| PauliAxis::new(v))
            .collect::<Result<Vec<_>, _>>()
            .map(PauliString::new)
    }

    /// Decodes `index` as `n` base-4 digits.
    pub fn from_index(index: usize, n: usize) -> Result<Self, Error> {
        let out_of_range = Error::IndexOutOfRange { index, n };
        let limit = 4usize
            .checked_pow(n as u32)
            .ok_or_else(|| out_of_range.clone())?;
        if index >= limit {
            return Err(out_of_range);
        }
        let mut axes = alloc::vec![PauliAxis::I; n];
        let mut rest = index;
        for slot in axes.iter_mut().rev() {
            *slot = PauliAxis((rest % 4) as u8);
            rest /= 4;
        }
        Ok(PauliString { axes })
    }

    /// Single-site operator `axis` on `site` (1-based) of an `n`-site system.
    pub fn single(n: usize, site: usize, axis: PauliAxis) -> Result<Self, Error> {
        Self::with_sites(n, &[(site, axis)])
    }

    /// Operator with the given `(site, axis)` factors, identity elsewhere.
    /// Sites are 1-based.
    pub fn with_sites(n: usize, factors: &[(usize, PauliAxis)]) -> Result<Self, Error> {
        let mut axes = alloc::vec![PauliAxis::I; n];
        for &(site, axis) in factors {
            if site == 0 || site > n {
                return Err(Error::SiteOutOfRange { site, max: n });
            }
            axes[site - 1] = axis;
        }
        Ok(PauliString { axes })
    }

    pub fn n(&self) -> usize {
        self.axes.len()
    }

    pub fn axes(&self) -> &[PauliAxis] {
        &self.axes
    }

    /// Base-4 index with site 1 as the leading digit.
    pub fn index(&self) -> usize {
        self.axes
            .iter()
            .fold(0usize, |acc, a| acc * 4 + a.0 as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.axes.iter().all(|a| a.is_identity())
    }

    /// Non-identity factors as `(site, axis)` with 1-based sites.
    pub fn support(&self) -> Vec<(usize, PauliAxis)> {
        self.axes
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_identity())
            .map(|(k, &a)| (k + 1, a))
            .collect()
    }

    /// Dense `2^n × 2^n` matrix of the string (standard variant).
    pub fn to_matrix(&self) -> ComplexMatrix {
        if self.axes.is_empty() {
            return ComplexMatrix::identity(1, 1);
        }
        let factors: Vec<ComplexMatrix> = self
            .axes
            .iter()
            .map(|&a| to_dense(&pauli_matrix(a, PauliVariant::Standard)))
            .collect();
        tensor_product(&factors).expect("non-empty factor list")
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in &self.axes {
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

pub(crate) fn to_dense(m: &Matrix2c) -> ComplexMatrix {
    ComplexMatrix::from_fn(2, 2, |r, k| m[(r, k)])
}

/// Kronecker product of `factors` in list order.
pub fn tensor_product(factors: &[ComplexMatrix]) -> Result<ComplexMatrix, Error> {
    let (first, rest) = factors.split_first().ok_or(Error::EmptyProduct)?;
    Ok(rest.iter().fold(first.clone(), |acc, f| acc.kronecker(f)))
}

/// `Tr(σ̃_i σ_j σ̃_kᵀ σ_lᵀ)`, gem variant in the first and third slots.
///
/// This is the per-position factor of a Bell gems matrix element: `i` and `k`
/// are digits of the bra and ket gem labels, `j` and `l` the Pauli factors on
/// the second-register and first-register sites of one correspondent pair.
pub fn trace_product(i: PauliAxis, j: PauliAxis, k: PauliAxis, l: PauliAxis) -> Complex64 {
    let m = pauli_matrix(i, PauliVariant::Gem)
        * pauli_matrix(j, PauliVariant::Standard)
        * pauli_matrix(k, PauliVariant::Gem).transpose()
        * pauli_matrix(l, PauliVariant::Standard).transpose();
    m.trace()
}

/// Index pattern of a trace quadruple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TraceCase {
    /// All four indices equal.
    AllEqual,
    /// A permutation of {0, 1, 2, 3}.
    AllDifferent,
    /// Two distinct values, each appearing twice.
    EqualPairs,
    /// Any other pattern; the trace is zero.
    Vanishing,
}

impl TraceCase {
    pub fn is_vanishing(self) -> bool {
        self == TraceCase::Vanishing
    }
}

/// Classifies `(i, j, k, l)` by multiplicity pattern alone.
pub fn trace_case(i: PauliAxis, j: PauliAxis, k: PauliAxis, l: PauliAxis) -> TraceCase {
    let mut counts = [0u8; 4];
    for a in [i, j, k, l] {
        counts[a.0 as usize] += 1;
    }
    let mut multiplicities: Vec<u8> = counts.iter().copied().filter(|&m| m > 0).collect();
    multiplicities.sort_unstable();
    match multiplicities.as_slice() {
        [4] => TraceCase::AllEqual,
        [1, 1, 1, 1] => TraceCase::AllDifferent,
        [2, 2] => TraceCase::EqualPairs,
        _ => TraceCase::Vanishing,
    }
}

/// Precomputed `trace_product` over all 256 quadruples.
#[derive(Clone, Debug)]
pub struct TraceTable {
    values: [Complex64; 256],
}

impl TraceTable {
    pub fn new() -> Self {
        let mut values = [c(0.0, 0.0); 256];
        for (slot, v) in values.iter_mut().enumerate() {
            let ax = |shift: usize| PauliAxis(((slot >> shift) & 3) as u8);
            *v = trace_product(ax(6), ax(4), ax(2), ax(0));
        }
        TraceTable { values }
    }

    #[inline]
    pub fn get(&self, i: PauliAxis, j: PauliAxis, k: PauliAxis, l: PauliAxis) -> Complex64 {
        let slot = (i.0 as usize) << 6 | (j.0 as usize) << 4 | (k.0 as usize) << 2 | l.0 as usize;
        self.values[slot]
    }
}

impl Default for TraceTable {
    fn default() -> Self {
        Self::new()
    }
}
