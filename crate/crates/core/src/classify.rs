//! Structural detection of the interaction patterns that guarantee 2×2
//! blocks in the Bell gems basis.
//!
//! Every term is sorted into one of:
//!
//! - a *correspondent coupling* `σ_a^(k) σ_a^(k+d)` (diagonal in the gem basis),
//! - a *local field* `σ_a^(s)`,
//! - a *cross coupling* `σ_a^(p) σ_a^(q)` with `p`, `q` not correspondent,
//! - anything else, which makes the spec unstructured.
//!
//! Type I: correspondent couplings plus local fields sharing one axis and
//! acting only on the two sites of one correspondent pair.
//! Type II: correspondent couplings plus cross couplings sharing one axis whose
//! site pairs all lie among `(k,k')`, `(k,k'+d)`, `(k',k+d)`, `(k+d,k'+d)` for a
//! single `k < k' <= d`.

use alloc::vec::Vec;

use crate::basis::register_position;
use crate::hamiltonian::HamiltonianSpec;
use crate::pauli::{PauliAxis, PauliString};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InteractionPattern {
    /// Only correspondent couplings (or no terms at all).
    DiagonalOnly,
    /// Local fields along `axis` on the correspondent pair `pair = (k, k+d)`.
    TypeI {
        pair: (usize, usize),
        axis: PauliAxis,
    },
    /// Cross couplings along `axis` between correspondent pairs `k` and `k'`,
    /// stored as `pair = (k, k')`.
    TypeII {
        pair: (usize, usize),
        axis: PauliAxis,
    },
    Unstructured,
}

impl InteractionPattern {
    pub fn kind(&self) -> &'static str {
        match self {
            InteractionPattern::DiagonalOnly => "DiagonalOnly",
            InteractionPattern::TypeI { .. } => "TypeI",
            InteractionPattern::TypeII { .. } => "TypeII",
            InteractionPattern::Unstructured => "Unstructured",
        }
    }
}

/// The four admissible cross-coupling site pairs for correspondent pairs
/// `k < k'` of a `2d`-site system.
pub fn type_ii_edges(k: usize, k_prime: usize, d: usize) -> [(usize, usize); 4] {
    [
        (k, k_prime),
        (k, k_prime + d),
        (k_prime, k + d),
        (k + d, k_prime + d),
    ]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum TermShape {
    Correspondent,
    Local {
        site: usize,
        axis: PauliAxis,
    },
    Cross {
        positions: (usize, usize),
        axis: PauliAxis,
    },
    Other,
}

fn shape(string: &PauliString, d: usize) -> TermShape {
    match *string.support().as_slice() {
        [(site, axis)] => TermShape::Local { site, axis },
        [(p, a), (q, b)] if a == b => {
            if q == p + d {
                TermShape::Correspondent
            } else {
                let (pp, qp) = (register_position(p, d), register_position(q, d));
                TermShape::Cross {
                    positions: (pp.min(qp), pp.max(qp)),
                    axis: a,
                }
            }
        }
        _ => TermShape::Other,
    }
}

/// Classifies `spec` by the Pauli strings present; coefficient values are
/// ignored.
pub fn classify(spec: &HamiltonianSpec) -> Result<InteractionPattern, Error> {
    let d = spec.d()?;
    let mut locals = Vec::new();
    let mut crosses = Vec::new();
    for term in spec.terms() {
        match shape(&term.string, d) {
            TermShape::Correspondent => {}
            TermShape::Local { site, axis } => locals.push((site, axis)),
            TermShape::Cross { positions, axis } => crosses.push((positions, axis)),
            TermShape::Other => return Ok(InteractionPattern::Unstructured),
        }
    }

    match (locals.is_empty(), crosses.is_empty()) {
        (true, true) => Ok(InteractionPattern::DiagonalOnly),
        (false, true) => {
            let (site, axis) = locals[0];
            let k = register_position(site, d);
            let aligned = locals
                .iter()
                .all(|&(s, a)| a == axis && register_position(s, d) == k);
            Ok(if aligned {
                InteractionPattern::TypeI {
                    pair: (k, k + d),
                    axis,
                }
            } else {
                InteractionPattern::Unstructured
            })
        }
        (true, false) => {
            let (positions, axis) = crosses[0];
            // Same positions means the two sites sit in the two allowed
            // halves of pairs k and k', i.e. one of the four admissible edges.
            let aligned = crosses.iter().all(|&(p, a)| a == axis && p == positions);
            Ok(if aligned {
                InteractionPattern::TypeII {
                    pair: positions,
                    axis,
                }
            } else {
                InteractionPattern::Unstructured
            })
        }
        (false, false) => Ok(InteractionPattern::Unstructured),
    }
}

/// Whether a pattern is guaranteed to produce 2×2 blocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockPrediction {
    pub block_decomposable: bool,
}

pub fn predict_block_structure(pattern: &InteractionPattern) -> BlockPrediction {
    BlockPrediction {
        block_decomposable: !matches!(pattern, InteractionPattern::Unstructured),
    }
}
