//! Piecewise-constant Pauli-string Hamiltonians and their Bell gems matrix
//! elements.
//!
//! `H(t) = Σ_J h_J(t) ⊗_k σ_{j_k}` with real coefficients, so every spec is
//! Hermitian by construction. The identity string is rejected: it only shifts
//! the global phase and keeping `H` traceless makes the propagator special
//! unitary.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::basis::build_basis;
use crate::pauli::{PauliString, TraceTable};
use crate::{c, Complex64, ComplexMatrix, Error};

/// `h(t)` as a list of `(t_end, value)` segments starting at `t = 0`.
///
/// Segment `j` covers `(t_end[j-1], t_end[j]]`; the first also covers `t = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientSchedule {
    segments: Vec<(f64, f64)>,
}

impl CoefficientSchedule {
    pub fn new(segments: Vec<(f64, f64)>) -> Result<Self, Error> {
        let first = segments
            .first()
            .ok_or(Error::InvalidSchedule("no segments"))?;
        if !(first.0 > 0.0) {
            return Err(Error::InvalidSchedule("first t_end must be positive"));
        }
        for &(t, v) in &segments {
            if !t.is_finite() || !v.is_finite() {
                return Err(Error::InvalidSchedule("non-finite time or value"));
            }
        }
        if segments.windows(2).any(|w| !(w[1].0 > w[0].0)) {
            return Err(Error::InvalidSchedule("t_end must be strictly increasing"));
        }
        Ok(CoefficientSchedule { segments })
    }

    pub fn constant(duration: f64, value: f64) -> Result<Self, Error> {
        Self::new(alloc::vec![(duration, value)])
    }

    pub fn segments(&self) -> &[(f64, f64)] {
        &self.segments
    }

    pub fn duration(&self) -> f64 {
        self.segments.last().map(|s| s.0).unwrap_or(0.0)
    }

    pub fn value_at(&self, t: f64) -> Option<f64> {
        if !(t >= 0.0) {
            return None;
        }
        self.segments
            .iter()
            .find(|&&(end, _)| t <= end)
            .map(|&(_, v)| v)
    }

    fn breakpoints(&self) -> impl Iterator<Item = f64> + '_ {
        self.segments.iter().map(|s| s.0)
    }

    /// Resamples onto `grid`, which must refine this schedule's breakpoints.
    fn refine(&self, grid: &[f64]) -> Self {
        CoefficientSchedule {
            segments: grid
                .iter()
                .map(|&t| (t, self.value_at(t).unwrap_or(0.0)))
                .collect(),
        }
    }

    fn add_same_grid(&mut self, other: &Self) {
        for (mine, theirs) in self.segments.iter_mut().zip(&other.segments) {
            mine.1 += theirs.1;
        }
    }
}

/// One weighted Pauli string.
#[derive(Clone, Debug, PartialEq)]
pub struct HamiltonianTerm {
    pub string: PauliString,
    pub schedule: CoefficientSchedule,
}

impl HamiltonianTerm {
    pub fn new(string: PauliString, schedule: CoefficientSchedule) -> Self {
        HamiltonianTerm { string, schedule }
    }

    /// Time-independent term of the given duration.
    pub fn constant(string: PauliString, value: f64, duration: f64) -> Result<Self, Error> {
        Ok(HamiltonianTerm {
            string,
            schedule: CoefficientSchedule::constant(duration, value)?,
        })
    }
}

/// Outcome of [`validate`].
#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    pub n: usize,
    pub term_count: usize,
    /// Common schedule length, `None` for an empty term list.
    pub duration: Option<f64>,
    /// Real coefficients on Hermitian strings.
    pub hermitian: bool,
    /// No identity term.
    pub traceless: bool,
}

/// Checks arity, identity terms and schedule lengths of a raw term list.
pub fn validate(n: usize, terms: &[HamiltonianTerm]) -> Result<ValidationReport, Error> {
    let mut duration: Option<f64> = None;
    for (k, term) in terms.iter().enumerate() {
        if term.string.n() != n {
            return Err(Error::InconsistentArity {
                term: k,
                expected: n,
                found: term.string.n(),
            });
        }
        if term.string.is_identity() {
            return Err(Error::IdentityTermPresent { term: k });
        }
        let found = term.schedule.duration();
        match duration {
            None => duration = Some(found),
            Some(expected) if expected != found => {
                return Err(Error::DurationMismatch {
                    term: k,
                    expected,
                    found,
                })
            }
            Some(_) => {}
        }
    }
    Ok(ValidationReport {
        n,
        term_count: terms.len(),
        duration,
        hermitian: true,
        traceless: true,
    })
}

/// A validated Hamiltonian: distinct strings on one shared segment grid.
#[derive(Clone, Debug, PartialEq)]
pub struct HamiltonianSpec {
    n: usize,
    terms: Vec<HamiltonianTerm>,
    grid: Vec<f64>,
}

impl HamiltonianSpec {
    /// Validates `terms`, merges repeated strings by adding coefficients and
    /// refines all schedules to the union of their breakpoints.
    pub fn new(n: usize, terms: Vec<HamiltonianTerm>) -> Result<Self, Error> {
        validate(n, &terms)?;
        let mut grid: Vec<f64> = terms
            .iter()
            .flat_map(|t| t.schedule.breakpoints())
            .collect();
        grid.sort_by(f64::total_cmp);
        grid.dedup();

        let mut merged: Vec<HamiltonianTerm> = Vec::with_capacity(terms.len());
        let mut slot_of: BTreeMap<usize, usize> = BTreeMap::new();
        for term in terms {
            let schedule = term.schedule.refine(&grid);
            match slot_of.get(&term.string.index()) {
                Some(&slot) => merged[slot].schedule.add_same_grid(&schedule),
                None => {
                    slot_of.insert(term.string.index(), merged.len());
                    merged.push(HamiltonianTerm::new(term.string, schedule));
                }
            }
        }
        Ok(HamiltonianSpec {
            n,
            terms: merged,
            grid,
        })
    }

    /// `H = 0` on `n` sites.
    pub fn empty(n: usize) -> Self {
        HamiltonianSpec {
            n,
            terms: Vec::new(),
            grid: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Half-system size, or `OddArity`.
    pub fn d(&self) -> Result<usize, Error> {
        if self.n % 2 == 1 {
            return Err(Error::OddArity(self.n));
        }
        if self.n == 0 {
            return Err(Error::HalfSizeOutOfRange {
                d: 0,
                max: crate::DEFAULT_D_MAX,
            });
        }
        Ok(self.n / 2)
    }

    pub fn terms(&self) -> &[HamiltonianTerm] {
        &self.terms
    }

    /// Schedule length; `None` when there are no terms (valid for all `t >= 0`).
    pub fn duration(&self) -> Option<f64> {
        self.grid.last().copied()
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.grid
    }

    /// Segments as `(start, end)`.
    pub fn segments(&self) -> Vec<(f64, f64)> {
        let mut start = 0.0;
        self.grid
            .iter()
            .map(|&end| {
                let seg = (start, end);
                start = end;
                seg
            })
            .collect()
    }

    pub fn check_time(&self, t: f64) -> Result<(), Error> {
        let duration = self.duration().unwrap_or(f64::INFINITY);
        if t >= 0.0 && t <= duration {
            Ok(())
        } else {
            Err(Error::TimeOutOfRange {
                t,
                duration: self.duration().unwrap_or(0.0),
            })
        }
    }

    /// `(string, h(t))` for every term.
    pub fn coefficients_at(&self, t: f64) -> Result<Vec<(&PauliString, f64)>, Error> {
        self.check_time(t)?;
        Ok(self
            .terms
            .iter()
            .map(|term| (&term.string, term.schedule.value_at(t).unwrap_or(0.0)))
            .collect())
    }
}

/// `H(t)` in the computational basis.
pub fn assemble_dense(spec: &HamiltonianSpec, t: f64) -> Result<ComplexMatrix, Error> {
    let dim = 1usize << spec.n();
    let mut h = ComplexMatrix::zeros(dim, dim);
    for (string, value) in spec.coefficients_at(t)? {
        if value != 0.0 {
            h += string.to_matrix() * c(value, 0.0);
        }
    }
    Ok(h)
}

fn element(
    table: &TraceTable,
    d: usize,
    coefficients: &[(&PauliString, f64)],
    bra: &PauliString,
    ket: &PauliString,
) -> Complex64 {
    let mut sum = c(0.0, 0.0);
    for &(string, value) in coefficients {
        let j = string.axes();
        let mut product = c(1.0, 0.0);
        for s in 0..d {
            product *= table.get(bra.axes()[s], j[d + s], ket.axes()[s], j[s]);
            if product.re == 0.0 && product.im == 0.0 {
                break;
            }
        }
        sum += product * value;
    }
    sum / (1u64 << d) as f64
}

fn gem_labels(d: usize) -> Vec<PauliString> {
    (0..1usize << (2 * d))
        .map(|k| PauliString::from_index(k, d).expect("label in range"))
        .collect()
}

/// `⟨Ψ_I|H(t)|Ψ_K⟩` from the per-position trace products, summing only over
/// the strings present in `spec`.
pub fn gem_matrix_element(
    spec: &HamiltonianSpec,
    t: f64,
    bra: usize,
    ket: usize,
) -> Result<Complex64, Error> {
    let d = spec.d()?;
    let coefficients = spec.coefficients_at(t)?;
    let bra = PauliString::from_index(bra, d)?;
    let ket = PauliString::from_index(ket, d)?;
    Ok(element(&TraceTable::new(), d, &coefficients, &bra, &ket))
}

/// `H(t)` in the Bell gems basis, entry by entry from the trace rule.
pub fn gem_matrix(spec: &HamiltonianSpec, t: f64) -> Result<ComplexMatrix, Error> {
    let d = spec.d()?;
    let coefficients = spec.coefficients_at(t)?;
    let table = TraceTable::new();
    let labels = gem_labels(d);
    let dim = labels.len();
    Ok(ComplexMatrix::from_fn(dim, dim, |r, k| {
        element(&table, d, &coefficients, &labels[r], &labels[k])
    }))
}

/// `B† H(t) B` with the dense Hamiltonian and the explicit basis matrix.
pub fn gem_matrix_oracle(spec: &HamiltonianSpec, t: f64) -> Result<ComplexMatrix, Error> {
    let d = spec.d()?;
    let basis = build_basis(d)?;
    Ok(basis.to_gem(&assemble_dense(spec, t)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{hermiticity_deviation, max_abs_diff};
    use alloc::vec;

    fn term(axes: &[u8], value: f64) -> HamiltonianTerm {
        HamiltonianTerm::constant(PauliString::from_values(axes).unwrap(), value, 1.0).unwrap()
    }

    fn diag(values: &[f64]) -> ComplexMatrix {
        ComplexMatrix::from_fn(values.len(), values.len(), |r, k| {
            if r == k {
                c(values[r], 0.0)
            } else {
                c(0.0, 0.0)
            }
        })
    }

    #[test]
    fn schedule_validation() {
        assert!(CoefficientSchedule::new(vec![]).is_err());
        assert!(CoefficientSchedule::new(vec![(0.0, 1.0)]).is_err());
        assert!(CoefficientSchedule::new(vec![(1.0, 1.0), (1.0, 2.0)]).is_err());
        assert!(CoefficientSchedule::new(vec![(1.0, f64::NAN)]).is_err());
        let s = CoefficientSchedule::new(vec![(1.0, 1.0), (2.0, -3.0)]).unwrap();
        assert_eq!(s.value_at(0.0), Some(1.0));
        assert_eq!(s.value_at(1.0), Some(1.0));
        assert_eq!(s.value_at(1.5), Some(-3.0));
        assert_eq!(s.value_at(2.5), None);
        assert_eq!(s.value_at(-0.1), None);
    }

    #[test]
    fn validate_examples() {
        assert_eq!(
            validate(2, &[term(&[0, 0], 1.0)]),
            Err(Error::IdentityTermPresent { term: 0 })
        );
        let report = validate(2, &[]).unwrap();
        assert_eq!(report.term_count, 0);
        assert!(report.hermitian && report.traceless);
        assert_eq!(
            validate(2, &[term(&[3, 3], 1.0), term(&[1, 0, 0, 1], 1.0)]),
            Err(Error::InconsistentArity {
                term: 1,
                expected: 2,
                found: 4
            })
        );
        let long = HamiltonianTerm::constant(PauliString::from_values(&[1, 0]).unwrap(), 1.0, 2.0)
            .unwrap();
        assert!(matches!(
            validate(2, &[term(&[3, 3], 1.0), long]),
            Err(Error::DurationMismatch { .. })
        ));
    }

    #[test]
    fn merge_and_refine() {
        let a = HamiltonianTerm::new(
            PauliString::from_values(&[3, 3]).unwrap(),
            CoefficientSchedule::new(vec![(1.0, 1.0), (2.0, 2.0)]).unwrap(),
        );
        let b = HamiltonianTerm::new(
            PauliString::from_values(&[3, 3]).unwrap(),
            CoefficientSchedule::new(vec![(0.5, 10.0), (2.0, 20.0)]).unwrap(),
        );
        let x = term(&[1, 0], 0.0);
        let x = HamiltonianTerm::new(
            x.string,
            CoefficientSchedule::new(vec![(2.0, 5.0)]).unwrap(),
        );
        let spec = HamiltonianSpec::new(2, vec![a, b, x]).unwrap();
        assert_eq!(spec.terms().len(), 2);
        assert_eq!(spec.breakpoints(), &[0.5, 1.0, 2.0]);
        assert_eq!(
            spec.terms()[0].schedule.segments(),
            &[(0.5, 11.0), (1.0, 21.0), (2.0, 22.0)]
        );
        assert_eq!(
            spec.terms()[1].schedule.segments(),
            &[(0.5, 5.0), (1.0, 5.0), (2.0, 5.0)]
        );
        assert_eq!(spec.segments(), vec![(0.0, 0.5), (0.5, 1.0), (1.0, 2.0)]);
    }

    #[test]
    fn assemble_examples() {
        let spec = HamiltonianSpec::new(2, vec![term(&[3, 3], 1.0)]).unwrap();
        assert_eq!(
            assemble_dense(&spec, 0.0).unwrap(),
            diag(&[1.0, -1.0, -1.0, 1.0])
        );
        let empty = HamiltonianSpec::empty(2);
        assert_eq!(
            assemble_dense(&empty, 3.0).unwrap(),
            ComplexMatrix::zeros(4, 4)
        );
        let spec = HamiltonianSpec::new(2, vec![term(&[3, 0], 1.0), term(&[0, 3], 1.0)]).unwrap();
        assert_eq!(
            assemble_dense(&spec, 0.5).unwrap(),
            diag(&[2.0, 0.0, 0.0, -2.0])
        );
        assert!(matches!(
            assemble_dense(&spec, 1.5),
            Err(Error::TimeOutOfRange { .. })
        ));
    }

    #[test]
    fn gem_element_examples() {
        let j = 0.7;
        let ising = HamiltonianSpec::new(2, vec![term(&[3, 3], j)]).unwrap();
        assert_eq!(gem_matrix_element(&ising, 0.0, 0, 0).unwrap(), c(j, 0.0));
        assert_eq!(gem_matrix_element(&ising, 0.0, 1, 1).unwrap(), c(-j, 0.0));

        let b = 0.3;
        let field = HamiltonianSpec::new(2, vec![term(&[1, 0], b), term(&[0, 1], b)]).unwrap();
        let oracle = gem_matrix_oracle(&field, 0.0).unwrap();
        let value = gem_matrix_element(&field, 0.0, 0, 1).unwrap();
        assert!((value - oracle[(0, 1)]).norm() < 1e-15);
        assert!((value - c(2.0 * b, 0.0)).norm() < 1e-15);

        let odd = HamiltonianSpec::new(3, vec![term(&[3, 3, 3], 1.0)]).unwrap();
        assert_eq!(gem_matrix_element(&odd, 0.0, 0, 0), Err(Error::OddArity(3)));
        assert_eq!(gem_matrix(&odd, 0.0), Err(Error::OddArity(3)));
    }

    #[test]
    fn gem_matrix_examples() {
        let empty = HamiltonianSpec::empty(4);
        assert_eq!(
            gem_matrix(&empty, 0.0).unwrap(),
            ComplexMatrix::zeros(16, 16)
        );
        let j = -1.25;
        let ising = HamiltonianSpec::new(2, vec![term(&[3, 3], j)]).unwrap();
        let m = gem_matrix(&ising, 0.0).unwrap();
        assert_eq!(m, diag(&[j, -j, -j, j]));
        assert!(max_abs_diff(&m, &gem_matrix_oracle(&ising, 0.0).unwrap()) < 1e-15);
    }

    #[test]
    fn gem_matrix_matches_oracle_for_every_single_string() {
        for index in 1..16 {
            let string = PauliString::from_index(index, 2).unwrap();
            let spec = HamiltonianSpec::new(
                2,
                vec![HamiltonianTerm::constant(string, 1.0, 1.0).unwrap()],
            )
            .unwrap();
            let m = gem_matrix(&spec, 0.0).unwrap();
            let o = gem_matrix_oracle(&spec, 0.0).unwrap();
            assert!(max_abs_diff(&m, &o) < 1e-14, "string {index}");
            assert!(hermiticity_deviation(&m) == 0.0);
        }
    }

    #[test]
    fn vanishing_pattern_gives_exact_zero() {
        // Z on site 1 alone: position 1 quadruple (i, 0, k, 3) vanishes unless
        // {i, k} ∈ {{0, 3}, {1, 2}}; take bra = 0, ket = 1.
        let spec = HamiltonianSpec::new(2, vec![term(&[3, 0], 0.9)]).unwrap();
        assert_eq!(gem_matrix_element(&spec, 0.0, 0, 1).unwrap(), c(0.0, 0.0));
    }
}
