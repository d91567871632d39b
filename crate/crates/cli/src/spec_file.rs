//! Hamiltonian spec documents.
//!
//! ```json
//! {"n": 2, "terms": [{"axes": [3, 3], "schedule": [[1.0, 0.5]]}]}
//! ```
//!
//! `axes` lists one Pauli index (0..=3) per site; `schedule` lists
//! `[t_end, value]` segments starting at `t = 0`. Coefficients are real
//! energies with ħ = 1.

use std::path::Path;

use bellgems_core::hamiltonian::{CoefficientSchedule, HamiltonianSpec, HamiltonianTerm};
use bellgems_core::pauli::PauliString;
use bellgems_core::Error;
use serde::{Deserialize, Serialize};

use crate::error::InputError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub n: usize,
    pub terms: Vec<TermEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermEntry {
    pub axes: Vec<u8>,
    pub schedule: Vec<[f64; 2]>,
}

pub(crate) fn syntax_error(e: serde_json::Error) -> InputError {
    InputError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

fn field(field: String, message: impl ToString) -> InputError {
    InputError::Field {
        field,
        message: message.to_string(),
    }
}

impl SpecFile {
    pub fn from_spec(spec: &HamiltonianSpec) -> Self {
        SpecFile {
            n: spec.n(),
            terms: spec
                .terms()
                .iter()
                .map(|t| TermEntry {
                    axes: t.string.axes().iter().map(|a| a.value()).collect(),
                    schedule: t.schedule.segments().iter().map(|&(e, v)| [e, v]).collect(),
                })
                .collect(),
        }
    }

    /// Validates the document and builds the spec, naming the offending field
    /// on failure.
    pub fn into_spec(self) -> Result<HamiltonianSpec, InputError> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (k, entry) in self.terms.into_iter().enumerate() {
            if entry.axes.len() != self.n {
                return Err(field(
                    format!("terms[{k}].axes"),
                    format!("has {} entries, expected n = {}", entry.axes.len(), self.n),
                ));
            }
            let string = PauliString::from_values(&entry.axes).map_err(|e| {
                let slot = entry.axes.iter().position(|&a| a > 3).unwrap_or(0);
                field(format!("terms[{k}].axes[{slot}]"), e)
            })?;
            let schedule =
                CoefficientSchedule::new(entry.schedule.iter().map(|&[t, v]| (t, v)).collect())
                    .map_err(|e| field(format!("terms[{k}].schedule"), e))?;
            terms.push(HamiltonianTerm::new(string, schedule));
        }
        HamiltonianSpec::new(self.n, terms).map_err(|e| match e {
            Error::IdentityTermPresent { term } | Error::InconsistentArity { term, .. } => {
                field(format!("terms[{term}].axes"), e)
            }
            Error::DurationMismatch { term, .. } => field(format!("terms[{term}].schedule"), e),
            other => field("terms".into(), other),
        })
    }
}

pub fn parse_spec(text: &str) -> Result<HamiltonianSpec, InputError> {
    let file: SpecFile = serde_json::from_str(text).map_err(syntax_error)?;
    file.into_spec()
}

pub fn read_text(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|source| InputError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn load_spec(path: &Path) -> Result<HamiltonianSpec, InputError> {
    parse_spec(&read_text(path)?)
}

pub fn write_spec(spec: &HamiltonianSpec) -> String {
    serde_json::to_string(&SpecFile::from_spec(spec)).expect("finite values serialize")
}

/// Pairing file: `[[j, k], ...]` over gem labels.
pub fn parse_pairing(text: &str) -> Result<Vec<(usize, usize)>, InputError> {
    let pairs: Vec<[usize; 2]> = serde_json::from_str(text).map_err(syntax_error)?;
    Ok(pairs.into_iter().map(|[a, b]| (a, b)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_minimal_document() {
        let spec = parse_spec(r#"{"n": 2, "terms": [{"axes": [3, 3], "schedule": [[1.0, 0.5]]}]}"#)
            .unwrap();
        assert_eq!(spec.n(), 2);
        assert_eq!(spec.terms().len(), 1);
        assert_eq!(spec.duration(), Some(1.0));
    }

    #[test]
    fn empty_terms() {
        let spec = parse_spec(r#"{"n": 4, "terms": []}"#).unwrap();
        assert!(spec.terms().is_empty());
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse_spec("{\"n\": 2,\n \"terms\": [}").unwrap_err();
        assert!(matches!(err, InputError::Syntax { line: 2, .. }), "{err}");
    }

    #[test]
    fn complex_coefficients_rejected() {
        let err =
            parse_spec(r#"{"n": 1, "terms": [{"axes": [1], "schedule": [[1.0, [0.5, 0.1]]]}]}"#)
                .unwrap_err();
        assert!(matches!(err, InputError::Syntax { .. }));
    }

    #[test]
    fn field_errors_name_the_field() {
        let cases = [
            (
                r#"{"n": 2, "terms": [{"axes": [3, 5], "schedule": [[1, 1]]}]}"#,
                "terms[0].axes[1]",
            ),
            (
                r#"{"n": 2, "terms": [{"axes": [3], "schedule": [[1, 1]]}]}"#,
                "terms[0].axes",
            ),
            (
                r#"{"n": 2, "terms": [{"axes": [3, 3], "schedule": [[1, 1]]}, {"axes": [0, 0], "schedule": [[1, 1]]}]}"#,
                "terms[1].axes",
            ),
            (
                r#"{"n": 2, "terms": [{"axes": [3, 3], "schedule": [[1, 1], [0.5, 2]]}]}"#,
                "terms[0].schedule",
            ),
            (
                r#"{"n": 2, "terms": [{"axes": [3, 3], "schedule": [[1, 1]]}, {"axes": [1, 0], "schedule": [[2, 1]]}]}"#,
                "terms[1].schedule",
            ),
        ];
        for (text, expected) in cases {
            match parse_spec(text) {
                Err(InputError::Field { field, .. }) => assert_eq!(field, expected, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn unknown_fields_rejected() {
        assert!(parse_spec(r#"{"n": 2, "terms": [], "hbar": 1}"#).is_err());
    }

    #[test]
    fn write_then_parse() {
        let text = r#"{"n":2,"terms":[{"axes":[3,3],"schedule":[[0.5,0.1],[1.0,-0.7]]}]}"#;
        let spec = parse_spec(text).unwrap();
        assert_eq!(write_spec(&spec), text);
    }

    #[test]
    fn pairing_file() {
        assert_eq!(
            parse_pairing("[[0, 3], [1, 2]]").unwrap(),
            vec![(0, 3), (1, 2)]
        );
        assert!(parse_pairing("[[0, 3, 1]]").is_err());
    }
}
