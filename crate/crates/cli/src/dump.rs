//! Matrix dumps: `{"rows", "cols", "data"}` with `[re, im]` entries.

use bellgems_core::{Complex64, ComplexMatrix, Matrix2c};
use serde::{Deserialize, Serialize};

use crate::error::InputError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDump {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<[f64; 2]>>,
}

impl MatrixDump {
    pub fn to_matrix(&self) -> Result<ComplexMatrix, InputError> {
        if self.data.len() != self.rows || self.data.iter().any(|r| r.len() != self.cols) {
            return Err(InputError::Field {
                field: "data".into(),
                message: format!("expected {}x{} entries", self.rows, self.cols),
            });
        }
        Ok(ComplexMatrix::from_fn(self.rows, self.cols, |r, k| {
            let [re, im] = self.data[r][k];
            Complex64::new(re, im)
        }))
    }
}

impl From<&ComplexMatrix> for MatrixDump {
    fn from(m: &ComplexMatrix) -> Self {
        MatrixDump {
            rows: m.nrows(),
            cols: m.ncols(),
            data: m
                .row_iter()
                .map(|row| row.iter().map(|z| [z.re, z.im]).collect())
                .collect(),
        }
    }
}

impl From<&Matrix2c> for MatrixDump {
    fn from(m: &Matrix2c) -> Self {
        MatrixDump {
            rows: 2,
            cols: 2,
            data: (0..2)
                .map(|r| (0..2).map(|k| [m[(r, k)].re, m[(r, k)].im]).collect())
                .collect(),
        }
    }
}

pub fn parse_matrix(text: &str) -> Result<ComplexMatrix, InputError> {
    let dump: MatrixDump = serde_json::from_str(text).map_err(crate::spec_file::syntax_error)?;
    dump.to_matrix()
}
