//! JSON encoding of states and matrices.
//!
//! A state is `{"dim": n, "data": [[re, im], ...]}` and a matrix is
//! `{"rows": n, "cols": m, "data": [[[re, im], ...], ...]}` with one inner
//! list per row. Unknown fields are rejected, and the declared dimensions
//! must match the data.

use std::fs;
use std::path::Path;

use qprop_core::{CMatrix, ComplexScalar, Projector, StateVector, Tolerances};
use serde::{de::DeserializeOwned, Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateJson {
    pub dim: usize,
    pub data: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<[f64; 2]>>,
}

fn complex(pair: &[f64; 2]) -> ComplexScalar {
    ComplexScalar::new(pair[0], pair[1])
}

fn pair(z: &ComplexScalar) -> [f64; 2] {
    [z.re, z.im]
}

fn mismatch(expected: usize, found: usize) -> CliError {
    qprop_core::Error::DimensionMismatch { expected, found }.into()
}

impl StateJson {
    pub fn from_state(psi: &StateVector) -> Self {
        Self {
            dim: psi.dim(),
            data: psi.amplitudes().iter().map(pair).collect(),
        }
    }

    /// Amplitudes as given, after checking the declared dimension.
    pub fn components(&self) -> Result<Vec<ComplexScalar>, CliError> {
        if self.data.len() != self.dim {
            return Err(mismatch(self.dim, self.data.len()));
        }
        Ok(self.data.iter().map(complex).collect())
    }

    /// The normalized state.
    pub fn to_state(&self, tol: &Tolerances) -> Result<StateVector, CliError> {
        Ok(StateVector::with_tolerance(&self.components()?, tol.norm)?)
    }
}

impl MatrixJson {
    pub fn from_matrix(m: &CMatrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            data: (0..m.rows())
                .map(|i| m.row(i).iter().map(pair).collect())
                .collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<CMatrix, CliError> {
        if self.data.len() != self.rows {
            return Err(mismatch(self.rows, self.data.len()));
        }
        if let Some(row) = self.data.iter().find(|r| r.len() != self.cols) {
            return Err(mismatch(self.cols, row.len()));
        }
        let rows: Vec<Vec<ComplexScalar>> = self
            .data
            .iter()
            .map(|r| r.iter().map(complex).collect())
            .collect();
        if rows.is_empty() {
            return Ok(CMatrix::zeros(0, self.cols));
        }
        Ok(CMatrix::from_rows(&rows)?)
    }

    /// The validated projector.
    pub fn to_projector(&self, tol: &Tolerances) -> Result<Projector, CliError> {
        Ok(Projector::from_matrix(self.to_matrix()?, tol)?)
    }
}

pub fn parse<T: DeserializeOwned>(text: &str, origin: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|source| CliError::Json {
        origin: origin.to_string(),
        source,
    })
}

pub fn read<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse(&text, &path.display().to_string())
}

pub fn read_state(path: &Path, tol: &Tolerances) -> Result<StateVector, CliError> {
    read::<StateJson>(path)?.to_state(tol)
}

pub fn read_projector(path: &Path, tol: &Tolerances) -> Result<Projector, CliError> {
    read::<MatrixJson>(path)?.to_projector(tol)
}
