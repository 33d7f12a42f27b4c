//! JSON file formats: density matrices and measurement elements.
//!
//! A state file is a JSON object
//! `{ "dims": [dA, dB, ...], "matrix_re": [[...]], "matrix_im": [[...]] }`
//! with row-major real and imaginary parts. Loaded states are validated
//! against the density-matrix invariants (Hermitian, unit trace, positive
//! semidefinite), with sub-tolerance eigenvalue repair.

use std::fs;
use std::path::Path;

use majdet_core::quantum::{ComplexMatrix, DensityMatrix, Povm};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Serialize, Deserialize)]
pub struct StateFile {
    pub dims: Vec<usize>,
    pub matrix_re: Vec<Vec<f64>>,
    pub matrix_im: Vec<Vec<f64>>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct MatrixParts {
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

/// A measurement file: `{ "label": "...", "elements": [{ "re": [[...]],
/// "im": [[...]] }, ...] }`, validated against the POVM invariants.
#[derive(Debug, Serialize, Deserialize)]
pub struct PovmFile {
    pub label: String,
    pub elements: Vec<MatrixParts>,
}

fn matrix_from_parts(re: &[Vec<f64>], im: &[Vec<f64>]) -> Result<ComplexMatrix, CliError> {
    let n = re.len();
    if n == 0
        || im.len() != n
        || re.iter().any(|row| row.len() != n)
        || im.iter().any(|row| row.len() != n)
    {
        return Err(CliError::invalid_input(
            "matrix parts must be square and of equal shape",
        ));
    }
    let rows: Vec<Vec<Complex64>> = re
        .iter()
        .zip(im)
        .map(|(rr, ri)| {
            rr.iter()
                .zip(ri)
                .map(|(&a, &b)| Complex64::new(a, b))
                .collect()
        })
        .collect();
    Ok(ComplexMatrix::from_rows(&rows))
}

pub fn load_state(path: &Path) -> Result<DensityMatrix, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::invalid_input(format!("cannot read {}: {e}", path.display())))?;
    let file: StateFile = serde_json::from_str(&text)
        .map_err(|e| CliError::invalid_input(format!("malformed state file: {e}")))?;
    let matrix = matrix_from_parts(&file.matrix_re, &file.matrix_im)?;
    DensityMatrix::clamped(matrix, file.dims)
        .map_err(|e| CliError::invalid_input(format!("state violates invariants: {e}")))
}

pub fn load_povm(path: &Path) -> Result<Povm, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::invalid_input(format!("cannot read {}: {e}", path.display())))?;
    let file: PovmFile = serde_json::from_str(&text)
        .map_err(|e| CliError::invalid_input(format!("malformed measurement file: {e}")))?;
    let elements = file
        .elements
        .iter()
        .map(|m| matrix_from_parts(&m.re, &m.im))
        .collect::<Result<Vec<_>, _>>()?;
    Povm::new(file.label, elements)
        .map_err(|e| CliError::invalid_input(format!("measurement violates invariants: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use majdet_core::quantum::werner;

    fn state_to_json(rho: &DensityMatrix) -> String {
        let n = rho.dim();
        let part = |f: fn(&Complex64) -> f64| -> Vec<Vec<f64>> {
            (0..n)
                .map(|i| (0..n).map(|j| f(&rho.matrix()[(i, j)])).collect())
                .collect()
        };
        let file = StateFile {
            dims: rho.dims().to_vec(),
            matrix_re: part(|c| c.re),
            matrix_im: part(|c| c.im),
        };
        serde_json::to_string_pretty(&file).unwrap()
    }

    #[test]
    fn state_round_trip_is_bit_identical() {
        let rho = werner(2, 0.37).unwrap();
        let json = state_to_json(&rho);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("state.json");
        fs::write(&path, &json).unwrap();
        let reloaded = load_state(&path).unwrap();
        assert_eq!(reloaded.dims(), rho.dims());
        assert_eq!(reloaded.matrix(), rho.matrix());
    }

    #[test]
    fn rejects_malformed_and_invalid_states() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.json");

        fs::write(&path, "{ not json").unwrap();
        assert!(load_state(&path).is_err());

        // valid JSON, non-square matrix
        fs::write(
            &path,
            r#"{"dims": [2], "matrix_re": [[1.0, 0.0]], "matrix_im": [[0.0, 0.0]]}"#,
        )
        .unwrap();
        assert!(load_state(&path).is_err());

        // square but trace 2
        fs::write(
            &path,
            r#"{"dims": [2], "matrix_re": [[1.0, 0.0], [0.0, 1.0]], "matrix_im": [[0.0, 0.0], [0.0, 0.0]]}"#,
        )
        .unwrap();
        assert!(load_state(&path).is_err());
    }
}
