//! JSON schema for matrices, spectra and vectors.
//!
//! Matrix: `{"rows": R, "cols": C, "entries": [[scalar, ...], ...]}`.
//! Spectrum: `{"eigenvalues": [{"value": scalar, "multiplicity": k}, ...]}`.
//! Scalars are strings in the exact grammar accepted by `GaussianRational`,
//! e.g. `"3"`, `"-3/2"`, `"1-1/2i"`, `"i"`.

use std::fmt;

use eigenmatrix::{GaussianRational, GqMatrix, GqVector, Spectrum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::CliError;

/// Rejected input, with the offending location when there is one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemaError {
    pub location: Option<String>,
    pub message: String,
}

impl SchemaError {
    fn at(location: impl Into<String>, message: impl Into<String>) -> Self {
        SchemaError {
            location: Some(location.into()),
            message: message.into(),
        }
    }

    fn whole(message: impl Into<String>) -> Self {
        SchemaError {
            location: None,
            message: message.into(),
        }
    }
}

impl fmt::Display for SchemaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.location {
            Some(loc) => write!(f, "{loc}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

impl std::error::Error for SchemaError {}

#[derive(Deserialize)]
struct RawMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<Value>>,
}

#[derive(Deserialize)]
struct RawSpectrum {
    eigenvalues: Vec<RawEigenvalue>,
}

#[derive(Deserialize)]
struct RawEigenvalue {
    value: Value,
    multiplicity: usize,
}

fn scalar(v: &Value, location: String) -> Result<GaussianRational, SchemaError> {
    let text = v
        .as_str()
        .ok_or_else(|| SchemaError::at(location.clone(), format!("expected a scalar string, found {v}")))?;
    text.parse().map_err(|e| SchemaError::at(location, format!("{e}")))
}

pub fn parse_matrix_json(text: &str) -> Result<GqMatrix, SchemaError> {
    let raw: RawMatrix = serde_json::from_str(text).map_err(|e| SchemaError::whole(format!("matrix JSON: {e}")))?;
    if raw.rows == 0 || raw.cols == 0 {
        return Err(SchemaError::whole("matrix must have at least one row and one column"));
    }
    if raw.entries.len() != raw.rows {
        return Err(SchemaError::at(
            "entries",
            format!("{} rows declared, {} given", raw.rows, raw.entries.len()),
        ));
    }
    let mut data = Vec::with_capacity(raw.rows * raw.cols);
    for (r, row) in raw.entries.iter().enumerate() {
        if row.len() != raw.cols {
            return Err(SchemaError::at(
                format!("row {r}"),
                format!("{} columns declared, {} given", raw.cols, row.len()),
            ));
        }
        for (c, v) in row.iter().enumerate() {
            data.push(scalar(v, format!("row {r}, col {c}"))?);
        }
    }
    GqMatrix::new(raw.rows, raw.cols, data).map_err(|e| SchemaError::whole(e.to_string()))
}

/// Schema problems are [`CliError::Schema`]; a well-formed but invalid
/// spectrum (duplicate values, zero multiplicity) is an engine error.
pub fn parse_spectrum_json(text: &str) -> Result<Spectrum, CliError> {
    let raw: RawSpectrum =
        serde_json::from_str(text).map_err(|e| SchemaError::whole(format!("spectrum JSON: {e}")))?;
    let pairs = raw
        .eigenvalues
        .iter()
        .enumerate()
        .map(|(k, e)| Ok((scalar(&e.value, format!("eigenvalue {k}"))?, e.multiplicity)))
        .collect::<Result<Vec<_>, SchemaError>>()?;
    Ok(Spectrum::new(pairs)?)
}

/// Emitted matrix, re-parseable by [`parse_matrix_json`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

pub fn matrix_json(m: &GqMatrix) -> MatrixJson {
    MatrixJson {
        rows: m.rows(),
        cols: m.cols(),
        entries: m
            .to_rows()
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect(),
    }
}

pub fn vector_json(v: &GqVector) -> Vec<String> {
    v.entries().iter().map(ToString::to_string).collect()
}

pub fn spectrum_json(s: &Spectrum) -> Value {
    json!({
        "eigenvalues": s
            .pairs()
            .iter()
            .map(|(v, m)| json!({"value": v.to_string(), "multiplicity": m}))
            .collect::<Vec<_>>()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_documented_formats() {
        let m = parse_matrix_json(r#"{"rows":2,"cols":2,"entries":[["3","1"],["2","4"]]}"#).unwrap();
        assert_eq!(m, GqMatrix::from_ints(&[[3, 1], [2, 4]]));
        let m = parse_matrix_json(r#"{"rows":1,"cols":2,"entries":[["3/2","1-1/2i"]]}"#).unwrap();
        assert_eq!(m.get(0, 0), &GaussianRational::ratio(3, 2));
        assert_eq!(m.get(0, 1), &GaussianRational::new(GaussianRational::from_int(1).real().clone(), GaussianRational::ratio(-1, 2).real().clone()));
    }

    #[test]
    fn reports_locations() {
        let e = parse_matrix_json(r#"{"rows":2,"cols":2,"entries":[["3","1"],["2","x"]]}"#).unwrap_err();
        assert_eq!(e.location.as_deref(), Some("row 1, col 1"));
        let e = parse_matrix_json(r#"{"rows":2,"cols":2,"entries":[["3","1"],["2"]]}"#).unwrap_err();
        assert_eq!(e.location.as_deref(), Some("row 1"));
        let e = parse_matrix_json(r#"{"rows":1,"cols":1,"entries":[[3]]}"#).unwrap_err();
        assert_eq!(e.location.as_deref(), Some("row 0, col 0"));
        let e = parse_matrix_json(r#"{"rows":3,"cols":1,"entries":[["3"]]}"#).unwrap_err();
        assert_eq!(e.location.as_deref(), Some("entries"));
        assert!(parse_matrix_json("not json").is_err());
    }

    #[test]
    fn spectrum_round_trip() {
        let text = r#"{"eigenvalues":[{"value":"2+i","multiplicity":1},{"value":"2-i","multiplicity":1},{"value":"0","multiplicity":2}]}"#;
        let s = parse_spectrum_json(text).unwrap();
        assert_eq!(s.dim(), 4);
        assert_eq!(parse_spectrum_json(&spectrum_json(&s).to_string()).unwrap(), s);
        let dup = r#"{"eigenvalues":[{"value":"1","multiplicity":1},{"value":"1","multiplicity":1}]}"#;
        assert!(matches!(
            parse_spectrum_json(dup),
            Err(CliError::Engine(eigenmatrix::EigenError::InvalidSpectrum(_)))
        ));
        assert!(matches!(parse_spectrum_json(r#"{"eigenvalues":[{"value":"?","multiplicity":1}]}"#), Err(CliError::Schema(_))));
    }

    #[test]
    fn matrix_round_trip() {
        for sample in eigenmatrix::samples::all() {
            let text = serde_json::to_string(&matrix_json(&sample.matrix)).unwrap();
            assert_eq!(parse_matrix_json(&text).unwrap(), sample.matrix, "{}", sample.name);
        }
    }
}
