use std::fs;
use std::path::Path;

use leonard_core::field::FieldSpec;
use leonard_core::json::{JsonError, MatrixJson, ParameterArrayJson};
use leonard_core::matrix::ExactMatrix;
use leonard_core::parray::ParameterArray;
use serde::Deserialize;
use thiserror::Error;

use crate::PairArgs;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Json { path: String, source: JsonError },
    #[error("{0}")]
    Usage(String),
    /// A batch run hit input errors; the details are in its output.
    #[error("{0} batch inputs could not be read")]
    Batch(usize),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        2
    }
}

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.display().to_string(),
        source,
    })
}

fn json_err(path: &Path) -> impl Fn(JsonError) -> CliError + '_ {
    move |source| CliError::Json {
        path: path.display().to_string(),
        source,
    }
}

fn parse<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = read(path)?;
    serde_json::from_str(&text).map_err(|e| json_err(path)(e.into()))
}

pub fn parse_field(field: &Option<String>) -> Result<Option<FieldSpec>, CliError> {
    field
        .as_deref()
        .map(|s| s.parse().map_err(|e| usage(format!("--field: {e}"))))
        .transpose()
}

pub fn matrix(path: &Path, field: Option<FieldSpec>) -> Result<ExactMatrix, CliError> {
    let m: MatrixJson = parse(path)?;
    m.to_matrix_in(field.unwrap_or(m.field)).map_err(json_err(path))
}

pub fn array(path: &Path, field: Option<FieldSpec>) -> Result<ParameterArray, CliError> {
    let pa: ParameterArrayJson = parse(path)?;
    pa.to_array_in(field.unwrap_or(pa.field)).map_err(json_err(path))
}

/// Any JSON object carrying "a" and "a_star" matrices, such as the output of
/// `gen` or `construct`.
#[derive(Deserialize)]
struct PairFile {
    a: MatrixJson,
    a_star: MatrixJson,
}

pub fn pair_file(path: &Path, field: Option<FieldSpec>) -> Result<(ExactMatrix, ExactMatrix), CliError> {
    let p: PairFile = parse(path)?;
    let a = p.a.to_matrix_in(field.unwrap_or(p.a.field)).map_err(json_err(path))?;
    let s = p.a_star.to_matrix_in(field.unwrap_or(p.a_star.field)).map_err(json_err(path))?;
    Ok((a, s))
}

pub fn pair(args: &PairArgs, field: Option<FieldSpec>) -> Result<(ExactMatrix, ExactMatrix), CliError> {
    match (&args.pair, &args.a, &args.astar) {
        (Some(p), None, None) => pair_file(p, field),
        (None, Some(a), Some(s)) => Ok((matrix(a, field)?, matrix(s, field)?)),
        _ => Err(usage("give either --pair FILE or both --a FILE and --astar FILE")),
    }
}
