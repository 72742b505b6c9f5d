//! Instance files: `{"field": "Fp:10007", "n": 3, "basis": [...]}`.
//!
//! Matrix entries are JSON integers or strings holding an integer or a
//! fraction `"p/q"`; they are mapped into the field on load.

use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use ncrank_core::exactfield::{Field, FieldDesc};
use ncrank_core::linalg::{Mat, Subspace};
use ncrank_core::mspace::MatrixSpace;

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ncrk: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub field: String,
    pub n: usize,
    pub basis: Vec<Vec<Vec<Scalar>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Expected>,
}

impl InstanceFile {
    pub fn from_json(text: &str, origin: &str) -> Result<Self, CliError> {
        let inst: InstanceFile = serde_json::from_str(text).map_err(|e| json_error(origin, &e))?;
        inst.check_shape()?;
        Ok(inst)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = read_file(path)?;
        Self::from_json(&text, &path.display().to_string())
    }

    fn check_shape(&self) -> Result<(), CliError> {
        for (i, b) in self.basis.iter().enumerate() {
            if b.len() != self.n || b.iter().any(|row| row.len() != self.n) {
                return Err(CliError::input(format!(
                    "basis matrix {i} is not {n}x{n}",
                    n = self.n
                )));
            }
        }
        Ok(())
    }

    pub fn field_desc(&self) -> Result<FieldDesc, CliError> {
        Ok(self.field.parse::<FieldDesc>()?)
    }

    /// The space over `field`, which need not be the one named in the file.
    pub fn space<F: Field>(&self, field: F) -> Result<MatrixSpace<F>, CliError> {
        let mut mats = Vec::with_capacity(self.basis.len());
        for (i, b) in self.basis.iter().enumerate() {
            let rows = b
                .iter()
                .map(|row| row.iter().map(|s| parse_scalar(&field, s)).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| CliError::input(format!("basis matrix {i}: {}", e.message)))?;
            mats.push(Mat::from_rows(rows));
        }
        Ok(MatrixSpace::new(field, self.n, mats)?)
    }
}

pub(crate) fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

pub(crate) fn json_error(origin: &str, e: &serde_json::Error) -> CliError {
    CliError::input(format!("{origin}:{}:{}: {e}", e.line(), e.column()))
}

pub fn parse_scalar<F: Field>(field: &F, s: &Scalar) -> Result<F::El, CliError> {
    match s {
        Scalar::Int(v) => Ok(field.from_int(*v)),
        Scalar::Text(t) => parse_element(field, t),
    }
}

/// Parses `"a"` or `"a/b"` with arbitrary-size integers.
pub fn parse_element<F: Field>(field: &F, text: &str) -> Result<F::El, CliError> {
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let bad = || CliError::input(format!("cannot parse {text:?} as a field element"));
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    field
        .from_ratio(&num, &den)
        .map_err(|e| CliError::input(format!("{text:?}: {e}")))
}

pub fn format_vec<F: Field>(field: &F, v: &[F::El]) -> Vec<String> {
    v.iter().map(|x| field.format(x)).collect()
}

pub fn format_mat<F: Field>(field: &F, m: &Mat<F::El>) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| format_vec(field, r)).collect()
}

pub fn format_subspace<F: Field>(field: &F, u: &Subspace<F::El>) -> Vec<Vec<String>> {
    u.basis().iter().map(|r| format_vec(field, r)).collect()
}

pub fn parse_vec<F: Field>(field: &F, v: &[String]) -> Result<Vec<F::El>, CliError> {
    v.iter().map(|x| parse_element(field, x)).collect()
}

pub fn parse_mat<F: Field>(field: &F, rows: &[Vec<String>], size: usize) -> Result<Mat<F::El>, CliError> {
    if rows.len() != size || rows.iter().any(|r| r.len() != size) {
        return Err(CliError::input(format!("expected a {size}x{size} matrix")));
    }
    let rows = rows.iter().map(|r| parse_vec(field, r)).collect::<Result<Vec<_>, _>>()?;
    Ok(Mat::from_rows(rows))
}

pub fn parse_subspace<F: Field>(field: &F, rows: &[Vec<String>], ambient: usize) -> Result<Subspace<F::El>, CliError> {
    if let Some(r) = rows.iter().find(|r| r.len() != ambient) {
        return Err(CliError::input(format!(
            "witness vector of length {} in an instance with n = {ambient}",
            r.len()
        )));
    }
    let vecs = rows.iter().map(|r| parse_vec(field, r)).collect::<Result<Vec<_>, _>>()?;
    Ok(Subspace::span(field, ambient, &vecs))
}
