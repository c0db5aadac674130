//! JSON matrix files: exact entries as `"p/q"` string pairs, float entries
//! as number pairs, row-major.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sobspec_core::scalar::{format_rational, parse_rational, Complex64, ExactComplex, Scalar};
use sobspec_core::{HermitianMatrix, Truncation};

use crate::error::{CliError, CliResult};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FileMode {
    Rational,
    Float,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Rational(String, String),
    Float(f64, f64),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub measure: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub assembly: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub schema: u32,
    pub size: usize,
    pub mode: FileMode,
    pub entries: Vec<Entry>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub provenance: Option<Provenance>,
}

impl MatrixFile {
    pub fn from_matrix<S: Scalar>(m: &HermitianMatrix<S>, provenance: Option<Provenance>) -> Self {
        let entries = m
            .entries()
            .iter()
            .map(|v| match v.to_exact() {
                Some(e) => Entry::Rational(format_rational(&e.re), format_rational(&e.im)),
                None => {
                    let c = v.to_c64();
                    Entry::Float(c.re, c.im)
                }
            })
            .collect();
        Self {
            schema: SCHEMA_VERSION,
            size: m.size(),
            mode: if S::EXACT {
                FileMode::Rational
            } else {
                FileMode::Float
            },
            entries,
            provenance,
        }
    }

    /// Parses entries and re-runs the Hermitian check.
    pub fn to_truncation(&self) -> Result<Truncation, String> {
        if self.schema != SCHEMA_VERSION {
            return Err(format!("unsupported schema version {}", self.schema));
        }
        if self.size == 0 || self.entries.len() != self.size * self.size {
            return Err(format!(
                "size {} needs {} entries, found {}",
                self.size,
                self.size * self.size,
                self.entries.len()
            ));
        }
        let shape = (self.size, self.size);
        let result = match self.mode {
            FileMode::Rational => {
                let values = self
                    .entries
                    .iter()
                    .map(|e| match e {
                        Entry::Rational(re, im) => {
                            let parse = |t: &String| {
                                parse_rational(t).ok_or_else(|| format!("bad rational `{t}`"))
                            };
                            Ok(ExactComplex::new(parse(re)?, parse(im)?))
                        }
                        Entry::Float(..) => Err("float entry in a rational file".to_string()),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let arr = ndarray::Array2::from_shape_vec(shape, values).expect("length checked");
                HermitianMatrix::new(arr).map(Truncation::Exact)
            }
            FileMode::Float => {
                let values = self
                    .entries
                    .iter()
                    .map(|e| match e {
                        Entry::Float(re, im) => Ok(Complex64::new(*re, *im)),
                        Entry::Rational(..) => Err("string entry in a float file".to_string()),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let arr = ndarray::Array2::from_shape_vec(shape, values).expect("length checked");
                HermitianMatrix::new(arr).map(Truncation::Float)
            }
        };
        result.map_err(|e| e.to_string())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("matrix files serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, String> {
        serde_json::from_str(text).map_err(|e| e.to_string())
    }

    pub fn read(path: &Path) -> CliResult<(Self, Vec<u8>)> {
        let bytes = fs::read(path).map_err(|e| CliError::io(path, e))?;
        let text = String::from_utf8(bytes.clone()).map_err(|_| CliError::File {
            path: path.into(),
            message: "not UTF-8".into(),
        })?;
        let file = Self::from_json(&text).map_err(|message| CliError::File {
            path: path.into(),
            message,
        })?;
        Ok((file, bytes))
    }
}

/// Converts a loaded truncation to the working scalar; float data never
/// silently becomes exact.
pub fn truncation_as<S: Scalar>(t: &Truncation) -> Result<HermitianMatrix<S>, String> {
    match t {
        Truncation::Exact(m) => Ok(HermitianMatrix::from_upper(m.size(), |i, j| {
            S::from_exact(m.get(i, j))
        })),
        Truncation::Float(m) => {
            if S::EXACT {
                return Err("float matrix cannot be used in exact mode; pass --mode float".into());
            }
            Ok(HermitianMatrix::from_upper(m.size(), |i, j| {
                S::from_float(*m.get(i, j)).expect("float scalar")
            }))
        }
    }
}
