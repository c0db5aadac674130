//! Parsing of matrix-source arguments, Sobolev components, degree ranges
//! and zero bounds.

use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use sobspec_core::scalar::Scalar;
use sobspec_core::sobolev::{ComponentSource, SobolevComponent};
use sobspec_core::{Identity, MatrixSource, MeasureSpec, SobolevSpec, Truncation};

use crate::cache::CachedSource;
use crate::error::{CliError, CliResult};
use crate::manifest::InputRecord;
use crate::matrix_file::{truncation_as, MatrixFile};

/// A matrix source named on the command line.
#[derive(Clone, Debug)]
pub enum SourceArg {
    Identity,
    Measure {
        text: String,
        spec: MeasureSpec,
    },
    File {
        path: PathBuf,
        truncation: Truncation,
        bytes: Vec<u8>,
    },
}

impl SourceArg {
    /// `identity`, a path to an existing matrix file (or any `*.json`), or a
    /// measure spec.
    pub fn parse(text: &str) -> CliResult<Self> {
        let t = text.trim();
        if t == "identity" {
            return Ok(SourceArg::Identity);
        }
        let path = Path::new(t);
        if path.extension().is_some_and(|e| e == "json") || path.is_file() {
            let (file, bytes) = MatrixFile::read(path)?;
            let truncation = file.to_truncation().map_err(|message| CliError::File {
                path: path.into(),
                message,
            })?;
            return Ok(SourceArg::File {
                path: path.into(),
                truncation,
                bytes,
            });
        }
        Ok(SourceArg::Measure {
            text: t.to_string(),
            spec: t.parse()?,
        })
    }

    pub fn text(&self) -> String {
        match self {
            SourceArg::Identity => "identity".into(),
            SourceArg::Measure { spec, .. } => spec.to_string(),
            SourceArg::File { path, .. } => path.display().to_string(),
        }
    }

    pub fn input_record(&self) -> InputRecord {
        match self {
            SourceArg::File { bytes, .. } => InputRecord::new(self.text(), bytes),
            _ => InputRecord::new(self.text(), self.text().as_bytes()),
        }
    }

    pub fn measure(&self) -> Option<&MeasureSpec> {
        match self {
            SourceArg::Measure { spec, .. } => Some(spec),
            _ => None,
        }
    }

    /// Matrix source in scalar type `S`; measure sources go through the
    /// cache when a directory is configured.
    pub fn build<S: Scalar>(
        &self,
        cache_dir: Option<&Path>,
    ) -> CliResult<Box<dyn MatrixSource<S>>> {
        Ok(match self {
            SourceArg::Identity => Box::new(Identity),
            SourceArg::Measure { spec, .. } => {
                let inner: Box<dyn MatrixSource<S>> = Box::new(spec.clone());
                match cache_dir {
                    Some(dir) => Box::new(CachedSource::new(inner, spec.to_string(), dir)),
                    None => inner,
                }
            }
            SourceArg::File {
                path, truncation, ..
            } => Box::new(
                truncation_as::<S>(truncation).map_err(|message| CliError::File {
                    path: path.clone(),
                    message,
                })?,
            ),
        })
    }

    fn component_source<S: Scalar>(&self) -> CliResult<ComponentSource<S>> {
        match self {
            SourceArg::Identity => Ok(ComponentSource::Measure(MeasureSpec::UnitCircle)),
            SourceArg::Measure { spec, .. } => Ok(ComponentSource::Measure(spec.clone())),
            SourceArg::File {
                path, truncation, ..
            } => Ok(ComponentSource::Matrix(
                truncation_as::<S>(truncation).map_err(|message| CliError::File {
                    path: path.clone(),
                    message,
                })?,
            )),
        }
    }
}

/// `<source>:order=<j>`; without the suffix the order is the position index.
pub fn parse_component(text: &str, position: usize) -> CliResult<(SourceArg, usize)> {
    match text.rfind(":order=") {
        Some(at) => {
            let order_text = &text[at + ":order=".len()..];
            let order = order_text.parse().map_err(|_| {
                CliError::Usage(format!("bad derivative order `{order_text}` in `{text}`"))
            })?;
            Ok((SourceArg::parse(&text[..at])?, order))
        }
        None => Ok((SourceArg::parse(text)?, position)),
    }
}

pub fn sobolev_spec<S: Scalar>(components: &[(SourceArg, usize)]) -> CliResult<SobolevSpec<S>> {
    let parts = components
        .iter()
        .map(|(src, order)| {
            Ok(SobolevComponent {
                source: src.component_source()?,
                order: *order,
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(SobolevSpec::new(parts)?)
}

/// Inclusive `a..b`, or a single degree `n`.
pub fn parse_range(text: &str) -> CliResult<RangeInclusive<usize>> {
    let bad = || {
        CliError::Usage(format!(
            "bad range `{text}`; expected a..b (inclusive) or n"
        ))
    };
    let (a, b) = match text.split_once("..") {
        Some((a, b)) => (
            a.trim().parse().map_err(|_| bad())?,
            b.trim().parse().map_err(|_| bad())?,
        ),
        None => {
            let n = text.trim().parse().map_err(|_| bad())?;
            (n, n)
        }
    };
    if a > b {
        return Err(bad());
    }
    Ok(a..=b)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BoundArg {
    /// sup |z| over the hull of the measure.
    Hull,
    /// d_{n−1} for φ̂_n.
    MultNorm,
    Value(f64),
}

pub fn parse_bound(text: &str) -> CliResult<BoundArg> {
    match text {
        "hull" => Ok(BoundArg::Hull),
        "multnorm" => Ok(BoundArg::MultNorm),
        _ => match text
            .strip_prefix("value:")
            .and_then(|v| v.parse::<f64>().ok())
        {
            Some(v) if v > 0.0 => Ok(BoundArg::Value(v)),
            _ => Err(CliError::Usage(format!(
                "bad bound `{text}`; expected hull, multnorm or value:<positive x>"
            ))),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use sobspec_core::scalar::ExactComplex;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("0..8").unwrap(), 0..=8);
        assert_eq!(parse_range("3").unwrap(), 3..=3);
        assert!(parse_range("5..2").is_err());
        assert!(parse_range("a..2").is_err());
    }

    #[test]
    fn components() {
        let (src, order) = parse_component("circle:1,0,1:order=0", 3).unwrap();
        assert_eq!((src.text(), order), ("circle:1,0,1".to_string(), 0));
        let (src, order) = parse_component("unit-circle", 1).unwrap();
        assert_eq!((src.text(), order), ("unit-circle".to_string(), 1));
        assert!(parse_component("unit-circle:order=x", 0).is_err());
        let spec = sobolev_spec::<ExactComplex>(&[
            parse_component("circle:1,0,1:order=0", 0).unwrap(),
            parse_component("unit-circle:order=1", 1).unwrap(),
        ])
        .unwrap();
        assert_eq!(spec.to_string(), "circle:1,0,1:order=0 unit-circle:order=1");
    }

    #[test]
    fn bounds_and_errors() {
        assert_eq!(parse_bound("value:2").unwrap(), BoundArg::Value(2.0));
        assert_eq!(parse_bound("hull").unwrap(), BoundArg::Hull);
        assert!(parse_bound("value:-1").is_err());
        assert!(matches!(
            SourceArg::parse("circle:1,0"),
            Err(CliError::Input(_))
        ));
        assert!(matches!(
            SourceArg::parse("missing.json"),
            Err(CliError::Io { .. })
        ));
    }
}
