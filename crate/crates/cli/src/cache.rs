//! On-disk cache of expensive truncations, keyed by (source text, degree,
//! mode). Writes go through a temp file and an atomic rename.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use sha2::{Digest, Sha256};
use sobspec_core::scalar::Scalar;
use sobspec_core::{HermitianMatrix, MatrixSource, Result, WeightedCircle};

use crate::matrix_file::{truncation_as, MatrixFile, Provenance};

/// Entries compared against a fresh computation whenever a cached file is used.
pub const SPOT_CHECKS: usize = 5;

pub fn cache_key(source_text: &str, n: usize, exact: bool) -> String {
    let mut h = Sha256::new();
    h.update(source_text.as_bytes());
    h.update(format!("|n={n}|mode={}", if exact { "exact" } else { "float" }).as_bytes());
    hex::encode(h.finalize())
}

/// A source whose truncations are read from and written to `dir`.
pub struct CachedSource<S: Scalar> {
    inner: Box<dyn MatrixSource<S>>,
    text: String,
    dir: PathBuf,
}

impl<S: Scalar> CachedSource<S> {
    pub fn new(
        inner: Box<dyn MatrixSource<S>>,
        text: impl Into<String>,
        dir: impl Into<PathBuf>,
    ) -> Self {
        Self {
            inner,
            text: text.into(),
            dir: dir.into(),
        }
    }

    fn path(&self, n: usize) -> PathBuf {
        self.dir
            .join(format!("{}.json", cache_key(&self.text, n, S::EXACT)))
    }

    fn load(&self, path: &Path) -> Option<HermitianMatrix<S>> {
        let text = fs::read_to_string(path).ok()?;
        let t = MatrixFile::from_json(&text).ok()?.to_truncation().ok()?;
        truncation_as(&t).ok()
    }

    /// Compares a few pseudo-random entries (seeded by the key) with the source.
    fn spot_check(&self, m: &HermitianMatrix<S>, n: usize) -> bool {
        let key = cache_key(&self.text, n, S::EXACT);
        let seed = u64::from_str_radix(&key[..16], 16).expect("hex digest");
        let mut rng = StdRng::seed_from_u64(seed);
        (0..SPOT_CHECKS).all(|_| {
            let (i, j) = (rng.gen_range(0..m.size()), rng.gen_range(0..m.size()));
            self.inner.entry(i, j).is_ok_and(|v| &v == m.get(i, j))
        })
    }

    fn store(&self, path: &Path, m: &HermitianMatrix<S>) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let prov = Provenance {
            measure: None,
            assembly: Some(self.text.clone()),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(MatrixFile::from_matrix(m, Some(prov)).to_json().as_bytes())?;
        tmp.persist(path).map_err(|e| e.error)?;
        Ok(())
    }
}

impl<S: Scalar> MatrixSource<S> for CachedSource<S> {
    fn label(&self) -> String {
        self.inner.label()
    }

    fn entry(&self, i: usize, j: usize) -> Result<S> {
        self.inner.entry(i, j)
    }

    fn max_degree(&self) -> Option<usize> {
        self.inner.max_degree()
    }

    fn truncation(&self, n: usize) -> Result<HermitianMatrix<S>> {
        let path = self.path(n);
        if let Some(m) = self.load(&path) {
            if m.size() == n + 1 && self.spot_check(&m, n) {
                return Ok(m);
            }
            eprintln!(
                "warning: cache entry {} disagrees with a fresh computation; rebuilding",
                path.display()
            );
        }
        let m = self.inner.truncation(n)?;
        if let Err(e) = self.store(&path, &m) {
            eprintln!(
                "warning: could not write cache entry {}: {e}",
                path.display()
            );
        }
        Ok(m)
    }

    fn weight(&self) -> Option<&WeightedCircle> {
        self.inner.weight()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use sobspec_core::scalar::ExactComplex;
    use sobspec_core::MeasureSpec;

    #[test]
    fn stores_and_reuses() {
        let dir = tempfile::tempdir().unwrap();
        let spec: MeasureSpec = "circle:1,0,1".parse().unwrap();
        let cached =
            CachedSource::<ExactComplex>::new(Box::new(spec.clone()), "circle:1,0,1", dir.path());
        let first = cached.truncation(6).unwrap();
        let path = cached.path(6);
        assert!(path.exists());
        assert_eq!(cached.truncation(6).unwrap(), first);
        assert_eq!(first, spec.moment_matrix(6));
    }

    #[test]
    fn corrupted_entries_are_rebuilt() {
        let dir = tempfile::tempdir().unwrap();
        let spec: MeasureSpec = "circle:1,0,1".parse().unwrap();
        let cached =
            CachedSource::<ExactComplex>::new(Box::new(spec.clone()), "circle:1,0,1", dir.path());
        // every entry wrong, so any spot check notices
        let bogus = HermitianMatrix::from_upper(4, |_, _| ExactComplex::from_integer(7));
        cached.store(&cached.path(3), &bogus).unwrap();
        assert_eq!(cached.truncation(3).unwrap(), spec.moment_matrix(3));
        assert_eq!(cached.load(&cached.path(3)).unwrap(), spec.moment_matrix(3));
    }

    #[test]
    fn keys_separate_modes_and_sizes() {
        assert_ne!(
            cache_key("unit-circle", 3, true),
            cache_key("unit-circle", 3, false)
        );
        assert_ne!(
            cache_key("unit-circle", 3, true),
            cache_key("unit-circle", 4, true)
        );
    }
}
