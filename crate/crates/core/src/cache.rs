//! Text cache of computed polynomials.
//!
//! ```text
//! etapoly-cache v1
//! n=0: 1
//! n=1: 1,-1
//! n=2: 4,-5,1
//! ```
//!
//! Records appear in strictly increasing `n`, each with exactly `n + 1`
//! decimal coefficients in ascending degree. Every record is validated on load.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::fs;
use std::io::{self, Write as _};
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::eta::alternating;
use crate::partitions::partition_counts;
use crate::IntPoly;

pub const HEADER: &str = "etapoly-cache v1";

/// A named invariant every `p_n` must satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Invariant {
    Length,
    Leading,
    ConstantTerm,
    VanishesAtOne,
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Invariant::Length => "length ≠ n+1",
            Invariant::Leading => "leading coefficient ≠ (−1)^n",
            Invariant::ConstantTerm => "constant term ≠ n!·p(n)",
            Invariant::VanishesAtOne => "p_n(1) ≠ 0",
        })
    }
}

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("malformed cache line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("record n={n} out of order or duplicated (line {line})")]
    Order { n: usize, line: usize },
    #[error("invariant violation at n={n}: {invariant}")]
    Invariant { n: usize, invariant: Invariant },
}

/// Checks the structural invariants of `p_n` against independently known
/// values: `n!` and the partition count `p(n)`.
pub fn validate_record(n: usize, poly: &IntPoly, n_factorial: &BigInt, partitions: &BigInt) -> Result<(), Invariant> {
    if poly.coeffs().len() != n + 1 {
        return Err(Invariant::Length);
    }
    if poly.leading() != Some(&alternating(n)) {
        return Err(Invariant::Leading);
    }
    if poly.coeff(0) != n_factorial * partitions {
        return Err(Invariant::ConstantTerm);
    }
    if n >= 1 && !poly.eval(&BigInt::one()).is_zero() {
        return Err(Invariant::VanishesAtOne);
    }
    Ok(())
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PolyCache {
    pub records: BTreeMap<usize, IntPoly>,
    pub path: Option<PathBuf>,
}

impl PolyCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_polys(polys: &[IntPoly]) -> Self {
        Self {
            records: polys.iter().cloned().enumerate().collect(),
            path: None,
        }
    }

    pub fn get(&self, n: usize) -> Option<&IntPoly> {
        self.records.get(&n)
    }

    pub fn insert(&mut self, n: usize, poly: IntPoly) {
        self.records.insert(n, poly);
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// The records `p_0, ..., p_j` for the longest gap-free run starting at 0.
    pub fn contiguous_prefix(&self) -> Vec<IntPoly> {
        self.records
            .iter()
            .enumerate()
            .take_while(|(i, (n, _))| i == *n)
            .map(|(_, (_, p))| p.clone())
            .collect()
    }

    /// Validates every record.
    pub fn validate(&self) -> Result<(), CacheError> {
        let Some(&max_n) = self.records.keys().next_back() else {
            return Ok(());
        };
        let counts = partition_counts(max_n);
        let mut fact = BigInt::one();
        let mut next = 0usize;
        for (&n, poly) in &self.records {
            while next < n {
                next += 1;
                fact *= next;
            }
            validate_record(n, poly, &fact, &counts[n]).map_err(|invariant| CacheError::Invariant { n, invariant })?;
        }
        Ok(())
    }

    pub fn render(&self) -> String {
        let mut out = String::with_capacity(64 * self.records.len());
        out.push_str(HEADER);
        out.push('\n');
        for (n, poly) in &self.records {
            write!(out, "n={n}: ").expect("string write");
            for (t, c) in poly.coeffs().iter().enumerate() {
                if t > 0 {
                    out.push(',');
                }
                write!(out, "{c}").expect("string write");
            }
            out.push('\n');
        }
        out
    }

    /// Parses and validates cache text.
    pub fn parse(text: &str) -> Result<Self, CacheError> {
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, h)) if h.trim_end() == HEADER => {}
            _ => {
                return Err(CacheError::Malformed { line: 1, reason: format!("expected header `{HEADER}`") });
            }
        }
        let mut records = BTreeMap::new();
        let mut last: Option<usize> = None;
        for (idx, raw) in lines {
            let line = idx + 1;
            let raw = raw.trim_end();
            if raw.is_empty() {
                continue;
            }
            let malformed = |reason: String| CacheError::Malformed { line, reason };
            let rest = raw.strip_prefix("n=").ok_or_else(|| malformed("expected `n=`".into()))?;
            let (n_str, body) = rest.split_once(": ").ok_or_else(|| malformed("expected `: `".into()))?;
            let n: usize = n_str.parse().map_err(|_| malformed(format!("bad index `{n_str}`")))?;
            if last.is_some_and(|l| n <= l) {
                return Err(CacheError::Order { n, line });
            }
            last = Some(n);
            let coeffs = body
                .split(',')
                .map(|f| f.parse::<BigInt>().map_err(|_| malformed(format!("bad coefficient `{f}`"))))
                .collect::<Result<Vec<_>, _>>()?;
            if coeffs.len() != n + 1 {
                return Err(malformed(format!("n={n} has {} fields, expected {}", coeffs.len(), n + 1)));
            }
            records.insert(n, IntPoly::new(coeffs));
        }
        let cache = Self { records, path: None };
        cache.validate()?;
        Ok(cache)
    }

    /// Writes the whole file to a sibling temporary and renames it over
    /// `path`, so readers see either the old or the new complete file.
    pub fn save(&self, path: &Path) -> Result<(), CacheError> {
        let io_err = |source| CacheError::Io { path: path.to_path_buf(), source };
        let tmp = temp_sibling(path);
        let mut file = fs::File::create(&tmp).map_err(io_err)?;
        file.write_all(self.render().as_bytes()).map_err(io_err)?;
        file.sync_all().map_err(io_err)?;
        drop(file);
        fs::rename(&tmp, path).map_err(|e| {
            let _ = fs::remove_file(&tmp);
            io_err(e)
        })
    }

    pub fn load(path: &Path) -> Result<Self, CacheError> {
        let text = fs::read_to_string(path).map_err(|source| CacheError::Io { path: path.to_path_buf(), source })?;
        let mut cache = Self::parse(&text)?;
        cache.path = Some(path.to_path_buf());
        Ok(cache)
    }
}

fn temp_sibling(path: &Path) -> PathBuf {
    let mut name = path.file_name().map(|s| s.to_os_string()).unwrap_or_default();
    name.push(format!(".tmp{}", std::process::id()));
    path.with_file_name(name)
}
