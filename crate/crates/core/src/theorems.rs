//! Instance checks of the mod-5 structure theorem, the Pascal triangle it
//! produces, and the equidistribution statements for general primes.

use std::fmt::{self, Write as _};

use crate::cache::PolyCache;
use crate::error::{Error, Result};
use crate::grouping::{degree_k_value, Predictor};
use crate::modular::{lucas, mul_mod, reduce_mod, require_prime, residue_census, sign_mod, CensusReport, ResidueVector};
use crate::partitions::partition_count;

/// The rows of the mod-5 triangle as printed in the original table,
/// with blank positions as empty fields.
pub const PAPER_TRIANGLE: &str = include_str!("data/triangle_paper.txt");

/// Largest exact index needed by the golden triangle (`k = 26`).
pub const PAPER_TRIANGLE_MAX_N: usize = 134;

const ROTATION: [u64; 4] = [2, 4, 3, 1];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mod5Verdict {
    pub equidistributed: bool,
    pub rotation: bool,
    pub zero_prefix: bool,
}

impl Mod5Verdict {
    pub fn all(&self) -> bool {
        self.equidistributed && self.rotation && self.zero_prefix
    }
}

fn require_progression(n: usize, p: u64, r: u64) -> Result<usize> {
    if n as u64 % p != r {
        return Err(Error::WrongProgression { n, p, r });
    }
    Ok(n / p as usize)
}

fn require_source(v: &ResidueVector, n: usize, p: u64) -> Result<()> {
    if v.p != p {
        return Err(Error::InvalidArgument(format!("expected residues mod {p}, got mod {}", v.p)));
    }
    if v.n != n {
        return Err(Error::InvalidArgument(format!("residues are for n={}, not n={n}", v.n)));
    }
    Ok(())
}

fn is_rotation(group: &[u64]) -> bool {
    group.iter().all(|&x| x == 0) || (0..4).any(|s| (0..4).all(|i| group[i] == ROTATION[(i + s) % 4]))
}

/// The three clauses for `n = 5k + 4`: equal populations of the classes
/// 1..4; every 4-tuple at degrees `k+4s+1..=k+4s+4` all zero or a rotation
/// of `(2,4,3,1)`; and vanishing at every degree `<= k`.
pub fn mod5_check(n: usize, v: &ResidueVector) -> Result<Mod5Verdict> {
    let k = require_progression(n, 5, 4)?;
    require_source(v, n, 5)?;
    let res = &v.residues;
    Ok(Mod5Verdict {
        equidistributed: residue_census(v).verdicts.equidistributed,
        rotation: res[k + 1..].chunks(4).all(is_rotation),
        zero_prefix: res[..=k].iter().all(|&x| x == 0),
    })
}

/// Census of `p_n mod p` for `n ≡ p - 1 mod p` with the prefix and (for
/// `p = 5`) rotation verdicts filled in.
///
/// The zero prefix covers degrees `< k`, extended through degree `k` when
/// `a_0 ≡ 0`, since the degree-`k` coefficient is `-a_0`.
pub fn progression_census(v: &ResidueVector, predictor: &Predictor) -> Result<CensusReport> {
    let p = v.p;
    let k = require_progression(v.n, p, p - 1)?;
    if predictor.table().p != p || predictor.table().r != p - 1 {
        return Err(Error::InvalidArgument("predictor does not match the progression".into()));
    }
    let mut report = residue_census(v);
    let prefix_len = k + usize::from(degree_k_value(predictor.table()) == 0);
    report.verdicts.zero_prefix = Some(v.residues[..prefix_len].iter().all(|&x| x == 0));
    if p == 5 {
        report.verdicts.rotation = Some(mod5_check(v.n, v)?.rotation);
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Style {
    /// Zeros as empty fields.
    #[default]
    Paper,
    /// Zeros printed as `0`.
    Csv,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleRow {
    pub n: usize,
    pub k: usize,
    /// Entry `m` is the coefficient of `b^{k+1+4m}` mod 5.
    pub entries: Vec<u64>,
}

impl TriangleRow {
    pub fn render(&self, style: Style) -> String {
        let mut out = format!("n={}: {{", self.n);
        for (m, &e) in self.entries.iter().enumerate() {
            if m > 0 {
                out.push(',');
            }
            if e != 0 || style == Style::Csv {
                write!(out, "{e}").expect("string write");
            }
        }
        out.push('}');
        out
    }
}

impl fmt::Display for TriangleRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Style::Paper))
    }
}

pub fn triangle_row(v: &ResidueVector, n: usize) -> Result<TriangleRow> {
    let k = require_progression(n, 5, 4)?;
    require_source(v, n, 5)?;
    let entries = (0..=k).map(|m| v.residues[k + 1 + 4 * m]).collect();
    Ok(TriangleRow { n, k, entries })
}

/// `2 (-1)^m C(k, m) mod 5`.
pub fn pascal_entry(k: u64, m: u64) -> Result<u64> {
    if m > k {
        return Err(Error::IndexOutOfRange { k, m });
    }
    Ok(pascal_value(k, m))
}

fn pascal_value(k: u64, m: u64) -> u64 {
    mul_mod(2, mul_mod(sign_mod(m, 5), lucas(k, m, 5), 5), 5)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SelfSimilarityReport {
    pub entries_checked: usize,
    /// `(k, m)` where the row differs from `2(-1)^m C(k,m)`.
    pub pascal_mismatches: Vec<(usize, usize)>,
    /// `(k, m)` where `entry · 2^{-1} · (-1)^m` differs from the digitwise product.
    pub lucas_mismatches: Vec<(usize, usize)>,
    /// `(level, k, m)` where the entry differs from
    /// `2^{-1} · apex(K, M) · fundamental(a, b)`.
    pub apex_mismatches: Vec<(u32, usize, usize)>,
}

impl SelfSimilarityReport {
    pub fn passed(&self) -> bool {
        self.entries_checked > 0
            && self.pascal_mismatches.is_empty()
            && self.lucas_mismatches.is_empty()
            && self.apex_mismatches.is_empty()
    }
}

/// Checks the triangle rows against Pascal mod 5 and against its own
/// self-similar decomposition.
///
/// At level `L`, writing `k = K 5^L + a` and `m = M 5^L + b` with
/// `a, b < 5^L`, the entry must equal `3 · entry(K, M) · entry(a, b)` (with
/// out-of-triangle entries 0), where `3 = 2^{-1} mod 5`; both factors are
/// looked up in the supplied rows, so the check uses only exact data.
pub fn self_similarity_check(levels: u32, rows: &[TriangleRow]) -> SelfSimilarityReport {
    let mut report = SelfSimilarityReport::default();
    let lookup = |k: usize, m: usize| -> Option<u64> {
        if m > k {
            return Some(0);
        }
        rows.iter().find(|r| r.k == k).map(|r| r.entries[m])
    };
    for row in rows {
        let k = row.k;
        for (m, &entry) in row.entries.iter().enumerate() {
            report.entries_checked += 1;
            if entry != pascal_value(k as u64, m as u64) {
                report.pascal_mismatches.push((k, m));
            }
            let normalized = mul_mod(mul_mod(entry, 3, 5), sign_mod(m as u64, 5), 5);
            if normalized != digit_product(k as u64, m as u64) {
                report.lucas_mismatches.push((k, m));
            }
            for level in 1..=levels {
                let base = 5usize.pow(level);
                if base > k {
                    break;
                }
                let (big_k, a) = (k / base, k % base);
                let (big_m, b) = (m / base, m % base);
                if let (Some(apex), Some(fund)) = (lookup(big_k, big_m), lookup(a, b)) {
                    if entry != mul_mod(3, mul_mod(apex, fund, 5), 5) {
                        report.apex_mismatches.push((level, k, m));
                    }
                }
            }
        }
    }
    report
}

fn digit_product(mut k: u64, mut m: u64) -> u64 {
    let mut acc = 1;
    while k > 0 || m > 0 {
        acc = mul_mod(acc, lucas(k % 5, m % 5, 5), 5);
        k /= 5;
        m /= 5;
    }
    acc
}

/// Where a census came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    Exact,
    Predictor,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Source::Exact => "exact",
            Source::Predictor => "predictor-only",
        })
    }
}

fn census_at(p: u64, n: usize, cache: Option<&PolyCache>, predictor: &Predictor) -> Result<(CensusReport, Source)> {
    let k = (n as u64 - (p - 1)) / p;
    match cache.and_then(|c| c.get(n)) {
        Some(poly) => Ok((progression_census(&reduce_mod(poly, p)?, predictor)?, Source::Exact)),
        None => Ok((progression_census(&predictor.residues(k), predictor)?, Source::Predictor)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquidistReport {
    pub p: u64,
    /// `p² - p - 1`.
    pub n: usize,
    pub census: CensusReport,
    pub source: Source,
    /// `p(p-1) ≡ 1 mod p`.
    pub exceptional: bool,
    /// Census at `p³ - p² - p - 1`, run only in the exceptional case.
    pub extended: Option<(usize, CensusReport, Source)>,
}

impl EquidistReport {
    /// The theorem's conclusion: equidistribution at `p² - p - 1`, or in the
    /// exceptional case at `p³ - p² - p - 1`.
    pub fn holds(&self) -> bool {
        match &self.extended {
            Some((_, c, _)) => c.verdicts.equidistributed,
            None => self.census.verdicts.equidistributed,
        }
    }
}

/// Census of `p_{p²-p-1} mod p`, from exact data when the cache holds it.
pub fn equidist_check(p: u64, cache: Option<&PolyCache>) -> Result<EquidistReport> {
    require_prime(p)?;
    let predictor = Predictor::for_residue(p, p - 1)?;
    let n = (p * p - p - 1) as usize;
    let (census, source) = census_at(p, n, cache, &predictor)?;
    let exceptional = crate::modular::big_mod(&partition_count(p as usize - 1), p) == 1 % p;
    let extended = if exceptional {
        let n3 = (p * p * p - p * p - p - 1) as usize;
        let (c, s) = census_at(p, n3, cache, &predictor)?;
        Some((n3, c, s))
    } else {
        None
    };
    Ok(EquidistReport { p, n, census, source, exceptional, extended })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisibilityReport {
    pub p: u64,
    pub q: u32,
    /// Smallest nonnegative `n ≡ -1 - p - ... - p^{q-1} mod p^q`.
    pub n: usize,
    pub census: CensusReport,
    pub source: Source,
    pub exceptional: bool,
    /// `(p-1)^{q-2}`, or `(p-1)^{q-3}` in the exceptional case.
    pub divisor: u64,
    pub divisible: bool,
}

pub fn divisibility_index(p: u64, q: u32) -> Result<u64> {
    require_prime(p)?;
    if q < 2 {
        return Err(Error::InvalidArgument(format!("q = {q} must be at least 2")));
    }
    let pq = p
        .checked_pow(q)
        .ok_or_else(|| Error::InvalidArgument(format!("{p}^{q} overflows")))?;
    Ok(pq - (pq - 1) / (p - 1))
}

/// Class populations of `p_n mod p` in the progression `-1 - p - ... mod p^q`
/// and whether each nonzero population is divisible by `(p-1)^{q-2}`.
pub fn population_divisibility(p: u64, q: u32, cache: Option<&PolyCache>) -> Result<DivisibilityReport> {
    let n = divisibility_index(p, q)? as usize;
    let predictor = Predictor::for_residue(p, p - 1)?;
    let (census, source) = census_at(p, n, cache, &predictor)?;
    let exceptional = crate::modular::big_mod(&partition_count(p as usize - 1), p) == 1 % p;
    let exp = if exceptional { q.saturating_sub(3) } else { q - 2 };
    let divisor = (p - 1).pow(exp);
    let divisible = census.nonzero_counts().iter().all(|&c| c as u64 % divisor == 0);
    Ok(DivisibilityReport { p, q, n, census, source, exceptional, divisor, divisible })
}
