//! OEIS cross-validation: b-file parsing, fetching with an on-disk cache,
//! vendored copies of the four relevant sequences, and the comparison of
//! computed counts against them.
//!
//! The b-files for A001055 (factorizations), A096276 (partial sums of
//! A001055), A319005 (product >= n) and A114324 (product > n) are vendored
//! so the checks run offline; [`fetch_bfile`] refreshes a cache from
//! oeis.org when a network is available.

use std::fmt;
use std::fs;
use std::io::Write as _;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::time::Duration;

use num_bigint::BigInt;
use thiserror::Error;

use crate::counting::{
    count_product_at_least, count_product_at_most, count_product_equal, count_product_greater,
    count_product_less, CountError,
};

/// Environment variable naming the b-file cache directory, consulted when
/// no explicit directory is given.
pub const CACHE_DIR_ENV: &str = "PARTPROD_OEIS_CACHE";

/// Canonical host for b-file downloads.
pub const OEIS_BASE_URL: &str = "https://oeis.org";

/// The sequence ids with vendored b-files.
pub const VENDORED_IDS: [&str; 4] = ["A001055", "A096276", "A319005", "A114324"];

/// Errors from parsing, fetching, or cross-checking.
#[derive(Debug, Error)]
pub enum OeisError {
    #[error("'{id}' is not an OEIS sequence id (expected 'A' and six digits)")]
    InvalidId { id: String },
    #[error("b-file contains no terms")]
    Empty,
    #[error("b-file line {line_no} is not 'index value': {text:?}")]
    MalformedLine { line_no: usize, text: String },
    #[error("b-file repeats index {index}")]
    DuplicateIndex { index: i64 },
    #[error("b-file skips from index {prev} to {next}")]
    NonContiguous { prev: i64, next: i64 },
    #[error("no vendored b-file for {id}")]
    NotVendored { id: String },
    #[error("requested range {from}..={to} is outside the series range {have_from}..={have_to}")]
    RangeOutsideSeries {
        from: i64,
        to: i64,
        have_from: i64,
        have_to: i64,
    },
    #[error("cannot compute counts at index {index}")]
    UnsupportedIndex { index: i64 },
    #[error(transparent)]
    Count(#[from] CountError),
    #[error("fetching {id}: HTTP status {status}")]
    HttpStatus { id: String, status: u16 },
    #[error("fetching b-file")]
    Http(#[from] reqwest::Error),
    #[error("reading or writing the b-file cache")]
    Io(#[from] std::io::Error),
}

fn validate_id(id: &str) -> Result<(), OeisError> {
    let ok = id.len() == 7
        && id.starts_with('A')
        && id[1..].bytes().all(|b| b.is_ascii_digit());
    if ok {
        Ok(())
    } else {
        Err(OeisError::InvalidId { id: id.to_string() })
    }
}

/// Conventional b-file name for a sequence, e.g. `b001055.txt`.
fn bfile_name(id: &str) -> String {
    format!("b{}.txt", &id[1..])
}

/// A contiguous run of terms of one OEIS sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OeisSeries {
    id: String,
    min_index: i64,
    values: Vec<BigInt>,
}

impl OeisSeries {
    /// Builds a series from its first index and consecutive values.
    pub fn new(id: &str, min_index: i64, values: Vec<BigInt>) -> Result<Self, OeisError> {
        validate_id(id)?;
        if values.is_empty() {
            return Err(OeisError::Empty);
        }
        Ok(OeisSeries {
            id: id.to_string(),
            min_index,
            values,
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn min_index(&self) -> i64 {
        self.min_index
    }

    pub fn max_index(&self) -> i64 {
        self.min_index + self.values.len() as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The term at `index`, if it lies in the stored range.
    pub fn value(&self, index: i64) -> Option<&BigInt> {
        if index < self.min_index {
            return None;
        }
        self.values.get((index - self.min_index) as usize)
    }

    /// Terms paired with their indices, in index order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(|(i, v)| (self.min_index + i as i64, v))
    }
}

/// Parses b-file text: one `index value` pair per line, `#` comments and
/// blank lines ignored, indices strictly consecutive.
pub fn parse_bfile(id: &str, text: &str) -> Result<OeisSeries, OeisError> {
    validate_id(id)?;
    let mut min_index = 0i64;
    let mut values: Vec<BigInt> = Vec::new();
    for (line_no, line) in text.lines().enumerate().map(|(i, l)| (i + 1, l)) {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let malformed = || OeisError::MalformedLine {
            line_no,
            text: line.to_string(),
        };
        let mut tokens = line.split_whitespace();
        let index: i64 = tokens
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(malformed)?;
        let value: BigInt = tokens
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(malformed)?;
        if tokens.next().is_some() {
            return Err(malformed());
        }
        if values.is_empty() {
            min_index = index;
        } else {
            let prev = min_index + values.len() as i64 - 1;
            if index <= prev && index >= min_index {
                return Err(OeisError::DuplicateIndex { index });
            }
            if index != prev + 1 {
                return Err(OeisError::NonContiguous { prev, next: index });
            }
        }
        values.push(value);
    }
    OeisSeries::new(id, min_index, values)
}

/// Renders a series back to b-file text; inverse of [`parse_bfile`].
pub fn render_bfile(series: &OeisSeries) -> String {
    let mut out = String::new();
    for (index, value) in series.iter() {
        out.push_str(&format!("{index} {value}\n"));
    }
    out
}

/// The b-file text bundled with the crate for `id`.
pub fn vendored_bfile(id: &str) -> Result<&'static str, OeisError> {
    validate_id(id)?;
    match id {
        "A001055" => Ok(include_str!("../data/b001055.txt")),
        "A096276" => Ok(include_str!("../data/b096276.txt")),
        "A319005" => Ok(include_str!("../data/b319005.txt")),
        "A114324" => Ok(include_str!("../data/b114324.txt")),
        _ => Err(OeisError::NotVendored { id: id.to_string() }),
    }
}

/// Parses the vendored b-file for `id`.
pub fn vendored_series(id: &str) -> Result<OeisSeries, OeisError> {
    parse_bfile(id, vendored_bfile(id)?)
}

/// Resolves the cache directory: an explicit path wins, then the
/// [`CACHE_DIR_ENV`] environment variable, then a per-user cache location.
pub fn resolve_cache_dir(explicit: Option<PathBuf>) -> PathBuf {
    if let Some(dir) = explicit {
        return dir;
    }
    if let Some(dir) = std::env::var_os(CACHE_DIR_ENV) {
        return PathBuf::from(dir);
    }
    let base = std::env::var_os("XDG_CACHE_HOME")
        .map(PathBuf::from)
        .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))
        .unwrap_or_else(std::env::temp_dir);
    base.join("partprod").join("oeis")
}

/// Returns the b-file bytes for `id`, reading `cache_dir` first and
/// downloading from oeis.org on a miss.
pub fn fetch_bfile(id: &str, cache_dir: &Path) -> Result<Vec<u8>, OeisError> {
    fetch_bfile_from(OEIS_BASE_URL, id, cache_dir)
}

/// [`fetch_bfile`] against an arbitrary base URL.
///
/// A downloaded file lands in the cache via a temporary file and an
/// atomic rename, so concurrent fetches of the same id cannot leave a
/// torn file behind.
pub fn fetch_bfile_from(base_url: &str, id: &str, cache_dir: &Path) -> Result<Vec<u8>, OeisError> {
    validate_id(id)?;
    let name = bfile_name(id);
    let cached = cache_dir.join(&name);
    if cached.exists() {
        return Ok(fs::read(&cached)?);
    }
    let url = format!("{}/{}/{}", base_url.trim_end_matches('/'), id, name);
    let client = reqwest::blocking::Client::builder()
        .timeout(Duration::from_secs(30))
        .build()?;
    let response = client.get(&url).send()?;
    if !response.status().is_success() {
        return Err(OeisError::HttpStatus {
            id: id.to_string(),
            status: response.status().as_u16(),
        });
    }
    let bytes = response.bytes()?.to_vec();
    fs::create_dir_all(cache_dir)?;
    let tmp = cache_dir.join(format!(".{name}.{}.tmp", std::process::id()));
    {
        let mut file = fs::File::create(&tmp)?;
        file.write_all(&bytes)?;
        file.sync_all()?;
    }
    fs::rename(&tmp, &cached)?;
    Ok(bytes)
}

/// Which computed count a series is compared against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantity {
    /// Partitions of n with product = n, i.e. A001055.
    PEq,
    /// Partitions of n with product <= n, i.e. A096276.
    PLeq,
    /// Partitions of n with product < n.
    PLess,
    /// Partitions of n with product >= n, i.e. A319005.
    PGeq,
    /// Partitions of n with product > n, i.e. A114324.
    PGreater,
    /// Partitions of n+1 with product < n+1; A096276 again, shifted.
    PLessNext,
}

impl Quantity {
    /// The quantity a vendored sequence tabulates.
    pub fn default_for(id: &str) -> Option<Quantity> {
        match id {
            "A001055" => Some(Quantity::PEq),
            "A096276" => Some(Quantity::PLeq),
            "A319005" => Some(Quantity::PGeq),
            "A114324" => Some(Quantity::PGreater),
            _ => None,
        }
    }

    fn compute(self, index: i64) -> Result<BigInt, OeisError> {
        let n = u64::try_from(index)
            .ok()
            .filter(|&n| n >= 1)
            .ok_or(OeisError::UnsupportedIndex { index })?;
        Ok(match self {
            Quantity::PEq => count_product_equal(n)?.into(),
            Quantity::PLeq => count_product_at_most(n)?.into(),
            Quantity::PLess => count_product_less(n)?.into(),
            Quantity::PGeq => BigInt::from(count_product_at_least(n)?),
            Quantity::PGreater => BigInt::from(count_product_greater(n)?),
            Quantity::PLessNext => count_product_less(n + 1)?.into(),
        })
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Quantity::PEq => "p_eq(n)",
            Quantity::PLeq => "p_leq(n)",
            Quantity::PLess => "p_less(n)",
            Quantity::PGeq => "p_geq(n)",
            Quantity::PGreater => "p_greater(n)",
            Quantity::PLessNext => "p_less(n+1)",
        };
        f.write_str(name)
    }
}

/// One disagreement between a series and the computed counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub index: i64,
    pub expected: BigInt,
    pub computed: BigInt,
}

/// Outcome of comparing one series against one computed quantity over a
/// range of indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub series_id: String,
    pub quantity: Quantity,
    pub checked_range: RangeInclusive<i64>,
    pub mismatches: Vec<Mismatch>,
}

impl VerificationReport {
    pub fn pass(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares `quantity` computed at every index of `range` against the
/// series' stored terms.
pub fn cross_check(
    series: &OeisSeries,
    quantity: Quantity,
    range: RangeInclusive<i64>,
) -> Result<VerificationReport, OeisError> {
    let (from, to) = (*range.start(), *range.end());
    if from > to || from < series.min_index() || to > series.max_index() {
        return Err(OeisError::RangeOutsideSeries {
            from,
            to,
            have_from: series.min_index(),
            have_to: series.max_index(),
        });
    }
    let mut mismatches = Vec::new();
    for index in range.clone() {
        let expected = series.value(index).expect("index checked in range");
        let computed = quantity.compute(index)?;
        if &computed != expected {
            mismatches.push(Mismatch {
                index,
                expected: expected.clone(),
                computed,
            });
        }
    }
    Ok(VerificationReport {
        series_id: series.id().to_string(),
        quantity,
        checked_range: range,
        mismatches,
    })
}
