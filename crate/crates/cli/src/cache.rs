//! Plain-text persistence for exact count tables.
//!
//! ```text
//! # wit-cache v1 kind=B k=2
//! 0<TAB>0
//! 1<TAB>0
//! 2<TAB>1
//! ```
//!
//! `B` and `H` files list every index from 0 upward. `Bmn` files list the
//! nonzero `B_{m,n}` keyed `m,n`, ordered by `(m, n)`. Writes go through a
//! temporary file in the target directory and a rename.

use std::fmt::{self, Write as _};
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_bigint::BigUint;
use thiserror::Error;
use wit_core::exact::{CountTable, LabelStratifiedTable, Route, TableKind};

pub const VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CacheKind {
    B,
    H,
    Bmn,
}

impl CacheKind {
    pub fn tag(self) -> &'static str {
        match self {
            CacheKind::B => "B",
            CacheKind::H => "H",
            CacheKind::Bmn => "Bmn",
        }
    }
}

impl fmt::Display for CacheKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for CacheKind {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "B" => Ok(CacheKind::B),
            "H" => Ok(CacheKind::H),
            "Bmn" => Ok(CacheKind::Bmn),
            _ => Err(()),
        }
    }
}

impl From<TableKind> for CacheKind {
    fn from(k: TableKind) -> Self {
        match k {
            TableKind::B => CacheKind::B,
            TableKind::H => CacheKind::H,
        }
    }
}

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("{path}: {cause}")]
    Io {
        path: PathBuf,
        cause: std::io::Error,
    },
    #[error(
        "missing or malformed header (expected `# wit-cache v{VERSION} kind=<B|H|Bmn> k=<k>`)"
    )]
    Header,
    #[error("unsupported cache version {0} (this build reads v{VERSION})")]
    Version(String),
    #[error("cache holds kind={found} k={found_k}, requested kind={want} k={want_k}")]
    KindMismatch {
        found: CacheKind,
        found_k: usize,
        want: CacheKind,
        want_k: usize,
    },
    #[error("line {line}: {reason}")]
    Corrupt { line: usize, reason: String },
}

/// Header and raw entries of a cache file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CacheFile {
    pub kind: CacheKind,
    pub arity: usize,
    /// `(m, n)` for `Bmn`; `(0, index)` otherwise.
    pub entries: Vec<((usize, usize), BigUint)>,
}

impl CacheFile {
    pub fn from_table(table: &CountTable) -> Self {
        CacheFile {
            kind: table.kind().into(),
            arity: table.arity(),
            entries: table
                .entries()
                .iter()
                .cloned()
                .enumerate()
                .map(|(i, v)| ((0, i), v))
                .collect(),
        }
    }

    pub fn from_stratified(table: &LabelStratifiedTable) -> Self {
        CacheFile {
            kind: CacheKind::Bmn,
            arity: 2,
            entries: table.nonzero().map(|(key, v)| (key, v.clone())).collect(),
        }
    }

    pub fn render(&self) -> String {
        let mut out = format!(
            "# wit-cache v{VERSION} kind={} k={}\n",
            self.kind, self.arity
        );
        for ((m, n), v) in &self.entries {
            match self.kind {
                CacheKind::Bmn => writeln!(out, "{m},{n}\t{v}"),
                _ => writeln!(out, "{n}\t{v}"),
            }
            .expect("write to string");
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, CacheError> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or(CacheError::Header)?;
        let (kind, arity) = parse_header(header)?;
        let mut entries: Vec<((usize, usize), BigUint)> = Vec::new();
        for (i, line) in lines {
            let line_no = i + 1;
            let corrupt = |reason: String| CacheError::Corrupt {
                line: line_no,
                reason,
            };
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('\t')
                .ok_or_else(|| corrupt("expected `<index>\\t<value>`".into()))?;
            let key = match kind {
                CacheKind::Bmn => {
                    let (m, n) = key
                        .split_once(',')
                        .ok_or_else(|| corrupt(format!("bad key `{key}`")))?;
                    (
                        parse_index(m).map_err(corrupt)?,
                        parse_index(n).map_err(corrupt)?,
                    )
                }
                _ => (0, parse_index(key).map_err(corrupt)?),
            };
            let value = parse_value(value).map_err(corrupt)?;
            if let Some((prev, _)) = entries.last() {
                if key <= *prev {
                    return Err(corrupt("entries out of order".into()));
                }
            }
            if kind != CacheKind::Bmn && key.1 != entries.len() {
                return Err(corrupt(format!(
                    "expected index {}, found {}",
                    entries.len(),
                    key.1
                )));
            }
            entries.push((key, value));
        }
        Ok(CacheFile {
            kind,
            arity,
            entries,
        })
    }

    fn expect(&self, kind: CacheKind, arity: usize) -> Result<(), CacheError> {
        if self.kind != kind || self.arity != arity {
            return Err(CacheError::KindMismatch {
                found: self.kind,
                found_k: self.arity,
                want: kind,
                want_k: arity,
            });
        }
        Ok(())
    }

    /// Rebuild a count table; the route is reported as the recurrence.
    pub fn into_table(self, kind: TableKind, arity: usize) -> Result<CountTable, CacheError> {
        self.expect(kind.into(), arity)?;
        let entries = self.entries.into_iter().map(|(_, v)| v).collect();
        Ok(CountTable::new(arity, kind, Route::Recurrence, entries))
    }

    pub fn into_stratified(self) -> Result<LabelStratifiedTable, CacheError> {
        self.expect(CacheKind::Bmn, 2)?;
        let max_size = self.entries.iter().map(|((_, n), _)| *n).max().unwrap_or(0);
        Ok(LabelStratifiedTable::from_entries(max_size, self.entries))
    }
}

fn parse_header(line: &str) -> Result<(CacheKind, usize), CacheError> {
    let rest = line
        .strip_prefix("# wit-cache ")
        .ok_or(CacheError::Header)?;
    let mut parts = rest.split(' ');
    let version = parts
        .next()
        .and_then(|v| v.strip_prefix('v'))
        .ok_or(CacheError::Header)?;
    if version != VERSION.to_string() {
        return Err(CacheError::Version(version.to_string()));
    }
    let kind = parts
        .next()
        .and_then(|s| s.strip_prefix("kind="))
        .and_then(|s| s.parse().ok())
        .ok_or(CacheError::Header)?;
    let arity = parts
        .next()
        .and_then(|s| s.strip_prefix("k="))
        .and_then(|s| s.parse().ok())
        .ok_or(CacheError::Header)?;
    if parts.next().is_some() {
        return Err(CacheError::Header);
    }
    Ok((kind, arity))
}

fn parse_index(s: &str) -> Result<usize, String> {
    s.parse().map_err(|_| format!("bad index `{s}`"))
}

fn parse_value(s: &str) -> Result<BigUint, String> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("bad value `{s}`"));
    }
    s.parse().map_err(|_| format!("bad value `{s}`"))
}

/// Write `contents` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<(), CacheError> {
    let io = |cause| CacheError::Io {
        path: path.to_path_buf(),
        cause,
    };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents).map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

pub fn read(path: &Path) -> Result<CacheFile, CacheError> {
    let text = std::fs::read_to_string(path).map_err(|cause| CacheError::Io {
        path: path.to_path_buf(),
        cause,
    })?;
    CacheFile::parse(&text)
}

pub fn save_table(path: &Path, table: &CountTable) -> Result<(), CacheError> {
    write_atomic(path, CacheFile::from_table(table).render().as_bytes())
}

pub fn load_table(path: &Path, kind: TableKind, arity: usize) -> Result<CountTable, CacheError> {
    read(path)?.into_table(kind, arity)
}

pub fn save_stratified(path: &Path, table: &LabelStratifiedTable) -> Result<(), CacheError> {
    write_atomic(path, CacheFile::from_stratified(table).render().as_bytes())
}

pub fn load_stratified(path: &Path) -> Result<LabelStratifiedTable, CacheError> {
    read(path)?.into_stratified()
}

/// Conventional file name inside a cache directory.
pub fn file_name(kind: CacheKind, arity: usize) -> String {
    format!("{}-k{arity}.tsv", kind.tag())
}
