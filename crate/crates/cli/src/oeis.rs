//! OEIS b-files and the shift search against exact counts.

use std::path::Path;

use num_bigint::{BigInt, BigUint};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OeisError {
    #[error("`{0}` is not an OEIS id (expected A followed by six digits)")]
    BadId(String),
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("b-file has no entries")]
    Empty,
    #[error("{path}: {cause}")]
    Io { path: String, cause: std::io::Error },
    #[error("fetching {url}: {reason}")]
    Fetch { url: String, reason: String },
    #[error("no shift gives {need} or more matching terms (best: {best} at shift {shift})")]
    NoShift {
        need: usize,
        best: usize,
        shift: i64,
    },
}

/// Fewest matching terms accepted as evidence for a shift.
pub const MIN_MATCHES: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OeisBFile {
    pub id: String,
    /// Strictly increasing indices.
    pub terms: Vec<(i64, BigInt)>,
}

pub fn check_id(id: &str) -> Result<(), OeisError> {
    let ok = id.len() == 7 && id.starts_with('A') && id[1..].bytes().all(|b| b.is_ascii_digit());
    if ok {
        Ok(())
    } else {
        Err(OeisError::BadId(id.to_string()))
    }
}

/// `https://oeis.org/A171792/b171792.txt` for `A171792`.
pub fn bfile_url(id: &str) -> Result<String, OeisError> {
    check_id(id)?;
    Ok(format!("https://oeis.org/{id}/b{}.txt", &id[1..]))
}

impl OeisBFile {
    /// Lines `index value`; `#` comments and blank lines are skipped.
    pub fn parse(id: &str, text: &str) -> Result<Self, OeisError> {
        let mut terms: Vec<(i64, BigInt)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |reason: String| OeisError::Parse {
                line: i + 1,
                reason,
            };
            let mut fields = line.split_whitespace();
            let (Some(idx), Some(val), None) = (fields.next(), fields.next(), fields.next()) else {
                return Err(err(format!("expected `index value`, found `{line}`")));
            };
            let idx: i64 = idx.parse().map_err(|_| err(format!("bad index `{idx}`")))?;
            let val: BigInt = val.parse().map_err(|_| err(format!("bad value `{val}`")))?;
            if let Some(&(prev, _)) = terms.last() {
                if idx <= prev {
                    return Err(err(format!("index {idx} does not follow {prev}")));
                }
            }
            terms.push((idx, val));
        }
        if terms.is_empty() {
            return Err(OeisError::Empty);
        }
        Ok(OeisBFile {
            id: id.to_string(),
            terms,
        })
    }

    pub fn read(id: &str, path: &Path) -> Result<Self, OeisError> {
        let text = std::fs::read_to_string(path).map_err(|cause| OeisError::Io {
            path: path.display().to_string(),
            cause,
        })?;
        Self::parse(id, &text)
    }

    /// A b-file holding `values[i]` at index `i`.
    pub fn from_values(id: &str, values: &[BigUint]) -> Self {
        OeisBFile {
            id: id.to_string(),
            terms: values
                .iter()
                .enumerate()
                .map(|(i, v)| (i as i64, BigInt::from(v.clone())))
                .collect(),
        }
    }

    fn value_at(&self, index: i64) -> Option<&BigInt> {
        self.terms
            .binary_search_by_key(&index, |(i, _)| *i)
            .ok()
            .map(|pos| &self.terms[pos].1)
    }

    pub fn render(&self) -> String {
        self.terms
            .iter()
            .map(|(i, v)| format!("{i} {v}\n"))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub n: usize,
    pub ours: BigUint,
    /// `None` when the b-file has no term at `n - shift`.
    pub theirs: Option<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftReport {
    pub id: String,
    pub upto: usize,
    /// `B_n = a(n - shift)`.
    pub shift: i64,
    /// Consecutive agreements from the first compared `n`.
    pub matched: usize,
    /// First `n` compared under this shift.
    pub start: usize,
    pub first_mismatch: Option<Mismatch>,
}

impl ShiftReport {
    pub fn success(&self) -> bool {
        let need = (self.upto as i64 - self.shift.abs()).max(MIN_MATCHES as i64) as usize;
        self.matched >= need
    }

    pub fn render(&self) -> String {
        let mut out = format!(
            "{}: shift {} (B_n = a(n - {})), {} terms agree for n = {}..{}\n",
            self.id,
            self.shift,
            self.shift,
            self.matched,
            self.start,
            self.start + self.matched.saturating_sub(1)
        );
        match &self.first_mismatch {
            None => out.push_str("first mismatch: none\n"),
            Some(m) => {
                let theirs = m
                    .theirs
                    .as_ref()
                    .map_or("missing".to_string(), |v| v.to_string());
                out.push_str(&format!(
                    "first mismatch: n = {}, ours {}, theirs {}\n",
                    m.n, m.ours, theirs
                ));
            }
        }
        out.push_str(if self.success() {
            "result: ok\n"
        } else {
            "result: FAILED\n"
        });
        out
    }
}

/// Run of agreements of `counts[n]` with `a(n - shift)` from the first `n`
/// whose partner index exists in the b-file.
fn compare(counts: &[BigUint], bfile: &OeisBFile, shift: i64) -> (usize, usize, Option<Mismatch>) {
    let first = bfile.terms[0].0 + shift;
    let start = first.max(0) as usize;
    let mut matched = 0;
    for (n, ours) in counts.iter().enumerate().skip(start) {
        let theirs = bfile.value_at(n as i64 - shift);
        if theirs != Some(&BigInt::from(ours.clone())) {
            let m = Mismatch {
                n,
                ours: ours.clone(),
                theirs: theirs.cloned(),
            };
            return (start, matched, Some(m));
        }
        matched += 1;
    }
    (start, matched, None)
}

/// Shift maximizing the agreement run over `counts[0..=N]`; ties go to the
/// smaller `|shift|`, then to the smaller shift.
pub fn find_shift(counts: &[BigUint], bfile: &OeisBFile) -> Result<ShiftReport, OeisError> {
    let upto = counts.len().saturating_sub(1);
    let lo = bfile.terms[0].0;
    let hi = bfile.terms.last().expect("nonempty").0;
    // every shift putting some b-file index inside 0..=N
    let shifts = (-hi)..=(upto as i64 - lo);
    let mut best: Option<ShiftReport> = None;
    for s in shifts {
        let (start, matched, first_mismatch) = compare(counts, bfile, s);
        let better = match &best {
            None => true,
            Some(b) => {
                (matched, std::cmp::Reverse(s.abs()), std::cmp::Reverse(s))
                    > (
                        b.matched,
                        std::cmp::Reverse(b.shift.abs()),
                        std::cmp::Reverse(b.shift),
                    )
            }
        };
        if better {
            best = Some(ShiftReport {
                id: bfile.id.clone(),
                upto,
                shift: s,
                matched,
                start,
                first_mismatch,
            });
        }
    }
    let best = best.ok_or(OeisError::Empty)?;
    if best.matched < MIN_MATCHES {
        return Err(OeisError::NoShift {
            need: MIN_MATCHES,
            best: best.matched,
            shift: best.shift,
        });
    }
    Ok(best)
}

/// One GET of the b-file, written to `dest`. Returns the bytes written.
pub fn fetch(id: &str, dest: &Path) -> Result<usize, OeisError> {
    let url = bfile_url(id)?;
    let fail = |reason: String| OeisError::Fetch {
        url: url.clone(),
        reason,
    };
    let response = ureq::get(&url).call().map_err(|e| match e {
        ureq::Error::Status(code, _) => fail(format!("HTTP status {code}")),
        ureq::Error::Transport(t) => match t.message() {
            Some(m) => fail(format!("{}: {m}", t.kind())),
            None => fail(t.kind().to_string()),
        },
    })?;
    let body = response.into_string().map_err(|e| fail(e.to_string()))?;
    OeisBFile::parse(id, &body)?;
    if let Some(dir) = dest.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|cause| OeisError::Io {
            path: dir.display().to_string(),
            cause,
        })?;
    }
    crate::cache::write_atomic(dest, body.as_bytes()).map_err(|e| fail(e.to_string()))?;
    Ok(body.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use wit_core::exact::count_binary_upto;

    fn shifted(values: &[BigUint], offset: i64, drop: usize) -> OeisBFile {
        OeisBFile {
            id: "A000000".into(),
            terms: values
                .iter()
                .skip(drop)
                .enumerate()
                .map(|(i, v)| (i as i64 + offset, BigInt::from(v.clone())))
                .collect(),
        }
    }

    #[test]
    fn parse_with_comments() {
        let b = OeisBFile::parse("A000001", "# header\n\n1 1\n2  -2\n3 7\n").unwrap();
        assert_eq!(
            b.terms,
            vec![(1, 1.into()), (2, (-2).into()), (3, 7.into())]
        );
        assert_eq!(b.render(), "1 1\n2 -2\n3 7\n");
    }

    #[test]
    fn parse_errors_name_line() {
        let e = OeisBFile::parse("A000001", "# c\n1 1\nabc\n").unwrap_err();
        assert!(matches!(e, OeisError::Parse { line: 3, .. }), "{e}");
        assert!(e.to_string().starts_with("line 3:"));
        let e = OeisBFile::parse("A000001", "1 1\n1 2\n").unwrap_err();
        assert!(matches!(e, OeisError::Parse { line: 2, .. }), "{e}");
        let e = OeisBFile::parse("A000001", "1 x\n").unwrap_err();
        assert!(matches!(e, OeisError::Parse { line: 1, .. }), "{e}");
        assert!(matches!(
            OeisBFile::parse("A000001", "# only\n"),
            Err(OeisError::Empty)
        ));
    }

    #[test]
    fn urls() {
        assert_eq!(
            bfile_url("A171792").unwrap(),
            "https://oeis.org/A171792/b171792.txt"
        );
        assert!(bfile_url("171792").is_err());
        assert!(bfile_url("A17179x").is_err());
    }

    #[test]
    fn self_check_is_shift_zero() {
        let t = count_binary_upto(50);
        let b = OeisBFile::from_values("A000000", t.entries());
        let r = find_shift(t.entries(), &b).unwrap();
        assert_eq!((r.shift, r.matched, r.start), (0, 51, 0));
        assert!(r.first_mismatch.is_none());
        assert!(r.success());
    }

    #[test]
    fn recovers_planted_shift() {
        let t = count_binary_upto(60);
        // a(1) = B_2, a(2) = B_3, ...
        let b = shifted(t.entries(), 1, 2);
        let r = find_shift(&t.entries()[..=50], &b).unwrap();
        assert_eq!(r.shift, 1);
        assert_eq!(r.start, 2);
        assert_eq!(r.matched, 49);
        assert!(r.success(), "{}", r.render());
        // a(0) = 1 = B_2 as well
        let r = find_shift(&t.entries()[..=50], &shifted(t.entries(), 0, 2)).unwrap();
        assert_eq!(r.shift, 2);
        assert!(r.success());
    }

    #[test]
    fn reports_first_mismatch() {
        let t = count_binary_upto(50);
        let mut b = shifted(t.entries(), 1, 2);
        b.terms[20].1 += 1;
        let r = find_shift(t.entries(), &b).unwrap();
        assert_eq!(r.shift, 1);
        assert_eq!(r.matched, 20);
        let m = r.first_mismatch.clone().unwrap();
        assert_eq!(m.n, 22);
        assert!(!r.success());
        assert!(r.render().contains("first mismatch: n = 22"));
    }

    #[test]
    fn short_bfile_fails() {
        let t = count_binary_upto(50);
        let b = shifted(&t.entries()[..20], 1, 2);
        let r = find_shift(t.entries(), &b).unwrap();
        assert_eq!(r.matched, 18);
        assert!(!r.success());
        assert!(r.first_mismatch.unwrap().theirs.is_none());
    }

    #[test]
    fn unrelated_sequence_has_no_shift() {
        let t = count_binary_upto(50);
        let b = OeisBFile::parse(
            "A000027",
            &(1..=60)
                .map(|i| format!("{i} {}\n", 3 * i + 5))
                .collect::<String>(),
        )
        .unwrap();
        assert!(matches!(
            find_shift(t.entries(), &b),
            Err(OeisError::NoShift { .. })
        ));
    }
}
