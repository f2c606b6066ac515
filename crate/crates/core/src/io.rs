//! Plain-text family files.
//!
//! ```text
//! # optional comments
//! q=2 n=3 m=2 count=7
//! 1 0 0; 0 1 0
//! ...
//! ```
//!
//! The header may also carry `l=<int>` for a singular space, in which case
//! rows have n + l entries and W1 is the last l coordinates. Members are
//! written as canonical bases in canonical order, so writing, reading and
//! writing again gives identical bytes. The reader accepts any basis.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::family::Family;
use crate::gf::{field_make, Field};
use crate::singular::SingularSpace;
use crate::subspace::{span_of, Subspace};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyFile {
    pub family: Family,
    /// Dimension of W1 when the file describes a singular space.
    pub l: Option<usize>,
}

impl FamilyFile {
    pub fn plain(family: Family) -> Self {
        FamilyFile { family, l: None }
    }

    /// The n of the header: ambient dimension minus l.
    pub fn n(&self) -> usize {
        self.family.ambient() - self.l.unwrap_or(0)
    }

    pub fn singular(&self) -> Result<Option<SingularSpace>> {
        match self.l {
            None => Ok(None),
            Some(l) => Ok(Some(SingularSpace::new(self.family.field(), self.n(), l)?)),
        }
    }

    pub fn to_text(&self) -> String {
        let f = &self.family;
        let mut s = format!(
            "q={} n={} m={} count={}",
            f.field().q(),
            self.n(),
            f.m(),
            f.len()
        );
        if let Some(l) = self.l {
            write!(s, " l={l}").unwrap();
        }
        s.push('\n');
        for member in f {
            s.push_str(&format_subspace(member));
            s.push('\n');
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 0,
            msg: "missing header".into(),
        })?;
        let h = Header::parse(hline, header)?;
        let field = field_make(h.q).map_err(|e| Error::Parse {
            line: hline,
            msg: e.to_string(),
        })?;
        let ambient = h.n + h.l.unwrap_or(0);
        let mut members = Vec::new();
        for (line, body) in lines {
            let s = parse_subspace(&field, ambient, body).map_err(|msg| Error::Parse { line, msg })?;
            if s.dim() != h.m {
                return Err(Error::Parse {
                    line,
                    msg: format!("subspace of dimension {}, header says m={}", s.dim(), h.m),
                });
            }
            members.push(s);
        }
        if members.len() != h.count {
            return Err(Error::Parse {
                line: hline,
                msg: format!("header count={} but {} members listed", h.count, members.len()),
            });
        }
        let family = Family::new(&field, ambient, h.m, members)?;
        if family.len() != h.count {
            return Err(Error::Parse {
                line: hline,
                msg: "duplicate members".into(),
            });
        }
        Ok(FamilyFile { family, l: h.l })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        FamilyFile::parse(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        Ok(std::fs::write(path, self.to_text())?)
    }
}

struct Header {
    q: u64,
    n: usize,
    m: usize,
    count: usize,
    l: Option<usize>,
}

impl Header {
    fn parse(line: usize, text: &str) -> Result<Header> {
        let err = |msg: String| Error::Parse { line, msg };
        let (mut q, mut n, mut m, mut count, mut l) = (None, None, None, None, None);
        for tok in text.split_whitespace() {
            let (k, v) = tok
                .split_once('=')
                .ok_or_else(|| err(format!("expected key=value, got {tok:?}")))?;
            let v: u64 = v.parse().map_err(|_| err(format!("bad value in {tok:?}")))?;
            let slot = match k {
                "q" => &mut q,
                "n" => &mut n,
                "m" => &mut m,
                "count" => &mut count,
                "l" => &mut l,
                _ => return Err(err(format!("unknown header key {k:?}"))),
            };
            if slot.replace(v).is_some() {
                return Err(err(format!("repeated header key {k:?}")));
            }
        }
        let need = |v: Option<u64>, k: &str| v.ok_or_else(|| err(format!("header lacks {k}=")));
        Ok(Header {
            q: need(q, "q")?,
            n: need(n, "n")? as usize,
            m: need(m, "m")? as usize,
            count: need(count, "count")? as usize,
            l: l.map(|v| v as usize),
        })
    }
}

/// Rows of the canonical basis, entries separated by spaces, rows by `; `.
pub fn format_subspace(s: &Subspace) -> String {
    s.rows()
        .map(|r| r.iter().map(u32::to_string).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join("; ")
}

/// Parses `format_subspace` output (or any spanning set in that layout).
pub fn parse_subspace(field: &Field, ambient: usize, text: &str) -> std::result::Result<Subspace, String> {
    let mut rows = Vec::new();
    for row in text.split(';') {
        let row: Vec<u32> = row
            .split_whitespace()
            .map(|t| t.parse::<u32>().map_err(|_| format!("bad entry {t:?}")))
            .collect::<std::result::Result<_, _>>()?;
        if row.is_empty() {
            continue;
        }
        if row.len() != ambient {
            return Err(format!("row of length {}, expected {ambient}", row.len()));
        }
        if let Some(&x) = row.iter().find(|&&x| x >= field.q()) {
            return Err(format!("entry {x} out of range for q={}", field.q()));
        }
        rows.push(row);
    }
    span_of(field, ambient, &rows).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::singular::{construct_extremal, construct_extremal_singular};

    #[test]
    fn small_file_round_trip() {
        let f = field_make(2).unwrap();
        let fam = construct_extremal(&f, 3, 2).unwrap();
        let text = FamilyFile::plain(fam.clone()).to_text();
        assert!(text.starts_with("q=2 n=3 m=2 count=7\n"));
        assert_eq!(text.lines().nth(1), Some("0 1 0; 0 0 1"));
        let back = FamilyFile::parse(&text).unwrap();
        assert_eq!(back.family, fam);
        assert_eq!(back.to_text(), text);
    }

    #[test]
    fn reader_canonicalises_and_accepts_comments() {
        let text = "# two lines\ncount=2 m=1 n=3 q=3\n2 2 0\n\n# again\n0 0 2\n";
        let ff = FamilyFile::parse(text).unwrap();
        assert_eq!(ff.to_text(), "q=3 n=3 m=1 count=2\n0 0 1\n1 1 0\n");
    }

    #[test]
    fn singular_header() {
        let f = field_make(2).unwrap();
        let s = SingularSpace::new(&f, 2, 2).unwrap();
        let fam = construct_extremal_singular(&s, 2, 1).unwrap();
        let ff = FamilyFile { family: fam, l: Some(2) };
        let text = ff.to_text();
        assert!(text.starts_with(&format!("q=2 n=2 m=2 count={} l=2\n", ff.family.len())));
        let back = FamilyFile::parse(&text).unwrap();
        assert_eq!(back, ff);
        assert_eq!(back.singular().unwrap().unwrap().l(), 2);
    }

    #[test]
    fn malformed_inputs() {
        for bad in [
            "",
            "q=2 n=3 m=2\n1 0 0; 0 1 0\n",
            "q=2 n=3 m=2 count=2\n1 0 0; 0 1 0\n",
            "q=2 n=3 m=2 count=1\n1 0; 0 1\n",
            "q=2 n=3 m=2 count=1\n1 0 0; 2 1 0\n",
            "q=2 n=3 m=2 count=1\n1 0 0; 1 0 0\n",
            "q=6 n=3 m=1 count=1\n1 0 0\n",
            "q=2 n=3 m=1 count=2\n1 0 0\n1 0 0\n",
            "q=2 n=3 m=1 z=1 count=1\n1 0 0\n",
        ] {
            assert!(matches!(FamilyFile::parse(bad), Err(Error::Parse { .. })), "{bad:?}");
        }
    }
}
