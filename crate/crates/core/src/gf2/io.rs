//! Parity-check matrix files.
//!
//! Plain format: first line `m n`, then `m` lines of `n` space-separated
//! `0`/`1` digits, newline-terminated. Alist is the usual sparse
//! interchange format (1-based indices, zero padding allowed).

use std::fs;
use std::path::Path;

use super::code::{builtin_code, LinearCode};
use super::matrix::BitMatrix;
use crate::error::{Error, Result};

pub fn to_plain_string(h: &BitMatrix) -> String {
    let mut s = format!("{} {}\n", h.rows(), h.cols());
    for r in 0..h.rows() {
        let row: Vec<&str> = (0..h.cols())
            .map(|c| if h.get(r, c) { "1" } else { "0" })
            .collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

fn parse_usize(tok: Option<&str>, what: &str) -> Result<usize> {
    tok.ok_or_else(|| Error::Parse(format!("missing {what}")))?
        .parse()
        .map_err(|_| Error::Parse(format!("bad {what}")))
}

pub fn parse_plain(text: &str) -> Result<BitMatrix> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| Error::Parse("empty matrix file".into()))?;
    let mut it = header.split_whitespace();
    let m = parse_usize(it.next(), "row count")?;
    let n = parse_usize(it.next(), "column count")?;
    if it.next().is_some() {
        return Err(Error::Parse("header must be `m n`".into()));
    }
    let mut rows = Vec::with_capacity(m);
    for r in 0..m {
        let line = lines
            .next()
            .ok_or_else(|| Error::Parse(format!("missing row {r}")))?;
        let row = line
            .split_whitespace()
            .map(|t| match t {
                "0" => Ok(0u8),
                "1" => Ok(1u8),
                other => Err(Error::Parse(format!("row {r}: bad entry {other:?}"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        if row.len() != n {
            return Err(Error::Parse(format!("row {r} has {} entries, expected {n}", row.len())));
        }
        rows.push(row);
    }
    if lines.any(|l| !l.trim().is_empty()) {
        return Err(Error::Parse("trailing data after matrix rows".into()));
    }
    BitMatrix::from_rows(&rows)
}

pub fn parse_alist(text: &str) -> Result<BitMatrix> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let mut nums = |what: &str| -> Result<Vec<usize>> {
        lines
            .next()
            .ok_or_else(|| Error::Parse(format!("alist: missing {what}")))?
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("alist: bad number in {what}"))))
            .collect()
    };
    let dims = nums("dimensions")?;
    let [n, m] = dims[..] else {
        return Err(Error::Parse("alist: first line must be `n m`".into()));
    };
    if n == 0 || m == 0 {
        return Err(Error::Parse("alist: empty matrix".into()));
    }
    nums("maximum weights")?;
    let col_w = nums("column weights")?;
    let row_w = nums("row weights")?;
    if col_w.len() != n || row_w.len() != m {
        return Err(Error::Parse("alist: weight list length mismatch".into()));
    }
    let mut h = BitMatrix::zeros(m, n);
    for (c, &w) in col_w.iter().enumerate() {
        let idx = nums("column list")?;
        let entries: Vec<usize> = idx.into_iter().filter(|&i| i != 0).collect();
        if entries.len() != w {
            return Err(Error::Parse(format!("alist: column {c} weight mismatch")));
        }
        for r in entries {
            if r > m {
                return Err(Error::Parse(format!("alist: row index {r} out of range")));
            }
            h.set(r - 1, c, true);
        }
    }
    // the row section is redundant; check it when present
    for (r, &w) in row_w.iter().enumerate() {
        let Ok(idx) = nums("row list") else { break };
        let entries: Vec<usize> = idx.into_iter().filter(|&i| i != 0).collect();
        if entries.len() != w || entries.iter().any(|&c| c == 0 || c > n || !h.get(r, c - 1)) {
            return Err(Error::Parse(format!("alist: row {r} disagrees with column lists")));
        }
    }
    Ok(h)
}

pub fn to_alist_string(h: &BitMatrix) -> String {
    let cols: Vec<Vec<usize>> = (0..h.cols())
        .map(|c| (0..h.rows()).filter(|&r| h.get(r, c)).collect())
        .collect();
    let rows: Vec<Vec<usize>> = (0..h.rows()).map(|r| h.row_support(r)).collect();
    let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    let mut s = format!("{} {}\n", h.cols(), h.rows());
    let max_c = cols.iter().map(Vec::len).max().unwrap_or(0);
    let max_r = rows.iter().map(Vec::len).max().unwrap_or(0);
    s.push_str(&format!("{max_c} {max_r}\n"));
    s.push_str(&join(&cols.iter().map(Vec::len).collect::<Vec<_>>()));
    s.push('\n');
    s.push_str(&join(&rows.iter().map(Vec::len).collect::<Vec<_>>()));
    s.push('\n');
    // index lists are zero-padded to the maximum weight (at least one
    // entry) so empty rows and columns keep their line
    let padded = |v: &[usize], width: usize| {
        let mut out: Vec<usize> = v.iter().map(|i| i + 1).collect();
        out.resize(width.max(1), 0);
        join(&out)
    };
    for c in &cols {
        s.push_str(&padded(c, max_c));
        s.push('\n');
    }
    for r in &rows {
        s.push_str(&padded(r, max_r));
        s.push('\n');
    }
    s
}

pub fn save_plain(h: &BitMatrix, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, to_plain_string(h))?;
    Ok(())
}

/// Loads a matrix file, picking the alist reader for `.alist` files.
pub fn load_matrix(path: impl AsRef<Path>) -> Result<BitMatrix> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)?;
    if path.extension().is_some_and(|e| e == "alist") {
        parse_alist(&text)
    } else {
        parse_plain(&text)
    }
}

/// Resolves a built-in code name, falling back to a matrix file path.
pub fn load_code(name_or_path: &str) -> Result<LinearCode> {
    match builtin_code(name_or_path) {
        Err(Error::UnknownCode(_)) if Path::new(name_or_path).exists() => {
            let h = load_matrix(name_or_path)?;
            let label = Path::new(name_or_path)
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| name_or_path.to_string());
            Ok(LinearCode::new(label, h))
        }
        other => other,
    }
}
