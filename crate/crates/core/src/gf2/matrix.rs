use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

/// Dense GF(2) matrix with bit-packed rows.
///
/// Rows are stored contiguously, `words_per_row` machine words each, with
/// column `c` living in bit `c % 64` of word `c / 64`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows >= 1 && cols >= 1, "matrix must be at least 1x1");
        let words_per_row = cols.div_ceil(WORD);
        BitMatrix {
            rows,
            cols,
            words_per_row,
            data: vec![0; rows * words_per_row],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from rows of 0/1 entries.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let first = rows
            .first()
            .ok_or_else(|| Error::InvalidParameters("matrix needs at least one row".into()))?;
        let cols = first.as_ref().len();
        if cols == 0 {
            return Err(Error::InvalidParameters("matrix needs at least one column".into()));
        }
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::LengthMismatch {
                    expected: cols,
                    actual: row.len(),
                });
            }
            for (c, &b) in row.iter().enumerate() {
                match b {
                    0 => {}
                    1 => m.set(r, c, true),
                    other => {
                        return Err(Error::InvalidParameters(format!(
                            "entry ({r},{c}) = {other} is not binary"
                        )))
                    }
                }
            }
        }
        Ok(m)
    }

    /// Parses rows written as strings of `0`/`1` characters, e.g. `"0101"`.
    pub fn from_bit_strings(rows: &[&str]) -> Result<Self> {
        let parsed: Vec<Vec<u8>> = rows
            .iter()
            .map(|s| {
                s.chars()
                    .filter(|c| !c.is_whitespace())
                    .map(|c| match c {
                        '0' => Ok(0),
                        '1' => Ok(1),
                        other => Err(Error::Parse(format!("unexpected character {other:?}"))),
                    })
                    .collect::<Result<Vec<u8>>>()
            })
            .collect::<Result<_>>()?;
        Self::from_rows(&parsed)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        (self.data[r * self.words_per_row + c / WORD] >> (c % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        debug_assert!(r < self.rows && c < self.cols);
        let w = &mut self.data[r * self.words_per_row + c / WORD];
        let mask = 1u64 << (c % WORD);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    #[inline]
    pub fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.words_per_row..(r + 1) * self.words_per_row]
    }

    pub fn row_bits(&self, r: usize) -> Vec<u8> {
        (0..self.cols).map(|c| self.get(r, c) as u8).collect()
    }

    /// Column indices holding a one in row `r`, ascending.
    pub fn row_support(&self, r: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for (wi, &w) in self.row_words(r).iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let b = w.trailing_zeros() as usize;
                out.push(wi * WORD + b);
                w &= w - 1;
            }
        }
        out
    }

    pub fn row_weight(&self, r: usize) -> usize {
        self.row_words(r).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn row_degrees(&self) -> Vec<usize> {
        (0..self.rows).map(|r| self.row_weight(r)).collect()
    }

    pub fn row_is_zero(&self, r: usize) -> bool {
        self.row_words(r).iter().all(|&w| w == 0)
    }

    pub fn column(&self, c: usize) -> Vec<u8> {
        (0..self.rows).map(|r| self.get(r, c) as u8).collect()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let w = self.words_per_row;
        for i in 0..w {
            self.data.swap(a * w + i, b * w + i);
        }
    }

    /// `row[dst] ^= row[src]`.
    pub fn xor_row_into(&mut self, src: usize, dst: usize) {
        debug_assert_ne!(src, dst);
        let w = self.words_per_row;
        for i in 0..w {
            let v = self.data[src * w + i];
            self.data[dst * w + i] ^= v;
        }
    }

    /// GF(2) product `H·x` for a binary word `x`.
    pub fn syndrome(&self, x: &[u8]) -> Result<Vec<u8>> {
        if x.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                actual: x.len(),
            });
        }
        let packed = pack_bits(x);
        Ok((0..self.rows)
            .map(|r| {
                let ones: u32 = self
                    .row_words(r)
                    .iter()
                    .zip(&packed)
                    .map(|(a, b)| (a & b).count_ones())
                    .sum();
                (ones & 1) as u8
            })
            .collect())
    }

    /// Copy of the matrix with all-zero rows dropped. A matrix whose rows
    /// are all zero keeps a single zero row.
    pub fn without_zero_rows(&self) -> BitMatrix {
        let keep: Vec<usize> = (0..self.rows).filter(|&r| !self.row_is_zero(r)).collect();
        if keep.is_empty() {
            return BitMatrix::zeros(1, self.cols);
        }
        let mut out = BitMatrix::zeros(keep.len(), self.cols);
        for (dst, &src) in keep.iter().enumerate() {
            let w = self.words_per_row;
            out.data[dst * w..(dst + 1) * w].copy_from_slice(self.row_words(src));
        }
        out
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows).map(|r| self.row_bits(r)).collect()
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            for c in 0..self.cols {
                f.write_str(if self.get(r, c) { "1" } else { "0" })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

pub(crate) fn pack_bits(x: &[u8]) -> Vec<u64> {
    let mut out = vec![0u64; x.len().div_ceil(WORD).max(1)];
    for (i, &b) in x.iter().enumerate() {
        if b != 0 {
            out[i / WORD] |= 1 << (i % WORD);
        }
    }
    out
}

/// Gauss-Jordan elimination over GF(2) with pivots taken greedily in
/// `pivot_order`.
///
/// Columns that are dependent on earlier pivots are skipped. Pivot rows are
/// moved to the top in the order they are found, and each pivot column ends
/// up as a unit vector. Panics on an out-of-range column.
pub fn row_reduce(m: &BitMatrix, pivot_order: &[usize]) -> (BitMatrix, Vec<(usize, usize)>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut next = 0;
    for &c in pivot_order {
        assert!(c < a.cols, "pivot column {c} out of range");
        if next == a.rows {
            break;
        }
        let Some(r) = (next..a.rows).find(|&r| a.get(r, c)) else {
            continue;
        };
        a.swap_rows(r, next);
        for other in 0..a.rows {
            if other != next && a.get(other, c) {
                a.xor_row_into(next, other);
            }
        }
        pivots.push((next, c));
        next += 1;
    }
    (a, pivots)
}

pub fn rank(m: &BitMatrix) -> usize {
    let order: Vec<usize> = (0..m.cols).collect();
    row_reduce(m, &order).1.len()
}

/// Whether the Tanner subgraph induced by `bits` and every check touching
/// them contains a cycle.
pub fn tanner_subgraph_has_cycle(h: &BitMatrix, bits: &[usize]) -> bool {
    // union-find over bit nodes [0, bits.len()) and check nodes after them
    let nb = bits.len();
    let mut parent: Vec<usize> = (0..nb + h.rows()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (bi, &bit) in bits.iter().enumerate() {
        for r in 0..h.rows() {
            if h.get(r, bit) {
                let a = find(&mut parent, bi);
                let b = find(&mut parent, nb + r);
                if a == b {
                    return true;
                }
                parent[a] = b;
            }
        }
    }
    false
}
