use std::fmt;

use super::bch::bch_code;
use super::matrix::{pack_bits, row_reduce, BitMatrix};
use crate::error::{Error, Result};

/// Largest dimension for which codewords may be enumerated.
pub const MAX_ENUMERATION_DIM: usize = 24;

/// Names accepted by [`builtin_code`].
pub const BUILTIN_CODES: &[&str] = &[
    "hamming_7_4",
    "hamming_8_4_paper",
    "bch_15_7",
    "bch_15_11",
    "bch_31_21",
    "bch_63_39",
    "bch_63_36",
];

/// Binary linear block code given by a parity-check matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct LinearCode {
    name: String,
    n: usize,
    k: usize,
    h: BitMatrix,
    // null-space basis, one row per information bit
    basis: Vec<Vec<u8>>,
    info_positions: Vec<usize>,
}

impl LinearCode {
    pub fn new(name: impl Into<String>, h: BitMatrix) -> Self {
        let n = h.cols();
        let order: Vec<usize> = (0..n).collect();
        let (reduced, pivots) = row_reduce(&h, &order);
        let mut is_pivot = vec![false; n];
        for &(_, c) in &pivots {
            is_pivot[c] = true;
        }
        let info_positions: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
        let basis = info_positions
            .iter()
            .map(|&f| {
                let mut v = vec![0u8; n];
                v[f] = 1;
                for &(r, c) in &pivots {
                    v[c] = reduced.get(r, f) as u8;
                }
                v
            })
            .collect::<Vec<_>>();
        LinearCode {
            name: name.into(),
            n,
            k: info_positions.len(),
            h,
            basis,
            info_positions,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn rate(&self) -> f64 {
        self.k as f64 / self.n as f64
    }

    pub fn parity_check(&self) -> &BitMatrix {
        &self.h
    }

    /// Null-space basis rows; information bit `j` selects row `j`.
    pub fn basis(&self) -> &[Vec<u8>] {
        &self.basis
    }

    /// Coordinates that carry the information bits in [`encode`](Self::encode).
    pub fn info_positions(&self) -> &[usize] {
        &self.info_positions
    }

    /// Same code, different parity-check matrix. The caller guarantees the
    /// new matrix has the same null space.
    pub fn with_parity_check(&self, h: BitMatrix) -> LinearCode {
        LinearCode::new(self.name.clone(), h)
    }

    pub fn encode(&self, info: &[u8]) -> Result<Vec<u8>> {
        if info.len() != self.k {
            return Err(Error::LengthMismatch {
                expected: self.k,
                actual: info.len(),
            });
        }
        let mut word = vec![0u8; self.n];
        for (bit, row) in info.iter().zip(&self.basis) {
            if *bit != 0 {
                for (w, r) in word.iter_mut().zip(row) {
                    *w ^= r;
                }
            }
        }
        Ok(word)
    }

    pub fn is_codeword(&self, x: &[u8]) -> Result<bool> {
        Ok(self.h.syndrome(x)?.iter().all(|&s| s == 0))
    }

    /// Every codeword, ordered by the information word counting up from zero
    /// (information bit `j` is bit `j` of the counter).
    pub fn enumerate_codewords(&self) -> Result<Vec<Vec<u8>>> {
        Ok(self.codewords()?.collect())
    }

    /// Lazy version of [`enumerate_codewords`](Self::enumerate_codewords).
    pub fn codewords(&self) -> Result<impl Iterator<Item = Vec<u8>> + '_> {
        if self.k > MAX_ENUMERATION_DIM {
            return Err(Error::DimensionTooLarge {
                k: self.k,
                limit: MAX_ENUMERATION_DIM,
            });
        }
        Ok((0u64..1 << self.k).map(move |u| {
            let mut word = vec![0u8; self.n];
            for (j, row) in self.basis.iter().enumerate() {
                if u >> j & 1 == 1 {
                    for (w, r) in word.iter_mut().zip(row) {
                        *w ^= r;
                    }
                }
            }
            word
        }))
    }

    /// Codewords packed into `u64` words, for fast exhaustive checks.
    pub fn packed_codewords(&self) -> Result<Vec<Vec<u64>>> {
        Ok(self.codewords()?.map(|w| pack_bits(&w)).collect())
    }
}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearCode({} [{},{}])", self.name, self.n, self.k)
    }
}

/// The extended Hamming [8,4,4] parity-check matrix; column `i` is `1`
/// followed by the binary expansion of `i`.
pub fn hamming_8_4_paper() -> LinearCode {
    let h = BitMatrix::from_bit_strings(&["11111111", "01010101", "00110011", "00001111"])
        .expect("static matrix");
    LinearCode::new("hamming_8_4_paper", h)
}

pub fn builtin_code(name: &str) -> Result<LinearCode> {
    let rename = |code: LinearCode| code.with_name(name);
    match name {
        "hamming_7_4" => bch_code(3, 3).map(rename),
        "hamming_8_4_paper" => Ok(hamming_8_4_paper()),
        "bch_15_7" => bch_code(4, 5).map(rename),
        "bch_15_11" => bch_code(4, 3).map(rename),
        "bch_31_21" => bch_code(5, 5).map(rename),
        "bch_63_39" => bch_code(6, 9).map(rename),
        "bch_63_36" => bch_code(6, 11).map(rename),
        other => Err(Error::UnknownCode(other.to_string())),
    }
}

impl LinearCode {
    fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::rank;

    #[test]
    fn example_hamming_enumeration() {
        let code = hamming_8_4_paper();
        assert_eq!((code.n(), code.k()), (8, 4));
        let words = code.enumerate_codewords().unwrap();
        assert_eq!(words.len(), 16);
        assert!(words.contains(&vec![0; 8]));
        assert!(words.contains(&vec![1; 8]));
        // oracle: scan all 256 words for H x = 0
        let mut oracle = Vec::new();
        for v in 0u32..256 {
            let x: Vec<u8> = (0..8).map(|i| (v >> i & 1) as u8).collect();
            if code.is_codeword(&x).unwrap() {
                oracle.push(x);
            }
        }
        let mut sorted = words.clone();
        sorted.sort();
        oracle.sort();
        assert_eq!(sorted, oracle);
        assert_eq!(words[0], vec![0; 8]);
    }

    #[test]
    fn repetition_code() {
        let h = BitMatrix::from_bit_strings(&["110", "101"]).unwrap();
        let code = LinearCode::new("rep3", h);
        let words = code.enumerate_codewords().unwrap();
        assert_eq!(words, vec![vec![0, 0, 0], vec![1, 1, 1]]);
    }

    #[test]
    fn trivial_checks_give_full_space() {
        let code = LinearCode::new("full", BitMatrix::zeros(1, 2));
        assert_eq!(code.k(), 2);
        assert_eq!(code.enumerate_codewords().unwrap().len(), 4);
    }

    #[test]
    fn membership_examples() {
        let code = hamming_8_4_paper();
        assert!(code.is_codeword(&[0; 8]).unwrap());
        assert!(!code.is_codeword(&[1, 0, 0, 0, 0, 0, 0, 0]).unwrap());
        let s = code.parity_check().syndrome(&[1, 1, 0, 0, 0, 1, 1, 0]).unwrap();
        assert_eq!(s, vec![0, 0, 1, 0]);
        assert!(!code.is_codeword(&[1, 1, 0, 0, 0, 1, 1, 0]).unwrap());
        assert!(matches!(
            code.is_codeword(&[0; 3]),
            Err(Error::LengthMismatch { expected: 8, actual: 3 })
        ));
    }

    #[test]
    fn builtins_have_expected_parameters() {
        let expect = [
            ("hamming_7_4", 7, 4),
            ("hamming_8_4_paper", 8, 4),
            ("bch_15_7", 15, 7),
            ("bch_15_11", 15, 11),
            ("bch_31_21", 31, 21),
            ("bch_63_39", 63, 39),
            ("bch_63_36", 63, 36),
        ];
        for (name, n, k) in expect {
            let code = builtin_code(name).unwrap();
            assert_eq!((code.n(), code.k()), (n, k), "{name}");
            assert_eq!(code.name(), name);
            assert_eq!(rank(code.parity_check()), n - k);
        }
        assert!(matches!(builtin_code("golay"), Err(Error::UnknownCode(_))));
    }

    #[test]
    fn dimension_guard() {
        let code = builtin_code("bch_63_39").unwrap();
        assert!(matches!(
            code.enumerate_codewords(),
            Err(Error::DimensionTooLarge { k: 39, .. })
        ));
    }

    #[test]
    fn encode_lands_in_code() {
        let code = builtin_code("bch_63_36").unwrap();
        let info: Vec<u8> = (0..36).map(|i| (i * 7 % 3 == 0) as u8).collect();
        let word = code.encode(&info).unwrap();
        assert!(code.is_codeword(&word).unwrap());
        for (j, &p) in code.info_positions().iter().enumerate() {
            assert_eq!(word[p], info[j]);
        }
    }
}
