//! Coordinate permutations and random automorphism sampling.
//!
//! Permutations act by push-forward: `apply(π, v)[π(i)] = v[i]`, and column
//! `i` of a matrix moves to column `π(i)`.
//!
//! Generator sets used by [`AutomorphismSampler::for_code`]:
//! - cyclic codes: the shift `i -> i+1 mod n` and, for odd `n`, the
//!   doubling `i -> 2i mod n`;
//! - length `2^r` codes indexed by GF(2)^r (the extended Hamming code):
//!   the translations `i -> i xor 2^b` and the transvections adding bit `b`
//!   of the index into bit `a`, which together generate the affine group.
//!
//! Every candidate is checked against the code before use; the sets above
//! are only proposals.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, LinearCode};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    mapping: Vec<usize>,
}

impl Permutation {
    pub fn new(mapping: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; mapping.len()];
        for &m in &mapping {
            if m >= mapping.len() || seen[m] {
                return Err(Error::InvalidParameters("mapping is not a bijection".into()));
            }
            seen[m] = true;
        }
        Ok(Permutation { mapping })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            mapping: (0..n).collect(),
        }
    }

    pub fn cyclic_shift(n: usize) -> Self {
        Permutation {
            mapping: (0..n).map(|i| (i + 1) % n).collect(),
        }
    }

    /// `i -> 2i mod n`; a bijection only for odd `n`.
    pub fn doubling(n: usize) -> Result<Self> {
        Self::new((0..n).map(|i| (2 * i) % n).collect())
    }

    pub fn len(&self) -> usize {
        self.mapping.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }

    pub fn image(&self, i: usize) -> usize {
        self.mapping[i]
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    pub fn is_identity(&self) -> bool {
        self.mapping.iter().enumerate().all(|(i, &m)| i == m)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.mapping.len()];
        for (i, &m) in self.mapping.iter().enumerate() {
            inv[m] = i;
        }
        Permutation { mapping: inv }
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, inner: &Permutation) -> Self {
        assert_eq!(self.len(), inner.len());
        Permutation {
            mapping: inner.mapping.iter().map(|&i| self.mapping[i]).collect(),
        }
    }

    pub fn apply_to_vector<T: Clone>(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                actual: v.len(),
            });
        }
        let mut out = v.to_vec();
        for (i, x) in v.iter().enumerate() {
            out[self.mapping[i]] = x.clone();
        }
        Ok(out)
    }

    pub fn apply_to_columns(&self, h: &BitMatrix) -> Result<BitMatrix> {
        if h.cols() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                actual: h.cols(),
            });
        }
        let mut out = BitMatrix::zeros(h.rows(), h.cols());
        for r in 0..h.rows() {
            for c in h.row_support(r) {
                out.set(r, self.mapping[c], true);
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.mapping.iter().map(|m| m.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Whitespace-separated images, e.g. `"1 2 3 0"`.
    fn from_str(s: &str) -> Result<Self> {
        let mapping = s
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad image {t:?}"))))
            .collect::<Result<Vec<usize>>>()?;
        Permutation::new(mapping)
    }
}

/// Exact membership test: the permuted null-space basis must stay in the code.
pub fn is_automorphism(code: &LinearCode, perm: &Permutation) -> bool {
    perm.len() == code.n()
        && code.basis().iter().all(|row| {
            let img = perm.apply_to_vector(row).expect("length checked");
            code.is_codeword(&img).unwrap_or(false)
        })
}

/// Checks `π(x) ∈ C` on codewords: all of them when `k <= 16`, otherwise
/// `trials` random ones.
pub fn verify_automorphism(code: &LinearCode, perm: &Permutation, trials: usize) -> bool {
    if perm.len() != code.n() {
        return false;
    }
    let maps_in = |x: &[u8]| {
        let img = perm.apply_to_vector(x).expect("length checked");
        code.is_codeword(&img).unwrap_or(false)
    };
    if code.k() <= 16 {
        return code
            .codewords()
            .expect("k <= 16 is enumerable")
            .all(|w| maps_in(&w));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    (0..trials).all(|_| {
        let info: Vec<u8> = (0..code.k()).map(|_| rng.random_range(0..2)).collect();
        maps_in(&code.encode(&info).expect("info length matches"))
    })
}

fn affine_generators(n: usize) -> Vec<(String, Permutation)> {
    if n < 2 || !n.is_power_of_two() {
        return Vec::new();
    }
    let r = n.trailing_zeros() as usize;
    let mut gens = Vec::new();
    for b in 0..r {
        let m = (0..n).map(|i| i ^ (1 << b)).collect();
        gens.push((format!("translate{b}"), Permutation { mapping: m }));
    }
    for a in 0..r {
        for b in 0..r {
            if a != b {
                let m = (0..n).map(|i| i ^ (((i >> b) & 1) << a)).collect();
                gens.push((format!("transvect{a}{b}"), Permutation { mapping: m }));
            }
        }
    }
    gens
}

/// Random automorphisms as bounded-length words over a generator set.
#[derive(Clone, Debug)]
pub struct AutomorphismSampler {
    n: usize,
    generators: Vec<(String, Permutation)>,
    max_word_length: usize,
}

impl AutomorphismSampler {
    pub const DEFAULT_MAX_WORD_LENGTH: usize = 8;

    pub fn new(generators: Vec<(String, Permutation)>, max_word_length: usize) -> Result<Self> {
        let n = generators
            .first()
            .map(|(_, p)| p.len())
            .ok_or_else(|| Error::InvalidParameters("no generators".into()))?;
        if generators.iter().any(|(_, p)| p.len() != n) || max_word_length == 0 {
            return Err(Error::InvalidParameters("inconsistent generator set".into()));
        }
        Ok(AutomorphismSampler {
            n,
            generators,
            max_word_length,
        })
    }

    /// Generators from the known families that are automorphisms of `code`.
    pub fn for_code(code: &LinearCode) -> Result<Self> {
        let n = code.n();
        let mut candidates = vec![("shift".to_string(), Permutation::cyclic_shift(n))];
        if let Ok(d) = Permutation::doubling(n) {
            candidates.push(("doubling".to_string(), d));
        }
        candidates.extend(affine_generators(n));
        let generators: Vec<_> = candidates
            .into_iter()
            .filter(|(_, p)| !p.is_identity() && is_automorphism(code, p))
            .collect();
        if generators.is_empty() {
            return Err(Error::InvalidParameters(format!(
                "no known automorphisms for code {}",
                code.name()
            )));
        }
        Self::new(generators, Self::DEFAULT_MAX_WORD_LENGTH)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[(String, Permutation)] {
        &self.generators
    }

    pub fn with_max_word_length(mut self, len: usize) -> Self {
        self.max_word_length = len.max(1);
        self
    }

    fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let len = rng.random_range(1..=self.max_word_length);
        let mut p = Permutation::identity(self.n);
        for _ in 0..len {
            let g = &self.generators[rng.random_range(0..self.generators.len())].1;
            p = g.compose(&p);
        }
        p
    }

    /// A random word over the generators, applied left to right. An
    /// identity draw is retried once.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let p = self.draw(rng);
        if p.is_identity() {
            self.draw(rng)
        } else {
            p
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::{builtin_code, hamming_8_4_paper};

    #[test]
    fn vector_action() {
        let id = Permutation::identity(4);
        assert_eq!(id.apply_to_vector(&[3, 1, 4, 1]).unwrap(), vec![3, 1, 4, 1]);
        let s = Permutation::cyclic_shift(4);
        assert_eq!(s.apply_to_vector(&[1, 0, 0, 0]).unwrap(), vec![0, 1, 0, 0]);
        assert!(s.apply_to_vector(&[1, 0]).is_err());
    }

    #[test]
    fn doubling_maps_hamming_7_4_into_itself() {
        let code = builtin_code("hamming_7_4").unwrap();
        let d = Permutation::doubling(7).unwrap();
        let words = code.enumerate_codewords().unwrap();
        for w in &words {
            assert!(words.contains(&d.apply_to_vector(w).unwrap()));
        }
        assert!(Permutation::doubling(8).is_err());
    }

    #[test]
    fn column_action_and_inverse() {
        let code = builtin_code("bch_15_7").unwrap();
        let h = code.parity_check();
        assert_eq!(&Permutation::identity(15).apply_to_columns(h).unwrap(), h);
        let p = Permutation::cyclic_shift(15).compose(&Permutation::doubling(15).unwrap());
        let ph = p.apply_to_columns(h).unwrap();
        assert_eq!(&p.inverse().apply_to_columns(&ph).unwrap(), h);
        for w in code.enumerate_codewords().unwrap() {
            assert_eq!(ph.syndrome(&w).unwrap(), vec![0; 8]);
        }
    }

    #[test]
    fn transposition_is_not_an_automorphism() {
        let code = builtin_code("bch_15_7").unwrap();
        let mut m: Vec<usize> = (0..15).collect();
        m.swap(0, 1);
        let t = Permutation::new(m).unwrap();
        assert!(!verify_automorphism(&code, &t, 100));
        assert!(!is_automorphism(&code, &t));
        assert!(verify_automorphism(&code, &Permutation::cyclic_shift(15), 100));
        assert!(verify_automorphism(&code, &Permutation::identity(15), 100));
    }

    #[test]
    fn generator_families() {
        let bch = AutomorphismSampler::for_code(&builtin_code("bch_15_7").unwrap()).unwrap();
        let names: Vec<&str> = bch.generators().iter().map(|(n, _)| n.as_str()).collect();
        assert_eq!(names, vec!["shift", "doubling"]);
        let ham = AutomorphismSampler::for_code(&hamming_8_4_paper()).unwrap();
        assert_eq!(ham.generators().len(), 3 + 6);
    }

    #[test]
    fn single_generator_word() {
        let s = Permutation::cyclic_shift(15);
        let sampler = AutomorphismSampler::new(vec![("shift".into(), s.clone())], 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(sampler.sample(&mut rng), s);
    }

    #[test]
    fn literal_round_trip() {
        let p: Permutation = "1 2 3 0".parse().unwrap();
        assert_eq!(p.to_string(), "1 2 3 0");
        assert!("1 1 0".parse::<Permutation>().is_err());
    }

    #[test]
    fn seeded_sampling_is_reproducible() {
        let sampler = AutomorphismSampler::for_code(&hamming_8_4_paper()).unwrap();
        let draw = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..20).map(|_| sampler.sample(&mut rng)).collect::<Vec<_>>()
        };
        assert_eq!(draw(9), draw(9));
    }
}
