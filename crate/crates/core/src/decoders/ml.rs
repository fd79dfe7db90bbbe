use super::{DecodeOutcome, DecodeStats};
use crate::error::{Error, Result};
use crate::gf2::LinearCode;

/// Exhaustive maximum-likelihood decoding over all `2^k` codewords. Ties go
/// to the lexicographically smallest codeword.
pub fn decode_ml_bruteforce(code: &LinearCode, c: &[f64]) -> Result<DecodeOutcome> {
    if c.len() != code.n() {
        return Err(Error::LengthMismatch {
            expected: code.n(),
            actual: c.len(),
        });
    }
    let mut best: Option<(f64, Vec<u8>)> = None;
    for w in code.codewords()? {
        let cost: f64 = w.iter().zip(c).filter(|(&b, _)| b == 1).map(|(_, &ci)| ci).sum();
        let better = match &best {
            None => true,
            Some((bc, bw)) => cost < *bc || (cost == *bc && w < *bw),
        };
        if better {
            best = Some((cost, w));
        }
    }
    let (_, w) = best.expect("a code has at least the zero word");
    let word = w.iter().map(|&b| b as f64).collect();
    Ok(DecodeOutcome::new(word, c, true, DecodeStats::default()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::{builtin_code, hamming_8_4_paper};

    #[test]
    fn zero_cost_ties_to_zero_word() {
        let code = builtin_code("bch_15_7").unwrap();
        let out = decode_ml_bruteforce(&code, &[0.0; 15]).unwrap();
        assert_eq!(out.word, vec![0.0; 15]);
        assert!(out.ml_certificate);
    }

    #[test]
    fn example_vector_minimizes_over_all_sixteen() {
        let code = hamming_8_4_paper();
        let r = [0.798337, 1.421758, -1.240177, -0.771128, -1.745193, 0.554868, 0.983861, -0.404989];
        let c: Vec<f64> = r.iter().map(|v| -v).collect();
        let out = decode_ml_bruteforce(&code, &c).unwrap();
        let words = code.enumerate_codewords().unwrap();
        assert_eq!(words.len(), 16);
        let costs: Vec<f64> = words
            .iter()
            .map(|w| w.iter().zip(&c).map(|(&b, ci)| b as f64 * ci).sum())
            .collect();
        let min = costs.iter().cloned().fold(f64::INFINITY, f64::min);
        assert_eq!(costs.iter().filter(|&&x| x == min).count(), 1);
        assert!((out.objective - min).abs() < 1e-12);
        assert_eq!(out.word, vec![1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 1.0]);
    }

    #[test]
    fn too_large_dimension() {
        let code = builtin_code("bch_63_36").unwrap();
        assert!(matches!(
            decode_ml_bruteforce(&code, &[0.0; 63]),
            Err(Error::DimensionTooLarge { .. })
        ));
    }
}
