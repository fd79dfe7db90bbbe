//! Parity-check diversity decoding and permuted-H cut accumulation.

use rand::Rng;

use super::config::DistanceMetric;
use super::cutting::{alp_pool, decode_alp_with_pool, nsa_on, LpOptions};
use super::{DecodeObserver, DecodeOutcome, DecodeStats};
use crate::automorphism::{AutomorphismSampler, Permutation};
use crate::error::{Error, Result};
use crate::gf2::LinearCode;

/// Index of the candidate closest to `r`. Ties go to the earlier candidate.
pub fn select_closest(candidates: &[Vec<f64>], r: &[f64], metric: DistanceMetric) -> Option<usize> {
    let dist = |x: &[f64]| -> f64 {
        x.iter()
            .zip(r)
            .map(|(&xi, &ri)| {
                let v = match metric {
                    DistanceMetric::Bits => xi,
                    DistanceMetric::Symbols => 2.0 * xi - 1.0,
                };
                (v - ri) * (v - ri)
            })
            .sum()
    };
    let mut best: Option<(usize, f64)> = None;
    for (k, x) in candidates.iter().enumerate() {
        let d = dist(x);
        if best.is_none_or(|(_, bd)| d < bd) {
            best = Some((k, d));
        }
    }
    best.map(|(k, _)| k)
}

fn check_attempts(code: &LinearCode, c: &[f64], attempts: usize) -> Result<()> {
    if attempts == 0 {
        return Err(Error::InvalidParameters("at least one attempt is required".into()));
    }
    if c.len() != code.n() {
        return Err(Error::LengthMismatch {
            expected: code.n(),
            actual: c.len(),
        });
    }
    Ok(())
}

/// NSA decoding repeated under random automorphisms of the code.
///
/// Attempt `i` decodes with costs `(π_1∘…∘π_{i-1})^{-1}(c)`; an integral
/// result is pushed forward through the same composition and returned with
/// a certificate. When every attempt is fractional, the mapped-back
/// candidate closest to `r` is returned. `sampler` is only consulted
/// between attempts.
#[allow(clippy::too_many_arguments)]
pub fn decode_diversity<R: Rng + ?Sized>(
    code: &LinearCode,
    c: &[f64],
    r: &[f64],
    attempts: usize,
    sampler: Option<&AutomorphismSampler>,
    metric: DistanceMetric,
    opts: &LpOptions,
    rng: &mut R,
    obs: &mut dyn DecodeObserver,
) -> Result<DecodeOutcome> {
    check_attempts(code, c, attempts)?;
    let n = code.n();
    let mut cost = c.to_vec();
    let mut composite = Permutation::identity(n);
    let mut stats = DecodeStats::default();
    let mut candidates = Vec::new();
    for i in 1..=attempts {
        let out = nsa_on(code.parity_check(), &cost, &[], opts, obs)?;
        stats.absorb(&out.stats);
        stats.attempts += 1;
        if out.ml_certificate {
            let word = composite.apply_to_vector(&out.word)?;
            return Ok(DecodeOutcome::new(word, c, true, stats));
        }
        candidates.push(composite.apply_to_vector(&out.word)?);
        if i == attempts {
            break;
        }
        let Some(sampler) = sampler else {
            return Err(Error::InvalidParameters("diversity needs an automorphism sampler".into()));
        };
        let pi = sampler.sample(rng);
        cost = pi.inverse().apply_to_vector(&cost)?;
        composite = composite.compose(&pi);
    }
    let k = select_closest(&candidates, r, metric).expect("at least one attempt");
    Ok(DecodeOutcome::new(candidates.swap_remove(k), c, false, stats))
}

/// ALP decoding that, after a fractional result, permutes the columns of
/// `H` by a random automorphism and continues with every cut found so far.
#[allow(clippy::too_many_arguments)]
pub fn decode_alp_perm<R: Rng + ?Sized>(
    code: &LinearCode,
    c: &[f64],
    attempts: usize,
    sampler: Option<&AutomorphismSampler>,
    opts: &LpOptions,
    rng: &mut R,
    obs: &mut dyn DecodeObserver,
) -> Result<DecodeOutcome> {
    check_attempts(code, c, attempts)?;
    let mut h = code.parity_check().clone();
    let mut pool = alp_pool(c);
    let mut stats = DecodeStats::default();
    let mut last = None;
    for i in 1..=attempts {
        let out = decode_alp_with_pool(&h, c, &mut pool, opts, obs)?;
        stats.absorb(&out.stats);
        stats.attempts += 1;
        if out.ml_certificate {
            return Ok(DecodeOutcome { stats, ..out });
        }
        last = Some(out);
        if i == attempts {
            break;
        }
        let Some(sampler) = sampler else {
            return Err(Error::InvalidParameters("alp_perm needs an automorphism sampler".into()));
        };
        h = sampler.sample(rng).apply_to_columns(&h)?;
    }
    let out = last.expect("at least one attempt");
    Ok(DecodeOutcome { stats, ..out })
}
