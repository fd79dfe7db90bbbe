//! BPSK over AWGN, cost vectors and per-frame random streams.
//!
//! Bits map to symbols as `0 -> -1`, `1 -> +1`, so the cost vector is the
//! negated channel output: a positive multiple (`2/sigma^2`) of the LLR.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

pub fn modulate(bits: &[u8]) -> Vec<f64> {
    bits.iter().map(|&b| 2.0 * b as f64 - 1.0).collect()
}

pub fn sigma_from_ebn0(ebn0_db: f64, rate: f64) -> Result<f64> {
    if !(rate > 0.0 && rate <= 1.0) {
        return Err(Error::InvalidRate(rate));
    }
    Ok((1.0 / (2.0 * rate * 10f64.powf(ebn0_db / 10.0))).sqrt())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChannelConfig {
    pub ebn0_db: f64,
    pub rate: f64,
    pub sigma: f64,
}

impl ChannelConfig {
    pub fn new(ebn0_db: f64, rate: f64) -> Result<Self> {
        Ok(ChannelConfig {
            ebn0_db,
            rate,
            sigma: sigma_from_ebn0(ebn0_db, rate)?,
        })
    }

    /// Channel with an explicit noise level; `ebn0_db` is derived.
    pub fn with_sigma(sigma: f64, rate: f64) -> Result<Self> {
        if !(rate > 0.0 && rate <= 1.0) {
            return Err(Error::InvalidRate(rate));
        }
        let ebn0_db = 10.0 * (1.0 / (2.0 * rate * sigma * sigma)).log10();
        Ok(ChannelConfig { ebn0_db, rate, sigma })
    }
}

/// Counter-based randomness for one simulated frame.
///
/// Every generator is a pure function of `(seed, stream_index)`; separate
/// sub-streams feed the noise, the transmitted message and the decoder.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RngStream {
    pub seed: u64,
    pub stream_index: u64,
}

impl RngStream {
    pub fn new(seed: u64, stream_index: u64) -> Self {
        RngStream { seed, stream_index }
    }

    fn sub(&self, lane: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream_index.wrapping_mul(4).wrapping_add(lane));
        rng
    }

    pub fn noise(&self) -> ChaCha8Rng {
        self.sub(0)
    }

    pub fn message(&self) -> ChaCha8Rng {
        self.sub(1)
    }

    pub fn decoder(&self) -> ChaCha8Rng {
        self.sub(2)
    }
}

pub fn transmit(symbols: &[f64], cfg: &ChannelConfig, stream: &RngStream) -> Vec<f64> {
    let mut rng = stream.noise();
    symbols
        .iter()
        .map(|&s| {
            let g: f64 = rng.sample(StandardNormal);
            s + cfg.sigma * g
        })
        .collect()
}

/// Per-bit costs together with the channel output they came from.
#[derive(Clone, Debug, PartialEq)]
pub struct CostVector {
    pub c: Vec<f64>,
    pub source_received: Vec<f64>,
}

impl CostVector {
    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }

    pub fn scaled(&self, factor: f64) -> CostVector {
        CostVector {
            c: self.c.iter().map(|v| v * factor).collect(),
            source_received: self.source_received.iter().map(|v| v * factor).collect(),
        }
    }
}

pub fn cost_from_received(received: &[f64]) -> CostVector {
    CostVector {
        c: received.iter().map(|r| -r).collect(),
        source_received: received.to_vec(),
    }
}
