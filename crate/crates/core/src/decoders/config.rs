//! Decoder selection by name, presets A/B/C and dispatch.
//!
//! Grammar: `base[+adapt][+prune][+symbols]`, where `base` is one of
//! `ml`, `static`, `alp`, `nsa`, `diversity:N`, `alp_perm:N`, `bb[:D]`, or
//! a preset `A[:N]`, `B[:D]`, `C`. Presets switch on their own options.
//!
//! | preset | algorithm          | adapt | prune |
//! |--------|--------------------|-------|-------|
//! | A      | diversity, N = 5   | yes   | yes   |
//! | B      | branch and bound   | yes   | no    |
//! | C      | NSA                | yes   | yes   |

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::Rng;

use super::cutting::{decode_alp, decode_nsa, decode_static_lp, LpOptions};
use super::diversity::{decode_alp_perm, decode_diversity};
use super::{adapt_matrix, decode_bb, decode_ml_bruteforce, DecodeObserver, DecodeOutcome, NoObserver};
use crate::automorphism::AutomorphismSampler;
use crate::error::{Error, Result};
use crate::gf2::LinearCode;

/// How the diversity decoder compares fractional candidates with the received word.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum DistanceMetric {
    /// `‖x - r‖` with `x ∈ [0,1]^n`.
    #[default]
    Bits,
    /// `‖(2x - 1) - r‖`.
    Symbols,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DecoderKind {
    Ml,
    StaticLp,
    Alp,
    Nsa,
    Diversity { attempts: usize },
    AlpPerm { attempts: usize },
    /// `None` picks [`default_bb_depth`] for the code.
    BranchAndBound { depth: Option<usize> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DecoderConfig {
    pub kind: DecoderKind,
    pub adapt_matrix: bool,
    pub prune_inactive: bool,
    pub max_iterations: usize,
    pub distance: DistanceMetric,
}

pub const DEFAULT_DIVERSITY: usize = 5;

/// 6 for `bch_63_36`, 4 otherwise.
pub fn default_bb_depth(code: &LinearCode) -> usize {
    if code.name() == "bch_63_36" {
        6
    } else {
        4
    }
}

impl DecoderConfig {
    pub fn new(kind: DecoderKind) -> Self {
        DecoderConfig {
            kind,
            adapt_matrix: false,
            prune_inactive: false,
            max_iterations: 200,
            distance: DistanceMetric::Bits,
        }
    }

    pub fn preset(name: &str) -> Result<Self> {
        let (kind, adapt, prune) = match name {
            "A" | "a" => (DecoderKind::Diversity { attempts: DEFAULT_DIVERSITY }, true, true),
            "B" | "b" => (DecoderKind::BranchAndBound { depth: None }, true, false),
            "C" | "c" => (DecoderKind::Nsa, true, true),
            _ => return Err(Error::UnknownPreset(name.to_string())),
        };
        Ok(DecoderConfig {
            adapt_matrix: adapt,
            prune_inactive: prune,
            ..Self::new(kind)
        })
    }

    pub fn with_adapt(mut self, on: bool) -> Self {
        self.adapt_matrix = on;
        self
    }

    pub fn with_prune(mut self, on: bool) -> Self {
        self.prune_inactive = on;
        self
    }

    pub fn lp_options(&self) -> LpOptions {
        LpOptions {
            prune_inactive: self.prune_inactive,
            max_iterations: self.max_iterations,
        }
    }

    fn needs_sampler(&self) -> bool {
        matches!(
            self.kind,
            DecoderKind::Diversity { attempts } | DecoderKind::AlpPerm { attempts } if attempts > 1
        )
    }
}

fn parse_count(name: &str, arg: Option<&str>) -> Result<Option<usize>> {
    arg.map(|a| {
        a.parse()
            .map_err(|_| Error::Parse(format!("bad count {a:?} for decoder {name}")))
    })
    .transpose()
}

impl FromStr for DecoderConfig {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.trim().split('+');
        let base = parts.next().unwrap_or_default();
        let (name, arg) = match base.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (base, None),
        };
        let count = parse_count(name, arg)?;
        let positive = |v: Option<usize>, default: usize| match v {
            Some(0) => Err(Error::Parse(format!("{name} needs a positive count"))),
            Some(v) => Ok(v),
            None => Ok(default),
        };
        let no_arg = |cfg: DecoderConfig| {
            if arg.is_some() {
                Err(Error::Parse(format!("decoder {name} takes no argument")))
            } else {
                Ok(cfg)
            }
        };
        let mut cfg = match name {
            "A" | "a" => DecoderConfig {
                kind: DecoderKind::Diversity {
                    attempts: positive(count, DEFAULT_DIVERSITY)?,
                },
                ..Self::preset("A")?
            },
            "B" | "b" => DecoderConfig {
                kind: DecoderKind::BranchAndBound { depth: count },
                ..Self::preset("B")?
            },
            "C" | "c" => no_arg(Self::preset("C")?)?,
            "ml" => no_arg(Self::new(DecoderKind::Ml))?,
            "static" => no_arg(Self::new(DecoderKind::StaticLp))?,
            "alp" => no_arg(Self::new(DecoderKind::Alp))?,
            "nsa" => no_arg(Self::new(DecoderKind::Nsa))?,
            "diversity" => Self::new(DecoderKind::Diversity {
                attempts: positive(count, DEFAULT_DIVERSITY)?,
            }),
            "alp_perm" => Self::new(DecoderKind::AlpPerm {
                attempts: positive(count, DEFAULT_DIVERSITY)?,
            }),
            "bb" => Self::new(DecoderKind::BranchAndBound { depth: count }),
            _ => return Err(Error::UnknownPreset(s.to_string())),
        };
        for flag in parts {
            match flag {
                "adapt" => cfg.adapt_matrix = true,
                "prune" => cfg.prune_inactive = true,
                "symbols" => cfg.distance = DistanceMetric::Symbols,
                _ => return Err(Error::Parse(format!("unknown decoder option {flag:?}"))),
            }
        }
        Ok(cfg)
    }
}

impl fmt::Display for DecoderConfig {
    /// Canonical spelling; parses back to an equal config when
    /// `max_iterations` is the default.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            DecoderKind::Ml => write!(f, "ml")?,
            DecoderKind::StaticLp => write!(f, "static")?,
            DecoderKind::Alp => write!(f, "alp")?,
            DecoderKind::Nsa => write!(f, "nsa")?,
            DecoderKind::Diversity { attempts } => write!(f, "diversity:{attempts}")?,
            DecoderKind::AlpPerm { attempts } => write!(f, "alp_perm:{attempts}")?,
            DecoderKind::BranchAndBound { depth: None } => write!(f, "bb")?,
            DecoderKind::BranchAndBound { depth: Some(d) } => write!(f, "bb:{d}")?,
        }
        if self.adapt_matrix {
            write!(f, "+adapt")?;
        }
        if self.prune_inactive {
            write!(f, "+prune")?;
        }
        if self.distance == DistanceMetric::Symbols {
            write!(f, "+symbols")?;
        }
        Ok(())
    }
}

/// A configured decoder bound to one code, reusable across frames.
#[derive(Clone, Debug)]
pub struct Decoder {
    config: DecoderConfig,
    code: LinearCode,
    sampler: Option<AutomorphismSampler>,
}

impl Decoder {
    pub fn new(config: DecoderConfig, code: &LinearCode) -> Result<Self> {
        let sampler = if config.needs_sampler() {
            Some(AutomorphismSampler::for_code(code).map_err(|e| Error::Config(e.to_string()))?)
        } else {
            None
        };
        Ok(Decoder {
            config,
            code: code.clone(),
            sampler,
        })
    }

    pub fn config(&self) -> &DecoderConfig {
        &self.config
    }

    pub fn code(&self) -> &LinearCode {
        &self.code
    }

    /// Decodes the channel output `received` (costs `c = -r`).
    pub fn decode<R: Rng + ?Sized>(
        &self,
        received: &[f64],
        rng: &mut R,
        obs: &mut dyn DecodeObserver,
    ) -> Result<DecodeOutcome> {
        let start = Instant::now();
        let c: Vec<f64> = received.iter().map(|r| -r).collect();
        if c.len() != self.code.n() {
            return Err(Error::LengthMismatch {
                expected: self.code.n(),
                actual: c.len(),
            });
        }
        let adapted;
        let code = if self.config.adapt_matrix {
            adapted = adapt_matrix(&self.code, &c);
            &adapted
        } else {
            &self.code
        };
        let opts = self.config.lp_options();
        let sampler = self.sampler.as_ref();
        let mut out = match self.config.kind {
            DecoderKind::Ml => decode_ml_bruteforce(code, &c)?,
            DecoderKind::StaticLp => decode_static_lp(code, &c, obs)?,
            DecoderKind::Alp => decode_alp(code, &c, &opts, obs)?,
            DecoderKind::Nsa => decode_nsa(code, &c, &[], &opts, obs)?,
            DecoderKind::Diversity { attempts } => {
                decode_diversity(code, &c, received, attempts, sampler, self.config.distance, &opts, rng, obs)?
            }
            DecoderKind::AlpPerm { attempts } => decode_alp_perm(code, &c, attempts, sampler, &opts, rng, obs)?,
            DecoderKind::BranchAndBound { depth } => {
                let d = depth.unwrap_or_else(|| default_bb_depth(&self.code));
                decode_bb(code, &c, d, &opts, obs)?
            }
        };
        out.stats.wall_time = start.elapsed();
        Ok(out)
    }
}

/// One-shot decode of a received word.
pub fn decode<R: Rng + ?Sized>(
    config: &DecoderConfig,
    code: &LinearCode,
    received: &[f64],
    rng: &mut R,
) -> Result<DecodeOutcome> {
    Decoder::new(*config, code)?.decode(received, rng, &mut NoObserver)
}

/// Decoders A, B and C by name.
pub fn decode_preset<R: Rng + ?Sized>(
    name: &str,
    code: &LinearCode,
    received: &[f64],
    rng: &mut R,
) -> Result<DecodeOutcome> {
    decode(&DecoderConfig::preset(name)?, code, received, rng)
}
