//! Decoding algorithms.
//!
//! All LP decoders minimize `c·x` with `c = -r`. An outcome carries an ML
//! certificate only when the relaxation optimum it came from is an
//! integral codeword (for branch and bound: when the search finished
//! without hitting the depth limit).

mod adapt;
mod bb;
mod config;
mod cutting;
mod diversity;
mod ml;

use std::time::Duration;

use crate::lp::{LpProblem, LpSolution, INTEGRALITY_TOL};
use crate::separation::FsCut;

pub use adapt::adapt_matrix;
pub use bb::decode_bb;
pub use config::{decode, decode_preset, default_bb_depth, Decoder, DecoderConfig, DecoderKind, DistanceMetric, DEFAULT_DIVERSITY};
pub use cutting::{alp_pool, decode_alp, decode_alp_with_pool, decode_nsa, decode_static_lp, LpOptions};
pub use diversity::{decode_alp_perm, decode_diversity, select_closest};
pub use ml::decode_ml_bruteforce;

#[derive(Clone, Debug, Default)]
pub struct DecodeStats {
    pub lp_solves: usize,
    /// Cut-loop iterations summed over every LP run.
    pub iterations: usize,
    pub cuts_fs: usize,
    pub cuts_rpc: usize,
    /// Inactive constraints removed.
    pub inactive_removed: usize,
    /// Decoding attempts (diversity / permuted-H runs).
    pub attempts: usize,
    /// Non-root branch-and-bound nodes solved.
    pub bb_nodes: usize,
    pub pruned_infeasible: usize,
    pub pruned_bound: usize,
    pub pruned_integral: usize,
    pub depth_limit_hit: bool,
    pub iteration_limit_hit: bool,
    pub wall_time: Duration,
}

impl DecodeStats {
    pub fn absorb(&mut self, other: &DecodeStats) {
        self.lp_solves += other.lp_solves;
        self.iterations += other.iterations;
        self.cuts_fs += other.cuts_fs;
        self.cuts_rpc += other.cuts_rpc;
        self.inactive_removed += other.inactive_removed;
        self.iteration_limit_hit |= other.iteration_limit_hit;
    }
}

impl PartialEq for DecodeStats {
    /// Wall time is ignored.
    fn eq(&self, o: &Self) -> bool {
        (
            self.lp_solves,
            self.iterations,
            self.cuts_fs,
            self.cuts_rpc,
            self.inactive_removed,
            self.attempts,
            self.bb_nodes,
            self.pruned_infeasible,
            self.pruned_bound,
            self.pruned_integral,
            self.depth_limit_hit,
            self.iteration_limit_hit,
        ) == (
            o.lp_solves,
            o.iterations,
            o.cuts_fs,
            o.cuts_rpc,
            o.inactive_removed,
            o.attempts,
            o.bb_nodes,
            o.pruned_infeasible,
            o.pruned_bound,
            o.pruned_integral,
            o.depth_limit_hit,
            o.iteration_limit_hit,
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecodeOutcome {
    /// Bit values; exactly 0.0/1.0 when integral.
    pub word: Vec<f64>,
    pub ml_certificate: bool,
    /// `c·word`.
    pub objective: f64,
    pub stats: DecodeStats,
}

impl DecodeOutcome {
    pub(crate) fn new(word: Vec<f64>, c: &[f64], ml_certificate: bool, stats: DecodeStats) -> Self {
        let word: Vec<f64> = if word.iter().all(|&x| crate::lp::is_near_binary(x, INTEGRALITY_TOL)) {
            word.iter().map(|x| x.round()).collect()
        } else {
            word
        };
        let objective = dot(c, &word);
        DecodeOutcome {
            word,
            ml_certificate,
            objective,
            stats,
        }
    }

    pub fn is_integral(&self) -> bool {
        self.word.iter().all(|&x| x == 0.0 || x == 1.0)
    }

    /// The decoded bits, or `None` for a fractional outcome.
    pub fn bits(&self) -> Option<Vec<u8>> {
        self.is_integral()
            .then(|| self.word.iter().map(|&x| x as u8).collect())
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Which separation routine produced a batch of cuts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CutKind {
    ForbiddenSet,
    Rpc,
}

/// Hooks into the inner loop of the LP decoders. Every method defaults to
/// doing nothing.
pub trait DecodeObserver {
    /// A new cutting-plane run starts (fresh LP or new attempt).
    fn run_started(&mut self) {}
    fn lp_solved(&mut self, _problem: &LpProblem, _solution: &LpSolution) {}
    fn cuts_added(&mut self, _kind: CutKind, _cuts: &[FsCut]) {}
}

/// Observer that ignores everything.
#[derive(Clone, Copy, Debug, Default)]
pub struct NoObserver;

impl DecodeObserver for NoObserver {}
