//! Cutting-plane decoders: static full-FS LP, ALP and NSA.

use super::{CutKind, DecodeObserver, DecodeOutcome, DecodeStats};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, LinearCode};
use crate::lp::{self, LpProblem, LpStatus, Origin, Sense, VarKind, INTEGRALITY_TOL};
use crate::separation::{enumerate_full_fs, find_all_fs_cuts, generate_rpc_cuts, ConstraintPool, FsCut};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LpOptions {
    pub prune_inactive: bool,
    pub max_iterations: usize,
}

impl Default for LpOptions {
    fn default() -> Self {
        LpOptions {
            prune_inactive: false,
            max_iterations: 200,
        }
    }
}

fn check_len(code: &LinearCode, c: &[f64]) -> Result<()> {
    if c.len() != code.n() {
        return Err(Error::LengthMismatch {
            expected: code.n(),
            actual: c.len(),
        });
    }
    Ok(())
}

fn box_problem(c: &[f64]) -> LpProblem {
    let mut p = LpProblem::new();
    for &ci in c {
        p.add_variable(0.0, 1.0, VarKind::Bit, ci).expect("unit box");
    }
    p
}

fn is_codeword_point(h: &BitMatrix, x: &[f64]) -> bool {
    if !x.iter().all(|&v| lp::is_near_binary(v, INTEGRALITY_TOL)) {
        return false;
    }
    let bits: Vec<u8> = x.iter().map(|v| v.round() as u8).collect();
    h.syndrome(&bits).expect("length matches").iter().all(|&s| s == 0)
}

pub(crate) enum LoopEnd {
    Codeword(Vec<f64>),
    Fractional(Vec<f64>),
    Infeasible,
}

/// Solve, test, separate, repeat. Cuts come from the rows of `h`, then (when
/// `use_rpc`) from redundant parity checks.
pub(crate) fn cut_loop(
    h: &BitMatrix,
    pool: &mut ConstraintPool,
    n: usize,
    use_rpc: bool,
    opts: &LpOptions,
    stats: &mut DecodeStats,
    obs: &mut dyn DecodeObserver,
) -> Result<LoopEnd> {
    obs.run_started();
    let mut last = None;
    for _ in 0..opts.max_iterations.max(1) {
        let sol = lp::solve(&pool.problem)?;
        stats.lp_solves += 1;
        stats.iterations += 1;
        if sol.status == LpStatus::Infeasible {
            return Ok(LoopEnd::Infeasible);
        }
        obs.lp_solved(&pool.problem, &sol);
        let x = sol.values[..n].to_vec();
        if is_codeword_point(h, &x) {
            return Ok(LoopEnd::Codeword(x));
        }
        if opts.prune_inactive {
            stats.inactive_removed += pool.prune(&sol).len();
        }
        let fs: Vec<FsCut> = find_all_fs_cuts(h, &x).into_iter().map(|(_, c)| c).collect();
        let (kind, cuts) = if !fs.is_empty() || !use_rpc {
            (CutKind::ForbiddenSet, fs)
        } else {
            (CutKind::Rpc, generate_rpc_cuts(h, &x))
        };
        if cuts.is_empty() {
            return Ok(LoopEnd::Fractional(x));
        }
        for cut in &cuts {
            let origin = match kind {
                CutKind::ForbiddenSet => Origin::ForbiddenSet { row: None },
                CutKind::Rpc => Origin::Rpc,
            };
            pool.add_cut(cut, origin);
        }
        match kind {
            CutKind::ForbiddenSet => stats.cuts_fs += cuts.len(),
            CutKind::Rpc => stats.cuts_rpc += cuts.len(),
        }
        obs.cuts_added(kind, &cuts);
        last = Some(x);
    }
    stats.iteration_limit_hit = true;
    Ok(LoopEnd::Fractional(last.expect("at least one iteration")))
}

/// Single LP over every FS inequality of `H` plus the unit box.
pub fn decode_static_lp(code: &LinearCode, c: &[f64], obs: &mut dyn DecodeObserver) -> Result<DecodeOutcome> {
    check_len(code, c)?;
    let mut p = box_problem(c);
    p.add_constraints(enumerate_full_fs(code.parity_check())?)?;
    obs.run_started();
    let sol = lp::solve(&p)?;
    obs.lp_solved(&p, &sol);
    let stats = DecodeStats {
        lp_solves: 1,
        iterations: 1,
        ..Default::default()
    };
    let x = sol.values[..code.n()].to_vec();
    let cert = lp::is_integral(&p, &sol, INTEGRALITY_TOL);
    Ok(DecodeOutcome::new(x, c, cert, stats))
}

/// Empty pool over the unit box with objective `c`, for [`decode_alp_with_pool`].
pub fn alp_pool(c: &[f64]) -> ConstraintPool {
    ConstraintPool::new(box_problem(c))
}

/// Adaptive LP decoding: FS cuts from the rows of `H` only.
pub fn decode_alp(
    code: &LinearCode,
    c: &[f64],
    opts: &LpOptions,
    obs: &mut dyn DecodeObserver,
) -> Result<DecodeOutcome> {
    check_len(code, c)?;
    let mut pool = alp_pool(c);
    decode_alp_with_pool(code.parity_check(), c, &mut pool, opts, obs)
}

/// ALP run that keeps its cuts in `pool`; `h` may be any parity-check
/// matrix of the code.
pub fn decode_alp_with_pool(
    h: &BitMatrix,
    c: &[f64],
    pool: &mut ConstraintPool,
    opts: &LpOptions,
    obs: &mut dyn DecodeObserver,
) -> Result<DecodeOutcome> {
    let mut stats = DecodeStats::default();
    match cut_loop(h, pool, c.len(), false, opts, &mut stats, obs)? {
        LoopEnd::Codeword(x) => Ok(DecodeOutcome::new(x, c, true, stats)),
        LoopEnd::Fractional(x) => Ok(DecodeOutcome::new(x, c, false, stats)),
        LoopEnd::Infeasible => Err(Error::NumericalFailure("box relaxation reported infeasible".into())),
    }
}

/// The separation-algorithm LP: bits in `[0,1]`, one continuous
/// `z_j ∈ [0, floor(d_j/2)]` per nonzero row, and `H x - 2 z = 0`.
/// Fixed bits become bounds.
pub(crate) fn nsa_problem(h: &BitMatrix, c: &[f64], fixes: &[(usize, u8)]) -> Result<Option<LpProblem>> {
    let n = c.len();
    let mut p = box_problem(c);
    let mut fixed = vec![None; n];
    for &(bit, value) in fixes {
        if bit >= n || value > 1 {
            return Err(Error::InvalidParameters(format!("bad fix ({bit}, {value})")));
        }
        match fixed[bit] {
            Some(v) if v != value => return Ok(None),
            _ => fixed[bit] = Some(value),
        }
        p.set_bounds(bit, value as f64, value as f64)?;
    }
    for r in 0..h.rows() {
        let support = h.row_support(r);
        if support.is_empty() {
            continue;
        }
        let z = p.add_variable(0.0, (support.len() / 2) as f64, VarKind::Auxiliary, 0.0)?;
        let mut coeffs: Vec<(usize, f64)> = support.iter().map(|&i| (i, 1.0)).collect();
        coeffs.push((z, -2.0));
        p.add_constraint(Sense::Equal, coeffs, 0.0, Origin::Equality { row: r })?;
    }
    Ok(Some(p))
}

/// Separation-algorithm decoding with FS cuts then RPC cuts.
///
/// `fixes` pins bits to values; with a nonempty list the outcome never
/// carries a certificate, and an infeasible node yields
/// [`Error::Infeasible`].
pub fn decode_nsa(
    code: &LinearCode,
    c: &[f64],
    fixes: &[(usize, u8)],
    opts: &LpOptions,
    obs: &mut dyn DecodeObserver,
) -> Result<DecodeOutcome> {
    check_len(code, c)?;
    nsa_on(code.parity_check(), c, fixes, opts, obs)
}

pub(crate) fn nsa_on(
    h: &BitMatrix,
    c: &[f64],
    fixes: &[(usize, u8)],
    opts: &LpOptions,
    obs: &mut dyn DecodeObserver,
) -> Result<DecodeOutcome> {
    let problem = nsa_problem(h, c, fixes)?.ok_or(Error::Infeasible)?;
    let mut pool = ConstraintPool::new(problem);
    let mut stats = DecodeStats::default();
    match cut_loop(h, &mut pool, c.len(), true, opts, &mut stats, obs)? {
        LoopEnd::Codeword(x) => Ok(DecodeOutcome::new(x, c, fixes.is_empty(), stats)),
        LoopEnd::Fractional(x) => Ok(DecodeOutcome::new(x, c, false, stats)),
        LoopEnd::Infeasible => Err(Error::Infeasible),
    }
}
