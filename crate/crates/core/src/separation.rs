//! Valid cuts for the LP relaxation: forbidden-set (FS) inequalities,
//! redundant-parity-check (RPC) cuts and inactive-constraint pruning.
//!
//! For a check with support `N` and an odd subset `S ⊆ N`, the FS
//! inequality reads `Σ_{N\S} x_i + Σ_S (1 - x_i) >= 1`, stored in `<=` form
//! as `Σ_S x_i - Σ_{N\S} x_i <= |S| - 1`.

use crate::error::{Error, Result};
use crate::gf2::{row_reduce, BitMatrix};
use crate::lp::{ConstraintId, ConstraintSpec, LpProblem, LpSolution, Origin, Sense, INTEGRALITY_TOL};

/// A cut must be violated by at least this much to be emitted.
pub const VIOLATION_TOL: f64 = 1e-9;
/// Constraints with more slack than this count as inactive.
pub const INACTIVE_SLACK: f64 = 1e-7;
/// Largest row degree accepted by full FS enumeration.
pub const MAX_ENUMERATION_DEGREE: usize = 16;

/// FS inequality for one dual codeword.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FsCut {
    support: Vec<usize>,
    odd_set: Vec<usize>,
}

impl FsCut {
    /// `support` is the support of the source row; `odd_set` must be an
    /// odd-sized subset of it. Both are sorted on construction.
    pub fn new(mut support: Vec<usize>, mut odd_set: Vec<usize>) -> Result<Self> {
        support.sort_unstable();
        support.dedup();
        odd_set.sort_unstable();
        odd_set.dedup();
        if odd_set.len().is_multiple_of(2) {
            return Err(Error::EvenSet(odd_set.len()));
        }
        if odd_set.iter().any(|i| support.binary_search(i).is_err()) {
            return Err(Error::InvalidParameters("odd set is not inside the row support".into()));
        }
        Ok(FsCut { support, odd_set })
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn odd_set(&self) -> &[usize] {
        &self.odd_set
    }

    /// The source row as a binary word of length `n`.
    pub fn source_row(&self, n: usize) -> Vec<u8> {
        let mut row = vec![0u8; n];
        for &i in &self.support {
            row[i] = 1;
        }
        row
    }

    /// `Σ_{N\S} x_i + Σ_S (1 - x_i)`; the cut holds when this is `>= 1`.
    pub fn lhs(&self, x: &[f64]) -> f64 {
        fs_lhs(&self.support, |i| self.odd_set.binary_search(&i).is_ok(), x)
    }

    pub fn is_violated_by(&self, x: &[f64]) -> bool {
        self.lhs(x) < 1.0 - VIOLATION_TOL
    }

    /// Whether a binary word satisfies the cut (packed little-endian bits).
    pub fn holds_for_packed(&self, word: &[u64]) -> bool {
        let bit = |i: usize| (word[i / 64] >> (i % 64)) & 1 == 1;
        let mut lhs = 0usize;
        let mut s = self.odd_set.iter().peekable();
        for &i in &self.support {
            let in_s = s.peek() == Some(&&i);
            if in_s {
                s.next();
            }
            if bit(i) != in_s {
                lhs += 1;
            }
        }
        lhs >= 1
    }
}

fn fs_lhs(support: &[usize], in_s: impl Fn(usize) -> bool, x: &[f64]) -> f64 {
    support
        .iter()
        .map(|&i| if in_s(i) { 1.0 - x[i] } else { x[i] })
        .sum()
}

/// `<=`-form LP row of an FS cut over bit variables `0..n`.
pub fn fs_to_lp(cut: &FsCut, origin: Origin) -> ConstraintSpec {
    let coefficients = cut
        .support
        .iter()
        .map(|&i| {
            let a = if cut.odd_set.binary_search(&i).is_ok() { 1.0 } else { -1.0 };
            (i, a)
        })
        .collect();
    ConstraintSpec {
        sense: Sense::LessEqual,
        coefficients,
        rhs: cut.odd_set.len() as f64 - 1.0,
        origin,
    }
}

/// Most violated FS inequality of one row at `x`, if any is violated.
///
/// Starts from the coordinates above one half; when that set is even, the
/// single coordinate closest to one half is toggled (removal preferred on
/// ties, then the lowest index).
pub fn find_fs_cut(support: &[usize], x: &[f64]) -> Option<FsCut> {
    if support.is_empty() {
        return None;
    }
    let mut in_v: Vec<bool> = support.iter().map(|&i| x[i] > 0.5).collect();
    if in_v.iter().filter(|&&b| b).count() % 2 == 0 {
        let mut best: Option<(usize, f64, bool)> = None;
        for (pos, &i) in support.iter().enumerate() {
            let cost = (2.0 * x[i] - 1.0).abs();
            let better = match best {
                None => true,
                Some((_, bc, b_removal)) => cost < bc || (cost == bc && in_v[pos] && !b_removal),
            };
            if better {
                best = Some((pos, cost, in_v[pos]));
            }
        }
        let (pos, _, _) = best.expect("nonempty support");
        in_v[pos] = !in_v[pos];
    }
    let lhs: f64 = support
        .iter()
        .zip(&in_v)
        .map(|(&i, &s)| if s { 1.0 - x[i] } else { x[i] })
        .sum();
    if lhs < 1.0 - VIOLATION_TOL {
        let odd_set = support
            .iter()
            .zip(&in_v)
            .filter(|(_, &s)| s)
            .map(|(&i, _)| i)
            .collect();
        Some(FsCut {
            support: support.to_vec(),
            odd_set,
        })
    } else {
        None
    }
}

/// At most one cut per row of `h`, rows in order; zero rows are skipped.
pub fn find_all_fs_cuts(h: &BitMatrix, x: &[f64]) -> Vec<(usize, FsCut)> {
    (0..h.rows())
        .filter_map(|r| find_fs_cut(&h.row_support(r), x).map(|c| (r, c)))
        .collect()
}

/// RPC cuts at a fractional point.
///
/// Eliminates a copy of `h` with pivots on the fractional coordinates,
/// closest to one half first. Rows of the result whose support meets the
/// fractional set exactly once are candidates; distinct candidates that
/// yield a violated FS inequality are returned.
pub fn generate_rpc_cuts(h: &BitMatrix, x: &[f64]) -> Vec<FsCut> {
    let mut frac: Vec<usize> = (0..x.len())
        .filter(|&i| x[i] > INTEGRALITY_TOL && x[i] < 1.0 - INTEGRALITY_TOL)
        .collect();
    if frac.is_empty() {
        return Vec::new();
    }
    frac.sort_by(|&a, &b| {
        (x[a] - 0.5)
            .abs()
            .total_cmp(&(x[b] - 0.5).abs())
            .then(a.cmp(&b))
    });
    let (reduced, _) = row_reduce(h, &frac);
    let mut is_frac = vec![false; x.len()];
    for &i in &frac {
        is_frac[i] = true;
    }
    let mut seen: Vec<&[u64]> = Vec::new();
    let mut cuts = Vec::new();
    for r in 0..reduced.rows() {
        let support = reduced.row_support(r);
        if support.iter().filter(|&&i| is_frac[i]).count() != 1 {
            continue;
        }
        let words = reduced.row_words(r);
        if seen.contains(&words) {
            continue;
        }
        seen.push(words);
        if let Some(cut) = find_fs_cut(&support, x) {
            cuts.push(cut);
        }
    }
    cuts
}

/// Every FS inequality of every row: `Σ_j 2^(d_j - 1)` constraints.
pub fn enumerate_full_fs(h: &BitMatrix) -> Result<Vec<ConstraintSpec>> {
    let mut out = Vec::new();
    for r in 0..h.rows() {
        let support = h.row_support(r);
        let d = support.len();
        if d > MAX_ENUMERATION_DEGREE {
            return Err(Error::DegreeTooLarge {
                row: r,
                degree: d,
                limit: MAX_ENUMERATION_DEGREE,
            });
        }
        for mask in 0u32..(1 << d) {
            if mask.count_ones() % 2 == 1 {
                let odd_set = (0..d).filter(|b| mask >> b & 1 == 1).map(|b| support[b]).collect();
                let cut = FsCut {
                    support: support.clone(),
                    odd_set,
                };
                out.push(fs_to_lp(&cut, Origin::ForbiddenSet { row: Some(r) }));
            }
        }
    }
    Ok(out)
}

/// Closed-form count of FS inequalities, `Σ_j 2^(d_j - 1)` over nonzero rows.
pub fn full_fs_count(h: &BitMatrix) -> u128 {
    h.row_degrees()
        .into_iter()
        .filter(|&d| d > 0)
        .map(|d| 1u128 << (d - 1))
        .sum()
}

/// Removes every FS/RPC inequality with slack above [`INACTIVE_SLACK`].
/// Equality rows and branching constraints are never touched.
pub fn prune_inactive(problem: &mut LpProblem, solution: &LpSolution) -> Vec<ConstraintId> {
    let removable: Vec<ConstraintId> = problem
        .constraints()
        .iter()
        .filter(|c| c.sense == Sense::LessEqual && c.origin.is_prunable())
        .filter(|c| solution.slack_of(c.id).is_some_and(|s| s > INACTIVE_SLACK))
        .map(|c| c.id)
        .collect();
    problem
        .remove_inactive(&removable)
        .expect("only prunable ids selected");
    removable
}

/// Cuts accumulated across decoding iterations, kept inside the LP they
/// constrain.
#[derive(Clone, Debug)]
pub struct ConstraintPool {
    pub problem: LpProblem,
    pub added: usize,
    pub pruned: usize,
}

impl ConstraintPool {
    pub fn new(problem: LpProblem) -> Self {
        ConstraintPool {
            problem,
            added: 0,
            pruned: 0,
        }
    }

    pub fn add_cut(&mut self, cut: &FsCut, origin: Origin) -> ConstraintId {
        let spec = fs_to_lp(cut, origin);
        self.added += 1;
        self.problem
            .add_constraint(spec.sense, spec.coefficients, spec.rhs, spec.origin)
            .expect("FS cut rows are well formed")
    }

    pub fn prune(&mut self, solution: &LpSolution) -> Vec<ConstraintId> {
        let removed = prune_inactive(&mut self.problem, solution);
        self.pruned += removed.len();
        removed
    }

    pub fn cut_count(&self) -> usize {
        self.problem
            .constraints()
            .iter()
            .filter(|c| c.origin.is_prunable())
            .count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::hamming_8_4_paper;
    use crate::lp::{solve, VarKind};

    fn odd_subsets(support: &[usize]) -> Vec<Vec<usize>> {
        (0u32..1 << support.len())
            .filter(|m| m.count_ones() % 2 == 1)
            .map(|m| {
                (0..support.len())
                    .filter(|b| m >> b & 1 == 1)
                    .map(|b| support[b])
                    .collect()
            })
            .collect()
    }

    fn brute_min_lhs(support: &[usize], x: &[f64]) -> f64 {
        odd_subsets(support)
            .into_iter()
            .map(|s| fs_lhs(support, |i| s.contains(&i), x))
            .fold(f64::INFINITY, f64::min)
    }

    #[test]
    fn fs_rows_match_rearrangement() {
        let cut = FsCut::new(vec![1, 2, 3], vec![1]).unwrap();
        let spec = fs_to_lp(&cut, Origin::ForbiddenSet { row: None });
        assert_eq!(spec.coefficients, vec![(1, 1.0), (2, -1.0), (3, -1.0)]);
        assert_eq!(spec.rhs, 0.0);
        let all = FsCut::new(vec![1, 2, 3], vec![1, 2, 3]).unwrap();
        let spec = fs_to_lp(&all, Origin::ForbiddenSet { row: None });
        assert_eq!(spec.coefficients, vec![(1, 1.0), (2, 1.0), (3, 1.0)]);
        assert_eq!(spec.rhs, 2.0);
        assert!(matches!(FsCut::new(vec![1, 2, 3], vec![1, 2]), Err(Error::EvenSet(2))));
    }

    #[test]
    fn find_cut_examples() {
        // coordinates 1,2,3 of a length-4 point
        let support = [1, 2, 3];
        let cut = find_fs_cut(&support, &[0.0, 0.9, 0.8, 0.05]).unwrap();
        assert_eq!(cut.odd_set(), &[1]);
        assert!((cut.lhs(&[0.0, 0.9, 0.8, 0.05]) - 0.95).abs() < 1e-12);
        // uniqueness: every other odd set gives lhs >= 1
        for s in odd_subsets(&support) {
            if s != vec![1] {
                assert!(fs_lhs(&support, |i| s.contains(&i), &[0.0, 0.9, 0.8, 0.05]) >= 1.0);
            }
        }
        assert!(find_fs_cut(&support, &[0.0, 1.0, 1.0, 0.0]).is_none());
        assert!(find_fs_cut(&support, &[0.0, 0.5, 0.5, 0.5]).is_none());
        assert!((brute_min_lhs(&support, &[0.0, 0.5, 0.5, 0.5]) - 1.5).abs() < 1e-12);
    }

    #[test]
    fn half_point_has_no_cuts_on_example_matrix() {
        let h = hamming_8_4_paper();
        assert!(find_all_fs_cuts(h.parity_check(), &[0.5; 8]).is_empty());
        assert!(find_all_fs_cuts(h.parity_check(), &[0.0; 8]).is_empty());
    }

    #[test]
    fn full_enumeration_counts() {
        let h = hamming_8_4_paper();
        assert_eq!(enumerate_full_fs(h.parity_check()).unwrap().len(), 152);
        assert_eq!(full_fs_count(h.parity_check()), 152);
        let one = BitMatrix::from_bit_strings(&["0111"]).unwrap();
        assert_eq!(enumerate_full_fs(&one).unwrap().len(), 4);
        let mut wide = BitMatrix::zeros(1, 17);
        for c in 0..17 {
            wide.set(0, c, true);
        }
        assert!(matches!(
            enumerate_full_fs(&wide),
            Err(Error::DegreeTooLarge { degree: 17, .. })
        ));
    }

    #[test]
    fn rpc_candidates_deduplicated() {
        let h = BitMatrix::from_bit_strings(&["1110", "1110"]).unwrap();
        // fractional only at coordinate 0
        let x = [0.4, 1.0, 0.0, 0.0];
        let cuts = generate_rpc_cuts(&h, &x);
        assert_eq!(cuts.len(), 1);
        assert!(generate_rpc_cuts(&h, &[1.0, 1.0, 0.0, 0.0]).is_empty());
    }

    #[test]
    fn prune_removes_slack_cut() {
        let mut p = LpProblem::new();
        let x1 = p.add_variable(0.0, f64::INFINITY, VarKind::Auxiliary, -1.0).unwrap();
        let x2 = p.add_variable(0.0, f64::INFINITY, VarKind::Auxiliary, -1.0).unwrap();
        p.add_constraint(Sense::LessEqual, vec![(x1, 1.0)], 1.0, Origin::ForbiddenSet { row: None })
            .unwrap();
        p.add_constraint(Sense::LessEqual, vec![(x2, 1.0)], 1.0, Origin::Rpc).unwrap();
        let loose = p
            .add_constraint(
                Sense::LessEqual,
                vec![(x1, 1.0), (x2, 1.0)],
                3.0,
                Origin::ForbiddenSet { row: None },
            )
            .unwrap();
        let s = solve(&p).unwrap();
        let removed = prune_inactive(&mut p, &s);
        assert_eq!(removed, vec![loose]);
        let again = solve(&p).unwrap();
        assert!((again.objective_value + 2.0).abs() < 1e-12);
        // nothing left to prune: all tight
        assert!(prune_inactive(&mut p, &again).is_empty());
    }

    #[test]
    fn packed_check_matches_float_check() {
        let cut = FsCut::new(vec![0, 2, 5], vec![2]).unwrap();
        for v in 0u64..64 {
            let xf: Vec<f64> = (0..6).map(|i| (v >> i & 1) as f64).collect();
            assert_eq!(cut.holds_for_packed(&[v]), cut.lhs(&xf) >= 1.0);
        }
    }
}
