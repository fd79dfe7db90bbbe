//! Dense bounded-variable primal simplex.
//!
//! Two phases over a full tableau. Nonbasic variables rest at a finite lower
//! bound or at their upper bound; each row gets a slack (inequalities) or an
//! artificial (equalities and rows whose slack would start negative).
//! Pricing is Dantzig's rule, falling back to Bland's rule after a run of
//! degenerate pivots; ratio-test ties go to the lowest variable index.

use super::{LpProblem, LpSolution, LpStatus, Sense, FEASIBILITY_TOL};
use crate::error::{Error, Result};

const PIVOT_TOL: f64 = 1e-9;
const DUAL_TOL: f64 = 1e-9;
const RATIO_TIE: f64 = 1e-12;
const DEGENERATE_RUN: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq)]
enum State {
    Basic(usize),
    Lower,
    Upper,
}

struct Tableau {
    m: usize,
    ncols: usize,
    t: Vec<f64>,
    beta: Vec<f64>,
    basis: Vec<usize>,
    state: Vec<State>,
    lo: Vec<f64>,
    up: Vec<f64>,
    d: Vec<f64>,
    is_artificial: Vec<bool>,
    pivots: usize,
}

enum Outcome {
    Optimal,
    Unbounded,
}

impl Tableau {
    #[inline]
    fn row(&self, i: usize) -> &[f64] {
        &self.t[i * self.ncols..(i + 1) * self.ncols]
    }

    fn nonbasic_value(&self, j: usize) -> f64 {
        match self.state[j] {
            State::Upper => self.up[j],
            _ => self.lo[j],
        }
    }

    fn value(&self, j: usize) -> f64 {
        match self.state[j] {
            State::Basic(r) => self.beta[r],
            _ => self.nonbasic_value(j),
        }
    }

    fn set_costs(&mut self, cost: &[f64]) {
        self.d.copy_from_slice(cost);
        for i in 0..self.m {
            let cb = cost[self.basis[i]];
            if cb != 0.0 {
                let row = &self.t[i * self.ncols..(i + 1) * self.ncols];
                for (dj, &a) in self.d.iter_mut().zip(row) {
                    *dj -= cb * a;
                }
            }
        }
    }

    fn pivot(&mut self, r: usize, j: usize, leaving_state: State) {
        let n = self.ncols;
        let inv = 1.0 / self.t[r * n + j];
        for v in &mut self.t[r * n..(r + 1) * n] {
            *v *= inv;
        }
        self.t[r * n + j] = 1.0;
        let (before, rest) = self.t.split_at_mut(r * n);
        let (prow, after) = rest.split_at_mut(n);
        for row in before.chunks_exact_mut(n).chain(after.chunks_exact_mut(n)) {
            let f = row[j];
            if f != 0.0 {
                for (a, &p) in row.iter_mut().zip(prow.iter()) {
                    *a -= f * p;
                }
                row[j] = 0.0;
            }
        }
        let f = self.d[j];
        if f != 0.0 {
            for (dv, &p) in self.d.iter_mut().zip(prow.iter()) {
                *dv -= f * p;
            }
            self.d[j] = 0.0;
        }
        let leaving = self.basis[r];
        self.state[leaving] = leaving_state;
        self.basis[r] = j;
        self.state[j] = State::Basic(r);
        self.pivots += 1;
    }

    fn choose_entering(&self, bland: bool) -> Option<(usize, f64)> {
        let mut best: Option<(usize, f64)> = None;
        for j in 0..self.ncols {
            if self.up[j] - self.lo[j] <= 0.0 {
                continue;
            }
            let dir = match self.state[j] {
                State::Basic(_) => continue,
                State::Lower if self.d[j] < -DUAL_TOL => 1.0,
                State::Upper if self.d[j] > DUAL_TOL => -1.0,
                _ => continue,
            };
            if bland {
                return Some((j, dir));
            }
            if best.is_none_or(|(b, _)| self.d[j].abs() > self.d[b].abs()) {
                best = Some((j, dir));
            }
        }
        best
    }

    fn run(&mut self, max_iter: usize) -> Result<Outcome> {
        let mut degenerate = 0usize;
        for _ in 0..max_iter {
            let Some((j, dir)) = self.choose_entering(degenerate >= DEGENERATE_RUN) else {
                return Ok(Outcome::Optimal);
            };
            let n = self.ncols;
            let flip = self.up[j] - self.lo[j];
            let mut best = f64::INFINITY;
            let mut leave: Option<usize> = None;
            for i in 0..self.m {
                let alpha = dir * self.t[i * n + j];
                let b = self.basis[i];
                let lim = if alpha > PIVOT_TOL {
                    (self.beta[i] - self.lo[b]) / alpha
                } else if alpha < -PIVOT_TOL && self.up[b].is_finite() {
                    (self.up[b] - self.beta[i]) / -alpha
                } else {
                    continue;
                };
                let lim = lim.max(0.0);
                let better = match leave {
                    None => true,
                    Some(l) => {
                        lim < best - RATIO_TIE || (lim <= best + RATIO_TIE && b < self.basis[l])
                    }
                };
                if better {
                    best = lim;
                    leave = Some(i);
                }
            }
            let step = if flip <= best { flip } else { best };
            if !step.is_finite() {
                return Ok(Outcome::Unbounded);
            }
            if step <= RATIO_TIE {
                degenerate += 1;
            } else {
                degenerate = 0;
            }
            let entering_value = self.nonbasic_value(j) + dir * step;
            for i in 0..self.m {
                let a = self.t[i * n + j];
                if a != 0.0 {
                    self.beta[i] -= dir * a * step;
                }
            }
            if flip <= best {
                self.state[j] = if dir > 0.0 { State::Upper } else { State::Lower };
                continue;
            }
            let r = leave.expect("finite ratio has a leaving row");
            let alpha = dir * self.t[r * n + j];
            let leaving_state = if alpha > 0.0 { State::Lower } else { State::Upper };
            self.pivot(r, j, leaving_state);
            self.beta[r] = entering_value;
        }
        Err(Error::NumericalFailure(format!(
            "iteration limit {max_iter} reached"
        )))
    }
}

/// Solves `problem` to an optimal basic solution or certifies infeasibility.
pub fn solve(problem: &LpProblem) -> Result<LpSolution> {
    let vars = problem.variables();
    let nv = vars.len();
    let cons = problem.constraints();
    let m = cons.len();

    let x0: Vec<f64> = vars.iter().map(|v| v.lower).collect();
    // column layout: structurals, then one slack per inequality, then artificials
    let mut slack_col = vec![usize::MAX; m];
    let mut ncols = nv;
    for (i, c) in cons.iter().enumerate() {
        if c.sense == Sense::LessEqual {
            slack_col[i] = ncols;
            ncols += 1;
        }
    }
    let residual: Vec<f64> = cons.iter().map(|c| c.rhs - c.lhs(&x0)).collect();
    let mut art_col = vec![usize::MAX; m];
    // sign of the artificial in the original orientation of the row
    let mut art_sign = vec![0.0; m];
    for (i, c) in cons.iter().enumerate() {
        if c.sense == Sense::Equal || residual[i] < 0.0 {
            art_col[i] = ncols;
            art_sign[i] = if residual[i] >= 0.0 { 1.0 } else { -1.0 };
            ncols += 1;
        }
    }

    let mut lo = vec![0.0; ncols];
    let mut up = vec![f64::INFINITY; ncols];
    for (j, v) in vars.iter().enumerate() {
        lo[j] = v.lower;
        up[j] = v.upper;
    }
    let mut is_artificial = vec![false; ncols];
    let mut t = vec![0.0; m * ncols];
    let mut beta = vec![0.0; m];
    let mut basis = vec![0; m];
    let mut state = vec![State::Lower; ncols];
    for (i, c) in cons.iter().enumerate() {
        let row = &mut t[i * ncols..(i + 1) * ncols];
        // rows whose artificial enters with sign -1 are negated
        let s = if art_col[i] != usize::MAX { art_sign[i] } else { 1.0 };
        for &(v, a) in &c.coefficients {
            row[v] += s * a;
        }
        if slack_col[i] != usize::MAX {
            row[slack_col[i]] = s;
        }
        if art_col[i] != usize::MAX {
            row[art_col[i]] = 1.0;
            is_artificial[art_col[i]] = true;
            basis[i] = art_col[i];
            beta[i] = residual[i].abs();
        } else {
            basis[i] = slack_col[i];
            beta[i] = residual[i];
        }
        state[basis[i]] = State::Basic(i);
    }

    let mut tab = Tableau {
        m,
        ncols,
        t,
        beta,
        basis,
        state,
        lo,
        up,
        d: vec![0.0; ncols],
        is_artificial,
        pivots: 0,
    };
    let max_iter = 1000 + 50 * (m + ncols);

    if tab.is_artificial.iter().any(|&a| a) {
        let phase1: Vec<f64> = tab.is_artificial.iter().map(|&a| a as u8 as f64).collect();
        tab.set_costs(&phase1);
        match tab.run(max_iter)? {
            Outcome::Optimal => {}
            Outcome::Unbounded => {
                return Err(Error::NumericalFailure("phase one reported unbounded".into()))
            }
        }
        let infeas: f64 = (0..m)
            .filter(|&i| tab.is_artificial[tab.basis[i]])
            .map(|i| tab.beta[i])
            .sum();
        let scale = 1.0 + cons.iter().map(|c| c.rhs.abs()).fold(0.0, f64::max);
        if infeas > FEASIBILITY_TOL * scale {
            return Ok(LpSolution {
                status: LpStatus::Infeasible,
                values: Vec::new(),
                objective_value: f64::INFINITY,
                slack: Vec::new(),
                is_vertex: false,
                pivots: tab.pivots,
            });
        }
        drive_out_artificials(&mut tab);
        for j in 0..ncols {
            if tab.is_artificial[j] {
                tab.up[j] = 0.0;
            }
        }
    }

    let mut cost = vec![0.0; ncols];
    cost[..nv].copy_from_slice(problem.objective());
    tab.set_costs(&cost);
    match tab.run(max_iter)? {
        Outcome::Optimal => {}
        Outcome::Unbounded => return Err(Error::Unbounded),
    }

    let mut values: Vec<f64> = (0..nv).map(|j| tab.value(j)).collect();
    if max_violation(problem, &values) > 1e-11 {
        refine(problem, &tab, &slack_col, &art_col, &art_sign, &mut values);
    }
    for (x, v) in values.iter_mut().zip(vars) {
        if *x < v.lower && *x > v.lower - FEASIBILITY_TOL {
            *x = v.lower;
        } else if *x > v.upper && *x < v.upper + FEASIBILITY_TOL {
            *x = v.upper;
        }
    }
    if max_violation(problem, &values) > FEASIBILITY_TOL {
        return Err(Error::NumericalFailure(format!(
            "optimal basis violates constraints by {:e}",
            max_violation(problem, &values)
        )));
    }
    let slack = cons
        .iter()
        .map(|c| {
            let s = match c.sense {
                Sense::LessEqual => c.rhs - c.lhs(&values),
                Sense::Equal => 0.0,
            };
            (c.id, s)
        })
        .collect();
    let objective_value = problem
        .objective()
        .iter()
        .zip(&values)
        .map(|(c, x)| c * x)
        .sum();
    Ok(LpSolution {
        status: LpStatus::Optimal,
        values,
        objective_value,
        slack,
        is_vertex: true,
        pivots: tab.pivots,
    })
}

/// Pivots zero-valued artificials out of the basis wherever the row has a
/// usable non-artificial entry. Rows without one are redundant and keep
/// their artificial, later fixed at zero.
fn drive_out_artificials(tab: &mut Tableau) {
    for r in 0..tab.m {
        if !tab.is_artificial[tab.basis[r]] {
            continue;
        }
        let row = tab.row(r);
        let mut pick: Option<usize> = None;
        for j in 0..tab.ncols {
            if tab.is_artificial[j] || matches!(tab.state[j], State::Basic(_)) {
                continue;
            }
            if row[j].abs() > PIVOT_TOL && pick.is_none_or(|p| row[j].abs() > row[p].abs()) {
                pick = Some(j);
            }
        }
        let Some(j) = pick else { continue };
        let n = tab.ncols;
        let delta = tab.beta[r] / tab.t[r * n + j];
        let entering_value = tab.nonbasic_value(j) + delta;
        for i in 0..tab.m {
            let a = tab.t[i * n + j];
            if a != 0.0 {
                tab.beta[i] -= a * delta;
            }
        }
        tab.pivot(r, j, State::Lower);
        tab.beta[r] = entering_value;
    }
}

fn max_violation(problem: &LpProblem, values: &[f64]) -> f64 {
    let mut worst = 0.0f64;
    for (x, v) in values.iter().zip(problem.variables()) {
        worst = worst.max(v.lower - x).max(x - v.upper);
    }
    for c in problem.constraints() {
        let lhs = c.lhs(values);
        let viol = match c.sense {
            Sense::LessEqual => lhs - c.rhs,
            Sense::Equal => (lhs - c.rhs).abs(),
        };
        worst = worst.max(viol);
    }
    worst
}

/// Recomputes the basic values from the original rows, `B x_B = b - N x_N`,
/// to wash out drift accumulated in the tableau.
fn refine(
    problem: &LpProblem,
    tab: &Tableau,
    slack_col: &[usize],
    art_col: &[usize],
    art_sign: &[f64],
    values: &mut [f64],
) {
    let m = tab.m;
    let nv = values.len();
    let cons = problem.constraints();
    let mut pos_in_basis = vec![usize::MAX; tab.ncols];
    for (k, &b) in tab.basis.iter().enumerate() {
        pos_in_basis[b] = k;
    }
    let mut mat = vec![0.0; m * m];
    let mut rhs = vec![0.0; m];
    for (i, c) in cons.iter().enumerate() {
        let mut b = c.rhs;
        let mut put = |col: usize, a: f64, b: &mut f64| {
            if pos_in_basis[col] != usize::MAX {
                mat[i * m + pos_in_basis[col]] += a;
            } else {
                *b -= a * tab.nonbasic_value(col);
            }
        };
        for &(v, a) in &c.coefficients {
            put(v, a, &mut b);
        }
        if slack_col[i] != usize::MAX {
            put(slack_col[i], 1.0, &mut b);
        }
        if art_col[i] != usize::MAX {
            put(art_col[i], art_sign[i], &mut b);
        }
        rhs[i] = b;
    }
    let Some(sol) = dense_solve(&mut mat, &mut rhs, m) else {
        return;
    };
    for (k, &b) in tab.basis.iter().enumerate() {
        if b < nv {
            values[b] = sol[k];
        }
    }
}

fn dense_solve(a: &mut [f64], b: &mut [f64], n: usize) -> Option<Vec<f64>> {
    for col in 0..n {
        let p = (col..n).max_by(|&x, &y| a[x * n + col].abs().total_cmp(&a[y * n + col].abs()))?;
        if a[p * n + col].abs() < 1e-12 {
            return None;
        }
        if p != col {
            for k in 0..n {
                a.swap(p * n + k, col * n + k);
            }
            b.swap(p, col);
        }
        for r in col + 1..n {
            let f = a[r * n + col] / a[col * n + col];
            if f != 0.0 {
                for k in col..n {
                    a[r * n + k] -= f * a[col * n + k];
                }
                b[r] -= f * b[col];
            }
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|k| a[r * n + k] * x[k]).sum();
        x[r] = (b[r] - s) / a[r * n + r];
    }
    Some(x)
}
