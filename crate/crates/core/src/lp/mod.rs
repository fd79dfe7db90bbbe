//! Linear programs with tagged constraints and a bounded-variable simplex.

mod format;
mod simplex;

use std::collections::HashSet;

pub use format::to_lp_format;
pub use simplex::solve;

use crate::error::{Error, Result};

/// Primal feasibility tolerance.
pub const FEASIBILITY_TOL: f64 = 1e-9;
/// Distance from 0/1 still counted as integral.
pub const INTEGRALITY_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VarKind {
    Bit,
    Auxiliary,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LpVariable {
    pub lower: f64,
    pub upper: f64,
    pub kind: VarKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConstraintId(pub u64);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sense {
    Equal,
    LessEqual,
}

/// Where a constraint came from. Only forbidden-set and RPC cuts may be
/// dropped by inactive-constraint pruning.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Origin {
    /// Row `row` of `H x - 2 z = 0`.
    Equality { row: usize },
    /// Forbidden-set cut; `row` is the parity-check row when it came from H.
    ForbiddenSet { row: Option<usize> },
    /// Cut from a redundant parity check.
    Rpc,
    Branch { bit: usize, value: u8 },
    General,
}

impl Origin {
    pub fn is_prunable(&self) -> bool {
        matches!(self, Origin::ForbiddenSet { .. } | Origin::Rpc)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpConstraint {
    pub id: ConstraintId,
    pub sense: Sense,
    /// Sparse `(variable, coefficient)` pairs.
    pub coefficients: Vec<(usize, f64)>,
    pub rhs: f64,
    pub origin: Origin,
}

impl LpConstraint {
    pub fn lhs(&self, values: &[f64]) -> f64 {
        self.coefficients.iter().map(|&(v, a)| a * values[v]).sum()
    }
}

/// Constraint contents before an id is assigned.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstraintSpec {
    pub sense: Sense,
    pub coefficients: Vec<(usize, f64)>,
    pub rhs: f64,
    pub origin: Origin,
}

/// Minimization problem over bounded variables.
#[derive(Clone, Debug, Default)]
pub struct LpProblem {
    variables: Vec<LpVariable>,
    objective: Vec<f64>,
    constraints: Vec<LpConstraint>,
    next_id: u64,
}

impl PartialEq for LpProblem {
    /// Compares variables, objective and the constraint set; constraint
    /// order and the id counter are ignored.
    fn eq(&self, other: &Self) -> bool {
        if self.variables != other.variables
            || self.objective != other.objective
            || self.constraints.len() != other.constraints.len()
        {
            return false;
        }
        self.constraints
            .iter()
            .all(|c| other.constraint(c.id).is_some_and(|o| o == c))
    }
}

impl LpProblem {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_variable(&mut self, lower: f64, upper: f64, kind: VarKind, cost: f64) -> Result<usize> {
        if !lower.is_finite() || lower > upper || upper.is_nan() {
            return Err(Error::InvalidParameters(format!(
                "variable bounds [{lower}, {upper}] are invalid"
            )));
        }
        if kind == VarKind::Bit && (lower < 0.0 || upper > 1.0) {
            return Err(Error::InvalidParameters("bit variables must lie in [0,1]".into()));
        }
        self.variables.push(LpVariable { lower, upper, kind });
        self.objective.push(cost);
        Ok(self.variables.len() - 1)
    }

    pub fn set_bounds(&mut self, var: usize, lower: f64, upper: f64) -> Result<()> {
        let v = self
            .variables
            .get_mut(var)
            .ok_or_else(|| Error::InvalidParameters(format!("no variable {var}")))?;
        if !lower.is_finite() || lower > upper {
            return Err(Error::InvalidParameters(format!("bounds [{lower}, {upper}] are invalid")));
        }
        v.lower = lower;
        v.upper = upper;
        Ok(())
    }

    pub fn set_cost(&mut self, var: usize, cost: f64) {
        self.objective[var] = cost;
    }

    pub fn variables(&self) -> &[LpVariable] {
        &self.variables
    }

    pub fn objective(&self) -> &[f64] {
        &self.objective
    }

    pub fn constraints(&self) -> &[LpConstraint] {
        &self.constraints
    }

    pub fn constraint(&self, id: ConstraintId) -> Option<&LpConstraint> {
        self.constraints.iter().find(|c| c.id == id)
    }

    pub fn num_constraints(&self) -> usize {
        self.constraints.len()
    }

    pub fn add_constraint(
        &mut self,
        sense: Sense,
        coefficients: Vec<(usize, f64)>,
        rhs: f64,
        origin: Origin,
    ) -> Result<ConstraintId> {
        if coefficients.iter().all(|&(_, a)| a == 0.0) {
            return Err(Error::InvalidConstraint("no nonzero coefficient".into()));
        }
        if let Some(&(v, _)) = coefficients.iter().find(|&&(v, _)| v >= self.variables.len()) {
            return Err(Error::InvalidConstraint(format!("unknown variable {v}")));
        }
        if !rhs.is_finite() {
            return Err(Error::InvalidConstraint("right-hand side is not finite".into()));
        }
        let id = ConstraintId(self.next_id);
        self.next_id += 1;
        self.constraints.push(LpConstraint {
            id,
            sense,
            coefficients,
            rhs,
            origin,
        });
        Ok(id)
    }

    pub fn add_constraints(
        &mut self,
        specs: impl IntoIterator<Item = ConstraintSpec>,
    ) -> Result<Vec<ConstraintId>> {
        specs
            .into_iter()
            .map(|s| self.add_constraint(s.sense, s.coefficients, s.rhs, s.origin))
            .collect()
    }

    pub fn remove_constraints(&mut self, ids: &[ConstraintId]) -> Result<()> {
        let set: HashSet<ConstraintId> = ids.iter().copied().collect();
        if let Some(&missing) = ids.iter().find(|id| self.constraint(**id).is_none()) {
            return Err(Error::UnknownConstraintId(missing));
        }
        self.constraints.retain(|c| !set.contains(&c.id));
        Ok(())
    }

    /// Removal on behalf of inactive-constraint pruning: equality rows and
    /// branching constraints are refused.
    pub fn remove_inactive(&mut self, ids: &[ConstraintId]) -> Result<()> {
        for &id in ids {
            let c = self.constraint(id).ok_or(Error::UnknownConstraintId(id))?;
            if matches!(c.origin, Origin::Equality { .. } | Origin::Branch { .. }) {
                return Err(Error::RemovalForbidden(id));
            }
        }
        self.remove_constraints(ids)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    pub values: Vec<f64>,
    pub objective_value: f64,
    /// `rhs - lhs` per constraint, in problem order; zero for equalities.
    pub slack: Vec<(ConstraintId, f64)>,
    pub is_vertex: bool,
    pub pivots: usize,
}

impl LpSolution {
    pub fn slack_of(&self, id: ConstraintId) -> Option<f64> {
        self.slack.iter().find(|(c, _)| *c == id).map(|&(_, s)| s)
    }

    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }
}

/// Whether every bit variable sits within `tol` of 0 or 1.
pub fn is_integral(problem: &LpProblem, solution: &LpSolution, tol: f64) -> bool {
    solution.is_optimal()
        && problem
            .variables()
            .iter()
            .zip(&solution.values)
            .filter(|(v, _)| v.kind == VarKind::Bit)
            .all(|(_, &x)| is_near_binary(x, tol))
}

pub fn is_near_binary(x: f64, tol: f64) -> bool {
    x.abs() <= tol || (x - 1.0).abs() <= tol
}
