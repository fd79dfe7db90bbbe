use std::fmt::Write;

use super::{LpProblem, Sense};

fn term(out: &mut String, first: &mut bool, coef: f64, var: usize) {
    if coef == 0.0 {
        return;
    }
    let sign = if coef < 0.0 { "-" } else if *first { "" } else { "+" };
    if !sign.is_empty() {
        let _ = write!(out, " {sign}");
    }
    let mag = coef.abs();
    if mag == 1.0 {
        let _ = write!(out, " v{var}");
    } else {
        let _ = write!(out, " {mag} v{var}");
    }
    *first = false;
}

/// CPLEX-style LP text, for cross-checking against external solvers.
pub fn to_lp_format(problem: &LpProblem) -> String {
    let mut out = String::from("Minimize\n obj:");
    let mut first = true;
    for (j, &c) in problem.objective().iter().enumerate() {
        term(&mut out, &mut first, c, j);
    }
    if first {
        out.push_str(" 0 v0");
    }
    out.push_str("\nSubject To\n");
    for c in problem.constraints() {
        let _ = write!(out, " c{}:", c.id.0);
        let mut first = true;
        for &(v, a) in &c.coefficients {
            term(&mut out, &mut first, a, v);
        }
        let op = match c.sense {
            Sense::Equal => "=",
            Sense::LessEqual => "<=",
        };
        let _ = writeln!(out, " {op} {}", c.rhs);
    }
    out.push_str("Bounds\n");
    for (j, v) in problem.variables().iter().enumerate() {
        if v.upper.is_finite() {
            let _ = writeln!(out, " {} <= v{j} <= {}", v.lower, v.upper);
        } else {
            let _ = writeln!(out, " v{j} >= {}", v.lower);
        }
    }
    out.push_str("End\n");
    out
}
