//! The bounded-variable simplex on its own: a small LP, its slacks, and the
//! same problem in CPLEX LP text for checking against another solver.

use hdpc_lp::lp::{solve, to_lp_format, LpProblem, Origin, Sense, VarKind};

fn main() -> hdpc_lp::Result<()> {
    // minimize -x0 - 2 x1 + 0.5 x2
    let mut p = LpProblem::new();
    let x0 = p.add_variable(0.0, 1.0, VarKind::Bit, -1.0)?;
    let x1 = p.add_variable(0.0, 1.0, VarKind::Bit, -2.0)?;
    let x2 = p.add_variable(0.0, 2.0, VarKind::Auxiliary, 0.5)?;

    let cap = p.add_constraint(Sense::LessEqual, vec![(x0, 1.0), (x1, 1.0)], 1.5, Origin::General)?;
    let link = p.add_constraint(Sense::Equal, vec![(x0, 1.0), (x1, 1.0), (x2, -1.0)], 0.0, Origin::General)?;

    print!("{}", to_lp_format(&p));

    let sol = solve(&p)?;
    println!("\nstatus {:?}, objective {:.4}, {} pivots", sol.status, sol.objective_value, sol.pivots);
    println!("x = {:?}", sol.values);
    println!("slack(cap) = {:?}, slack(link) = {:?}", sol.slack_of(cap), sol.slack_of(link));

    // tightening a bound makes it infeasible
    p.set_bounds(x2, 2.0, 2.0)?;
    p.set_bounds(x0, 0.0, 0.0)?;
    println!("with x0 = 0, x2 = 2: {:?}", solve(&p)?.status);
    Ok(())
}
