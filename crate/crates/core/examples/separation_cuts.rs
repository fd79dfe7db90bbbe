//! Forbidden-set and RPC cuts at a fractional point, and one adaptive LP
//! decode with an observer that logs every cut round.

use hdpc_lp::decoders::{decode_alp, CutKind, DecodeObserver, LpOptions};
use hdpc_lp::gf2::hamming_8_4_paper;
use hdpc_lp::lp::{LpProblem, LpSolution};
use hdpc_lp::separation::{find_all_fs_cuts, full_fs_count, generate_rpc_cuts, FsCut};

struct Log;

impl DecodeObserver for Log {
    fn lp_solved(&mut self, problem: &LpProblem, solution: &LpSolution) {
        let x: Vec<String> = solution.values.iter().map(|v| format!("{v:.3}")).collect();
        println!("  LP with {} constraints -> [{}]", problem.num_constraints(), x.join(" "));
    }

    fn cuts_added(&mut self, kind: CutKind, cuts: &[FsCut]) {
        println!("  + {} {:?} cut(s)", cuts.len(), kind);
    }
}

fn main() -> hdpc_lp::Result<()> {
    let code = hamming_8_4_paper();
    let h = code.parity_check();
    println!("full FS description: {} inequalities", full_fs_count(h));

    let x = [0.5, 0.5, 0.0, 0.0, 0.5, 0.0, 0.0, 0.5];
    for (row, cut) in find_all_fs_cuts(h, &x) {
        println!("row {row}: support {:?} odd set {:?} lhs {:.2}", cut.support(), cut.odd_set(), cut.lhs(&x));
    }
    for cut in generate_rpc_cuts(h, &x) {
        println!("rpc: support {:?} odd set {:?}", cut.support(), cut.odd_set());
    }

    let r = [0.9, -0.2, 1.1, 0.3, -0.4, 0.8, 0.7, -0.6];
    let c: Vec<f64> = r.iter().map(|v| -v).collect();
    println!("\nadaptive LP on r = {r:?}");
    let out = decode_alp(&code, &c, &LpOptions::default(), &mut Log)?;
    println!("result {:?} certificate {}", out.word, out.ml_certificate);
    Ok(())
}
