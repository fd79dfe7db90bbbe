//! Branch and bound on the extended Hamming [8,4,4] code with the received
//! vector of the worked example, next to the exhaustive ML answer.
//!
//! ```bash
//! cargo run --example worked_example
//! ```

use hdpc_lp::cli::EXAMPLE_RECEIVED;
use hdpc_lp::decoders::{decode_bb, decode_ml_bruteforce, decode_nsa, LpOptions, NoObserver};
use hdpc_lp::gf2::hamming_8_4_paper;

fn main() -> hdpc_lp::Result<()> {
    let code = hamming_8_4_paper();
    println!("H =\n{}", code.parity_check());
    let c: Vec<f64> = EXAMPLE_RECEIVED.iter().map(|r| -r).collect();

    let opts = LpOptions::default();
    let root = decode_nsa(&code, &c, &[], &opts, &mut NoObserver)?;
    println!("NSA alone:   {:?} (certificate {})", root.word, root.ml_certificate);

    for depth in 0..=3 {
        let bb = decode_bb(&code, &c, depth, &opts, &mut NoObserver)?;
        println!(
            "BB depth {depth}: {:?} certificate {} nodes {} (pruned: infeasible {}, bound {}, integral {})",
            bb.bits(),
            bb.ml_certificate,
            bb.stats.bb_nodes,
            bb.stats.pruned_infeasible,
            bb.stats.pruned_bound,
            bb.stats.pruned_integral
        );
    }

    let ml = decode_ml_bruteforce(&code, &c)?;
    println!("ML (16 words): {:?} cost {:.6}", ml.bits(), ml.objective);
    Ok(())
}
