//! A small frame-error-rate sweep, written to CSV.
//!
//! ```bash
//! cargo run --release --example fer_simulation -- /tmp/fer.csv
//! ```

use hdpc_lp::sim::{emit_results, run_simulation, OutputFormat, SimConfig};

fn main() -> hdpc_lp::Result<()> {
    let out = std::env::args().nth(1).unwrap_or_else(|| "fer.csv".into());
    let cfg = SimConfig::from_json(
        r#"{
            "code": "bch_15_7",
            "decoders": ["nsa", "A", "C"],
            "ebn0_list": [1.0, 2.0, 3.0],
            "frames": 1000,
            "seed": 42,
            "max_frame_errors": 50,
            "workers": 0
        }"#,
    )?;
    let stats = run_simulation(&cfg)?;
    for p in &stats.points {
        println!(
            "{:<22} {:>4.1} dB  frames {:>5}  FER {:.4}  cert {:.3}  LP {:.2}",
            p.decoder, p.ebn0_db, p.frames, p.fer, p.ml_cert_rate, p.avg_lp_solves
        );
    }
    emit_results(&stats, &out, OutputFormat::Csv)?;
    println!("wrote {out}");
    Ok(())
}
