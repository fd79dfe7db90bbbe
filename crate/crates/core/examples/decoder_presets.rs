//! Every decoder variant by name on the same noisy frames.
//!
//! Names follow `base[+adapt][+prune][+symbols]`; `A`, `B` and `C` are
//! shorthands.

use hdpc_lp::decoders::{DecodeStats, Decoder, NoObserver};
use hdpc_lp::gf2::builtin_code;
use hdpc_lp::sim::{FrameSource, TransmitMode};

const NAMES: [&str; 9] = ["ml", "static", "alp", "alp+prune", "nsa", "bb:3", "A", "B", "C"];

fn main() -> hdpc_lp::Result<()> {
    let code = builtin_code("bch_15_7")?;
    let src = FrameSource::new(&code, 2.0, 3, 0, TransmitMode::RandomCodeword)?;
    let frames = 200;

    println!("{:<28} {:>7} {:>6} {:>9} {:>8}", "decoder", "errors", "cert", "LP/frame", "ms");
    for name in NAMES {
        let dec = Decoder::new(name.parse()?, &code)?;
        let (mut errors, mut certs) = (0, 0);
        let mut total = DecodeStats::default();
        let mut elapsed = std::time::Duration::ZERO;
        for t in 0..frames {
            let (x, r) = src.frame(t);
            let out = dec.decode(&r, &mut src.stream(t).decoder(), &mut NoObserver)?;
            errors += (out.bits() != Some(x)) as u32;
            certs += out.ml_certificate as u32;
            total.absorb(&out.stats);
            elapsed += out.stats.wall_time;
        }
        println!(
            "{:<28} {:>7} {:>6} {:>9.2} {:>8.3}",
            dec.config().to_string(),
            errors,
            certs,
            total.lp_solves as f64 / frames as f64,
            elapsed.as_secs_f64() * 1e3 / frames as f64
        );
    }
    Ok(())
}
