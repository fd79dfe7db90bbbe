//! Code automorphisms as a source of decoding diversity.
//!
//! Checks the generators found for a few codes, then decodes noisy BCH[31,21]
//! frames with plain adaptive LP and with 5 permuted attempts.

use hdpc_lp::automorphism::{is_automorphism, AutomorphismSampler, Permutation};
use hdpc_lp::decoders::{decode_alp, decode_diversity, DistanceMetric, LpOptions, NoObserver};
use hdpc_lp::gf2::builtin_code;
use hdpc_lp::sim::{FrameSource, TransmitMode};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> hdpc_lp::Result<()> {
    for name in ["bch_15_7", "hamming_8_4_paper"] {
        let code = builtin_code(name)?;
        let sampler = AutomorphismSampler::for_code(&code)?;
        for (label, g) in sampler.generators() {
            println!("{name:<18} {label:<14} [{g}] automorphism: {}", is_automorphism(&code, g));
        }
    }
    let not_one = Permutation::new(vec![1, 0, 2, 3, 4, 5, 6])?;
    println!("swap of bits 0,1 on hamming_7_4: {}", is_automorphism(&builtin_code("hamming_7_4")?, &not_one));

    let code = builtin_code("bch_31_21")?;
    let sampler = AutomorphismSampler::for_code(&code)?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    println!("random element: {}", sampler.sample(&mut rng));

    let src = FrameSource::new(&code, 3.0, 11, 0, TransmitMode::RandomCodeword)?;
    let opts = LpOptions::default();
    let (mut plain_ok, mut div_ok, frames) = (0, 0, 300);
    for t in 0..frames {
        let (x, r) = src.frame(t);
        let c: Vec<f64> = r.iter().map(|v| -v).collect();
        let plain = decode_alp(&code, &c, &opts, &mut NoObserver)?;
        let div = decode_diversity(&code, &c, &r, 5, Some(&sampler), DistanceMetric::Bits, &opts, &mut rng, &mut NoObserver)?;
        plain_ok += (plain.bits().as_ref() == Some(&x)) as u32;
        div_ok += (div.bits().as_ref() == Some(&x)) as u32;
    }
    println!("{frames} frames at 3 dB: adaptive LP {plain_ok} correct, 5 permuted attempts {div_ok} correct");
    Ok(())
}
