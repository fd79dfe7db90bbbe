//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage or configuration error, 2 a `decode`
//! result without ML certificate.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::decoders::{decode_bb, decode_ml_bruteforce, Decoder, DecoderConfig, DecoderKind, LpOptions, NoObserver};
use crate::error::{Error, Result};
use crate::gf2::{hamming_8_4_paper, io::load_code};
use crate::separation::full_fs_count;
use crate::sim::{emit_results, run_simulation, OutputFormat, SimConfig};

/// Received vector of the worked branch-and-bound example.
pub const EXAMPLE_RECEIVED: [f64; 8] = [0.798337, 1.421758, -1.240177, -0.771128, -1.745193, 0.554868, 0.983861, -0.404989];

#[derive(Parser, Debug)]
#[command(name = "hdpc-lp", version, about = "LP decoding of binary linear codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decode one received vector.
    Decode {
        /// Built-in code name or matrix file.
        #[arg(long)]
        code: String,
        /// Channel output, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        r: String,
        /// Preset (A, B, C) or variant such as `nsa`, `bb:3`, `diversity:5+adapt`.
        #[arg(long, default_value = "C")]
        decoder: String,
        /// Branch-and-bound depth.
        #[arg(long)]
        depth: Option<usize>,
        /// Attempts for diversity decoders.
        #[arg(long)]
        diversity: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        adapt: bool,
        #[arg(long)]
        prune: bool,
    },
    /// Run a frame-error-rate simulation.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
    },
    /// Print code parameters and the forbidden-set count.
    Inspect {
        #[arg(long)]
        code: String,
    },
    /// Branch and bound (depth 3) on the extended Hamming example.
    PaperExample,
}

fn parse_reals(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Error::Parse(format!("bad real {t:?} in --r")))
        })
        .collect()
}

fn fmt_word(w: &[f64]) -> String {
    w.iter()
        .map(|&x| if x == 0.0 || x == 1.0 { format!("{x}") } else { format!("{x:.6}") })
        .collect::<Vec<_>>()
        .join(" ")
}

#[allow(clippy::too_many_arguments)]
fn cmd_decode(
    out: &mut dyn Write,
    code: &str,
    r: &str,
    decoder: &str,
    depth: Option<usize>,
    diversity: Option<usize>,
    seed: u64,
    adapt: bool,
    prune: bool,
) -> Result<i32> {
    let code = load_code(code)?;
    let r = parse_reals(r)?;
    let mut cfg: DecoderConfig = decoder.parse()?;
    match (&mut cfg.kind, depth, diversity) {
        (DecoderKind::BranchAndBound { depth: d }, Some(v), _) => *d = Some(v),
        (DecoderKind::Diversity { attempts } | DecoderKind::AlpPerm { attempts }, _, Some(v)) if v > 0 => *attempts = v,
        (_, None, None) => {}
        _ => return Err(Error::Config("--depth/--diversity do not apply to this decoder".into())),
    }
    cfg.adapt_matrix |= adapt;
    cfg.prune_inactive |= prune;
    let dec = Decoder::new(cfg, &code)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let o = dec.decode(&r, &mut rng, &mut NoObserver)?;
    let s = &o.stats;
    writeln!(out, "decoder: {cfg}")?;
    writeln!(out, "word: {}", fmt_word(&o.word))?;
    writeln!(out, "certificate: {}", o.ml_certificate)?;
    writeln!(out, "objective: {:.9}", o.objective)?;
    writeln!(
        out,
        "lp_solves: {}  cuts_fs: {}  cuts_rpc: {}  bb_nodes: {}  iterations: {}",
        s.lp_solves, s.cuts_fs, s.cuts_rpc, s.bb_nodes, s.iterations
    )?;
    writeln!(out, "wall_time_ms: {:.3}", s.wall_time.as_secs_f64() * 1e3)?;
    Ok(if o.ml_certificate { 0 } else { 2 })
}

fn cmd_simulate(out: &mut dyn Write, config: &PathBuf, path: &PathBuf, format: OutputFormat) -> Result<i32> {
    let cfg = SimConfig::load(config)?;
    let stats = run_simulation(&cfg)?;
    emit_results(&stats, path, format)?;
    for p in &stats.points {
        writeln!(
            out,
            "{:<28} {:>5.2} dB  frames {:>7}  errors {:>5}  fer {:.3e}",
            p.decoder, p.ebn0_db, p.frames, p.frame_errors, p.fer
        )?;
    }
    Ok(0)
}

fn cmd_inspect(out: &mut dyn Write, code: &str) -> Result<i32> {
    let code = load_code(code)?;
    let h = code.parity_check();
    let degrees = h.row_degrees();
    writeln!(out, "code: {}", code.name())?;
    writeln!(out, "n: {}", code.n())?;
    writeln!(out, "k: {}", code.k())?;
    writeln!(out, "m: {}", h.rows())?;
    writeln!(
        out,
        "row_degrees: {}",
        degrees.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" ")
    )?;
    writeln!(out, "fs_constraints: {}", full_fs_count(h))?;
    Ok(0)
}

fn cmd_paper_example(out: &mut dyn Write) -> Result<i32> {
    let start = Instant::now();
    let code = hamming_8_4_paper();
    let c: Vec<f64> = EXAMPLE_RECEIVED.iter().map(|r| -r).collect();
    let ml = decode_ml_bruteforce(&code, &c)?;
    let bb = decode_bb(&code, &c, 3, &LpOptions::default(), &mut NoObserver)?;
    let s = &bb.stats;
    writeln!(out, "H:\n{}", code.parity_check())?;
    writeln!(out, "r: {}", fmt_word(&EXAMPLE_RECEIVED))?;
    writeln!(out, "bb word:  {}", fmt_word(&bb.word))?;
    writeln!(out, "ml word:  {}", fmt_word(&ml.word))?;
    writeln!(out, "objective: {:.6} (ml {:.6})", bb.objective, ml.objective)?;
    writeln!(out, "certificate: {}", bb.ml_certificate)?;
    writeln!(
        out,
        "bb_nodes: {}  lp_solves: {}  pruned: infeasible {} bound {} integral {}  depth_limit_hit: {}",
        s.bb_nodes, s.lp_solves, s.pruned_infeasible, s.pruned_bound, s.pruned_integral, s.depth_limit_hit
    )?;
    writeln!(out, "elapsed_ms: {:.3}", start.elapsed().as_secs_f64() * 1e3)?;
    let ok = bb.word == ml.word;
    writeln!(out, "{}", if ok { "matches ML" } else { "DIFFERS FROM ML" })?;
    Ok(if ok { 0 } else { 1 })
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run_with_io<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Decode {
            code,
            r,
            decoder,
            depth,
            diversity,
            seed,
            adapt,
            prune,
        } => cmd_decode(out, code, r, decoder, *depth, *diversity, *seed, *adapt, *prune),
        Command::Simulate { config, out: path, format } => cmd_simulate(out, config, path, *format),
        Command::Inspect { code } => cmd_inspect(out, code),
        Command::PaperExample => cmd_paper_example(out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with_io(args, &mut std::io::stdout(), &mut std::io::stderr())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run_with_io(std::iter::once("hdpc-lp").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn inspect_example_code() {
        let (code, out, _) = run_capture(&["inspect", "--code", "hamming_8_4_paper"]);
        assert_eq!(code, 0);
        assert!(out.contains("fs_constraints: 152"));
        assert!(out.contains("row_degrees: 8 4 4 4"));
    }

    #[test]
    fn decode_exit_codes() {
        let (code, out, _) = run_capture(&["decode", "--code", "hamming_7_4", "--r", "-1,-1,-1,-1,-1,-1,-1", "--decoder", "nsa"]);
        assert_eq!(code, 0);
        assert!(out.contains("certificate: true"));
        let (code, _, err) = run_capture(&["decode", "--code", "hamming_7_4", "--r", "1,x,2", "--decoder", "nsa"]);
        assert_eq!(code, 1);
        assert!(err.contains("bad real"));
        let (code, _, _) = run_capture(&["decode", "--code", "hamming_7_4", "--r", "1,2"]);
        assert_eq!(code, 1);
        let (code, _, _) = run_capture(&["frobnicate"]);
        assert_eq!(code, 1);
    }

    #[test]
    fn worked_example_matches_oracle() {
        let (code, out, _) = run_capture(&["paper-example"]);
        assert_eq!(code, 0, "{out}");
    }
}
