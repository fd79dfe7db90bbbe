//! Monte Carlo frame-error simulation with paired decoders.
//!
//! Frame `t` of SNR point `p` draws its message and noise from
//! `RngStream(seed, p << 32 | t)`, so every decoder sees the same received
//! word and results do not depend on the number of workers. Frames are
//! decoded in fixed batches; early stopping is decided per decoder in frame
//! order.

mod output;

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::path::Path;
use std::time::Duration;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel::{modulate, transmit, ChannelConfig, RngStream};
use crate::decoders::{Decoder, DecoderConfig, NoObserver};
use crate::error::{Error, Result};
use crate::gf2::{io::load_code, LinearCode};

pub use output::{emit_results, read_csv, OutputFormat};

/// Frames decoded between early-stop checks.
pub const BATCH_SIZE: u64 = 256;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TransmitMode {
    ZeroWord,
    #[default]
    RandomCodeword,
}

fn default_max_frame_errors() -> Option<u64> {
    Some(100)
}

fn default_workers() -> usize {
    1
}

/// Simulation settings, read from a JSON document.
///
/// `max_frame_errors: null` disables early stopping. `workers: 0` uses one
/// thread per core.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimConfig {
    pub code: String,
    pub decoders: Vec<String>,
    pub ebn0_list: Vec<f64>,
    pub frames: u64,
    pub seed: u64,
    #[serde(default = "default_max_frame_errors")]
    pub max_frame_errors: Option<u64>,
    #[serde(default)]
    pub transmit_mode: TransmitMode,
    #[serde(default = "default_workers")]
    pub workers: usize,
}

impl SimConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: SimConfig = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        if self.frames == 0 {
            return Err(Error::Config("frames must be at least 1".into()));
        }
        if self.ebn0_list.is_empty() {
            return Err(Error::Config("ebn0_list is empty".into()));
        }
        if self.decoders.is_empty() {
            return Err(Error::Config("no decoders configured".into()));
        }
        if self.frames >= 1 << 32 || self.ebn0_list.len() >= 1 << 31 {
            return Err(Error::Config("too many frames or SNR points".into()));
        }
        Ok(())
    }
}

/// Per-frame result for one decoder.
#[derive(Clone, Debug, PartialEq)]
pub struct FrameResult {
    pub bits: Option<Vec<u8>>,
    pub frame_error: bool,
    pub ml_certificate: bool,
    pub objective: f64,
    pub lp_solves: usize,
    pub cuts_fs: usize,
    pub cuts_rpc: usize,
    pub bb_nodes: usize,
    pub wall_time: Duration,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FrameRecord {
    pub index: u64,
    pub transmitted: Vec<u8>,
    /// Hash of the received vector handed to each decoder, in decoder order.
    pub received_hashes: Vec<u64>,
    /// `None` where the decoder had already stopped early.
    pub results: Vec<Option<FrameResult>>,
}

pub fn hash_received(r: &[f64]) -> u64 {
    let mut h = DefaultHasher::new();
    for v in r {
        v.to_bits().hash(&mut h);
    }
    h.finish()
}

/// Deterministic frames of one SNR point.
#[derive(Clone, Debug)]
pub struct FrameSource {
    pub code: LinearCode,
    pub channel: ChannelConfig,
    pub seed: u64,
    pub point: u64,
    pub mode: TransmitMode,
}

impl FrameSource {
    pub fn new(code: &LinearCode, ebn0_db: f64, seed: u64, point: u64, mode: TransmitMode) -> Result<Self> {
        Ok(FrameSource {
            code: code.clone(),
            channel: ChannelConfig::new(ebn0_db, code.rate())?,
            seed,
            point,
            mode,
        })
    }

    pub fn stream(&self, t: u64) -> RngStream {
        RngStream::new(self.seed, (self.point << 32) | t)
    }

    /// `(transmitted codeword, received vector)` of frame `t`.
    pub fn frame(&self, t: u64) -> (Vec<u8>, Vec<f64>) {
        let stream = self.stream(t);
        let x = match self.mode {
            TransmitMode::ZeroWord => vec![0; self.code.n()],
            TransmitMode::RandomCodeword => {
                let mut rng = stream.message();
                let info: Vec<u8> = (0..self.code.k()).map(|_| rng.random_range(0..2)).collect();
                self.code.encode(&info).expect("info length is k")
            }
        };
        let r = transmit(&modulate(&x), &self.channel, &stream);
        (x, r)
    }
}

fn decode_frame(source: &FrameSource, decoders: &[Decoder], active: &[bool], t: u64) -> Result<FrameRecord> {
    let (x, r) = source.frame(t);
    let mut received_hashes = Vec::with_capacity(decoders.len());
    let mut results = Vec::with_capacity(decoders.len());
    for (d, &on) in decoders.iter().zip(active) {
        if !on {
            received_hashes.push(0);
            results.push(None);
            continue;
        }
        received_hashes.push(hash_received(&r));
        let mut rng = source.stream(t).decoder();
        let out = d.decode(&r, &mut rng, &mut NoObserver)?;
        let bits = out.bits();
        results.push(Some(FrameResult {
            frame_error: bits.as_deref() != Some(&x[..]),
            bits,
            ml_certificate: out.ml_certificate,
            objective: out.objective,
            lp_solves: out.stats.lp_solves,
            cuts_fs: out.stats.cuts_fs,
            cuts_rpc: out.stats.cuts_rpc,
            bb_nodes: out.stats.bb_nodes,
            wall_time: out.stats.wall_time,
        }));
    }
    Ok(FrameRecord {
        index: t,
        transmitted: x,
        received_hashes,
        results,
    })
}

fn thread_pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))
}

/// Decodes frames `0..frames` of `source` with every decoder.
///
/// A decoder stops after the frame on which it reaches `max_frame_errors`;
/// later frames carry `None` for it. Output does not depend on `workers`.
pub fn run_paired_frames(
    source: &FrameSource,
    decoders: &[Decoder],
    frames: u64,
    max_frame_errors: Option<u64>,
    workers: usize,
) -> Result<Vec<FrameRecord>> {
    let pool = thread_pool(workers)?;
    let mut active = vec![true; decoders.len()];
    let mut errors = vec![0u64; decoders.len()];
    let mut records = Vec::new();
    let mut start = 0;
    while start < frames && active.iter().any(|&a| a) {
        let end = (start + BATCH_SIZE).min(frames);
        let snapshot = active.clone();
        let batch: Vec<FrameRecord> = pool.install(|| {
            (start..end)
                .into_par_iter()
                .map(|t| decode_frame(source, decoders, &snapshot, t))
                .collect::<Result<_>>()
        })?;
        for mut rec in batch {
            for (d, slot) in rec.results.iter_mut().enumerate() {
                if !active[d] {
                    *slot = None;
                    rec.received_hashes[d] = 0;
                    continue;
                }
                if slot.as_ref().is_some_and(|f| f.frame_error) {
                    errors[d] += 1;
                    if max_frame_errors.is_some_and(|m| errors[d] >= m) {
                        active[d] = false;
                    }
                }
            }
            records.push(rec);
        }
        start = end;
    }
    Ok(records)
}

/// Aggregates for one (decoder, SNR) pair.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PointStats {
    pub decoder: String,
    pub ebn0_db: f64,
    pub frames: u64,
    pub frame_errors: u64,
    pub fer: f64,
    pub ml_cert_rate: f64,
    pub avg_lp_solves: f64,
    pub avg_cuts_fs: f64,
    pub avg_cuts_rpc: f64,
    pub avg_bb_nodes: f64,
    pub avg_wall_time_ms: f64,
}

impl PartialEq for PointStats {
    /// Wall time is ignored.
    fn eq(&self, o: &Self) -> bool {
        self.decoder == o.decoder
            && self.ebn0_db == o.ebn0_db
            && self.frames == o.frames
            && self.frame_errors == o.frame_errors
            && self.fer == o.fer
            && self.ml_cert_rate == o.ml_cert_rate
            && self.avg_lp_solves == o.avg_lp_solves
            && self.avg_cuts_fs == o.avg_cuts_fs
            && self.avg_cuts_rpc == o.avg_cuts_rpc
            && self.avg_bb_nodes == o.avg_bb_nodes
    }
}

impl PointStats {
    pub fn from_records(decoder: &str, ebn0_db: f64, records: &[FrameRecord], index: usize) -> Self {
        let rs: Vec<&FrameResult> = records.iter().filter_map(|r| r.results[index].as_ref()).collect();
        let frames = rs.len() as u64;
        let avg = |f: &dyn Fn(&FrameResult) -> f64| {
            if frames == 0 {
                0.0
            } else {
                rs.iter().map(|r| f(r)).sum::<f64>() / frames as f64
            }
        };
        let frame_errors = rs.iter().filter(|r| r.frame_error).count() as u64;
        PointStats {
            decoder: decoder.to_string(),
            ebn0_db,
            frames,
            frame_errors,
            fer: if frames == 0 { 0.0 } else { frame_errors as f64 / frames as f64 },
            ml_cert_rate: avg(&|r| r.ml_certificate as u8 as f64),
            avg_lp_solves: avg(&|r| r.lp_solves as f64),
            avg_cuts_fs: avg(&|r| r.cuts_fs as f64),
            avg_cuts_rpc: avg(&|r| r.cuts_rpc as f64),
            avg_bb_nodes: avg(&|r| r.bb_nodes as f64),
            avg_wall_time_ms: avg(&|r| r.wall_time.as_secs_f64() * 1e3),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SimStats {
    /// Ordered by decoder (configuration order), then by SNR ascending.
    pub points: Vec<PointStats>,
}

impl SimStats {
    pub fn get(&self, decoder: &str, ebn0_db: f64) -> Option<&PointStats> {
        self.points.iter().find(|p| p.decoder == decoder && p.ebn0_db == ebn0_db)
    }
}

/// Decoders named in `cfg`, bound to `code`.
pub fn build_decoders(names: &[String], code: &LinearCode) -> Result<Vec<Decoder>> {
    names
        .iter()
        .map(|s| {
            let cfg: DecoderConfig = s.parse().map_err(|e: Error| Error::Config(e.to_string()))?;
            Decoder::new(cfg, code)
        })
        .collect()
}

pub fn run_simulation(cfg: &SimConfig) -> Result<SimStats> {
    cfg.validate()?;
    let code = load_code(&cfg.code).map_err(|e| Error::Config(e.to_string()))?;
    run_simulation_with_code(cfg, &code)
}

/// [`run_simulation`] with an already loaded code; `cfg.code` is ignored.
pub fn run_simulation_with_code(cfg: &SimConfig, code: &LinearCode) -> Result<SimStats> {
    cfg.validate()?;
    let decoders = build_decoders(&cfg.decoders, code)?;
    let mut snrs: Vec<(usize, f64)> = cfg.ebn0_list.iter().copied().enumerate().collect();
    snrs.sort_by(|a, b| a.1.total_cmp(&b.1));
    let mut per_point = Vec::new();
    for &(p, ebn0) in &snrs {
        let source = FrameSource::new(code, ebn0, cfg.seed, p as u64, cfg.transmit_mode)?;
        let records = run_paired_frames(&source, &decoders, cfg.frames, cfg.max_frame_errors, cfg.workers)?;
        per_point.push((ebn0, records));
    }
    let mut points = Vec::new();
    for (d, name) in cfg.decoders.iter().enumerate() {
        for (ebn0, records) in &per_point {
            points.push(PointStats::from_records(name, *ebn0, records, d));
        }
    }
    Ok(SimStats { points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::builtin_code;

    fn cfg(decoders: &[&str], ebn0: &[f64], frames: u64) -> SimConfig {
        SimConfig {
            code: "hamming_7_4".into(),
            decoders: decoders.iter().map(|s| s.to_string()).collect(),
            ebn0_list: ebn0.to_vec(),
            frames,
            seed: 11,
            max_frame_errors: Some(100),
            transmit_mode: TransmitMode::RandomCodeword,
            workers: 1,
        }
    }

    #[test]
    fn json_defaults() {
        let c = SimConfig::from_json(
            r#"{"code":"bch_15_7","decoders":["C"],"ebn0_list":[3.0],"frames":10,"seed":1}"#,
        )
        .unwrap();
        assert_eq!(c.max_frame_errors, Some(100));
        assert_eq!(c.transmit_mode, TransmitMode::RandomCodeword);
        assert_eq!(c.workers, 1);
        assert!(SimConfig::from_json(r#"{"code":"x","decoders":["C"],"ebn0_list":[],"frames":1,"seed":1}"#).is_err());
        assert!(SimConfig::from_json(r#"{"code":"x","decoders":["C"],"ebn0_list":[1],"frames":0,"seed":1}"#).is_err());
    }

    #[test]
    fn noiseless_limit_has_no_errors() {
        let stats = run_simulation(&cfg(&["nsa", "alp"], &[30.0], 100)).unwrap();
        for p in &stats.points {
            assert_eq!(p.frames, 100);
            assert_eq!(p.fer, 0.0);
        }
    }

    #[test]
    fn unknown_names_are_config_errors() {
        assert!(matches!(run_simulation(&cfg(&["zzz"], &[1.0], 5)), Err(Error::Config(_))));
        let mut c = cfg(&["nsa"], &[1.0], 5);
        c.code = "no_such_code".into();
        assert!(matches!(run_simulation(&c), Err(Error::Config(_))));
    }

    #[test]
    fn early_stop_and_ordering() {
        let mut c = cfg(&["nsa", "ml"], &[2.0, 0.0], 2000);
        c.max_frame_errors = Some(5);
        let stats = run_simulation(&c).unwrap();
        let order: Vec<(String, f64)> = stats.points.iter().map(|p| (p.decoder.clone(), p.ebn0_db)).collect();
        assert_eq!(
            order,
            vec![("nsa".into(), 0.0), ("nsa".into(), 2.0), ("ml".into(), 0.0), ("ml".into(), 2.0)]
        );
        for p in &stats.points {
            assert_eq!(p.frame_errors, 5);
            assert!(p.frames < 2000);
        }
    }

    #[test]
    fn paired_frames_share_received_words() {
        let code = builtin_code("hamming_7_4").unwrap();
        let decoders = build_decoders(&["nsa".into(), "alp".into(), "A".into()], &code).unwrap();
        let src = FrameSource::new(&code, 1.0, 3, 0, TransmitMode::RandomCodeword).unwrap();
        let recs = run_paired_frames(&src, &decoders, 300, None, 1).unwrap();
        assert_eq!(recs.len(), 300);
        for r in &recs {
            assert!(r.received_hashes.iter().all(|&h| h == r.received_hashes[0]));
            assert!(code.is_codeword(&r.transmitted).unwrap());
        }
    }
}
