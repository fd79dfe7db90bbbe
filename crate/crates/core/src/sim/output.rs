use std::fs::File;
use std::io::BufWriter;
use std::path::Path;

use super::{PointStats, SimStats};
use crate::error::Result;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

/// Writes one record per (decoder, SNR) in `stats` order. CSV columns:
/// `decoder,ebn0_db,frames,frame_errors,fer,ml_cert_rate,avg_lp_solves,avg_cuts_fs,avg_cuts_rpc,avg_bb_nodes,avg_wall_time_ms`.
pub fn emit_results(stats: &SimStats, path: impl AsRef<Path>, format: OutputFormat) -> Result<()> {
    match format {
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_path(path)?;
            for p in &stats.points {
                w.serialize(p)?;
            }
            w.flush()?;
        }
        OutputFormat::Json => {
            let w = BufWriter::new(File::create(path)?);
            serde_json::to_writer_pretty(w, &stats.points)?;
        }
    }
    Ok(())
}

pub fn read_csv(path: impl AsRef<Path>) -> Result<SimStats> {
    let mut r = csv::Reader::from_path(path)?;
    let points = r.deserialize().collect::<std::result::Result<Vec<PointStats>, _>>()?;
    Ok(SimStats { points })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stats() -> SimStats {
        let p = |d: &str, e: f64| PointStats {
            decoder: d.into(),
            ebn0_db: e,
            frames: 1000,
            frame_errors: 7,
            fer: 0.007,
            ml_cert_rate: 0.993,
            avg_lp_solves: 1.234,
            avg_cuts_fs: 0.5,
            avg_cuts_rpc: 0.125,
            avg_bb_nodes: 0.0,
            avg_wall_time_ms: 0.0421,
        };
        SimStats {
            points: vec![p("nsa", 2.0), p("nsa", 3.5)],
        }
    }

    #[test]
    fn csv_header_and_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        emit_results(&stats(), &path, OutputFormat::Csv).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(
            lines[0],
            "decoder,ebn0_db,frames,frame_errors,fer,ml_cert_rate,avg_lp_solves,avg_cuts_fs,avg_cuts_rpc,avg_bb_nodes,avg_wall_time_ms"
        );
        let back = read_csv(&path).unwrap();
        assert_eq!(back, stats());
        assert_eq!(back.points[0].avg_wall_time_ms, 0.0421);
    }

    #[test]
    fn json_records() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.json");
        emit_results(&stats(), &path, OutputFormat::Json).unwrap();
        let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let arr = v.as_array().unwrap();
        assert_eq!(arr.len(), 2);
        assert_eq!(arr[1]["ebn0_db"], 3.5);
        assert_eq!(arr[0].as_object().unwrap().len(), 11);
    }
}
