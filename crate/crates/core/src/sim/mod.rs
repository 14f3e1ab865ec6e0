//! Stochastic network processes (T1 rewiring and edge rupture) and their
//! disorder traces.

mod mesh;
pub mod rupture;
pub mod t1;
pub mod tutte;
pub mod voronoi;

pub use rupture::{
    hex_patch, patch_dimensions, rupture_move, run_rupture, run_rupture_observed, HexPatch, PatchSize, RuptureConfig,
    RuptureOutcome, RuptureRejection,
};
pub use t1::{degenerate_face_distance, run_t1, run_t1_observed, t1_move, T1Config, T1Outcome, T1Rejection};
pub use tutte::{tutte_embed, TutteReport};
pub use voronoi::{voronoi_init, voronoi_network};

use crate::error::{Error, Result};
use crate::network::{face_distances, DisorderReport, FaceDistances, FaceShape, PlanarNetwork};
use mesh::Mesh;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

pub const TRACE_HEADER: &str = "step,D,D_w,D6,D6_w,Dc,Dc_w,faces,min_area,max_area";

/// Generator used by every simulation, as recorded in trace metadata.
pub const RNG_SPEC: &str = "ChaCha8Rng (rand_chacha 0.3) seeded with SeedableRng::seed_from_u64(seed)";

/// One row of a disorder trace.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub step: usize,
    /// `[D, D_w, D6, D6_w, Dc, Dc_w]`.
    pub values: [f64; 6],
    pub faces: usize,
    pub min_area: f64,
    pub max_area: f64,
}

impl TraceRecord {
    pub fn csv_line(&self) -> String {
        let mut s = self.step.to_string();
        for v in self.values {
            let _ = write!(s, ",{v}");
        }
        let _ = write!(s, ",{},{},{}", self.faces, self.min_area, self.max_area);
        s
    }

    pub fn parse_csv_line(line: &str) -> Result<TraceRecord> {
        let cols: Vec<&str> = line.trim().split(',').collect();
        if cols.len() != 10 {
            return Err(Error::Parse(format!("trace row has {} columns, expected 10", cols.len())));
        }
        let num = |i: usize| cols[i].parse::<f64>().map_err(|_| Error::Parse(format!("bad number '{}'", cols[i])));
        let int = |i: usize| cols[i].parse::<usize>().map_err(|_| Error::Parse(format!("bad integer '{}'", cols[i])));
        Ok(TraceRecord {
            step: int(0)?,
            values: [num(1)?, num(2)?, num(3)?, num(4)?, num(5)?, num(6)?],
            faces: int(7)?,
            min_area: num(8)?,
            max_area: num(9)?,
        })
    }
}

/// Run description written next to a trace.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceMetadata {
    pub process: String,
    pub version: String,
    pub rng: String,
    pub edge_selection: String,
    pub step_semantics: String,
    pub config: serde_json::Value,
    pub accepted: usize,
    pub rejected: BTreeMap<String, usize>,
    pub details: BTreeMap<String, serde_json::Value>,
}

impl TraceMetadata {
    fn new(process: &str, config: serde_json::Value) -> Self {
        TraceMetadata {
            process: process.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            rng: RNG_SPEC.to_string(),
            edge_selection: "uniform index (gen_range) into the interior edges sorted by (min vertex, max vertex)"
                .to_string(),
            step_semantics: "step counts accepted moves; rejected draws are redrawn and tallied by reason".to_string(),
            config,
            accepted: 0,
            rejected: BTreeMap::new(),
            details: BTreeMap::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationTrace {
    pub records: Vec<TraceRecord>,
    pub metadata: TraceMetadata,
}

impl SimulationTrace {
    pub fn to_csv(&self) -> String {
        let mut s = String::from(TRACE_HEADER);
        s.push('\n');
        for r in &self.records {
            s.push_str(&r.csv_line());
            s.push('\n');
        }
        s
    }

    pub fn first(&self) -> Option<&TraceRecord> {
        self.records.first()
    }

    pub fn last(&self) -> Option<&TraceRecord> {
        self.records.last()
    }
}

/// Parses trace CSV text (header plus rows).
pub fn parse_trace_csv(text: &str) -> Result<Vec<TraceRecord>> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    match lines.next() {
        Some(h) if h.trim() == TRACE_HEADER => {}
        _ => return Err(Error::Parse("trace CSV must start with the standard header".into())),
    }
    lines.map(TraceRecord::parse_csv_line).collect()
}

/// Metadata path paired with a trace CSV: `run.csv` -> `run.meta.json`.
pub fn metadata_path(trace: &Path) -> PathBuf {
    trace.with_extension("meta.json")
}

/// Read-only view of the simulation state handed to observers at each record.
pub struct RecordContext<'a> {
    mesh: &'a Mesh,
}

impl RecordContext<'_> {
    /// The current network (actual embedding, before any measurement merging).
    pub fn network(&self) -> PlanarNetwork {
        self.mesh.to_network()
    }
}

/// Callback invoked after every trace record.
pub type Observer<'a> = dyn FnMut(&TraceRecord, &RecordContext<'_>) -> Result<()> + 'a;

/// Disorders, face count, and area range for a set of measured faces.
pub(crate) fn measure(step: usize, shapes: &[FaceShape]) -> Result<TraceRecord> {
    let rows: Vec<FaceDistances> = shapes
        .par_iter()
        .enumerate()
        .map(|(face, shape)| {
            let [regular, hexagon, circle] =
                face_distances(shape).map_err(|e| Error::InvalidFace { face, source: Box::new(e) })?;
            Ok(FaceDistances { face, sides: shape.sides(), area: shape.area(), regular, hexagon, circle })
        })
        .collect::<Result<_>>()?;
    let min_area = rows.iter().map(|r| r.area).fold(f64::INFINITY, f64::min);
    let max_area = rows.iter().map(|r| r.area).fold(f64::NEG_INFINITY, f64::max);
    let report = DisorderReport::from_rows(rows, false);
    Ok(TraceRecord { step, values: report.values(), faces: report.faces, min_area, max_area })
}

fn bump(map: &mut BTreeMap<String, usize>, key: &str) {
    *map.entry(key.to_string()).or_default() += 1;
}
