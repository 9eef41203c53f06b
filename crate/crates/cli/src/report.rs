//! Artifact schemas. Every JSON document carries `schema_version`; CSV
//! headers are fixed constants.

use std::io::Write;

use manin_core::counting::QFit;
use manin_core::densities::{LocalDensityReport, PeyreBreakdown};
use manin_core::surface::CountRecord;
use manin_core::toric::CoxRing;
use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;
pub const COUNT_CSV_HEADER: [&str; 4] = ["B", "count", "method", "elapsed_seconds"];
pub const COMPARE_CSV_HEADER: [&str; 4] = ["B", "N_U", "predicted", "ratio"];

#[derive(Debug, Serialize)]
pub struct Envelope<'a, T: Serialize> {
    pub schema_version: u32,
    pub kind: &'a str,
    #[serde(flatten)]
    pub body: T,
}

pub fn write_json<T: Serialize>(out: &mut dyn Write, kind: &str, body: T) -> anyhow::Result<()> {
    let env = Envelope { schema_version: SCHEMA_VERSION, kind, body };
    serde_json::to_writer_pretty(&mut *out, &env)?;
    writeln!(out)?;
    Ok(())
}

#[derive(Debug, Serialize)]
pub struct CountReport {
    pub records: Vec<CountRecord>,
}

pub fn write_count_csv(out: &mut dyn Write, records: &[CountRecord]) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(COUNT_CSV_HEADER)?;
    for r in records {
        w.write_record([
            r.bound.to_string(),
            r.count.to_string(),
            r.method.to_string(),
            format!("{:.6}", r.elapsed_seconds),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompareRow {
    #[serde(rename = "B")]
    pub bound: u64,
    #[serde(rename = "N_U")]
    pub count: u64,
    /// C B (log B)^3 with the central estimate of C.
    pub predicted: f64,
    pub ratio: f64,
}

impl CompareRow {
    pub fn new(bound: u64, count: u64, c: f64) -> Self {
        let b = bound as f64;
        let predicted = c * b * b.ln().powi(3);
        Self { bound, count, predicted, ratio: count as f64 / predicted }
    }
}

#[derive(Debug, Serialize)]
pub struct CompareReport {
    pub c_estimate: f64,
    pub c_interval: [f64; 2],
    pub rows: Vec<CompareRow>,
    pub fit: QFit,
}

pub fn write_compare_csv(out: &mut dyn Write, rows: &[CompareRow]) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(COMPARE_CSV_HEADER)?;
    for r in rows {
        w.write_record([
            r.bound.to_string(),
            r.count.to_string(),
            format!("{:.6}", r.predicted),
            format!("{:.6}", r.ratio),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Serialize)]
pub struct OrbitReport {
    pub label: String,
    pub rays: Vec<(i64, i64)>,
    pub names: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct FanReport {
    pub rays: Vec<(i64, i64)>,
    pub cone_indices: Vec<u64>,
    pub complete: bool,
    pub smooth: bool,
    pub invariant: bool,
    pub resolved_rays: Vec<(i64, i64)>,
    pub inserted_rays: Vec<(i64, i64)>,
    pub resolved_smooth: bool,
    pub resolved_complete: bool,
    pub picard_rank: usize,
    pub picard_rank_geometric: usize,
    pub frobenius_trace: i64,
    pub orbits: Vec<OrbitReport>,
    pub relations: Vec<String>,
    pub anticanonical: String,
    pub alpha_polytope: Vec<String>,
    pub alpha: String,
    pub alpha_float: f64,
}

#[derive(Debug, Serialize)]
pub struct PredictReport {
    #[serde(flatten)]
    pub breakdown: PeyreBreakdown,
    pub omega_inf_method: String,
}

#[derive(Debug, Serialize)]
pub struct DensityReport {
    #[serde(flatten)]
    pub report: LocalDensityReport,
}

#[derive(Debug, Serialize)]
pub struct CoxReport {
    #[serde(flatten)]
    pub ring: CoxRing,
    pub relation_strings: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct ErrorBody {
    pub kind: String,
    pub message: String,
}

#[derive(Debug, Serialize)]
pub struct ErrorRecord {
    pub error: ErrorBody,
}
