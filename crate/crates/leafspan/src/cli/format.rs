//! JSON file formats, decimal coordinate scaling, and index mapping.
//!
//! Instance files list points in any color order; the solver indexes reds
//! first, so ingestion records the permutation both ways and every index
//! written back to disk is a file index. Coordinates may be JSON numbers or
//! decimal strings with up to six fractional digits; they scale by 10^6 into
//! exact integers, and lengths divide back out on output.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::gen::GeneratedInstance;
use crate::geom::{total_length, ExactPoint, COORD_SCALE, MAX_COORD};
use crate::instance::{Instance, InstanceError};
use crate::uncross::Solution;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PointRecord {
    pub x: Value,
    pub y: Value,
    /// "R" or "B".
    pub color: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<u64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InstanceFile {
    pub points: Vec<PointRecord>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SolutionFile {
    /// Tree edges as file-index pairs.
    pub edges: Vec<[usize; 2]>,
    /// Sum of edge lengths in user units.
    pub total_length: f64,
    pub swap_count: u64,
    /// Realized budget per red file index.
    pub f_prime: BTreeMap<usize, u32>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TraceSwap {
    pub removed: [[usize; 2]; 2],
    pub added: [[usize; 2]; 2],
    pub case: String,
    pub length_delta: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TraceFile {
    pub initial_length: f64,
    pub final_length: f64,
    pub swaps: Vec<TraceSwap>,
}

/// Ingestion failure, split by how the command line reports it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IngestError {
    /// Malformed value; message says which and why.
    Parse(String),
    /// Degenerate point set; message names points by file index.
    GeneralPosition(String),
}

/// An instance together with the file-order permutation.
#[derive(Debug)]
pub struct IngestedInstance {
    pub instance: Instance,
    /// file index -> internal vertex.
    pub file_to_internal: Vec<usize>,
    /// internal vertex -> file index.
    pub internal_to_file: Vec<usize>,
}

impl IngestedInstance {
    pub fn edge_to_file(&self, a: usize, b: usize) -> [usize; 2] {
        let fa = self.internal_to_file[a];
        let fb = self.internal_to_file[b];
        [fa.min(fb), fa.max(fb)]
    }
}

pub fn parse_instance_file(text: &str) -> Result<InstanceFile, String> {
    serde_json::from_str(text).map_err(|e| format!("invalid instance file: {e}"))
}

pub fn parse_solution_file(text: &str) -> Result<SolutionFile, String> {
    serde_json::from_str(text).map_err(|e| format!("invalid solution file: {e}"))
}

/// Builds the instance, scaling coordinates and validating colors and
/// budgets. With `uniform_degree` set, per-point budgets in the file are
/// ignored and every red point gets that value.
pub fn ingest(
    file: &InstanceFile,
    uniform_degree: Option<u32>,
) -> Result<IngestedInstance, IngestError> {
    let n = file.points.len();
    let mut red: Vec<(ExactPoint, u32)> = Vec::new();
    let mut blue: Vec<ExactPoint> = Vec::new();
    let mut red_file_indices = Vec::new();
    let mut blue_file_indices = Vec::new();

    for (i, rec) in file.points.iter().enumerate() {
        let x = parse_coord(&rec.x).map_err(|e| IngestError::Parse(format!("point {i}, x: {e}")))?;
        let y = parse_coord(&rec.y).map_err(|e| IngestError::Parse(format!("point {i}, y: {e}")))?;
        let p = ExactPoint::new(x, y);
        match rec.color.as_str() {
            "R" => {
                let f = match uniform_degree {
                    Some(k) => k,
                    None => {
                        let raw = rec.f.ok_or_else(|| {
                            IngestError::Parse(format!(
                                "point {i}: red points need a degree budget f"
                            ))
                        })?;
                        u32::try_from(raw).map_err(|_| {
                            IngestError::Parse(format!("point {i}: f = {raw} is too large"))
                        })?
                    }
                };
                if f < 2 {
                    return Err(IngestError::Parse(format!(
                        "point {i}: degree budget f = {f} is below the minimum of 2"
                    )));
                }
                red.push((p, f));
                red_file_indices.push(i);
            }
            "B" => {
                if rec.f.is_some() && uniform_degree.is_none() {
                    return Err(IngestError::Parse(format!(
                        "point {i}: blue points must not carry a degree budget"
                    )));
                }
                blue.push(p);
                blue_file_indices.push(i);
            }
            other => {
                return Err(IngestError::Parse(format!(
                    "point {i}: color must be \"R\" or \"B\", got \"{other}\""
                )));
            }
        }
    }

    let mut internal_to_file = red_file_indices;
    internal_to_file.extend(blue_file_indices);
    let mut file_to_internal = vec![0usize; n];
    for (internal, &file_idx) in internal_to_file.iter().enumerate() {
        file_to_internal[file_idx] = internal;
    }

    let instance = Instance::new(red, blue).map_err(|e| match e {
        InstanceError::GeneralPosition(v) => {
            use crate::geom::PositionViolation::*;
            let msg = match v {
                Duplicate { i, j } => format!(
                    "points {} and {} coincide",
                    internal_to_file[i], internal_to_file[j]
                ),
                Collinear { i, j, k } => format!(
                    "points {}, {}, {} are collinear",
                    internal_to_file[i], internal_to_file[j], internal_to_file[k]
                ),
            };
            IngestError::GeneralPosition(msg)
        }
        other => IngestError::Parse(other.to_string()),
    })?;

    Ok(IngestedInstance { instance, file_to_internal, internal_to_file })
}

/// Parses a coordinate literal (JSON number or decimal string) into scaled
/// internal units. Accepts an optional sign, digits, and at most six
/// fractional digits; no exponents.
fn parse_coord(v: &Value) -> Result<i64, String> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        other => return Err(format!("expected a number or decimal string, got {other}")),
    };
    parse_decimal(&text)
}

fn parse_decimal(text: &str) -> Result<i64, String> {
    let (sign, body) = match text.strip_prefix('-') {
        Some(rest) => (-1i128, rest),
        None => (1i128, text.strip_prefix('+').unwrap_or(text)),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() || !int_part.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("\"{text}\" is not a plain decimal"));
    }
    if frac_part.len() > 6 {
        return Err(format!("\"{text}\" has more than 6 fractional digits"));
    }
    if !frac_part.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("\"{text}\" is not a plain decimal"));
    }
    if int_part.len() > 12 {
        return Err(format!("\"{text}\" is out of range"));
    }
    let int: i128 = int_part.parse::<i128>().map_err(|_| format!("\"{text}\" is not a number"))?;
    let mut frac: i128 = 0;
    for b in frac_part.bytes() {
        frac = frac * 10 + (b - b'0') as i128;
    }
    for _ in frac_part.len()..6 {
        frac *= 10;
    }
    let scaled = sign * (int * COORD_SCALE as i128 + frac);
    if scaled.unsigned_abs() > MAX_COORD as u128 {
        return Err(format!(
            "\"{text}\" is out of range; coordinates must stay within {:.6}",
            MAX_COORD as f64 / COORD_SCALE as f64
        ));
    }
    Ok(scaled as i64)
}

/// Internal length to user units.
pub fn to_user_length(internal: f64) -> f64 {
    internal / COORD_SCALE as f64
}

pub fn solution_file(ing: &IngestedInstance, sol: &Solution) -> SolutionFile {
    let inst = &ing.instance;
    let mut edges: Vec<[usize; 2]> =
        sol.tree.edges().map(|s| ing.edge_to_file(s.a(), s.b())).collect();
    edges.sort_unstable();
    let mut f_prime = BTreeMap::new();
    for (v, &f) in sol.f_prime.iter().enumerate() {
        f_prime.insert(ing.internal_to_file[v], f);
    }
    SolutionFile {
        edges,
        total_length: to_user_length(total_length(sol.tree.edges(), inst.points())),
        swap_count: sol.trace.swaps.len() as u64,
        f_prime,
    }
}

pub fn trace_file(ing: &IngestedInstance, sol: &Solution) -> TraceFile {
    let swaps = sol
        .trace
        .swaps
        .iter()
        .map(|rec| TraceSwap {
            removed: rec.removed.map(|s| ing.edge_to_file(s.a(), s.b())),
            added: rec.added.map(|s| ing.edge_to_file(s.a(), s.b())),
            case: rec.case_class.tag().to_string(),
            length_delta: to_user_length(rec.length_delta),
        })
        .collect();
    TraceFile {
        initial_length: to_user_length(sol.trace.initial_length),
        final_length: to_user_length(sol.trace.final_length),
        swaps,
    }
}

/// Instance file for generator output: reds first, then blues, coordinates
/// as plain integers in user units.
pub fn instance_file_from_generated(g: &GeneratedInstance) -> InstanceFile {
    let mut points = Vec::with_capacity(g.red.len() + g.blue.len());
    for &(x, y, f) in &g.red {
        points.push(PointRecord {
            x: Value::from(x),
            y: Value::from(y),
            color: "R".to_string(),
            f: Some(f as u64),
        });
    }
    for &(x, y) in &g.blue {
        points.push(PointRecord { x: Value::from(x), y: Value::from(y), color: "B".to_string(), f: None });
    }
    InstanceFile { points }
}

/// Canonical serialization: pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialization cannot fail");
    s.push('\n');
    s
}
