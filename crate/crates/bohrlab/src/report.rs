//! Flat result records and deterministic CSV / JSON rendering.
//!
//! Output stability is part of the contract: rows are emitted in caller
//! order, structs serialize in declaration order (never through a sorted
//! map), and floats print with Rust's shortest round-trip formatting, so a
//! fixed seed reproduces output byte for byte.

use serde::Serialize;
use serde_json::json;

use crate::cara::TestBattery;
use crate::catalog::{BoundKind, BoundRecord};
use crate::domains::Exponent;
use crate::engine::EstimateKind;
use crate::error::Result;

impl BoundKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            BoundKind::Exact => "exact",
            BoundKind::Lower => "lower",
            BoundKind::Upper => "upper",
            BoundKind::Asymptotic => "asymptotic",
        }
    }
}

impl EstimateKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            EstimateKind::UpperEstimate => "upper_estimate",
            EstimateKind::TheoremExact => "theorem_exact",
            EstimateKind::LowerCertificate => "lower_certificate",
        }
    }
}

/// One computed or catalogued number with its full context.
#[derive(Clone, Debug, Serialize)]
pub struct ResultRecord {
    pub quantity: String,
    pub p: f64,
    pub q: Exponent,
    pub n: usize,
    #[serde(rename = "K")]
    pub k_max: u32,
    pub seed: u64,
    pub bound_kind: String,
    pub value: f64,
    pub lo: Option<f64>,
    pub hi: Option<f64>,
    pub source: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub battery: Option<serde_json::Value>,
}

impl ResultRecord {
    /// Catalog bound in row form; K and seed are 0 (no computation ran).
    pub fn from_bound(rec: &BoundRecord, p: f64, q: Exponent, n: usize) -> Self {
        Self {
            quantity: rec.name.clone(),
            p,
            q,
            n,
            k_max: 0,
            seed: 0,
            bound_kind: rec.kind.as_str().into(),
            value: rec.value,
            lo: None,
            hi: None,
            source: rec.source.clone(),
            battery: None,
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_f64(v: f64) -> String {
    // shortest round-trip formatting; infinities print as inf/-inf
    format!("{v}")
}

pub const CSV_HEADER: &str = "quantity,p,q,n,K,seed,bound_kind,value,lo,hi,source";

/// Render records as CSV with the fixed column set (battery manifests are
/// JSON-only).
pub fn to_csv(records: &[ResultRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        let lo = r.lo.map(csv_f64).unwrap_or_default();
        let hi = r.hi.map(csv_f64).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{}\n",
            csv_field(&r.quantity),
            csv_f64(r.p),
            r.q,
            r.n,
            r.k_max,
            r.seed,
            csv_field(&r.bound_kind),
            csv_f64(r.value),
            lo,
            hi,
            csv_field(&r.source),
        ));
    }
    out
}

/// Render records as pretty JSON (an array of objects, fields in
/// declaration order).
pub fn to_json_string(records: &[ResultRecord]) -> Result<String> {
    Ok(serde_json::to_string_pretty(records)?)
}

/// Reproducibility manifest of a battery: domain, truncation, and one entry
/// per member with its provenance, tail model, and term count.
pub fn battery_manifest(battery: &TestBattery) -> serde_json::Value {
    let members: Vec<serde_json::Value> = battery
        .members()
        .iter()
        .map(|f| {
            json!({
                "label": f.provenance().label(),
                "provenance": serde_json::to_value(f.provenance()).expect("serializable"),
                "tail": serde_json::to_value(f.tail()).expect("serializable"),
                "terms": f.series().num_terms(),
            })
        })
        .collect();
    json!({
        "n": battery.domain().n,
        "q": serde_json::to_value(battery.domain().q).expect("serializable"),
        "scale": battery.domain().scale,
        "K": battery.k_max(),
        "members": members,
    })
}
