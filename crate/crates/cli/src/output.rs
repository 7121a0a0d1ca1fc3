//! CSV and JSON serialization with pinned formatting.
//!
//! CSV cells carry 12 significant digits in scientific notation so that a
//! given configuration always produces byte-identical files; regression
//! tests compare the raw bytes.

use crate::config::RunMetadata;
use crate::pipeline::SimulationOutput;

/// One float, 12 significant digits, scientific notation.
pub fn format_value(x: f64) -> String {
    format!("{x:.11e}")
}

/// The full CSV document: header plus one row per time sample, LF endings.
pub fn render_csv(out: &SimulationOutput) -> String {
    let trace = &out.trace;
    let mut doc = String::with_capacity(out.times_us.len() * 96 + 64);
    doc.push_str("t_us,rho_11,rho_00,rho_m1m1,tail_bound\n");
    for i in 0..out.times_us.len() {
        doc.push_str(&format_value(out.times_us[i]));
        doc.push(',');
        doc.push_str(&format_value(trace.rho_11[i]));
        doc.push(',');
        doc.push_str(&format_value(trace.rho_00[i]));
        doc.push(',');
        doc.push_str(&format_value(trace.rho_m1m1[i]));
        doc.push(',');
        doc.push_str(&format_value(trace.tail_bound));
        doc.push('\n');
    }
    doc
}

/// Pretty-printed JSON document, trailing newline included.
pub fn render_json(meta: &RunMetadata) -> String {
    let mut doc = serde_json::to_string_pretty(meta).expect("metadata serializes");
    doc.push('\n');
    doc
}
