//! Deterministic report emission: canonical JSON and a human rendering that
//! prints the printed tables next to the derived rows with the computed row
//! correspondence.

use super::{StageStatus, VerificationReport};
use std::fmt::Write;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Human,
}

/// Serializes a report. Byte-identical across runs for the same inputs:
/// struct field order is fixed, maps are ordered, and nothing carries a
/// timestamp.
pub fn emit_report(report: &VerificationReport, format: ReportFormat) -> Vec<u8> {
    match format {
        ReportFormat::Json => {
            let mut v = serde_json::to_vec_pretty(report).expect("report serializes");
            v.push(b'\n');
            v
        }
        ReportFormat::Human => render_human(report).into_bytes(),
    }
}

fn render_human(report: &VerificationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "verification report ({})", report.schema);
    for (k, v) in &report.metadata {
        let _ = writeln!(out, "  {k}: {v}");
    }
    let _ = writeln!(out);
    let _ = writeln!(out, "stages:");
    for s in &report.stages {
        let tag = match s.status {
            StageStatus::Pass => "PASS",
            StageStatus::Fail => "FAIL",
            StageStatus::Skipped => "SKIP",
        };
        let _ = writeln!(out, "  [{tag}] {}", s.name);
        if s.status != StageStatus::Pass {
            let _ = writeln!(out, "         {}", s.witness);
        }
    }
    let _ = writeln!(out);
    if !report.chains.is_empty() {
        let _ = writeln!(out, "computed correspondences (printed labels are display only):");
        for c in &report.chains {
            let _ = writeln!(
                out,
                "  eigenvalue pair ({}, {}) -> trace row {} -> order row {} -> quintic {} -> sextic {} -> degree-24 {}{}",
                c.eigen_pair.0,
                c.eigen_pair.1,
                c.printed_trace_row.as_deref().unwrap_or("?"),
                c.printed_order_row.as_deref().unwrap_or("?"),
                c.quintic.as_deref().unwrap_or("?"),
                c.sextic.as_deref().unwrap_or("?"),
                c.degree24.as_deref().unwrap_or("?"),
                if c.elliptic_curve { " -> elliptic curve" } else { "" },
            );
        }
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "row label permutation (printed trace label -> printed order label):"
        );
        for (b, n) in &report.row_permutation {
            let _ = writeln!(out, "  {b} -> {n}");
        }
        let _ = writeln!(out);
    }
    if !report.skipped_primes.is_empty() {
        let _ = writeln!(out, "primes skipped per polynomial (reduction not squarefree):");
        for (name, ls) in &report.skipped_primes {
            if ls.is_empty() {
                let _ = writeln!(out, "  {name}: none");
            } else {
                let strs: Vec<String> = ls.iter().map(|l| l.to_string()).collect();
                let _ = writeln!(out, "  {name}: {}", strs.join(", "));
            }
        }
        let _ = writeln!(out);
    }
    let _ = writeln!(
        out,
        "result: {} ({} failing stage{})",
        if report.failures == 0 { "ALL STAGES PASS" } else { "FAILURES PRESENT" },
        report.failures,
        if report.failures == 1 { "" } else { "s" },
    );
    out
}
