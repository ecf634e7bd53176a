//! Timing harness for runs over grid tori of growing size.

use std::time::{Duration, Instant};

use crate::complex::{build_from_simplices, CwComplex};
use crate::error::Result;
use crate::field::PrimeField;
use crate::generators::grid_torus;
use crate::stratcast::run_with_timings;

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub label: String,
    pub cells: usize,
    pub workers: usize,
    /// Best total wall time over the repeats.
    pub total: Duration,
    /// Best summed wall time of the concurrent A/B phases over the repeats.
    pub phase_ab: Duration,
    pub repeats: usize,
}

/// Runs the full stratification `repeats` times and keeps the fastest times.
pub fn time_run(
    label: &str,
    complex: &CwComplex,
    field: PrimeField,
    workers: usize,
    repeats: usize,
) -> Result<BenchRow> {
    let mut total = Duration::MAX;
    let mut phase_ab = Duration::MAX;
    for _ in 0..repeats.max(1) {
        let start = Instant::now();
        let (_, timings) = run_with_timings(complex, field, workers)?;
        total = total.min(start.elapsed());
        phase_ab = phase_ab.min(timings.iter().map(|t| t.ab).sum());
    }
    Ok(BenchRow { label: label.to_string(), cells: complex.len(), workers, total, phase_ab, repeats: repeats.max(1) })
}

/// Times square grid tori with the given side lengths.
pub fn torus_sweep(sides: &[usize], field: PrimeField, workers: usize, repeats: usize) -> Result<Vec<BenchRow>> {
    sides
        .iter()
        .map(|&s| {
            let cx = build_from_simplices(&grid_torus(s, s))?;
            time_run(&format!("torus {s}x{s}"), &cx, field, workers, repeats)
        })
        .collect()
}

pub fn format_table(rows: &[BenchRow]) -> String {
    let mut out = format!("{:<16} {:>10} {:>8} {:>12} {:>12} {:>12}\n", "input", "cells", "workers", "total_ms", "phase_ab_ms", "us_per_cell");
    for r in rows {
        let per_cell = r.total.as_secs_f64() * 1e6 / r.cells.max(1) as f64;
        out.push_str(&format!(
            "{:<16} {:>10} {:>8} {:>12.3} {:>12.3} {:>12.3}\n",
            r.label,
            r.cells,
            r.workers,
            r.total.as_secs_f64() * 1e3,
            r.phase_ab.as_secs_f64() * 1e3,
            per_cell
        ));
    }
    out
}
