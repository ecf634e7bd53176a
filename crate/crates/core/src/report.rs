//! Result documents, DOT export and run metadata.
//!
//! The result document depends only on the complex, the coefficient prime
//! and the stratification, so it is byte-identical across runs and worker
//! counts. Timings and worker counts live in [`RunMetadata`], which is
//! written separately.

use serde::{Deserialize, Serialize};

use crate::complex::CwComplex;
use crate::error::{Error, Result};
use crate::stratcast::PhaseTimings;
use crate::strata::Stratification;

pub const RESULT_FORMAT: &str = "cellstrat-result/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellRecord {
    pub id: u32,
    pub label: String,
    pub dim: usize,
    pub codim: u32,
    pub stratum: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumRecord {
    pub id: usize,
    pub dim: usize,
    pub codim: u32,
    pub cell_count: usize,
}

/// A covering relation `upper ⪰ lower` of the frontier order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrontierEdge {
    pub upper: usize,
    pub lower: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub format: String,
    pub p: u32,
    pub n: usize,
    pub cells: Vec<CellRecord>,
    pub strata: Vec<StratumRecord>,
    pub frontier: Vec<FrontierEdge>,
}

impl ResultDocument {
    pub fn new(complex: &CwComplex, strat: &Stratification, p: u32) -> Self {
        let cells = complex
            .cells()
            .map(|c| {
                let s = strat.stratum_of(c);
                CellRecord {
                    id: c.0,
                    label: complex.label(c).to_string(),
                    dim: complex.dim(c),
                    codim: strat.stratum(s).codim,
                    stratum: s,
                }
            })
            .collect();
        let strata = strat
            .strata()
            .iter()
            .map(|s| StratumRecord { id: s.id, dim: s.dim, codim: s.codim, cell_count: s.cells.len() })
            .collect();
        let frontier = strat.cover().iter().map(|&(upper, lower)| FrontierEdge { upper, lower }).collect();
        ResultDocument { format: RESULT_FORMAT.to_string(), p, n: strat.n(), cells, strata, frontier }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("result documents always serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ResultDocument = serde_json::from_str(text)?;
        if doc.format != RESULT_FORMAT {
            return Err(Error::Malformed(format!("unsupported result format {:?}", doc.format)));
        }
        Ok(doc)
    }

    pub fn codims(&self) -> Vec<u32> {
        self.cells.iter().map(|c| c.codim).collect()
    }

    /// Rebuilds the stratification described by this document.
    pub fn to_stratification(&self) -> Result<Stratification> {
        for (i, c) in self.cells.iter().enumerate() {
            if c.id as usize != i {
                return Err(Error::Malformed(format!("cell record {i} has id {}", c.id)));
            }
        }
        for (i, s) in self.strata.iter().enumerate() {
            if s.id != i {
                return Err(Error::Malformed(format!("stratum record {i} has id {}", s.id)));
            }
        }
        let dims: Vec<usize> = self.strata.iter().map(|s| s.dim).collect();
        let stratum_of = self.cells.iter().map(|c| c.stratum).collect();
        let cover = self.frontier.iter().map(|e| (e.upper, e.lower)).collect();
        let strat = Stratification::from_parts(self.n, stratum_of, &dims, cover)?;
        let consistent = strat
            .strata()
            .iter()
            .zip(&self.strata)
            .all(|(s, r)| s.cells.len() == r.cell_count && s.codim == r.codim)
            && self.cells.iter().all(|c| c.codim == strat.stratum(c.stratum).codim);
        if !consistent {
            return Err(Error::Malformed("stratum records disagree with cell records".into()));
        }
        Ok(strat)
    }
}

/// The frontier order as a Graphviz digraph, one node per stratum.
pub fn to_dot(strat: &Stratification) -> String {
    let mut out = String::from("digraph frontier {\n  rankdir=TB;\n  node [shape=box];\n");
    for s in strat.strata() {
        let noun = if s.cells.len() == 1 { "cell" } else { "cells" };
        out.push_str(&format!("  s{} [label=\"dim={} ({} {noun})\"];\n", s.id, s.dim, s.cells.len()));
    }
    for &(t, b) in strat.cover() {
        out.push_str(&format!("  s{t} -> s{b};\n"));
    }
    out.push_str("}\n");
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IterationMetadata {
    pub d: usize,
    pub phase_ab_ms: f64,
    pub phase_a_ms: f64,
    pub phase_b_ms: f64,
    pub phase_c_ms: f64,
    pub phase_d_ms: f64,
    pub stars: usize,
    pub relations_tested: usize,
}

/// Run parameters and per-phase wall times.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunMetadata {
    pub p: u32,
    pub workers: usize,
    pub cells: usize,
    pub total_ms: f64,
    pub iterations: Vec<IterationMetadata>,
}

fn ms(d: std::time::Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

impl RunMetadata {
    pub fn new(p: u32, workers: usize, cells: usize, total: std::time::Duration, timings: &[PhaseTimings]) -> Self {
        let iterations = timings
            .iter()
            .map(|t| IterationMetadata {
                d: t.d,
                phase_ab_ms: ms(t.ab),
                phase_a_ms: ms(t.a),
                phase_b_ms: ms(t.b),
                phase_c_ms: ms(t.c),
                phase_d_ms: ms(t.d_phase),
                stars: t.stars,
                relations_tested: t.relations_tested,
            })
            .collect();
        RunMetadata { p, workers, cells, total_ms: ms(total), iterations }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("metadata always serializes");
        s.push('\n');
        s
    }
}
