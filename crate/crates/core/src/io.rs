//! Input formats.
//!
//! Simplicial input is plain text with one maximal simplex per line, given
//! as whitespace-separated integer vertex ids. Blank lines and lines starting
//! with `#` are skipped. CW input is JSON:
//!
//! ```json
//! {"cells": [{"id": "a", "dim": 0, "boundary": []},
//!            {"id": "e", "dim": 1, "boundary": [["a", 1], ["b", -1]]}]}
//! ```
//!
//! Cell ids may be integers or strings.

use std::path::Path;
use std::str::FromStr;

use crate::complex::{build_from_cw, build_from_simplices, CwComplex, CwDescription};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InputFormat {
    Simplices,
    Cw,
}

impl FromStr for InputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "simplices" => Ok(InputFormat::Simplices),
            "cw" => Ok(InputFormat::Cw),
            other => Err(Error::Malformed(format!("unknown input format {other:?}"))),
        }
    }
}

pub fn parse_simplices(text: &str) -> Result<Vec<Vec<i64>>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let simplex = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<i64>()
                    .map_err(|_| Error::Malformed(format!("line {}: {tok:?} is not an integer vertex id", lineno + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        out.push(simplex);
    }
    Ok(out)
}

pub fn format_simplices(simplices: &[Vec<i64>]) -> String {
    let mut out = String::new();
    for s in simplices {
        let line: Vec<String> = s.iter().map(i64::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_cw(text: &str) -> Result<CwDescription> {
    serde_json::from_str(text).map_err(|e| Error::Malformed(format!("CW description: {e}")))
}

pub fn format_cw(desc: &CwDescription) -> String {
    let mut out = String::from("{\n  \"cells\": [\n");
    for (i, cell) in desc.cells.iter().enumerate() {
        let line = serde_json::to_string(cell).expect("cell specs always serialize");
        out.push_str("    ");
        out.push_str(&line);
        out.push_str(if i + 1 < desc.cells.len() { ",\n" } else { "\n" });
    }
    out.push_str("  ]\n}\n");
    out
}

pub fn parse(text: &str, format: InputFormat) -> Result<CwComplex> {
    match format {
        InputFormat::Simplices => build_from_simplices(&parse_simplices(text)?),
        InputFormat::Cw => build_from_cw(&parse_cw(text)?),
    }
}

pub fn load(path: &Path, format: InputFormat) -> Result<CwComplex> {
    parse(&std::fs::read_to_string(path)?, format)
}
