use std::fmt::Write as _;
use std::path::Path;

use super::{MergeEvent, PersistenceDiagram, PersistencePair};
use crate::error::{Error, Result};
use crate::output::{float17, write_atomic};

pub const DIAGRAM_HEADER: &str = "dimension,birth,death";
pub const MERGE_HEADER: &str = "filtration,edge_u,edge_v,absorbed_root,surviving_root";

impl PersistenceDiagram {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(DIAGRAM_HEADER);
        out.push('\n');
        for p in &self.pairs {
            let _ = writeln!(out, "{},{},{}", p.dimension, float17(p.birth), float17(p.death));
        }
        out
    }

    /// Reads the format written by [`PersistenceDiagram::to_csv`].
    pub fn from_csv(text: &str) -> Result<Self> {
        let syntax = |line: usize, message: String| Error::Syntax { what: "diagram csv", line, message };
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, h)) if h.trim() == DIAGRAM_HEADER => {}
            _ => return Err(syntax(1, format!("expected header {DIAGRAM_HEADER:?}"))),
        }
        let mut pairs = Vec::new();
        for (i, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            let [dim, birth, death] = fields[..] else {
                return Err(syntax(i + 1, format!("expected 3 fields, found {}", fields.len())));
            };
            let dimension = dim.parse().map_err(|_| syntax(i + 1, format!("bad dimension {dim:?}")))?;
            let number = |s: &str| match s.parse::<f64>() {
                Ok(v) if !v.is_nan() => Ok(v),
                _ => Err(syntax(i + 1, format!("bad number {s:?}"))),
            };
            let (birth, death) = (number(birth)?, number(death)?);
            if !birth.is_finite() || birth < 0.0 || death <= birth {
                return Err(syntax(i + 1, format!("invalid bar [{birth}, {death})")));
            }
            pairs.push(PersistencePair { dimension, birth, death });
        }
        let max_dim = pairs.iter().map(|p| p.dimension).max().unwrap_or(0);
        Ok(PersistenceDiagram::new(pairs, max_dim))
    }
}

pub fn merge_events_csv(events: &[MergeEvent]) -> String {
    let mut out = String::from(MERGE_HEADER);
    out.push('\n');
    for e in events {
        let v = e.edge.vertices();
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            float17(e.filtration_value),
            v[0],
            v[1],
            e.absorbed_root,
            e.surviving_root
        );
    }
    out
}

pub fn write_diagram_csv(diagram: &PersistenceDiagram, path: &Path) -> Result<()> {
    write_atomic(path, diagram.to_csv().as_bytes())
}

pub fn write_merge_csv(events: &[MergeEvent], path: &Path) -> Result<()> {
    write_atomic(path, merge_events_csv(events).as_bytes())
}
