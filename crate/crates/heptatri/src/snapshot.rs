//! CSV snapshot format for configurations.
//!
//! ```text
//! # step=36
//! sector,nu,slice,place,state
//! 0,0,1,2,R
//! ...
//! ```
//!
//! One row per non-quiescent cell, states as letters, rows sorted by
//! `(sector, nu, slice, place)`. Writing is canonical, so write/read/
//! write round-trips byte for byte.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::engine::{CellState, Configuration};
use crate::hepta::HeptaCoord;
use crate::tri::TriCoord;

pub const HEADER: &str = "sector,nu,slice,place,state";

#[derive(Debug, Error)]
pub enum SnapshotError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("state {0:?} has no letter in the snapshot alphabet")]
    UnrepresentableState(CellState),
}

/// Serializes a configuration; deterministic for equal configurations.
pub fn write_snapshot(cfg: &Configuration) -> Result<String, SnapshotError> {
    let mut out = String::new();
    out.push_str(&format!("# step={}\n", cfg.step()));
    out.push_str(HEADER);
    out.push('\n');
    for (t, &state) in cfg.iter() {
        let letter = state
            .letter()
            .filter(|c| *c != 'W')
            .ok_or(SnapshotError::UnrepresentableState(state))?;
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            t.hepta.sector, t.hepta.nu, t.slice, t.place, letter
        ));
    }
    Ok(out)
}

fn parse_error(line: usize, message: impl Into<String>) -> SnapshotError {
    SnapshotError::Parse {
        line,
        message: message.into(),
    }
}

/// Parses a snapshot; errors name the offending 1-based line.
pub fn read_snapshot(text: &str) -> Result<Configuration, SnapshotError> {
    let mut lines = text.lines().enumerate();

    let (n, first) = lines
        .next()
        .ok_or_else(|| parse_error(1, "empty snapshot"))?;
    let step: u64 = first
        .strip_prefix("# step=")
        .ok_or_else(|| parse_error(n + 1, "expected '# step=<n>'"))?
        .trim()
        .parse()
        .map_err(|e| parse_error(n + 1, format!("bad step counter: {e}")))?;

    let (n, header) = lines
        .next()
        .ok_or_else(|| parse_error(2, "missing header"))?;
    if header != HEADER {
        return Err(parse_error(n + 1, format!("expected header '{HEADER}'")));
    }

    let mut cells = BTreeMap::new();
    for (n, row) in lines {
        let line = n + 1;
        if row.is_empty() {
            continue;
        }
        let fields: Vec<&str> = row.split(',').collect();
        if fields.len() != 5 {
            return Err(parse_error(line, format!("expected 5 fields, got {}", fields.len())));
        }
        let sector: u8 = fields[0]
            .parse()
            .map_err(|e| parse_error(line, format!("bad sector: {e}")))?;
        let nu: u64 = fields[1]
            .parse()
            .map_err(|e| parse_error(line, format!("bad heptagon index: {e}")))?;
        let slice: u8 = fields[2]
            .parse()
            .map_err(|e| parse_error(line, format!("bad slice: {e}")))?;
        let place: u8 = fields[3]
            .parse()
            .map_err(|e| parse_error(line, format!("bad place: {e}")))?;
        let hepta = HeptaCoord::new(sector, nu).map_err(|e| parse_error(line, e.to_string()))?;
        let coord = TriCoord::new(hepta, slice, place).map_err(|e| parse_error(line, e.to_string()))?;
        let mut chars = fields[4].chars();
        let state = match (chars.next(), chars.next()) {
            (Some(c), None) => CellState::from_letter(c)
                .filter(|s| !s.is_quiescent())
                .ok_or_else(|| parse_error(line, format!("bad state letter '{}'", fields[4])))?,
            _ => return Err(parse_error(line, format!("bad state field '{}'", fields[4]))),
        };
        if cells.insert(coord, state).is_some() {
            return Err(parse_error(line, "duplicate cell"));
        }
    }
    Ok(Configuration::from_cells(cells, step))
}
