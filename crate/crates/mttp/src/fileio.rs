//! Tournament files: a JSON object with `n`, `travel` (n rows of 2n-2
//! venue bits), and an optional `schedule` (n rows of 1-based opponent
//! ids). Written output is pretty-printed with a trailing newline so
//! identical tournaments serialize byte-identically.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::instance::InstanceSize;
use crate::schedule::ScheduleMatrix;
use crate::tournament::Tournament;
use crate::travel::TravelMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TournamentFile {
    pub n: usize,
    pub travel: Vec<Vec<u8>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub schedule: Option<Vec<Vec<usize>>>,
}

/// File content lifted into core types. Shapes are not vetted here beyond
/// what the types demand; the validators report shape breaches with full
/// localization.
#[derive(Debug, Clone)]
pub struct Decoded {
    pub n: InstanceSize,
    pub travel: TravelMatrix,
    pub schedule: Option<ScheduleMatrix>,
}

#[derive(Debug, Error)]
pub enum FileError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        source: std::io::Error,
    },
    #[error("cannot parse {path}: {source}")]
    Parse {
        path: String,
        source: serde_json::Error,
    },
    #[error("{path}: {detail}")]
    Malformed { path: String, detail: String },
}

impl TournamentFile {
    pub fn from_tournament(t: &Tournament) -> Self {
        TournamentFile {
            n: t.size.teams(),
            travel: t.travel.rows().iter().map(|r| r.to_bits()).collect(),
            schedule: Some(
                t.schedule
                    .rows()
                    .iter()
                    .map(|row| row.iter().map(|&opp| opp + 1).collect())
                    .collect(),
            ),
        }
    }

    /// Converts to core types; the error is a human-readable detail line.
    pub fn decode(&self) -> Result<Decoded, String> {
        let n = InstanceSize::new(self.n).map_err(|e| format!("field n: {e}"))?;
        let travel =
            TravelMatrix::from_bit_rows(&self.travel).map_err(|e| format!("field travel: {e}"))?;
        let schedule = match &self.schedule {
            None => None,
            Some(rows) => {
                let mut cells = Vec::with_capacity(rows.len());
                for (i, row) in rows.iter().enumerate() {
                    let mut out = Vec::with_capacity(row.len());
                    for (w, &id) in row.iter().enumerate() {
                        if id == 0 {
                            return Err(format!(
                                "field schedule, team {}, week {}: opponent ids are 1-based",
                                i + 1,
                                w + 1
                            ));
                        }
                        out.push(id - 1);
                    }
                    cells.push(out);
                }
                Some(ScheduleMatrix::new(cells))
            }
        };
        Ok(Decoded {
            n,
            travel,
            schedule,
        })
    }
}

pub fn read(path: &Path) -> Result<TournamentFile, FileError> {
    let shown = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| FileError::Read {
        path: shown.clone(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| FileError::Parse {
        path: shown,
        source,
    })
}

pub fn write(path: &Path, file: &TournamentFile) -> Result<(), FileError> {
    let shown = path.display().to_string();
    let mut text = serde_json::to_string_pretty(file).expect("serializable struct");
    text.push('\n');
    fs::write(path, text).map_err(|source| FileError::Write {
        path: shown,
        source,
    })
}
