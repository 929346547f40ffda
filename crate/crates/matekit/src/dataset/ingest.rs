//! Position ingestion from FEN-per-line text files or puzzle CSVs.

use std::path::Path;

use thiserror::Error;

use crate::chess::Position;

#[derive(Debug, Clone)]
pub struct IngestOptions {
    /// CSV column holding the FEN (files with a `.csv` extension only).
    pub fen_column: String,
}

impl Default for IngestOptions {
    fn default() -> Self {
        IngestOptions { fen_column: "FEN".to_string() }
    }
}

#[derive(Debug)]
pub struct Ingested {
    pub positions: Vec<Position>,
    /// Rows that did not parse into a valid position.
    pub skipped: usize,
}

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("csv error in {path}: {source}")]
    Csv { path: String, source: csv::Error },
    #[error("csv file {path} has no column named {column:?}")]
    MissingColumn { path: String, column: String },
    #[error("{path} contains no valid positions")]
    Empty { path: String },
}

/// Reads positions from `path`, skipping (and counting) invalid rows.
/// Errors if the file is unreadable or yields zero valid positions.
pub fn ingest_positions(path: &Path) -> Result<Ingested, IngestError> {
    ingest_positions_with(path, &IngestOptions::default())
}

pub fn ingest_positions_with(
    path: &Path,
    options: &IngestOptions,
) -> Result<Ingested, IngestError> {
    let display = path.display().to_string();
    let is_csv = path
        .extension()
        .is_some_and(|ext| ext.eq_ignore_ascii_case("csv"));
    let rows: Vec<String> = if is_csv {
        csv_fen_rows(path, &display, &options.fen_column)?
    } else {
        let text = std::fs::read_to_string(path)
            .map_err(|source| IngestError::Io { path: display.clone(), source })?;
        text.lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(str::to_string)
            .collect()
    };

    let mut positions = Vec::with_capacity(rows.len());
    let mut skipped = 0;
    for row in &rows {
        match row.parse::<Position>() {
            Ok(p) => positions.push(p),
            Err(e) => {
                skipped += 1;
                log::debug!("skipping unparseable position {row:?}: {e}");
            }
        }
    }
    if skipped > 0 {
        log::warn!("{display}: skipped {skipped} invalid position row(s)");
    }
    if positions.is_empty() {
        return Err(IngestError::Empty { path: display });
    }
    Ok(Ingested { positions, skipped })
}

fn csv_fen_rows(path: &Path, display: &str, column: &str) -> Result<Vec<String>, IngestError> {
    let mut reader = csv::Reader::from_path(path).map_err(|source| IngestError::Csv {
        path: display.to_string(),
        source,
    })?;
    let headers = reader
        .headers()
        .map_err(|source| IngestError::Csv { path: display.to_string(), source })?;
    let idx = headers.iter().position(|h| h == column).ok_or_else(|| {
        IngestError::MissingColumn { path: display.to_string(), column: column.to_string() }
    })?;
    let mut rows = Vec::new();
    for record in reader.records() {
        let record =
            record.map_err(|source| IngestError::Csv { path: display.to_string(), source })?;
        if let Some(fen) = record.get(idx) {
            rows.push(fen.to_string());
        }
    }
    Ok(rows)
}
