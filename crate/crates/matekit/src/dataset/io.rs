//! Line-delimited JSON record files: one UTF-8 JSON object per line.

use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use thiserror::Error;

use super::SampleRecord;

#[derive(Debug, Error)]
pub enum DatasetIoError {
    #[error("cannot access {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}:{line}: malformed record: {source}")]
    Malformed { path: String, line: usize, source: serde_json::Error },
}

/// Writes records one JSON object per line. Returns the number written.
pub fn emit_records<'a, I>(records: I, path: &Path) -> Result<usize, DatasetIoError>
where
    I: IntoIterator<Item = &'a SampleRecord>,
{
    let display = path.display().to_string();
    let io_err = |source| DatasetIoError::Io { path: display.clone(), source };
    let file = std::fs::File::create(path).map_err(io_err)?;
    let mut writer = BufWriter::new(file);
    let mut count = 0;
    for record in records {
        let json = serde_json::to_string(record)
            .expect("record serialization is infallible");
        writer.write_all(json.as_bytes()).map_err(io_err)?;
        writer.write_all(b"\n").map_err(io_err)?;
        count += 1;
    }
    writer.flush().map_err(io_err)?;
    Ok(count)
}

/// Reads a record file back; the exact inverse of [`emit_records`].
/// Malformed lines are reported with their 1-based line number.
pub fn load_records(path: &Path) -> Result<Vec<SampleRecord>, DatasetIoError> {
    let display = path.display().to_string();
    let file = std::fs::File::open(path)
        .map_err(|source| DatasetIoError::Io { path: display.clone(), source })?;
    let reader = BufReader::new(file);
    let mut records = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line =
            line.map_err(|source| DatasetIoError::Io { path: display.clone(), source })?;
        if line.trim().is_empty() {
            continue;
        }
        let record = serde_json::from_str(&line).map_err(|source| DatasetIoError::Malformed {
            path: display.clone(),
            line: idx + 1,
            source,
        })?;
        records.push(record);
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::super::{CandidateEntry, DatasetVariant, SampleMeta};
    use super::*;

    fn record(seed: u64) -> SampleRecord {
        SampleRecord {
            fen: crate::chess::START_FEN.to_string(),
            candidates: [
                CandidateEntry { uci: "e2e4".into(), strategy_text: None, tactic_text: None },
                CandidateEntry { uci: "d2d4".into(), strategy_text: None, tactic_text: None },
            ],
            label: 0,
            variant: DatasetVariant::N,
            gap: 200,
            meta: SampleMeta {
                engine_depth: 18,
                threshold: 150,
                generator_version: "test".into(),
                seed,
            },
        }
    }

    fn temp(name: &str) -> std::path::PathBuf {
        let dir = std::env::temp_dir().join("matekit-io-tests");
        std::fs::create_dir_all(&dir).unwrap();
        dir.join(name)
    }

    #[test]
    fn round_trips_records() {
        let records: Vec<SampleRecord> = (0..10).map(record).collect();
        let path = temp("roundtrip.jsonl");
        assert_eq!(emit_records(&records, &path).unwrap(), 10);
        assert_eq!(load_records(&path).unwrap(), records);
    }

    #[test]
    fn truncated_line_reports_its_number() {
        let records: Vec<SampleRecord> = (0..3).map(record).collect();
        let path = temp("truncated.jsonl");
        emit_records(&records, &path).unwrap();
        let mut text = std::fs::read_to_string(&path).unwrap();
        text.truncate(text.len() - 40);
        std::fs::write(&path, text).unwrap();
        match load_records(&path) {
            Err(DatasetIoError::Malformed { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected malformed error, got {other:?}"),
        }
    }

    #[test]
    fn empty_file_loads_as_empty() {
        let path = temp("empty.jsonl");
        std::fs::write(&path, "").unwrap();
        assert!(load_records(&path).unwrap().is_empty());
    }
}
