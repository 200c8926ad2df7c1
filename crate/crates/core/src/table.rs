//! Knot-table ingestion from CSV or JSON.
//!
//! Required CSV columns are `name,pd,braid_index,braid_word,signature`;
//! `two_bridge` (a `[p,q]` pair) is read when present and every other column
//! is ignored. Rows whose PD does not parse or validate are skipped with a
//! diagnostic.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::braid::BraidWord;
use crate::diagram::{parse_pd, LinkDiagram};
use crate::quasipos::{BraidData, BraidSource};

pub const REQUIRED_COLUMNS: [&str; 5] = ["name", "pd", "braid_index", "braid_word", "signature"];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TableError {
    #[error("cannot read {path}: {message}")]
    FileUnreadable { path: String, message: String },
    #[error("table header is missing column(s) {missing:?}")]
    HeaderMismatch { missing: Vec<String> },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub name: String,
    pub pd: String,
    #[serde(default)]
    pub braid_index: Option<u32>,
    #[serde(default)]
    pub braid_word: Option<String>,
    #[serde(default)]
    pub signature: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub two_bridge: Option<String>,
}

impl TableRow {
    /// `(p, q)` from a `[p,q]` or `p/q` two-bridge entry.
    pub fn two_bridge_fraction(&self) -> Option<(u64, u64)> {
        let t = self.two_bridge.as_deref()?.trim();
        let t = t.strip_prefix('[').and_then(|t| t.strip_suffix(']')).unwrap_or(t);
        let (p, q) = t.split_once([',', '/'])?;
        Some((p.trim().parse().ok()?, q.trim().parse().ok()?))
    }
}

/// A validated row.
#[derive(Clone, Debug)]
pub struct IngestedRow {
    pub row: TableRow,
    pub diagram: LinkDiagram,
    pub braid: Option<BraidWord>,
    /// Exponent sum of `braid` when its strand count equals `braid_index`.
    pub w_beta: Option<i64>,
}

impl IngestedRow {
    pub fn braid_data(&self) -> Option<BraidData> {
        let (b, w) = (self.row.braid_index?, self.w_beta?);
        BraidData::new(b, w, BraidSource::IngestedTable).ok()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    /// 1-based record number, header excluded.
    pub record: usize,
    pub name: String,
    pub message: String,
    /// Whether the row was dropped.
    pub skipped: bool,
}

#[derive(Clone, Debug, Default)]
pub struct Table {
    pub rows: Vec<IngestedRow>,
    pub diagnostics: Vec<Diagnostic>,
}

fn parse_braid(text: &str) -> Option<BraidWord> {
    BraidWord::parse_list(text, None).or_else(|_| BraidWord::parse_text(text)).ok()
}

fn ingest_rows(rows: impl IntoIterator<Item = (usize, Result<TableRow, String>)>) -> Table {
    let mut table = Table::default();
    for (record, row) in rows {
        let row = match row {
            Ok(r) => r,
            Err(message) => {
                table.diagnostics.push(Diagnostic { record, name: String::new(), message, skipped: true });
                continue;
            }
        };
        let diagram = match parse_pd(&row.pd) {
            Ok(d) => d.with_name(row.name.clone()),
            Err(e) => {
                table.diagnostics.push(Diagnostic { record, name: row.name.clone(), message: format!("pd: {e}"), skipped: true });
                continue;
            }
        };
        let braid = match row.braid_word.as_deref().map(str::trim).filter(|t| !t.is_empty()) {
            None => None,
            Some(t) => {
                let w = parse_braid(t);
                if w.is_none() {
                    let message = format!("unparseable braid word {t:?}");
                    table.diagnostics.push(Diagnostic { record, name: row.name.clone(), message, skipped: false });
                }
                w
            }
        };
        let w_beta = match (&braid, row.braid_index) {
            (Some(w), Some(b)) if w.strands() == b as usize => Some(w.exponent_sum()),
            _ => None,
        };
        table.rows.push(IngestedRow { row, diagram, braid, w_beta });
    }
    table
}

pub fn parse_csv(text: &str) -> Result<Table, TableError> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).flexible(true).from_reader(text.as_bytes());
    let headers = rdr.headers().map_err(|e| TableError::HeaderMismatch { missing: vec![e.to_string()] })?.clone();
    let missing: Vec<String> =
        REQUIRED_COLUMNS.iter().filter(|c| !headers.iter().any(|h| h == **c)).map(|c| c.to_string()).collect();
    if !missing.is_empty() {
        return Err(TableError::HeaderMismatch { missing });
    }
    let rows = rdr
        .deserialize::<TableRow>()
        .enumerate()
        .map(|(i, r)| (i + 1, r.map_err(|e| e.to_string())))
        .collect::<Vec<_>>();
    Ok(ingest_rows(rows))
}

/// A JSON array of row objects with the CSV column names as keys.
pub fn parse_json(text: &str) -> Result<Table, TableError> {
    let values: Vec<serde_json::Value> = serde_json::from_str(text).map_err(|e| TableError::FileUnreadable {
        path: "<json>".into(),
        message: e.to_string(),
    })?;
    let rows = values
        .into_iter()
        .enumerate()
        .map(|(i, v)| (i + 1, serde_json::from_value::<TableRow>(v).map_err(|e| e.to_string())));
    Ok(ingest_rows(rows))
}

/// KnotInfo knots with 1 to 9 crossings, bundled with the crate.
pub const KNOTINFO_LE9: &str = include_str!("../data/knotinfo_le9.csv");

pub fn bundled() -> Table {
    parse_csv(KNOTINFO_LE9).expect("bundled table has the required header")
}

/// Reads a table, choosing JSON when the first non-blank byte is `[`.
pub fn ingest_table(path: &Path) -> Result<Table, TableError> {
    let text = std::fs::read_to_string(path).map_err(|e| TableError::FileUnreadable {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    if text.trim_start().starts_with('[') {
        parse_json(&text)
    } else {
        parse_csv(&text)
    }
}
