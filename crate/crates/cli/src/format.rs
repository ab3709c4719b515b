//! Text, newline-delimited JSON and CSV renderings of record lists, with
//! parsers that invert each of them.
//!
//! CSV is the pivot: the text table is CSV with commas replaced by padding
//! and empty cells shown as `-`, so every format carries the same fields.
//! Columns are right-aligned to the widest cell of the batch.

use serde::de::DeserializeOwned;
use serde::Serialize;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

const EMPTY_CELL: &str = "-";
const MIN_WIDTH: usize = 4;

fn csv_rows<R: Serialize>(records: &[R]) -> Result<(Vec<String>, Vec<Vec<String>>), String> {
    let mut w = csv::WriterBuilder::new().has_headers(true).from_writer(Vec::new());
    for r in records {
        w.serialize(r).map_err(|e| e.to_string())?;
    }
    let bytes = w.into_inner().map_err(|e| e.to_string())?;
    let mut rd = csv::ReaderBuilder::new().has_headers(true).from_reader(bytes.as_slice());
    let header = rd.headers().map_err(|e| e.to_string())?.iter().map(str::to_owned).collect();
    let rows = rd
        .records()
        .map(|r| r.map(|r| r.iter().map(str::to_owned).collect()).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    Ok((header, rows))
}

/// Column names of `R`, in output order.
pub fn columns<R: Serialize>(sample: &R) -> Result<Vec<String>, String> {
    Ok(csv_rows(std::slice::from_ref(sample))?.0)
}

pub fn render<R: Serialize>(records: &[R], format: Format) -> Result<String, String> {
    match format {
        Format::Json => {
            let mut out = String::new();
            for r in records {
                out.push_str(&serde_json::to_string(r).map_err(|e| e.to_string())?);
                out.push('\n');
            }
            Ok(out)
        }
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().has_headers(true).from_writer(Vec::new());
            for r in records {
                w.serialize(r).map_err(|e| e.to_string())?;
            }
            String::from_utf8(w.into_inner().map_err(|e| e.to_string())?).map_err(|e| e.to_string())
        }
        Format::Text => {
            if records.is_empty() {
                return Ok(String::new());
            }
            let (header, rows) = csv_rows(records)?;
            let widths: Vec<usize> = (0..header.len())
                .map(|c| rows.iter().map(|r| r[c].len()).fold(header[c].len().max(MIN_WIDTH), usize::max))
                .collect();
            let line = |cells: &[String]| {
                let parts: Vec<String> = cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, &w)| {
                        let c = if c.is_empty() { EMPTY_CELL } else { c.as_str() };
                        format!("{c:>w$}")
                    })
                    .collect();
                parts.join(" ")
            };
            let mut out = line(&header);
            out.push('\n');
            for r in &rows {
                out.push_str(&line(r));
                out.push('\n');
            }
            Ok(out)
        }
    }
}

pub fn parse<R: DeserializeOwned>(input: &str, format: Format) -> Result<Vec<R>, String> {
    match format {
        Format::Json => input
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| serde_json::from_str(l).map_err(|e| e.to_string()))
            .collect(),
        Format::Csv => csv::ReaderBuilder::new()
            .has_headers(true)
            .from_reader(input.as_bytes())
            .deserialize()
            .map(|r| r.map_err(|e| e.to_string()))
            .collect(),
        Format::Text => {
            let mut csv_text = String::new();
            for line in input.lines().filter(|l| !l.trim().is_empty()) {
                let cells: Vec<&str> =
                    line.split_whitespace().map(|c| if c == EMPTY_CELL { "" } else { c }).collect();
                csv_text.push_str(&cells.join(","));
                csv_text.push('\n');
            }
            parse(&csv_text, Format::Csv)
        }
    }
}
