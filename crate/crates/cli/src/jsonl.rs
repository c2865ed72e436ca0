//! JSONL records for structures and witnesses: one object per line, all
//! element labels 1-based and ascending, so files diff cleanly.

use std::fs::File;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use upp2_core::filter::{CentralGroupoidWitness, Provenance};
use upp2_core::{BaseSet, OperationTable, Permutation, Prs, Rectangle};

use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RectRecord {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RsRecord {
    pub n: usize,
    pub m: usize,
    pub rectangles: Vec<RectRecord>,
}

impl RsRecord {
    pub fn from_prs(prs: &Prs) -> Self {
        RsRecord {
            n: prs.base().rows(),
            m: prs.base().cols(),
            rectangles: prs
                .rectangles()
                .iter()
                .map(|r| RectRecord {
                    rows: r.rows().iter().map(|e| e + 1).collect(),
                    cols: r.cols().iter().map(|e| e + 1).collect(),
                })
                .collect(),
        }
    }

    pub fn to_prs(&self) -> CliResult<Prs> {
        let base = BaseSet::new(self.n, self.m)?;
        let mut prs = Prs::empty(base);
        for rect in &self.rectangles {
            let r = Rectangle::from_labels(&rect.rows, &rect.cols)?;
            prs = prs.with_rectangle(&r)?;
        }
        Ok(prs)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct WitnessRecord {
    pub order: usize,
    pub source_rs: usize,
    /// Disjoint-cycle notation, e.g. "(1,9)(2,7)(4,8)".
    pub lifting: String,
    pub provenance: String,
    /// Row-major table with 1-based entries.
    pub table: Vec<Vec<usize>>,
}

impl WitnessRecord {
    pub fn from_witness(w: &CentralGroupoidWitness) -> Self {
        let k = w.table.order();
        WitnessRecord {
            order: k,
            source_rs: w.source_rs,
            lifting: w.lifting.to_cycle_string(),
            provenance: match w.provenance {
                Provenance::Natural => "natural".to_string(),
                Provenance::Lifted => "lifted".to_string(),
            },
            table: (0..k)
                .map(|a| w.table.row(a).iter().map(|&v| v + 1).collect())
                .collect(),
        }
    }

    pub fn to_table(&self) -> CliResult<OperationTable> {
        let mut vals = Vec::with_capacity(self.order * self.order);
        for row in &self.table {
            for &v in row {
                if v == 0 || v > self.order {
                    return Err(upp2_core::Error::EntryOutOfRange {
                        row: 0,
                        col: 0,
                        entry: v,
                        order: self.order,
                    }
                    .into());
                }
                vals.push(v - 1);
            }
        }
        Ok(OperationTable::new(self.order, vals)?)
    }

    pub fn to_lifting(&self) -> CliResult<Permutation> {
        Ok(Permutation::parse_cycle_string(&self.lifting, self.order)?)
    }
}

/// A line of either record kind, distinguished by its fields.
#[derive(Clone, Debug)]
pub enum AnyRecord {
    Structure(RsRecord),
    Witness(WitnessRecord),
}

pub fn write_jsonl<T: Serialize>(out: &mut dyn Write, items: &[T]) -> std::io::Result<()> {
    for item in items {
        let line = serde_json::to_string(item).expect("records serialize");
        writeln!(out, "{line}")?;
    }
    Ok(())
}

pub fn read_records(path: &Path) -> CliResult<Vec<AnyRecord>> {
    let file = File::open(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    read_records_from(BufReader::new(file), &path.display().to_string())
}

pub fn read_records_from<R: Read>(reader: BufReader<R>, name: &str) -> CliResult<Vec<AnyRecord>> {
    let mut out = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line.map_err(|source| CliError::Io {
            path: name.into(),
            source,
        })?;
        if line.trim().is_empty() {
            continue;
        }
        if let Ok(rs) = serde_json::from_str::<RsRecord>(&line) {
            out.push(AnyRecord::Structure(rs));
        } else if let Ok(w) = serde_json::from_str::<WitnessRecord>(&line) {
            out.push(AnyRecord::Witness(w));
        } else {
            let err = serde_json::from_str::<RsRecord>(&line).unwrap_err();
            return Err(CliError::parse(
                name,
                idx + 1,
                err.column().max(1),
                "line is neither a structure nor a witness record",
            ));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use upp2_core::rect::product_of_points;

    #[test]
    fn structure_round_trip() {
        let prs = product_of_points(2, 3).unwrap();
        let record = RsRecord::from_prs(&prs);
        assert!(record
            .rectangles
            .iter()
            .all(|r| r.rows.windows(2).all(|w| w[0] < w[1])));
        let back = record.to_prs().unwrap();
        assert_eq!(back.rectangles(), prs.rectangles());
    }

    #[test]
    fn witness_record_round_trip() {
        let report = upp2_core::filter::enumerate_central_groupoids(2).unwrap();
        let w = &report.witnesses[0];
        let record = WitnessRecord::from_witness(w);
        assert_eq!(record.to_table().unwrap(), w.table);
        assert_eq!(record.to_lifting().unwrap(), w.lifting);
    }

    #[test]
    fn mixed_records_parse_back() {
        let prs = product_of_points(2, 2).unwrap();
        let rs_line = serde_json::to_string(&RsRecord::from_prs(&prs)).unwrap();
        let report = upp2_core::filter::enumerate_central_groupoids(2).unwrap();
        let w_line =
            serde_json::to_string(&WitnessRecord::from_witness(&report.witnesses[0])).unwrap();
        let text = format!("{rs_line}\n\n{w_line}\n");
        let records =
            read_records_from(BufReader::new(text.as_bytes()), "test").unwrap();
        assert_eq!(records.len(), 2);
        assert!(matches!(records[0], AnyRecord::Structure(_)));
        assert!(matches!(records[1], AnyRecord::Witness(_)));
    }

    #[test]
    fn garbage_line_reports_position() {
        let text = "{\"n\": 2, \"m\":}\n";
        let err =
            read_records_from(BufReader::new(text.as_bytes()), "bad.jsonl").unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 1, .. }));
    }
}
