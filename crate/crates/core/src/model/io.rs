//! Dataset files: the JSON uncertain-dataset format and deterministic CSV
//! point tables.
//!
//! JSON layout:
//!
//! ```json
//! { "m": 2,
//!   "objects": [ { "id": "a", "pdf": { "kind": "uniform", "lo": [0, 0], "hi": [1, 2] } } ],
//!   "labels": ["setosa"] }
//! ```
//!
//! CSV layout: one row per point, numeric columns, optional trailing label
//! column, optional header row.

use super::{Dataset, PdfSpec, UncertainObject};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::io::{Read, Write};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DatasetFile {
    pub m: usize,
    pub objects: Vec<ObjectRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ObjectRecord {
    pub id: String,
    pub pdf: PdfSpec,
}

impl DatasetFile {
    pub fn from_dataset(data: &Dataset) -> Self {
        DatasetFile {
            m: data.dim(),
            objects: data
                .objects()
                .iter()
                .map(|o| ObjectRecord {
                    id: o.id().to_string(),
                    pdf: o.pdf().clone(),
                })
                .collect(),
            labels: data.labels().map(<[String]>::to_vec),
        }
    }

    /// Validates every pdf, computes moments and checks `m`.
    pub fn into_dataset(self) -> Result<Dataset> {
        let m = self.m;
        let objects = self
            .objects
            .into_iter()
            .map(|r| {
                let o = UncertainObject::new(r.id, r.pdf)?;
                if o.dim() != m {
                    return Err(Error::dims(m, o.dim()));
                }
                Ok(o)
            })
            .collect::<Result<Vec<_>>>()?;
        let mut seen = std::collections::HashSet::new();
        for o in &objects {
            if !seen.insert(o.id()) {
                return Err(Error::Argument(format!("duplicate object id {:?}", o.id())));
            }
        }
        Dataset::new(objects, self.labels)
    }
}

pub fn read_dataset_json<R: Read>(reader: R) -> Result<Dataset> {
    let file: DatasetFile = serde_json::from_reader(reader)?;
    file.into_dataset()
}

pub fn write_dataset_json<W: Write>(data: &Dataset, writer: W) -> Result<()> {
    serde_json::to_writer_pretty(writer, &DatasetFile::from_dataset(data))?;
    Ok(())
}

/// How to treat the last CSV column.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum LabelColumn {
    /// Label column present iff the last field of the first data row is not numeric.
    #[default]
    Auto,
    Last,
    None,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PointTable {
    pub header: Option<Vec<String>>,
    pub points: Vec<Vec<f64>>,
    pub labels: Option<Vec<String>>,
}

impl PointTable {
    pub fn dim(&self) -> usize {
        self.points.first().map_or(0, Vec::len)
    }

    pub fn to_dataset(&self) -> Result<Dataset> {
        Dataset::from_points(&self.points, self.labels.clone())
    }
}

fn parse_cell(s: &str) -> Option<f64> {
    s.trim().parse::<f64>().ok().filter(|v| v.is_finite())
}

/// Reads a point table. Row and column numbers in errors are 1-based file
/// positions.
pub fn read_points_csv<R: Read>(reader: R, labels: LabelColumn) -> Result<PointTable> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(reader);
    let mut records = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let line = rec
            .position()
            .map_or(records.len() + 1, |p| p.line() as usize);
        if rec.iter().all(str::is_empty) {
            continue;
        }
        records.push((line, rec));
    }
    let mut iter = records.into_iter().peekable();

    let header = match iter.peek() {
        Some((_, first)) if parse_cell(first.get(0).unwrap_or("")).is_none() => {
            let (_, h) = iter.next().expect("peeked");
            Some(h.iter().map(str::to_string).collect::<Vec<_>>())
        }
        _ => None,
    };

    let has_label = match labels {
        LabelColumn::Last => true,
        LabelColumn::None => false,
        LabelColumn::Auto => iter
            .peek()
            .map(|(_, r)| r.len() > 1 && parse_cell(r.get(r.len() - 1).unwrap_or("")).is_none())
            .unwrap_or(false),
    };

    let mut points = Vec::new();
    let mut label_values = Vec::new();
    let mut width = None;
    for (line, rec) in iter {
        let n_fields = rec.len();
        let n_numeric = if has_label {
            n_fields.saturating_sub(1)
        } else {
            n_fields
        };
        if n_numeric == 0 {
            return Err(Error::Parse {
                row: line,
                column: 1,
                message: "row has no numeric columns".into(),
            });
        }
        match width {
            None => width = Some(n_fields),
            Some(w) if w != n_fields => {
                return Err(Error::Parse {
                    row: line,
                    column: n_fields.min(w) + 1,
                    message: format!("expected {w} fields, found {n_fields}"),
                })
            }
            _ => {}
        }
        let mut p = Vec::with_capacity(n_numeric);
        for (c, cell) in rec.iter().take(n_numeric).enumerate() {
            let v = parse_cell(cell).ok_or_else(|| Error::Parse {
                row: line,
                column: c + 1,
                message: format!("not a finite number: {cell:?}"),
            })?;
            p.push(v);
        }
        points.push(p);
        if has_label {
            label_values.push(rec.get(n_fields - 1).unwrap_or("").to_string());
        }
    }
    if points.is_empty() {
        return Err(Error::Argument("CSV contains no data rows".into()));
    }
    Ok(PointTable {
        header,
        points,
        labels: has_label.then_some(label_values),
    })
}

/// Writes a point table with a header `x1,…,xm[,label]`.
pub fn write_points_csv<W: Write>(
    points: &[Vec<f64>],
    labels: Option<&[String]>,
    writer: W,
) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    let m = points.first().map_or(0, Vec::len);
    let mut header: Vec<String> = (1..=m).map(|j| format!("x{j}")).collect();
    if labels.is_some() {
        header.push("label".into());
    }
    w.write_record(&header)?;
    for (i, p) in points.iter().enumerate() {
        let mut row: Vec<String> = p.iter().map(|v| format!("{v:?}")).collect();
        if let Some(l) = labels {
            row.push(l[i].clone());
        }
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_with_header_and_labels() {
        let src = "a,b,class\n1.0,2.0,x\n3,4,y\n";
        let t = read_points_csv(src.as_bytes(), LabelColumn::Auto).unwrap();
        assert_eq!(t.header.as_ref().unwrap()[2], "class");
        assert_eq!(t.points, vec![vec![1.0, 2.0], vec![3.0, 4.0]]);
        assert_eq!(t.labels, Some(vec!["x".into(), "y".into()]));
    }

    #[test]
    fn csv_numeric_labels_need_explicit_mode() {
        let src = "1,2,0\n3,4,1\n";
        let auto = read_points_csv(src.as_bytes(), LabelColumn::Auto).unwrap();
        assert_eq!(auto.dim(), 3);
        let last = read_points_csv(src.as_bytes(), LabelColumn::Last).unwrap();
        assert_eq!(last.dim(), 2);
        assert_eq!(last.labels, Some(vec!["0".into(), "1".into()]));
    }

    #[test]
    fn csv_bad_cell_reports_position() {
        let src = "x,y\n1,2\n3,oops\n";
        match read_points_csv(src.as_bytes(), LabelColumn::None) {
            Err(Error::Parse { row, column, .. }) => assert_eq!((row, column), (3, 2)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn csv_write_then_read() {
        let pts = vec![vec![0.1, -2.5], vec![1e-30, 7.0]];
        let labels = vec!["a".to_string(), "b".to_string()];
        let mut buf = Vec::new();
        write_points_csv(&pts, Some(&labels), &mut buf).unwrap();
        let t = read_points_csv(buf.as_slice(), LabelColumn::Auto).unwrap();
        assert_eq!(t.points, pts);
        assert_eq!(t.labels.unwrap(), labels);
    }

    #[test]
    fn json_dataset_parses_all_kinds() {
        let src = r#"{
          "m": 1,
          "objects": [
            {"id": "u", "pdf": {"kind": "uniform", "lo": [0], "hi": [2]}},
            {"id": "n", "pdf": {"kind": "normal", "mean": [0], "stddev": [1], "lo": [-1], "hi": [1]}},
            {"id": "e", "pdf": {"kind": "exponential", "origin": [0], "rate": [1], "lo": [0], "hi": [3]}},
            {"id": "p", "pdf": {"kind": "empirical", "points": [[0], [2]], "weights": [0.5, 0.5]}}
          ],
          "labels": ["a", "a", "b", "b"]
        }"#;
        let d = read_dataset_json(src.as_bytes()).unwrap();
        assert_eq!(d.len(), 4);
        assert_eq!(d.objects()[0].mu(), &[1.0]);
        assert_eq!(d.labels().unwrap()[3], "b");

        let mut buf = Vec::new();
        write_dataset_json(&d, &mut buf).unwrap();
        let again = read_dataset_json(buf.as_slice()).unwrap();
        for (a, b) in d.objects().iter().zip(again.objects()) {
            assert_eq!(a.moments(), b.moments());
        }
    }

    #[test]
    fn json_dataset_rejects_wrong_m_and_duplicates() {
        let wrong_m = r#"{"m": 2, "objects": [{"id": "u", "pdf": {"kind": "uniform", "lo": [0], "hi": [2]}}]}"#;
        assert!(read_dataset_json(wrong_m.as_bytes()).is_err());
        let dup = r#"{"m": 1, "objects": [
            {"id": "u", "pdf": {"kind": "uniform", "lo": [0], "hi": [2]}},
            {"id": "u", "pdf": {"kind": "uniform", "lo": [0], "hi": [2]}}]}"#;
        assert!(read_dataset_json(dup.as_bytes()).is_err());
    }
}
