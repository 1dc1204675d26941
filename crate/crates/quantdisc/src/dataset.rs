//! Labeled feature datasets and their CSV serialization.
//!
//! The dataset CSV format is fixed: UTF-8, comma-separated, optional first
//! header line, column 1 = integer class label, columns 2..n+1 = decimal
//! feature values, no quoting, LF line endings.

use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use ndarray::Array2;

use crate::error::Error;
use crate::Result;

/// A row-major feature matrix with one integer class label per row.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset {
    features: Array2<f64>,
    labels: Vec<u32>,
}

impl LabeledDataset {
    /// Builds a dataset, checking that the label count matches the row count,
    /// the dataset is nonempty, and every feature is finite.
    pub fn new(features: Array2<f64>, labels: Vec<u32>) -> Result<Self> {
        if features.nrows() != labels.len() {
            return Err(Error::LengthMismatch {
                left: features.nrows(),
                right: labels.len(),
            });
        }
        if features.nrows() == 0 || features.ncols() == 0 {
            return Err(Error::EmptyInput("dataset"));
        }
        if features.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("feature value"));
        }
        Ok(Self { features, labels })
    }

    pub fn features(&self) -> &Array2<f64> {
        &self.features
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn n_samples(&self) -> usize {
        self.features.nrows()
    }

    pub fn n_dims(&self) -> usize {
        self.features.ncols()
    }

    /// Distinct labels in ascending order.
    pub fn class_labels(&self) -> Vec<u32> {
        let mut classes = self.labels.clone();
        classes.sort_unstable();
        classes.dedup();
        classes
    }

    /// Row indices carrying the given label, in dataset order.
    pub fn rows_with_label(&self, label: u32) -> Vec<usize> {
        self.labels
            .iter()
            .enumerate()
            .filter(|(_, &l)| l == label)
            .map(|(i, _)| i)
            .collect()
    }

    /// New dataset containing the given rows, in the given order.
    pub fn select_rows(&self, indices: &[usize]) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::EmptyInput("row selection"));
        }
        let mut features = Array2::zeros((indices.len(), self.n_dims()));
        let mut labels = Vec::with_capacity(indices.len());
        for (out_row, &i) in indices.iter().enumerate() {
            features.row_mut(out_row).assign(&self.features.row(i));
            labels.push(self.labels[i]);
        }
        LabeledDataset::new(features, labels)
    }

    /// Writes the dataset in the fixed CSV format. Feature values use Rust's
    /// shortest round-trip decimal representation.
    pub fn write_csv(&self, mut w: impl Write, header: bool) -> std::io::Result<()> {
        if header {
            write!(w, "label")?;
            for j in 0..self.n_dims() {
                write!(w, ",x{}", j + 1)?;
            }
            writeln!(w)?;
        }
        for (row, &label) in self.features.rows().into_iter().zip(&self.labels) {
            write!(w, "{label}")?;
            for x in row.iter() {
                write!(w, ",{x}")?;
            }
            writeln!(w)?;
        }
        Ok(())
    }

    pub fn write_csv_path(&self, path: &Path, header: bool) -> std::io::Result<()> {
        let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
        self.write_csv(&mut file, header)?;
        file.flush()
    }

    /// Parses the fixed CSV format; `header` skips the first line.
    pub fn read_csv(r: impl Read, header: bool) -> Result<Self> {
        let reader = BufReader::new(r);
        let mut labels = Vec::new();
        let mut values: Vec<f64> = Vec::new();
        let mut n_dims: Option<usize> = None;

        for (idx, line) in reader.lines().enumerate() {
            let line_no = idx + 1;
            let line = line.map_err(|e| Error::Csv {
                line: line_no,
                msg: e.to_string(),
            })?;
            if idx == 0 && header {
                continue;
            }
            if line.is_empty() {
                continue;
            }
            let mut fields = line.split(',');
            let label_field = fields.next().expect("split yields at least one field");
            let label: u32 = label_field.trim().parse().map_err(|_| Error::Csv {
                line: line_no,
                msg: format!("bad label {label_field:?}"),
            })?;
            let mut row = Vec::new();
            for field in fields {
                let x: f64 = field.trim().parse().map_err(|_| Error::Csv {
                    line: line_no,
                    msg: format!("bad feature value {field:?}"),
                })?;
                if !x.is_finite() {
                    return Err(Error::Csv {
                        line: line_no,
                        msg: format!("non-finite feature value {field:?}"),
                    });
                }
                row.push(x);
            }
            match n_dims {
                None => {
                    if row.is_empty() {
                        return Err(Error::Csv {
                            line: line_no,
                            msg: "row has a label but no features".into(),
                        });
                    }
                    n_dims = Some(row.len());
                }
                Some(d) if d != row.len() => {
                    return Err(Error::Csv {
                        line: line_no,
                        msg: format!("expected {d} features, found {}", row.len()),
                    });
                }
                Some(_) => {}
            }
            labels.push(label);
            values.extend_from_slice(&row);
        }

        let n_dims = n_dims.ok_or(Error::EmptyInput("csv dataset"))?;
        let features = Array2::from_shape_vec((labels.len(), n_dims), values)
            .expect("shape checked during parse");
        LabeledDataset::new(features, labels)
    }

    pub fn read_csv_path(path: &Path, header: bool) -> Result<Self> {
        let file = std::fs::File::open(path)?;
        Self::read_csv(file, header)
    }
}
