use crate::error::{Error, Result};

/// `m` points in `d` dimensions, stored row-major, with optional ground truth.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    values: Vec<f64>,
    rows: usize,
    cols: usize,
    labels: Option<Vec<i64>>,
    feature_names: Option<Vec<String>>,
}

impl Dataset {
    pub fn new(values: Vec<f64>, rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidInput(format!(
                "dataset must have at least one row and column, got {rows}x{cols}"
            )));
        }
        if values.len() != rows * cols {
            return Err(Error::InvalidDimension(format!(
                "{} values cannot fill a {rows}x{cols} matrix",
                values.len()
            )));
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "non-finite entry at row {}, column {}",
                pos / cols,
                pos % cols
            )));
        }
        Ok(Dataset {
            values,
            rows,
            cols,
            labels: None,
            feature_names: None,
        })
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut values = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::InvalidDimension(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            values.extend_from_slice(row);
        }
        Dataset::new(values, rows.len(), cols)
    }

    pub fn with_labels(mut self, labels: Vec<i64>) -> Result<Self> {
        if labels.len() != self.rows {
            return Err(Error::InvalidInput(format!(
                "{} labels for {} points",
                labels.len(),
                self.rows
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn with_feature_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.cols {
            return Err(Error::InvalidInput(format!(
                "{} feature names for {} columns",
                names.len(),
                self.cols
            )));
        }
        self.feature_names = Some(names);
        Ok(self)
    }

    /// Number of points `m`.
    pub fn len(&self) -> usize {
        self.rows
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0
    }

    /// Ambient dimension `d`.
    pub fn dims(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.values.chunks_exact(self.cols)
    }

    pub fn column(&self, j: usize) -> impl Iterator<Item = f64> + '_ {
        self.values.iter().skip(j).step_by(self.cols).copied()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn labels(&self) -> Option<&[i64]> {
        self.labels.as_deref()
    }

    pub fn feature_names(&self) -> Option<&[String]> {
        self.feature_names.as_deref()
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Rows at `indices`, in that order; labels follow their points.
    pub fn select(&self, indices: &[usize]) -> Result<Dataset> {
        let mut values = Vec::with_capacity(indices.len() * self.cols);
        for &i in indices {
            values.extend_from_slice(self.row(i));
        }
        let mut out = Dataset::new(values, indices.len(), self.cols)?;
        out.labels = self
            .labels
            .as_ref()
            .map(|l| indices.iter().map(|&i| l[i]).collect());
        out.feature_names = self.feature_names.clone();
        Ok(out)
    }

    /// Same shape and metadata, new values. Used by transforms that keep `m`.
    pub(crate) fn replace_values(&self, values: Vec<f64>, cols: usize) -> Result<Dataset> {
        let mut out = Dataset::new(values, self.rows, cols)?;
        out.labels = self.labels.clone();
        if cols == self.cols {
            out.feature_names = self.feature_names.clone();
        }
        Ok(out)
    }
}
