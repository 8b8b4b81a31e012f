//! Dense numeric tables, column normalization and Euclidean distances.

use std::io::Read;

use crate::error::{Error, Result};

/// An `n x d` table of finite reals with row and column labels.
///
/// Values are stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    values: Vec<f64>,
    n_rows: usize,
    n_cols: usize,
    row_labels: Vec<String>,
    column_labels: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Normalization {
    /// Mean 0 and population standard deviation 1.
    #[default]
    ZScore,
    /// Affine map onto `[0, 1]`.
    MinMax,
}

impl PointCloud {
    pub fn new(
        values: Vec<f64>,
        n_cols: usize,
        row_labels: Vec<String>,
        column_labels: Vec<String>,
    ) -> Result<Self> {
        if n_cols == 0 || values.is_empty() {
            return Err(Error::InvalidPointCloud("need at least one row and one column".into()));
        }
        if !values.len().is_multiple_of(n_cols) {
            return Err(Error::InvalidPointCloud(format!(
                "{} values do not fill rows of width {}",
                values.len(),
                n_cols
            )));
        }
        let n_rows = values.len() / n_cols;
        if row_labels.len() != n_rows || column_labels.len() != n_cols {
            return Err(Error::InvalidPointCloud(format!(
                "labels ({} rows, {} columns) do not match a {}x{} matrix",
                row_labels.len(),
                column_labels.len(),
                n_rows,
                n_cols
            )));
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidPointCloud(format!(
                "non-finite value at row {}, column {}",
                pos / n_cols,
                pos % n_cols
            )));
        }
        Ok(PointCloud { values, n_rows, n_cols, row_labels, column_labels })
    }

    /// Builds a cloud from rows, labelling rows and columns by index.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n_cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n_cols) {
            return Err(Error::InvalidPointCloud("ragged rows".into()));
        }
        let values = rows.iter().flatten().copied().collect();
        let row_labels = (0..rows.len()).map(|i| i.to_string()).collect();
        let column_labels = (0..n_cols).map(|j| format!("x{j}")).collect();
        PointCloud::new(values, n_cols, row_labels, column_labels)
    }

    /// Parses a plain numeric CSV, one point per line.
    ///
    /// A first line that does not parse as numbers is taken as the header.
    pub fn from_csv_reader<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .comment(Some(b'#'))
            .from_reader(reader);
        let mut header: Option<Vec<String>> = None;
        let mut values = Vec::new();
        let mut n_cols = 0;
        let mut n_rows = 0;
        for (line, record) in rdr.records().enumerate() {
            let record = record?;
            if record.iter().all(str::is_empty) {
                continue;
            }
            let parsed: std::result::Result<Vec<f64>, _> =
                record.iter().map(str::parse::<f64>).collect();
            match parsed {
                Ok(row) => {
                    if n_rows == 0 && header.is_none() {
                        n_cols = row.len();
                    } else if row.len() != n_cols {
                        return Err(Error::Syntax {
                            what: "points csv",
                            line: line + 1,
                            message: format!("expected {} fields, found {}", n_cols, row.len()),
                        });
                    }
                    values.extend(row);
                    n_rows += 1;
                }
                Err(_) if line == 0 => {
                    n_cols = record.len();
                    header = Some(record.iter().map(str::to_owned).collect());
                }
                Err(e) => {
                    return Err(Error::Syntax {
                        what: "points csv",
                        line: line + 1,
                        message: e.to_string(),
                    })
                }
            }
        }
        let column_labels =
            header.unwrap_or_else(|| (0..n_cols).map(|j| format!("x{j}")).collect());
        let row_labels = (0..n_rows).map(|i| i.to_string()).collect();
        PointCloud::new(values, n_cols, row_labels, column_labels)
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.n_cols..(i + 1) * self.n_cols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks_exact(self.n_cols)
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n_cols + j]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn row_labels(&self) -> &[String] {
        &self.row_labels
    }

    pub fn column_labels(&self) -> &[String] {
        &self.column_labels
    }

    /// Drops the leading `count` columns.
    pub fn drop_leading_columns(&self, count: usize) -> Result<Self> {
        let keep = self.n_cols.saturating_sub(count);
        let values = self.rows().flat_map(|r| r[count.min(self.n_cols)..].iter().copied()).collect();
        PointCloud::new(
            values,
            keep,
            self.row_labels.clone(),
            self.column_labels[count.min(self.n_cols)..].to_vec(),
        )
    }

    /// Rescales every column independently. Constant columns become all zeros.
    pub fn normalize_columns(&self, mode: Normalization) -> PointCloud {
        let n = self.n_rows as f64;
        let mut values = self.values.clone();
        for j in 0..self.n_cols {
            let col = || self.rows().map(move |r| r[j]);
            let (lo, hi) = col().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
                (lo.min(v), hi.max(v))
            });
            let map: Box<dyn Fn(f64) -> f64> = if lo == hi {
                log::warn!("column {:?} is constant; normalized to zeros", self.column_labels[j]);
                Box::new(|_| 0.0)
            } else {
                match mode {
                    Normalization::ZScore => {
                        let mean = col().sum::<f64>() / n;
                        let var = col().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
                        let sd = var.sqrt();
                        Box::new(move |v| (v - mean) / sd)
                    }
                    Normalization::MinMax => Box::new(move |v| (v - lo) / (hi - lo)),
                }
            };
            for i in 0..self.n_rows {
                let cell = &mut values[i * self.n_cols + j];
                *cell = map(*cell);
            }
        }
        PointCloud {
            values,
            n_rows: self.n_rows,
            n_cols: self.n_cols,
            row_labels: self.row_labels.clone(),
            column_labels: self.column_labels.clone(),
        }
    }

    pub fn pairwise_distances(&self) -> DistanceMatrix {
        let n = self.n_rows;
        let mut dist = vec![0.0; n * n];
        for i in 0..n {
            let a = self.row(i);
            for j in (i + 1)..n {
                let d = euclidean(a, self.row(j));
                dist[i * n + j] = d;
                dist[j * n + i] = d;
            }
        }
        DistanceMatrix { n, dist }
    }
}

pub(crate) fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Symmetric `n x n` matrix of pairwise distances with zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<f64>,
}

impl DistanceMatrix {
    /// Wraps a full row-major matrix, checking symmetry and the zero diagonal.
    pub fn from_full(n: usize, dist: Vec<f64>) -> Result<Self> {
        if dist.len() != n * n {
            return Err(Error::InvalidParameter(format!(
                "distance matrix needs {} entries, got {}",
                n * n,
                dist.len()
            )));
        }
        for i in 0..n {
            if dist[i * n + i] != 0.0 {
                return Err(Error::InvalidParameter(format!("nonzero diagonal at {i}")));
            }
            for j in (i + 1)..n {
                let d = dist[i * n + j];
                if d != dist[j * n + i] || d.is_nan() || d < 0.0 || d.is_infinite() {
                    return Err(Error::InvalidParameter(format!(
                        "entry ({i}, {j}) is asymmetric, negative or not finite"
                    )));
                }
            }
        }
        Ok(DistanceMatrix { n, dist })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.n + j]
    }

    /// Upper-triangle entries in row order.
    pub fn upper_triangle(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).flat_map(move |i| ((i + 1)..self.n).map(move |j| self.get(i, j)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistortionStats {
    pub min_original: f64,
    pub max_original: f64,
    pub mean_original: f64,
    pub min_reduced: f64,
    pub max_reduced: f64,
    pub mean_reduced: f64,
    pub pearson_correlation: f64,
}

/// Compares distance ranges of two embeddings of the same points.
///
/// When either side has zero variance the correlation is 1 if both are
/// constant and 0 otherwise.
pub fn distance_distortion_report(
    original: &DistanceMatrix,
    reduced: &DistanceMatrix,
) -> Result<DistortionStats> {
    if original.len() != reduced.len() {
        return Err(Error::SizeMismatch(original.len(), reduced.len()));
    }
    if original.len() < 2 {
        return Err(Error::NoPairs(original.len()));
    }
    let a: Vec<f64> = original.upper_triangle().collect();
    let b: Vec<f64> = reduced.upper_triangle().collect();
    let m = a.len() as f64;
    let summary = |v: &[f64]| {
        let (lo, hi) = v.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
            (lo.min(x), hi.max(x))
        });
        // clamp guards the rounding of the mean at min == max
        let mean = (v.iter().sum::<f64>() / m).clamp(lo, hi);
        (lo, hi, mean)
    };
    let (min_original, max_original, mean_original) = summary(&a);
    let (min_reduced, max_reduced, mean_reduced) = summary(&b);

    let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
    for (x, y) in a.iter().zip(&b) {
        let (dx, dy) = (x - mean_original, y - mean_reduced);
        sab += dx * dy;
        saa += dx * dx;
        sbb += dy * dy;
    }
    let pearson_correlation = match (saa > 0.0, sbb > 0.0) {
        (true, true) => (sab / (saa.sqrt() * sbb.sqrt())).clamp(-1.0, 1.0),
        (false, false) => 1.0,
        _ => 0.0,
    };
    Ok(DistortionStats {
        min_original,
        max_original,
        mean_original,
        min_reduced,
        max_reduced,
        mean_reduced,
        pearson_correlation,
    })
}
