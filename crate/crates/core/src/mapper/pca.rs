//! Principal components via a cyclic Jacobi eigensolver on the covariance
//! matrix.

use crate::error::{Error, Result};
use crate::pointcloud::PointCloud;

/// Data projected onto its leading principal components.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectedData {
    /// Row-major `n x k`.
    coords: Vec<f64>,
    n: usize,
    k: usize,
    /// One unit-norm row of length `d` per component.
    pub component_loadings: Vec<Vec<f64>>,
    pub explained_variance_ratio: Vec<f64>,
    /// Column with the largest absolute loading, per component.
    pub dominant_columns: Vec<usize>,
}

impl ProjectedData {
    /// Wraps coordinates that did not come from PCA (e.g. a precomputed lens).
    pub fn from_coords(coords: Vec<f64>, k: usize) -> Result<Self> {
        if k == 0 || !coords.len().is_multiple_of(k) || coords.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("coordinates must be finite rows of width k".into()));
        }
        let n = coords.len() / k;
        Ok(ProjectedData {
            coords,
            n,
            k,
            component_loadings: Vec::new(),
            explained_variance_ratio: Vec::new(),
            dominant_columns: Vec::new(),
        })
    }

    pub fn n_rows(&self) -> usize {
        self.n
    }

    pub fn n_components(&self) -> usize {
        self.k
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.coords[i * self.k..(i + 1) * self.k]
    }

    /// The first `m` coordinates of every row, row-major.
    pub fn leading(&self, m: usize) -> Vec<f64> {
        let m = m.min(self.k);
        self.coords.chunks_exact(self.k).flat_map(|r| r[..m].iter().copied()).collect()
    }
}

/// Eigen-decomposition of a symmetric `d x d` row-major matrix.
///
/// Returns eigenvalues and the matching unit eigenvectors, unsorted.
pub fn symmetric_eigen(matrix: &[f64], d: usize) -> (Vec<f64>, Vec<Vec<f64>>) {
    assert_eq!(matrix.len(), d * d);
    let mut a = matrix.to_vec();
    let mut v = vec![0.0; d * d];
    for i in 0..d {
        v[i * d + i] = 1.0;
    }
    let scale: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    for _sweep in 0..100 {
        let off: f64 = (0..d)
            .flat_map(|p| ((p + 1)..d).map(move |q| (p, q)))
            .map(|(p, q)| a[p * d + q] * a[p * d + q])
            .sum::<f64>()
            .sqrt();
        if off <= f64::EPSILON * 1e-3 * scale || off == 0.0 {
            break;
        }
        for p in 0..d {
            for q in (p + 1)..d {
                let apq = a[p * d + q];
                if apq == 0.0 {
                    continue;
                }
                let (app, aqq) = (a[p * d + p], a[q * d + q]);
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for r in 0..d {
                    let (arp, arq) = (a[r * d + p], a[r * d + q]);
                    a[r * d + p] = c * arp - s * arq;
                    a[r * d + q] = s * arp + c * arq;
                }
                for r in 0..d {
                    let (apr, aqr) = (a[p * d + r], a[q * d + r]);
                    a[p * d + r] = c * apr - s * aqr;
                    a[q * d + r] = s * apr + c * aqr;
                }
                a[p * d + q] = 0.0;
                a[q * d + p] = 0.0;
                for r in 0..d {
                    let (vrp, vrq) = (v[r * d + p], v[r * d + q]);
                    v[r * d + p] = c * vrp - s * vrq;
                    v[r * d + q] = s * vrp + c * vrq;
                }
            }
        }
    }
    let values = (0..d).map(|i| a[i * d + i]).collect();
    let vectors = (0..d).map(|j| (0..d).map(|i| v[i * d + j]).collect()).collect();
    (values, vectors)
}

fn argmax_abs(v: &[f64]) -> usize {
    let mut best = 0;
    for (i, x) in v.iter().enumerate() {
        if x.abs() > v[best].abs() {
            best = i;
        }
    }
    best
}

/// Projects the centered rows of `pc` onto the top `k` principal components.
///
/// Components are ordered by decreasing eigenvalue; equal eigenvalues are
/// ordered by their dominant column. Each loading is signed so that its
/// largest-magnitude entry is positive.
pub fn pca_fit_transform(pc: &PointCloud, k: usize) -> Result<ProjectedData> {
    let (n, d) = (pc.n_rows(), pc.n_cols());
    let limit = n.saturating_sub(1).min(d);
    if k < 1 || k > limit {
        return Err(Error::ComponentCount { k, limit });
    }
    let mut means = vec![0.0; d];
    for row in pc.rows() {
        for (m, x) in means.iter_mut().zip(row) {
            *m += x;
        }
    }
    means.iter_mut().for_each(|m| *m /= n as f64);
    let centered: Vec<f64> =
        pc.rows().flat_map(|r| r.iter().zip(&means).map(|(x, m)| x - m)).collect();

    let mut cov = vec![0.0; d * d];
    for row in centered.chunks_exact(d) {
        for i in 0..d {
            for j in i..d {
                cov[i * d + j] += row[i] * row[j];
            }
        }
    }
    for i in 0..d {
        for j in i..d {
            cov[i * d + j] /= (n - 1) as f64;
            cov[j * d + i] = cov[i * d + j];
        }
    }
    let total: f64 = (0..d).map(|i| cov[i * d + i]).sum();

    let (values, mut vectors) = symmetric_eigen(&cov, d);
    for vec in vectors.iter_mut() {
        if vec[argmax_abs(vec)] < 0.0 {
            vec.iter_mut().for_each(|x| *x = -*x);
        }
    }
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| values[b].total_cmp(&values[a]));
    let tie = 1e-10 * values.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(f64::MIN_POSITIVE);
    let mut start = 0;
    while start < d {
        let mut end = start + 1;
        while end < d && values[order[start]] - values[order[end]] <= tie {
            end += 1;
        }
        order[start..end].sort_by_key(|&i| argmax_abs(&vectors[i]));
        start = end;
    }

    let chosen = &order[..k];
    let component_loadings: Vec<Vec<f64>> = chosen.iter().map(|&i| vectors[i].clone()).collect();
    let explained_variance_ratio = chosen
        .iter()
        .map(|&i| if total > 0.0 { (values[i] / total).clamp(0.0, 1.0) } else { 0.0 })
        .collect();
    let dominant_columns = component_loadings.iter().map(|l| argmax_abs(l)).collect();
    let coords = centered
        .chunks_exact(d)
        .flat_map(|row| {
            component_loadings.iter().map(move |l| row.iter().zip(l).map(|(x, w)| x * w).sum::<f64>())
        })
        .collect();
    Ok(ProjectedData { coords, n, k, component_loadings, explained_variance_ratio, dominant_columns })
}
