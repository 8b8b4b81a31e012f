use crate::error::{Error, Result};

/// A box in lens space: one closed interval per axis.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverElement {
    pub index: Vec<usize>,
    pub bounds: Vec<(f64, f64)>,
}

impl CoverElement {
    pub fn dim(&self) -> usize {
        self.bounds.len()
    }

    /// Membership test on the leading `dim()` coordinates of `point`.
    pub fn contains(&self, point: &[f64]) -> bool {
        self.bounds.iter().zip(point).all(|(&(lo, hi), &x)| lo <= x && x <= hi)
    }
}

/// `n` intervals of common length `L = range / (n (1 - overlap) + overlap)`
/// starting every `L (1 - overlap)`, so the first starts at `lo`, the last
/// ends at `hi` and neighbours share `overlap * L`.
pub fn axis_intervals(lo: f64, hi: f64, n_intervals: usize, overlap: f64) -> Result<Vec<(f64, f64)>> {
    check_parameters(n_intervals, overlap)?;
    if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
        return Err(Error::InvalidParameter(format!("bad axis range [{lo}, {hi}]")));
    }
    if lo == hi {
        log::warn!("degenerate lens axis at {lo}; using a single interval");
        return Ok(vec![(lo, hi)]);
    }
    let n = n_intervals as f64;
    let length = (hi - lo) / (n * (1.0 - overlap) + overlap);
    let step = length * (1.0 - overlap);
    let starts: Vec<f64> = (0..n_intervals).map(|i| lo + i as f64 * step).collect();
    Ok(starts
        .iter()
        .enumerate()
        .map(|(i, &start)| {
            if i + 1 == n_intervals {
                (start, hi)
            } else {
                // never leave a rounding gap before the next start
                (start, (start + length).max(starts[i + 1]))
            }
        })
        .collect())
}

fn check_parameters(n_intervals: usize, overlap: f64) -> Result<()> {
    if n_intervals < 1 {
        return Err(Error::InvalidParameter("n_intervals must be at least 1".into()));
    }
    if !(0.0..1.0).contains(&overlap) {
        return Err(Error::InvalidParameter(format!("overlap must lie in [0, 1), got {overlap}")));
    }
    Ok(())
}

/// Cartesian products of per-axis intervals over the range of `coords`
/// (row-major, `dim` columns), in lexicographic order of their index tuples.
pub fn build_cover(coords: &[f64], dim: usize, n_intervals: usize, overlap: f64) -> Result<Vec<CoverElement>> {
    check_parameters(n_intervals, overlap)?;
    if dim == 0 || coords.is_empty() || !coords.len().is_multiple_of(dim) {
        return Err(Error::InvalidParameter("cover needs at least one point of width >= 1".into()));
    }
    let axes: Vec<Vec<(f64, f64)>> = (0..dim)
        .map(|a| {
            let (lo, hi) = coords
                .iter()
                .skip(a)
                .step_by(dim)
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| (lo.min(x), hi.max(x)));
            axis_intervals(lo, hi, n_intervals, overlap)
        })
        .collect::<Result<_>>()?;

    let mut elements = Vec::new();
    let mut index = vec![0usize; dim];
    loop {
        elements.push(CoverElement {
            index: index.clone(),
            bounds: index.iter().zip(&axes).map(|(&i, axis)| axis[i]).collect(),
        });
        // odometer increment, last axis fastest
        let mut axis = dim;
        loop {
            if axis == 0 {
                return Ok(elements);
            }
            axis -= 1;
            index[axis] += 1;
            if index[axis] < axes[axis].len() {
                break;
            }
            index[axis] = 0;
        }
    }
}
