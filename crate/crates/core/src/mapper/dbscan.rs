//! Density-based clustering.
//!
//! A point is core when at least `min_samples` points, itself included, lie
//! within distance `eps`. Clusters grow from core points in row order, so the
//! id of a cluster is the rank of its first core point and a border point
//! belongs to the earliest cluster that reaches it.

use crate::pointcloud::euclidean;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    Noise,
    Cluster(usize),
}

impl Label {
    pub fn cluster(self) -> Option<usize> {
        match self {
            Label::Cluster(c) => Some(c),
            Label::Noise => None,
        }
    }
}

/// Labels each row of `coords` (row-major, `dim` columns).
pub fn dbscan(coords: &[f64], dim: usize, eps: f64, min_samples: usize) -> Vec<Label> {
    assert!(dim > 0 && coords.len().is_multiple_of(dim), "coordinates must be rows of width {dim}");
    let n = coords.len() / dim;
    let row = |i: usize| &coords[i * dim..(i + 1) * dim];
    let near = |i: usize, j: usize| euclidean(row(i), row(j)) <= eps;

    let core: Vec<bool> =
        (0..n).map(|i| (0..n).filter(|&j| near(i, j)).count() >= min_samples).collect();

    let mut labels = vec![Label::Noise; n];
    let mut assigned = vec![false; n];
    let mut next_id = 0;
    let mut frontier = Vec::new();
    for seed in 0..n {
        if assigned[seed] || !core[seed] {
            continue;
        }
        let id = Label::Cluster(next_id);
        next_id += 1;
        assigned[seed] = true;
        labels[seed] = id;
        frontier.push(seed);
        while let Some(p) = frontier.pop() {
            for q in 0..n {
                if assigned[q] || !near(p, q) {
                    continue;
                }
                assigned[q] = true;
                labels[q] = id;
                if core[q] {
                    frontier.push(q);
                }
            }
        }
    }
    labels
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_groups_on_a_line() {
        let xs = [0.0, 0.1, 0.2, 10.0, 10.1, 10.2];
        let labels = dbscan(&xs, 1, 0.5, 2);
        let c = |i: usize| labels[i].cluster().unwrap();
        assert_eq!((c(0), c(1), c(2)), (0, 0, 0));
        assert_eq!((c(3), c(4), c(5)), (1, 1, 1));
    }

    #[test]
    fn isolated_point_is_noise() {
        assert_eq!(dbscan(&[1.0], 1, 0.5, 2), [Label::Noise]);
        assert_eq!(dbscan(&[0.0, 5.0, 5.1], 1, 0.5, 2)[0], Label::Noise);
    }

    #[test]
    fn one_dense_blob() {
        let pts = [0.0, 0.0, 0.1, 0.0, 0.0, 0.1, 0.1, 0.1];
        assert!(dbscan(&pts, 2, 1.0, 4).iter().all(|l| *l == Label::Cluster(0)));
    }

    #[test]
    fn border_point_joins_first_cluster() {
        // 0.7 is within eps of cores 0.2 and 1.2 but is not core itself
        let xs = [0.0, 0.1, 0.2, 0.7, 1.2, 1.3, 1.4];
        let labels = dbscan(&xs, 1, 0.55, 4);
        assert_eq!(labels, [0, 0, 0, 0, 1, 1, 1].map(Label::Cluster));
        assert!(dbscan(&xs, 1, 0.55, 5).iter().all(|l| *l == Label::Noise));
    }
}
