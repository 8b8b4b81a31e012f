//! Persistence barcodes of a Rips filtration and the component merge log.

mod io;
mod merge;
mod reduction;

pub use io::{write_diagram_csv, write_merge_csv};
pub use merge::{compute_merge_events, MergeEvent};
pub use reduction::Reduction;

use crate::error::{Error, Result};
use crate::rips::SimplexTree;
use reduction::BoundaryMatrix;

/// One bar: a homology class of `dimension` alive on `[birth, death)`.
///
/// Open bars have `death == f64::INFINITY`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PersistencePair {
    pub dimension: usize,
    pub birth: f64,
    pub death: f64,
}

impl PersistencePair {
    pub fn is_infinite(&self) -> bool {
        self.death.is_infinite()
    }

    pub fn persistence(&self) -> f64 {
        self.death - self.birth
    }

    /// Alive on the half-open interval `[birth, death)`.
    pub fn is_alive_at(&self, t: f64) -> bool {
        self.birth <= t && t < self.death
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PersistenceDiagram {
    /// Sorted by dimension, birth, then death.
    pub pairs: Vec<PersistencePair>,
    pub max_homology_dimension: usize,
}

impl PersistenceDiagram {
    pub fn new(mut pairs: Vec<PersistencePair>, max_homology_dimension: usize) -> Self {
        pairs.sort_by(|a, b| {
            a.dimension
                .cmp(&b.dimension)
                .then(a.birth.total_cmp(&b.birth))
                .then(a.death.total_cmp(&b.death))
        });
        PersistenceDiagram { pairs, max_homology_dimension }
    }

    pub fn in_dimension(&self, k: usize) -> impl Iterator<Item = &PersistencePair> {
        self.pairs.iter().filter(move |p| p.dimension == k)
    }

    /// Number of dimension-`k` bars alive at `t`. Dimensions above
    /// `max_homology_dimension` were not computed and report 0.
    pub fn betti_at(&self, t: f64, k: usize) -> usize {
        self.in_dimension(k).filter(|p| p.is_alive_at(t)).count()
    }

    /// Number of dimension-1 bars born inside `[window_low, window_high]`.
    pub fn dim1_spike_count(&self, window_low: f64, window_high: f64) -> Result<usize> {
        if window_low.is_nan() || window_high.is_nan() || window_low >= window_high {
            return Err(Error::InvalidParameter(format!(
                "spike window [{window_low}, {window_high}] is empty"
            )));
        }
        Ok(self.in_dimension(1).filter(|p| (window_low..=window_high).contains(&p.birth)).count())
    }

    /// Keeps only bars in the listed dimensions.
    pub fn restricted_to(&self, dims: &[usize]) -> PersistenceDiagram {
        PersistenceDiagram {
            pairs: self.pairs.iter().filter(|p| dims.contains(&p.dimension)).copied().collect(),
            max_homology_dimension: self.max_homology_dimension,
        }
    }
}

/// Barcodes in dimensions `0..=max_homology_dim` using the default reduction.
pub fn compute_persistence(tree: &SimplexTree, max_homology_dim: usize) -> Result<PersistenceDiagram> {
    compute_persistence_with(tree, max_homology_dim, Reduction::default())
}

pub fn compute_persistence_with(
    tree: &SimplexTree,
    max_homology_dim: usize,
    algorithm: Reduction,
) -> Result<PersistenceDiagram> {
    if max_homology_dim + 1 > tree.max_dimension() {
        return Err(Error::HomologyDimension {
            requested: max_homology_dim,
            max_dimension: tree.max_dimension(),
        });
    }
    let matrix = BoundaryMatrix::new(tree, max_homology_dim + 1);
    let ids = matrix.ids.clone();
    let dims = matrix.dims.clone();
    let value = |col: usize| tree.filtration_at(ids[col]);
    let pairing = reduction::reduce(matrix, algorithm);

    let mut pairs = Vec::new();
    for (birth, death) in pairing.pairs {
        let (b, d) = (value(birth), value(death));
        if d > b {
            pairs.push(PersistencePair { dimension: dims[birth], birth: b, death: d });
        }
    }
    for col in pairing.essential {
        if dims[col] <= max_homology_dim {
            pairs.push(PersistencePair { dimension: dims[col], birth: value(col), death: f64::INFINITY });
        }
    }
    Ok(PersistenceDiagram::new(pairs, max_homology_dim))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pointcloud::{DistanceMatrix, PointCloud};
    use crate::rips::build_rips;
    use proptest::prelude::*;
    use std::f64::consts::SQRT_2;

    fn diagram(rows: &[Vec<f64>], max_edge: f64, max_dim: usize, hom: usize) -> PersistenceDiagram {
        let dm = PointCloud::from_rows(rows).unwrap().pairwise_distances();
        compute_persistence(&build_rips(&dm, max_edge, max_dim).unwrap(), hom).unwrap()
    }

    fn square() -> Vec<Vec<f64>> {
        vec![vec![0., 0.], vec![1., 0.], vec![1., 1.], vec![0., 1.]]
    }

    #[test]
    fn single_point() {
        let d = diagram(&[vec![0.0]], 2.0, 2, 1);
        assert_eq!(d.pairs, [PersistencePair { dimension: 0, birth: 0.0, death: f64::INFINITY }]);
    }

    #[test]
    fn two_points_merge_once() {
        let d = diagram(&[vec![0.0], vec![1.5]], 2.0, 2, 1);
        assert_eq!(d.pairs.len(), 2);
        assert_eq!(d.pairs[0], PersistencePair { dimension: 0, birth: 0.0, death: 1.5 });
        assert!(d.pairs[1].is_infinite());
    }

    #[test]
    fn square_has_one_loop() {
        let d = diagram(&square(), 2.0, 2, 1);
        let loops: Vec<_> = d.in_dimension(1).collect();
        assert_eq!(loops.len(), 1);
        assert_eq!((loops[0].birth, loops[0].death), (1.0, SQRT_2));
        assert_eq!(d.betti_at(1.2, 1), 1);
        assert_eq!(d.betti_at(0.5, 1), 0);
        assert_eq!(d.dim1_spike_count(0.9, 1.1).unwrap(), 1);
    }

    #[test]
    fn eight_points_on_circle() {
        let rows: Vec<Vec<f64>> = (0..8)
            .map(|i| {
                let a = i as f64 * std::f64::consts::TAU / 8.0;
                vec![a.cos(), a.sin()]
            })
            .collect();
        let d = diagram(&rows, 2.0, 2, 1);
        assert_eq!(d.in_dimension(1).count(), 1);
    }

    #[test]
    fn betti_half_open() {
        let bars = [(0.0, f64::INFINITY), (0.0, 1.0), (0.0, 2.0)]
            .map(|(birth, death)| PersistencePair { dimension: 0, birth, death });
        let d = PersistenceDiagram::new(bars.to_vec(), 1);
        assert_eq!(d.betti_at(1.5, 0), 2);
        assert_eq!(d.betti_at(1.0, 0), 2);
        assert_eq!(d.betti_at(0.0, 0), 3);
        assert_eq!(d.betti_at(0.0, 1), 0);
    }

    #[test]
    fn spike_window_checks() {
        let d = PersistenceDiagram::new(vec![], 1);
        assert_eq!(d.dim1_spike_count(0.9, 1.1).unwrap(), 0);
        assert!(d.dim1_spike_count(1.0, 1.0).is_err());
    }

    #[test]
    fn homology_dimension_precondition() {
        let dm = DistanceMatrix::from_full(2, vec![0., 1., 1., 0.]).unwrap();
        let tree = build_rips(&dm, 2.0, 2).unwrap();
        let err = compute_persistence(&tree, 2).unwrap_err();
        assert!(err.to_string().contains("dimension 2"), "{err}");
        assert!(compute_persistence(&tree, 1).is_ok());
    }

    fn cloud(max_n: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
        (1..=max_n).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(0.0f64..2.0, 2), n))
    }

    fn union_find_components(rows: &[Vec<f64>], t: f64) -> usize {
        let n = rows.len();
        let mut label: Vec<usize> = (0..n).collect();
        let dm = PointCloud::from_rows(rows).unwrap().pairwise_distances();
        loop {
            let mut changed = false;
            for i in 0..n {
                for j in 0..n {
                    if dm.get(i, j) <= t && label[j] < label[i] {
                        label[i] = label[j];
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        (0..n).filter(|&i| label[i] == i).count()
    }

    proptest! {
        #[test]
        fn h0_matches_components(rows in cloud(12), t in 0.0f64..3.0) {
            let d = diagram(&rows, 2.0, 2, 1);
            let expected = if t <= 2.0 { union_find_components(&rows, t) } else { union_find_components(&rows, 2.0) };
            prop_assert_eq!(d.betti_at(t, 0), expected);
            prop_assert_eq!(d.betti_at(0.0, 0), rows.len());
        }

        #[test]
        fn twist_equals_standard(rows in cloud(9), max_edge in 0.3f64..3.0) {
            let dm = PointCloud::from_rows(&rows).unwrap().pairwise_distances();
            let tree = build_rips(&dm, max_edge, 3).unwrap();
            let a = compute_persistence_with(&tree, 2, Reduction::Standard).unwrap();
            let b = compute_persistence_with(&tree, 2, Reduction::Twist).unwrap();
            prop_assert_eq!(a, b);
        }

        #[test]
        fn invariant_under_relabeling(rows in cloud(10), seed in any::<u64>()) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let mut shuffled = rows.clone();
            shuffled.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            prop_assert_eq!(diagram(&rows, 1.5, 2, 1), diagram(&shuffled, 1.5, 2, 1));
        }

        #[test]
        fn finite_h0_bars_equal_merge_events(rows in cloud(12), max_edge in 0.1f64..3.0) {
            let dm = PointCloud::from_rows(&rows).unwrap().pairwise_distances();
            let tree = build_rips(&dm, max_edge, 2).unwrap();
            let d = compute_persistence(&tree, 1).unwrap();
            let events = compute_merge_events(&tree);
            // zero-length merges (duplicate points) produce events but no bars
            let nonzero = events.iter().filter(|e| e.filtration_value > 0.0).count();
            prop_assert_eq!(d.in_dimension(0).filter(|p| !p.is_infinite()).count(), nonzero);
            prop_assert!(d.in_dimension(0).any(|p| p.is_infinite()));
        }
    }
}
