use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::cover::CoverElement;
use super::dbscan::dbscan;
use super::pca::ProjectedData;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MapperNode {
    pub id: usize,
    /// Sorted row indices.
    pub members: Vec<usize>,
    pub cover_index: Vec<usize>,
    #[serde(skip)]
    pub cluster_label: usize,
    /// Mean row index of the members.
    pub color_value: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapperEdge {
    pub source: usize,
    pub target: usize,
    pub shared: usize,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct MapperGraph {
    pub nodes: Vec<MapperNode>,
    pub edges: Vec<MapperEdge>,
}

/// Clusters the pre-image of every cover element and joins clusters that
/// share rows.
///
/// Cover membership uses the leading `cover[0].dim()` projected coordinates;
/// clustering uses all of them. Noise rows join no node.
pub fn build_mapper_graph(
    projected: &ProjectedData,
    cover: &[CoverElement],
    eps: f64,
    min_samples: usize,
) -> Result<MapperGraph> {
    if eps.is_nan() || eps <= 0.0 || min_samples < 1 {
        return Err(Error::InvalidParameter(format!(
            "DBSCAN needs eps > 0 and min_samples >= 1, got {eps} and {min_samples}"
        )));
    }
    let k = projected.n_components();
    if let Some(bad) = cover.iter().find(|c| c.dim() == 0 || c.dim() > k) {
        return Err(Error::InvalidParameter(format!(
            "cover element of dimension {} does not fit {k} projected coordinates",
            bad.dim()
        )));
    }

    let clusters: Vec<Vec<Vec<usize>>> = cover
        .par_iter()
        .map(|element| {
            let rows: Vec<usize> =
                (0..projected.n_rows()).filter(|&i| element.contains(projected.row(i))).collect();
            if rows.is_empty() {
                return Vec::new();
            }
            let coords: Vec<f64> = rows.iter().flat_map(|&i| projected.row(i).iter().copied()).collect();
            let mut groups: Vec<Vec<usize>> = Vec::new();
            for (&row, label) in rows.iter().zip(dbscan(&coords, k, eps, min_samples)) {
                if let Some(c) = label.cluster() {
                    if groups.len() <= c {
                        groups.resize_with(c + 1, Vec::new);
                    }
                    groups[c].push(row);
                }
            }
            groups
        })
        .collect();

    let mut graph = MapperGraph::default();
    let mut nodes_of_row: Vec<Vec<usize>> = vec![Vec::new(); projected.n_rows()];
    for (element, groups) in cover.iter().zip(clusters) {
        for (cluster_label, members) in groups.into_iter().enumerate() {
            let id = graph.nodes.len();
            for &row in &members {
                nodes_of_row[row].push(id);
            }
            let color_value = members.iter().sum::<usize>() as f64 / members.len() as f64;
            graph.nodes.push(MapperNode {
                id,
                members,
                cover_index: element.index.clone(),
                cluster_label,
                color_value,
            });
        }
    }

    let mut shared: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for ids in &nodes_of_row {
        for (a, &u) in ids.iter().enumerate() {
            for &v in &ids[a + 1..] {
                *shared.entry((u.min(v), u.max(v))).or_default() += 1;
            }
        }
    }
    graph.edges = shared
        .into_iter()
        .map(|((source, target), shared)| MapperEdge { source, target, shared })
        .collect();

    if graph.nodes.is_empty() {
        log::warn!("every pre-image was noise; the MAPPER graph is empty");
    }
    Ok(graph)
}

impl MapperGraph {
    pub fn connected_components(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.nodes.len()).collect();
        fn root(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut components = self.nodes.len();
        for e in &self.edges {
            let (a, b) = (root(&mut parent, e.source), root(&mut parent, e.target));
            if a != b {
                parent[a] = b;
                components -= 1;
            }
        }
        components
    }
}

/// Number of independent cycles, `E - V + C`.
pub fn graph_cycle_rank(graph: &MapperGraph) -> usize {
    graph.edges.len() + graph.connected_components() - graph.nodes.len()
}
