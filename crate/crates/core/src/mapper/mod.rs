//! MAPPER graphs: a PCA lens, an overlapping interval cover of the lens
//! range, DBSCAN on each pre-image and the nerve of the resulting clusters.

mod cover;
mod dbscan;
mod export;
mod graph;
mod pca;

pub use cover::{axis_intervals, build_cover, CoverElement};
pub use dbscan::{dbscan, Label};
pub use export::ramp_color;
pub use graph::{build_mapper_graph, graph_cycle_rank, MapperEdge, MapperGraph, MapperNode};
pub use pca::{pca_fit_transform, symmetric_eigen, ProjectedData};
