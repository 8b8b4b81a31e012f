//! Topological summaries of weekly mortality tables: Vietoris-Rips
//! persistence barcodes and MAPPER graphs built from a PCA lens.

pub mod cli;
pub mod error;
pub mod ingest;
pub mod mapper;
pub mod output;
pub mod persistence;
pub mod pointcloud;
pub mod rips;

pub use error::{Error, Result};
pub use persistence::{compute_persistence, PersistenceDiagram, PersistencePair};
pub use pointcloud::{DistanceMatrix, Normalization, PointCloud};
pub use rips::{build_rips, Simplex, SimplexTree};
