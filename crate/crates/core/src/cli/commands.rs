use std::fmt::Write as _;
use std::fs::File;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use super::svg::render_barcode_svg;
use super::{RegionSelector, RunConfig};
use crate::error::{Error, Result};
use crate::ingest::{
    aggregate_whole_us, load_cdc_csv, partition_by_region, slug, MortalityTable, RegionSpec, SchemaConfig,
};
use crate::mapper::{build_cover, build_mapper_graph, pca_fit_transform, ProjectedData};
use crate::output::{float17, write_atomic};
use crate::persistence::{compute_merge_events, compute_persistence, write_diagram_csv, write_merge_csv};
use crate::pointcloud::{distance_distortion_report, DistortionStats, PointCloud};
use crate::rips::build_rips;

/// A named point cloud ready for analysis, before normalization.
#[derive(Debug, Clone)]
pub struct Dataset {
    /// Human-readable name, e.g. `South`.
    pub name: String,
    /// File name prefix, e.g. `south_nodates`.
    pub prefix: String,
    pub points: PointCloud,
}

/// Loads the point clouds selected by `cfg`.
///
/// With `--region all`, regions without rows are skipped with a warning.
pub fn load_datasets(cfg: &RunConfig) -> Result<Vec<Dataset>> {
    if cfg.raw_points {
        let file = File::open(&cfg.input_path).map_err(|e| Error::io(&cfg.input_path, e))?;
        let points = PointCloud::from_csv_reader(file)?;
        let stem = cfg.input_path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        let stem = if slug(&stem).is_empty() { "points".to_string() } else { slug(&stem) };
        return Ok(vec![Dataset { name: stem.clone(), prefix: format!("{stem}_raw"), points }]);
    }

    let schema = match &cfg.schema_path {
        Some(p) => SchemaConfig::load(p)?,
        None => SchemaConfig::default(),
    };
    let spec = match &cfg.regions_path {
        Some(p) => RegionSpec::load(p)?,
        None => RegionSpec::builtin(),
    };
    let table = load_cdc_csv(&cfg.input_path, &schema)?;
    for (cause, &n) in table.cause_names.iter().zip(&table.imputed) {
        if n > 0 {
            log::warn!("{n} blank {cause:?} cells read as 0");
        }
    }
    let parts = partition_by_region(&table, &spec)?;
    let whole_us = || {
        let mut all = MortalityTable::new(table.cause_names.clone());
        all.rows = parts.iter().flat_map(|(_, t)| t.rows.iter().cloned()).collect();
        ("Whole US".to_string(), aggregate_whole_us(&all))
    };

    let selected: Vec<(String, MortalityTable)> = match &cfg.region {
        RegionSelector::All => {
            let mut out: Vec<_> = parts
                .iter()
                .filter(|(name, t)| {
                    if t.is_empty() {
                        log::warn!("region {name} has no rows in range; skipped");
                    }
                    !t.is_empty()
                })
                .cloned()
                .collect();
            out.push(whole_us());
            out
        }
        RegionSelector::WholeUs => vec![whole_us()],
        RegionSelector::Region(name) => {
            let found = spec
                .find(name)
                .ok_or_else(|| Error::InvalidParameter(format!("unknown region {name:?}")))?;
            parts.iter().filter(|(n, _)| n == found).cloned().collect()
        }
    };

    let tag = cfg.variant.tag();
    selected
        .into_iter()
        .map(|(name, t)| {
            let points = t.to_point_cloud(cfg.variant).map_err(|_| {
                Error::InvalidPointCloud(format!("{name} has no rows in the selected weeks"))
            })?;
            Ok(Dataset { prefix: format!("{}_{tag}", slug(&name)), name, points })
        })
        .collect()
}

fn prepare_output_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
}

fn for_each_dataset<T: Send>(
    cfg: &RunConfig,
    f: impl Fn(&Dataset, &PointCloud) -> Result<T> + Sync,
) -> Result<Vec<T>> {
    let datasets = load_datasets(cfg)?;
    datasets
        .par_iter()
        .map(|ds| {
            let normalized = ds.points.normalize_columns(cfg.normalization);
            f(ds, &normalized)
        })
        .collect()
}

/// Rips persistence for every selected dataset. Returns the written files.
pub fn cmd_barcode(cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    let max_hom = cfg.homology_dims.iter().copied().max().unwrap_or(0);
    let axis_max = cfg.axis_max.unwrap_or(cfg.max_edge_length);
    if axis_max.is_nan() || axis_max <= 0.0 || axis_max.is_infinite() {
        return Err(Error::InvalidParameter(format!("axis maximum must be positive, got {axis_max}")));
    }
    prepare_output_dir(&cfg.output_dir)?;
    let written = for_each_dataset(cfg, |ds, points| {
        let tree = build_rips(&points.pairwise_distances(), cfg.max_edge_length, cfg.max_dimension)?;
        let diagram = compute_persistence(&tree, max_hom)?.restricted_to(&cfg.homology_dims);
        let merges = compute_merge_events(&tree);
        log::info!("{}: {} points, {} simplices, {} bars", ds.name, points.n_rows(), tree.len(), diagram.pairs.len());

        let path = |artifact: &str| cfg.output_dir.join(format!("{}_{artifact}", ds.prefix));
        let mut out = Vec::new();
        let p = path("diagram.csv");
        write_diagram_csv(&diagram, &p)?;
        out.push(p);
        let p = path("merges.csv");
        write_merge_csv(&merges, &p)?;
        out.push(p);
        let p = path("barcode.svg");
        let title = format!("{} ({}), Rips up to {}", ds.name, ds.prefix, float17(cfg.max_edge_length));
        write_atomic(&p, render_barcode_svg(&diagram, axis_max, &title).as_bytes())?;
        out.push(p);
        if cfg.dump_simplices {
            let p = path("simplices.txt");
            let mut buf = Vec::new();
            tree.write_dump(&mut buf).map_err(|e| Error::io(&p, e))?;
            write_atomic(&p, &buf)?;
            out.push(p);
        }
        Ok(out)
    })?;
    Ok(written.into_iter().flatten().collect())
}

fn cluster_dim(cfg: &RunConfig) -> Result<usize> {
    if !(1..=3).contains(&cfg.lens_dim) {
        return Err(Error::InvalidParameter(format!("lens dimension must be 1, 2 or 3, got {}", cfg.lens_dim)));
    }
    let k = cfg.cluster_dim.unwrap_or(cfg.lens_dim);
    if k < cfg.lens_dim {
        return Err(Error::InvalidParameter(format!(
            "cluster dimension {k} is smaller than lens dimension {}",
            cfg.lens_dim
        )));
    }
    Ok(k)
}

/// Plain-text summary of the principal components.
pub fn pca_report(projected: &ProjectedData, column_labels: &[String]) -> String {
    let mut s = String::from("component,explained_variance_ratio,cumulative,dominant_column,dominant_label\n");
    let mut cumulative = 0.0;
    for (i, (&ratio, &col)) in
        projected.explained_variance_ratio.iter().zip(&projected.dominant_columns).enumerate()
    {
        cumulative += ratio;
        let label = column_labels.get(col).map_or("", String::as_str).replace('"', "\"\"");
        let _ = writeln!(s, "{},{},{},{col},\"{label}\"", i + 1, float17(ratio), float17(cumulative.min(1.0)));
    }
    s
}

/// MAPPER graph for every selected dataset. Returns the written files.
pub fn cmd_mapper(cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    let k = cluster_dim(cfg)?;
    prepare_output_dir(&cfg.output_dir)?;
    let written = for_each_dataset(cfg, |ds, points| {
        let projected = pca_fit_transform(points, k)?;
        let cover = build_cover(&projected.leading(cfg.lens_dim), cfg.lens_dim, cfg.n_intervals, cfg.overlap)?;
        let graph = build_mapper_graph(&projected, &cover, cfg.eps, cfg.min_samples)?;
        log::info!("{}: {} nodes, {} edges", ds.name, graph.nodes.len(), graph.edges.len());

        let path = |artifact: &str| cfg.output_dir.join(format!("{}_{artifact}", ds.prefix));
        let mut out = Vec::new();
        let p = path("mapper.json");
        write_atomic(&p, graph.to_json().as_bytes())?;
        out.push(p);
        let p = path("mapper.dot");
        write_atomic(&p, graph.to_dot().as_bytes())?;
        out.push(p);
        let p = path("pca.txt");
        write_atomic(&p, pca_report(&projected, points.column_labels()).as_bytes())?;
        out.push(p);
        if cfg.html {
            let p = path("mapper.html");
            write_atomic(&p, graph.to_html(&projected, &format!("{} ({})", ds.name, ds.prefix)).as_bytes())?;
            out.push(p);
        }
        Ok(out)
    })?;
    Ok(written.into_iter().flatten().collect())
}

/// Distance distortion of the `lens_dim`-component projection, per dataset.
pub fn cmd_diagnose(cfg: &RunConfig) -> Result<Vec<(String, DistortionStats)>> {
    for_each_dataset(cfg, |ds, points| {
        if points.n_rows() < 2 {
            return Err(Error::NoPairs(points.n_rows()));
        }
        let projected = pca_fit_transform(points, cfg.lens_dim)?;
        let reduced = PointCloud::new(
            projected.coords().to_vec(),
            projected.n_components(),
            points.row_labels().to_vec(),
            (1..=projected.n_components()).map(|i| format!("PC{i}")).collect(),
        )?;
        let stats = distance_distortion_report(&points.pairwise_distances(), &reduced.pairwise_distances())?;
        Ok((ds.name.clone(), stats))
    })
}
