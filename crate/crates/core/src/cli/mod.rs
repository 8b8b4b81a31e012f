//! Command-line front end: `barcode`, `mapper` and `diagnose`.

mod commands;
mod svg;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use commands::{cmd_barcode, cmd_diagnose, cmd_mapper, load_datasets, pca_report, Dataset};
pub use svg::render_barcode_svg;

use crate::error::Result;
use crate::ingest::DatasetVariant;
use crate::pointcloud::Normalization;

/// Which slice of the mortality table to analyse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RegionSelector {
    Region(String),
    WholeUs,
    /// Every region plus the national aggregate.
    All,
}

impl std::str::FromStr for RegionSelector {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(match s.trim().to_ascii_lowercase().as_str() {
            "all" => RegionSelector::All,
            "whole-us" | "wholeus" | "us" => RegionSelector::WholeUs,
            _ => RegionSelector::Region(s.trim().to_string()),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub input_path: PathBuf,
    pub region: RegionSelector,
    pub variant: DatasetVariant,
    /// Treat the input as a plain numeric CSV instead of a mortality table.
    pub raw_points: bool,
    pub schema_path: Option<PathBuf>,
    pub regions_path: Option<PathBuf>,
    pub max_edge_length: f64,
    pub max_dimension: usize,
    pub homology_dims: Vec<usize>,
    pub lens_dim: usize,
    /// PCA components DBSCAN sees; defaults to `lens_dim`.
    pub cluster_dim: Option<usize>,
    pub n_intervals: usize,
    pub overlap: f64,
    pub eps: f64,
    pub min_samples: usize,
    pub normalization: Normalization,
    pub output_dir: PathBuf,
    /// Right end of the barcode axis; defaults to `max_edge_length`.
    pub axis_max: Option<f64>,
    pub html: bool,
    pub dump_simplices: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            input_path: PathBuf::new(),
            region: RegionSelector::All,
            variant: DatasetVariant::WithDates,
            raw_points: false,
            schema_path: None,
            regions_path: None,
            max_edge_length: 2.0,
            max_dimension: 2,
            homology_dims: vec![0, 1],
            lens_dim: 2,
            cluster_dim: None,
            n_intervals: 20,
            overlap: 0.3,
            eps: 30.0,
            min_samples: 10,
            normalization: Normalization::ZScore,
            output_dir: PathBuf::from("."),
            axis_max: None,
            html: false,
            dump_simplices: false,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "tda", version, about = "Persistence barcodes and MAPPER graphs for weekly mortality tables")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Rips persistence: diagram CSV, merge-event CSV and barcode SVG.
    Barcode(CommonArgs),
    /// MAPPER graph: JSON, DOT, PCA report and optional HTML.
    Mapper(CommonArgs),
    /// Pairwise-distance distortion of the PCA projection.
    Diagnose(CommonArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum VariantArg {
    WithDates,
    NoDates,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum NormalizationArg {
    Zscore,
    Minmax,
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Mortality CSV, or a numeric CSV with --raw-points.
    #[arg(long)]
    input_path: PathBuf,
    /// Region name, `whole-us`, or `all`.
    #[arg(long, default_value = "all")]
    region: RegionSelector,
    #[arg(long, value_enum, default_value = "with-dates")]
    variant: VariantArg,
    /// Shorthand for `--variant no-dates`.
    #[arg(long, conflicts_with = "variant")]
    no_dates: bool,
    #[arg(long)]
    raw_points: bool,
    /// Column mapping file (`key = header` lines).
    #[arg(long)]
    schema: Option<PathBuf>,
    /// Region definition file (`region: state, state, ...` lines).
    #[arg(long)]
    regions: Option<PathBuf>,
    #[arg(long, default_value_t = 2.0)]
    max_edge_length: f64,
    #[arg(long, default_value_t = 2)]
    max_dimension: usize,
    #[arg(long, value_delimiter = ',', default_value = "0,1")]
    homology_dims: Vec<usize>,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=3))]
    lens_dim: u8,
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
    cluster_dim: Option<u8>,
    #[arg(long, default_value_t = 20)]
    n_intervals: usize,
    #[arg(long, default_value_t = 0.3)]
    overlap: f64,
    #[arg(long, default_value_t = 30.0)]
    eps: f64,
    #[arg(long, default_value_t = 10)]
    min_samples: usize,
    #[arg(long, value_enum, default_value = "zscore")]
    normalization: NormalizationArg,
    #[arg(long, env = "TDA_OUTPUT_DIR", default_value = ".")]
    output_dir: PathBuf,
    #[arg(long)]
    axis_max: Option<f64>,
    /// Also write a self-contained HTML page of the MAPPER graph.
    #[arg(long)]
    html: bool,
    /// Also write the filtered simplices, one per line.
    #[arg(long)]
    dump_simplices: bool,
}

impl From<CommonArgs> for RunConfig {
    fn from(a: CommonArgs) -> Self {
        RunConfig {
            input_path: a.input_path,
            region: a.region,
            variant: match (a.no_dates, a.variant) {
                (true, _) | (_, VariantArg::NoDates) => DatasetVariant::WithoutDates,
                _ => DatasetVariant::WithDates,
            },
            raw_points: a.raw_points,
            schema_path: a.schema,
            regions_path: a.regions,
            max_edge_length: a.max_edge_length,
            max_dimension: a.max_dimension,
            homology_dims: a.homology_dims,
            lens_dim: a.lens_dim as usize,
            cluster_dim: a.cluster_dim.map(usize::from),
            n_intervals: a.n_intervals,
            overlap: a.overlap,
            eps: a.eps,
            min_samples: a.min_samples,
            normalization: match a.normalization {
                NormalizationArg::Zscore => Normalization::ZScore,
                NormalizationArg::Minmax => Normalization::MinMax,
            },
            output_dir: a.output_dir,
            axis_max: a.axis_max,
            html: a.html,
            dump_simplices: a.dump_simplices,
        }
    }
}

/// Parses `args` (program name first) and runs the chosen command,
/// reporting written files on stdout.
pub fn run<I, T>(args: I) -> Result<()>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).unwrap_or_else(|e| e.exit());
    match cli.command {
        Command::Barcode(a) => {
            for path in cmd_barcode(&a.into())? {
                println!("{}", path.display());
            }
        }
        Command::Mapper(a) => {
            for path in cmd_mapper(&a.into())? {
                println!("{}", path.display());
            }
        }
        Command::Diagnose(a) => {
            for (name, s) in cmd_diagnose(&a.into())? {
                println!("{name}");
                println!("  original distances: min {:.6} max {:.6} mean {:.6}", s.min_original, s.max_original, s.mean_original);
                println!("  reduced distances:  min {:.6} max {:.6} mean {:.6}", s.min_reduced, s.max_reduced, s.mean_reduced);
                println!("  pearson correlation: {:.6}", s.pearson_correlation);
            }
        }
    }
    Ok(())
}
