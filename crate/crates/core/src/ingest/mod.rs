//! Weekly mortality tables: loading, regional partitions, the national
//! aggregate and conversion to point clouds.

mod regions;
mod schema;

use std::collections::BTreeMap;

pub use regions::{partition_by_region, slug, RegionSpec};
pub use schema::{load_cdc_csv, read_cdc_csv, SchemaConfig, YearWeek};

use crate::error::{Error, Result};
use crate::pointcloud::PointCloud;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MortalityRecord {
    pub year: i32,
    pub week: u32,
    pub jurisdiction: String,
    /// One count per entry of [`MortalityTable::cause_names`].
    pub counts: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MortalityTable {
    pub cause_names: Vec<String>,
    pub rows: Vec<MortalityRecord>,
    /// Blank cells replaced by 0, per cause.
    pub imputed: Vec<usize>,
}

/// Whether the year and week columns are part of the point cloud.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DatasetVariant {
    WithDates,
    WithoutDates,
}

impl DatasetVariant {
    /// Token used in output file names.
    pub fn tag(self) -> &'static str {
        match self {
            DatasetVariant::WithDates => "dates",
            DatasetVariant::WithoutDates => "nodates",
        }
    }
}

impl MortalityTable {
    pub fn new(cause_names: Vec<String>) -> Self {
        let imputed = vec![0; cause_names.len()];
        MortalityTable { cause_names, rows: Vec::new(), imputed }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Total of one cause over all rows.
    pub fn cause_total(&self, cause: usize) -> u64 {
        self.rows.iter().map(|r| r.counts[cause]).sum()
    }

    /// Rows as points: `[year, week, causes...]` with dates, `[causes...]`
    /// without. Rows are labelled `Jurisdiction YYYY-Www`.
    pub fn to_point_cloud(&self, variant: DatasetVariant) -> Result<PointCloud> {
        if self.rows.is_empty() {
            return Err(Error::InvalidPointCloud("mortality table has no rows".into()));
        }
        let with_dates = variant == DatasetVariant::WithDates;
        let mut columns: Vec<String> = Vec::new();
        if with_dates {
            columns.extend(["year".to_string(), "week".to_string()]);
        }
        columns.extend(self.cause_names.iter().cloned());
        let mut values = Vec::with_capacity(self.rows.len() * columns.len());
        let mut labels = Vec::with_capacity(self.rows.len());
        for r in &self.rows {
            if with_dates {
                values.extend([r.year as f64, r.week as f64]);
            }
            values.extend(r.counts.iter().map(|&c| c as f64));
            labels.push(format!("{} {}", r.jurisdiction, YearWeek::new(r.year, r.week)));
        }
        PointCloud::new(values, columns.len(), labels, columns)
    }
}

/// Sums every cause over jurisdictions, one row per week, labelled `US`.
pub fn aggregate_whole_us(table: &MortalityTable) -> MortalityTable {
    let mut weeks: BTreeMap<(i32, u32), Vec<u64>> = BTreeMap::new();
    for r in &table.rows {
        let sums = weeks.entry((r.year, r.week)).or_insert_with(|| vec![0; table.cause_names.len()]);
        for (s, c) in sums.iter_mut().zip(&r.counts) {
            *s += c;
        }
    }
    MortalityTable {
        cause_names: table.cause_names.clone(),
        rows: weeks
            .into_iter()
            .map(|((year, week), counts)| MortalityRecord { year, week, jurisdiction: "US".into(), counts })
            .collect(),
        imputed: table.imputed.clone(),
    }
}
