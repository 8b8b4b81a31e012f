//! Mapping from logical columns to CSV headers, and the CSV loader.

use std::collections::HashSet;
use std::fs::File;
use std::io::Read;
use std::path::Path;

use super::{MortalityRecord, MortalityTable};
use crate::error::{Error, Result};

/// An MMWR (year, week) pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct YearWeek {
    pub year: i32,
    pub week: u32,
}

impl YearWeek {
    pub fn new(year: i32, week: u32) -> Self {
        YearWeek { year, week }
    }

    /// Parses `YYYY-Www` (the `W` is optional).
    pub fn parse(s: &str) -> Option<Self> {
        let (year, week) = s.trim().split_once('-')?;
        let week = week.strip_prefix(['W', 'w']).unwrap_or(week);
        let week: u32 = week.parse().ok()?;
        (1..=53).contains(&week).then_some(YearWeek { year: year.parse().ok()?, week })
    }
}

impl std::fmt::Display for YearWeek {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:04}-W{:02}", self.year, self.week)
    }
}

/// Which CSV headers hold the year, week, jurisdiction and cause columns,
/// plus the inclusive week range to keep.
#[derive(Debug, Clone, PartialEq)]
pub struct SchemaConfig {
    pub year: String,
    pub week: String,
    pub jurisdiction: String,
    /// Cause-of-death headers, in output column order.
    pub causes: Vec<String>,
    pub start: YearWeek,
    pub end: YearWeek,
}

const CDC_CAUSES: [&str; 15] = [
    "All Cause",
    "Natural Cause",
    "Septicemia (A40-A41)",
    "Malignant neoplasms (C00-C97)",
    "Diabetes mellitus (E10-E14)",
    "Alzheimer disease (G30)",
    "Influenza and pneumonia (J09-J18)",
    "Chronic lower respiratory diseases (J40-J47)",
    "Other diseases of respiratory system (J00-J06,J30-J39,J67,J70-J98)",
    "Nephritis, nephrotic syndrome and nephrosis (N00-N07,N17-N19,N25-N27)",
    "Symptoms, signs and abnormal clinical and laboratory findings, not elsewhere classified (R00-R99)",
    "Diseases of heart (I00-I09,I11,I13,I20-I51)",
    "Cerebrovascular diseases (I60-I69)",
    "COVID-19 (U071, Multiple Cause of Death)",
    "COVID-19 (U071, Underlying Cause of Death)",
];

impl Default for SchemaConfig {
    /// The CDC "weekly provisional counts of deaths by state and select
    /// causes" layout, January 2020 through September 2023.
    fn default() -> Self {
        SchemaConfig {
            year: "MMWR Year".into(),
            week: "MMWR Week".into(),
            jurisdiction: "Jurisdiction of Occurrence".into(),
            causes: CDC_CAUSES.iter().map(|s| s.to_string()).collect(),
            start: YearWeek::new(2020, 1),
            end: YearWeek::new(2023, 39),
        }
    }
}

impl SchemaConfig {
    /// Parses `key = value` lines. Keys: `year`, `week`, `jurisdiction`,
    /// `cause` (repeatable, in order), `start`, `end`. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let defaults = SchemaConfig::default();
        let (mut year, mut week, mut jurisdiction) = (None, None, None);
        let mut causes = Vec::new();
        let (mut start, mut end) = (defaults.start, defaults.end);
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split_once('#').map_or(raw, |(before, _)| before).trim();
            if line.is_empty() {
                continue;
            }
            let syntax = |message: String| Error::Syntax { what: "schema config", line: i + 1, message };
            let (key, value) =
                line.split_once('=').ok_or_else(|| syntax("expected `key = value`".into()))?;
            let (key, value) = (key.trim().to_ascii_lowercase(), value.trim().to_string());
            if value.is_empty() {
                return Err(syntax(format!("empty value for {key:?}")));
            }
            let range = |v: &str| YearWeek::parse(v).ok_or_else(|| syntax(format!("bad week {v:?}, expected YYYY-Www")));
            match key.as_str() {
                "year" => year = Some(value),
                "week" => week = Some(value),
                "jurisdiction" => jurisdiction = Some(value),
                "cause" => causes.push(value),
                "start" => start = range(&value)?,
                "end" => end = range(&value)?,
                other => return Err(syntax(format!("unknown key {other:?}"))),
            }
        }
        let required = |v: Option<String>, name: &str| {
            v.ok_or_else(|| Error::Syntax { what: "schema config", line: 0, message: format!("missing `{name}`") })
        };
        let config = SchemaConfig {
            year: required(year, "year")?,
            week: required(week, "week")?,
            jurisdiction: required(jurisdiction, "jurisdiction")?,
            causes,
            start,
            end,
        };
        if config.causes.is_empty() {
            return Err(Error::Syntax { what: "schema config", line: 0, message: "no `cause` columns".into() });
        }
        if config.start > config.end {
            return Err(Error::Syntax {
                what: "schema config",
                line: 0,
                message: format!("start {} is after end {}", config.start, config.end),
            });
        }
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        SchemaConfig::parse(&text)
    }
}

fn normalized(s: &str) -> String {
    s.trim().to_lowercase()
}

fn parse_count(cell: &str) -> Option<u64> {
    cell.parse::<u64>().ok().or_else(|| {
        let v: f64 = cell.parse().ok()?;
        (v.is_finite() && v >= 0.0 && v.fract() == 0.0 && v <= u64::MAX as f64).then_some(v as u64)
    })
}

pub fn load_cdc_csv(path: &Path, schema: &SchemaConfig) -> Result<MortalityTable> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_cdc_csv(file, schema)
}

/// Reads a CDC-layout CSV. Blank count cells become 0 and are tallied in
/// [`MortalityTable::imputed`]; rows outside the schema's week range are
/// dropped.
pub fn read_cdc_csv<R: Read>(reader: R, schema: &SchemaConfig) -> Result<MortalityTable> {
    let mut rdr = csv::ReaderBuilder::new().flexible(true).from_reader(reader);
    let headers: Vec<String> = rdr.headers()?.iter().map(normalized).collect();
    let column = |name: &str| {
        headers
            .iter()
            .position(|h| *h == normalized(name))
            .ok_or_else(|| Error::MissingColumn(name.to_string()))
    };
    let year_col = column(&schema.year)?;
    let week_col = column(&schema.week)?;
    let juris_col = column(&schema.jurisdiction)?;
    let cause_cols: Vec<usize> = schema.causes.iter().map(|c| column(c)).collect::<Result<_>>()?;

    let mut table = MortalityTable::new(schema.causes.clone());
    let mut seen = HashSet::new();
    for record in rdr.records() {
        let record = record?;
        let row = record.position().map_or(0, |p| p.line() as usize);
        let cell = |col: usize| record.get(col).unwrap_or("").trim();
        let bad = |col: usize, name: &str| Error::BadCell {
            row,
            column: name.to_string(),
            value: cell(col).to_string(),
        };
        let year: i32 = cell(year_col).parse().map_err(|_| bad(year_col, &schema.year))?;
        let week: u32 = cell(week_col)
            .parse()
            .ok()
            .filter(|w| (1..=53).contains(w))
            .ok_or_else(|| bad(week_col, &schema.week))?;
        let jurisdiction = cell(juris_col).to_string();
        if jurisdiction.is_empty() {
            return Err(bad(juris_col, &schema.jurisdiction));
        }
        let stamp = YearWeek::new(year, week);
        if stamp < schema.start || stamp > schema.end {
            continue;
        }
        let mut counts = Vec::with_capacity(cause_cols.len());
        for (c, (&col, name)) in cause_cols.iter().zip(&schema.causes).enumerate() {
            let text = cell(col);
            if text.is_empty() {
                table.imputed[c] += 1;
                counts.push(0);
            } else {
                counts.push(parse_count(text).ok_or_else(|| bad(col, name))?);
            }
        }
        if !seen.insert((year, week, normalized(&jurisdiction))) {
            return Err(Error::DuplicateRecord { jurisdiction, year, week });
        }
        table.rows.push(MortalityRecord { year, week, jurisdiction, counts });
    }
    for (name, &count) in table.cause_names.iter().zip(&table.imputed) {
        if count > 0 {
            log::warn!("{count} blank {name:?} cells imputed as 0");
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn schema() -> SchemaConfig {
        SchemaConfig::parse(
            "year = Year\nweek = Week\njurisdiction = State\ncause = Total\ncause = COVID\nstart = 2020-W01\nend = 2023-W39\n",
        )
        .unwrap()
    }

    #[test]
    fn reads_well_formed_rows() {
        let csv = "State,Year,Week,Total,COVID\nTexas,2020,1,100,0\nTexas,2020,2,110,1\nVermont,2020,1,20,0\n";
        let t = read_cdc_csv(csv.as_bytes(), &schema()).unwrap();
        assert_eq!(t.rows.len(), 3);
        assert_eq!(t.rows[1].counts, [110, 1]);
        assert_eq!(t.imputed, [0, 0]);
    }

    #[test]
    fn blank_cells_are_imputed() {
        let csv = "State,Year,Week,Total,COVID\nTexas,2020,1,100,\n";
        let t = read_cdc_csv(csv.as_bytes(), &schema()).unwrap();
        assert_eq!(t.rows[0].counts, [100, 0]);
        assert_eq!(t.imputed, [0, 1]);
    }

    #[test]
    fn duplicate_key_is_an_error() {
        let csv = "State,Year,Week,Total,COVID\nTexas,2020,1,100,0\n texas ,2020,1,5,0\n";
        assert!(matches!(read_cdc_csv(csv.as_bytes(), &schema()), Err(Error::DuplicateRecord { .. })));
    }

    #[test]
    fn missing_column_is_named() {
        let err = read_cdc_csv("State,Year,Week,Total\n".as_bytes(), &schema()).unwrap_err();
        assert!(matches!(err, Error::MissingColumn(ref c) if c == "COVID"));
    }

    #[test]
    fn bad_number_reports_row() {
        let csv = "State,Year,Week,Total,COVID\nTexas,2020,1,100,0\nTexas,2020,2,lots,0\n";
        match read_cdc_csv(csv.as_bytes(), &schema()) {
            Err(Error::BadCell { row, column, .. }) => assert_eq!((row, column.as_str()), (3, "Total")),
            other => panic!("unexpected {other:?}"),
        }
        let csv = "State,Year,Week,Total,COVID\nTexas,2020,54,1,0\n";
        assert!(read_cdc_csv(csv.as_bytes(), &schema()).is_err());
    }

    #[test]
    fn drops_rows_outside_range_and_accepts_integral_floats() {
        let csv = "State,Year,Week,Total,COVID\nTexas,2019,52,1,0\nTexas,2023,40,1,0\nTexas,2021,5,12.0,3\n";
        let t = read_cdc_csv(csv.as_bytes(), &schema()).unwrap();
        assert_eq!(t.rows.len(), 1);
        assert_eq!(t.rows[0].counts, [12, 3]);
    }

    #[test]
    fn schema_parse_errors() {
        assert!(SchemaConfig::parse("year = Y\nweek = W\n").is_err());
        assert!(SchemaConfig::parse("year Y\n").is_err());
        assert!(SchemaConfig::parse("color = red\n").is_err());
        assert!(SchemaConfig::parse("year=Y\nweek=W\njurisdiction=J\ncause=C\nstart=2021-W01\nend=2020-W01\n").is_err());
        let s = SchemaConfig::parse("# comment\nyear=Y\nweek=W\njurisdiction=J\ncause=A, B # inline\n").unwrap();
        assert_eq!(s.causes, ["A, B"]);
    }

    #[test]
    fn default_schema_layout() {
        let s = SchemaConfig::default();
        assert_eq!(s.causes.len(), 15);
        // with year and week in front, position 16 is the underlying-cause COVID column
        assert!(s.causes[14].starts_with("COVID-19"));
        assert_eq!(YearWeek::parse("2023-W39"), Some(s.end));
        assert_eq!(YearWeek::parse("2020-54"), None);
    }
}
