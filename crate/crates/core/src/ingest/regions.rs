use std::collections::{BTreeSet, HashMap};
use std::path::Path;

use super::MortalityTable;
use crate::error::{Error, Result};

/// Named groups of jurisdictions, in display order.
///
/// Jurisdiction order inside a region fixes the row order of its tables.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionSpec {
    pub regions: Vec<(String, Vec<String>)>,
    /// Jurisdictions present in the data but deliberately left out.
    pub ignored: Vec<String>,
}

fn key(s: &str) -> String {
    s.trim().to_lowercase()
}

/// Lower-case, hyphen-separated form of a region name.
pub fn slug(name: &str) -> String {
    let mut out = String::new();
    for c in name.trim().chars() {
        if c.is_ascii_alphanumeric() {
            out.push(c.to_ascii_lowercase());
        } else if !out.ends_with('-') {
            out.push('-');
        }
    }
    out.trim_matches('-').to_string()
}

impl Default for RegionSpec {
    fn default() -> Self {
        RegionSpec::builtin()
    }
}

impl RegionSpec {
    /// Census-style grouping with the District of Columbia, Maryland and
    /// Delaware moved into the Northeast and New York City kept apart from
    /// New York State.
    pub fn builtin() -> Self {
        let group = |name: &str, states: &[&str]| {
            (name.to_string(), states.iter().map(|s| s.to_string()).collect::<Vec<_>>())
        };
        RegionSpec {
            regions: vec![
                group(
                    "West",
                    &["California", "Arizona", "New Mexico", "Nevada", "Utah", "Colorado", "Wyoming",
                      "Oregon", "Idaho", "Washington", "Montana"],
                ),
                group(
                    "Midwest",
                    &["Missouri", "Kansas", "Illinois", "Indiana", "Ohio", "Nebraska", "Iowa", "Michigan",
                      "South Dakota", "Wisconsin", "Minnesota", "North Dakota"],
                ),
                group(
                    "Northeast",
                    &["District of Columbia", "Maryland", "Delaware", "New Jersey", "Pennsylvania",
                      "New York City", "New York", "Connecticut", "Rhode Island", "Massachusetts",
                      "Vermont", "New Hampshire", "Maine"],
                ),
                group(
                    "South",
                    &["Texas", "Florida", "Louisiana", "Mississippi", "Alabama", "Georgia",
                      "South Carolina", "Arkansas", "Oklahoma", "Tennessee", "North Carolina",
                      "Kentucky", "Virginia", "West Virginia"],
                ),
                group("Non-Contiguous US", &["Alaska", "Hawaii", "Puerto Rico"]),
            ],
            ignored: vec!["United States".into()],
        }
    }

    /// Parses `Region: state, state, ...` lines. A line named `ignore` lists
    /// jurisdictions to skip. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut spec = RegionSpec { regions: Vec::new(), ignored: Vec::new() };
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split_once('#').map_or(raw, |(before, _)| before).trim();
            if line.is_empty() {
                continue;
            }
            let syntax = |message: String| Error::Syntax { what: "region spec", line: i + 1, message };
            let (name, members) =
                line.split_once(':').ok_or_else(|| syntax("expected `region: state, state, ...`".into()))?;
            let name = name.trim();
            let members: Vec<String> =
                members.split(',').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect();
            if name.is_empty() || slug(name).is_empty() {
                return Err(syntax("empty region name".into()));
            }
            if name.eq_ignore_ascii_case("ignore") {
                spec.ignored.extend(members);
                continue;
            }
            if members.is_empty() {
                return Err(syntax(format!("region {name:?} lists no jurisdictions")));
            }
            if spec.regions.iter().any(|(n, _)| slug(n) == slug(name)) {
                return Err(syntax(format!("region {name:?} defined twice")));
            }
            spec.regions.push((name.to_string(), members));
        }
        if spec.regions.is_empty() {
            return Err(Error::Syntax { what: "region spec", line: 0, message: "no regions".into() });
        }
        spec.validate()?;
        Ok(spec)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        RegionSpec::parse(&text)
    }

    fn validate(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for name in self.regions.iter().flat_map(|(_, m)| m).chain(&self.ignored) {
            if !seen.insert(key(name)) {
                return Err(Error::Syntax {
                    what: "region spec",
                    line: 0,
                    message: format!("{name:?} appears in more than one group"),
                });
            }
        }
        Ok(())
    }

    /// Looks a region up by name or slug, ignoring case.
    pub fn find(&self, name: &str) -> Option<&str> {
        self.regions
            .iter()
            .find(|(n, _)| n.eq_ignore_ascii_case(name.trim()) || slug(n) == slug(name))
            .map(|(n, _)| n.as_str())
    }

    /// Every jurisdiction that belongs to some region.
    pub fn members(&self) -> impl Iterator<Item = &str> {
        self.regions.iter().flat_map(|(_, m)| m.iter().map(String::as_str))
    }
}

/// Splits `table` by region. Inside each region rows follow the region file's
/// jurisdiction order, then year and week.
pub fn partition_by_region(table: &MortalityTable, spec: &RegionSpec) -> Result<Vec<(String, MortalityTable)>> {
    spec.validate()?;
    let mut placement: HashMap<String, (usize, usize)> = HashMap::new();
    for (r, (_, members)) in spec.regions.iter().enumerate() {
        for (pos, m) in members.iter().enumerate() {
            placement.insert(key(m), (r, pos));
        }
    }
    let ignored: BTreeSet<String> = spec.ignored.iter().map(|s| key(s)).collect();

    let mut unknown = BTreeSet::new();
    let mut buckets: Vec<Vec<(usize, &super::MortalityRecord)>> = vec![Vec::new(); spec.regions.len()];
    for row in &table.rows {
        let k = key(&row.jurisdiction);
        match placement.get(&k) {
            Some(&(r, pos)) => buckets[r].push((pos, row)),
            None if ignored.contains(&k) => {}
            None => {
                unknown.insert(row.jurisdiction.trim().to_string());
            }
        }
    }
    if !unknown.is_empty() {
        return Err(Error::UnknownJurisdictions(unknown.into_iter().collect()));
    }
    Ok(spec
        .regions
        .iter()
        .zip(buckets)
        .map(|((name, _), mut rows)| {
            rows.sort_by_key(|(pos, r)| (*pos, r.year, r.week));
            let mut part = MortalityTable::new(table.cause_names.clone());
            part.rows = rows.into_iter().map(|(_, r)| r.clone()).collect();
            (name.clone(), part)
        })
        .collect())
}
