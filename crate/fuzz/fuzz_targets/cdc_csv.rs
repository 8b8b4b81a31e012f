#![no_main]

use libfuzzer_sys::fuzz_target;
use tda_core::ingest::{partition_by_region, read_cdc_csv, RegionSpec, SchemaConfig};

fuzz_target!(|data: &[u8]| {
    let small = SchemaConfig {
        causes: vec!["All Cause".into(), "Natural Cause".into()],
        ..SchemaConfig::default()
    };
    for schema in [SchemaConfig::default(), small] {
        if let Ok(table) = read_cdc_csv(data, &schema) {
            let _ = partition_by_region(&table, &RegionSpec::builtin());
        }
    }
});
