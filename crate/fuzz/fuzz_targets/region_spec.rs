#![no_main]

use libfuzzer_sys::fuzz_target;
use tda_core::ingest::RegionSpec;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(spec) = RegionSpec::parse(text) {
            for (name, _) in &spec.regions {
                assert!(spec.find(name).is_some());
            }
        }
    }
});
