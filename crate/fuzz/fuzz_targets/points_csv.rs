#![no_main]

use libfuzzer_sys::fuzz_target;
use tda_core::pointcloud::{Normalization, PointCloud};

fuzz_target!(|data: &[u8]| {
    if let Ok(pc) = PointCloud::from_csv_reader(data) {
        if pc.n_rows() <= 64 {
            let z = pc.normalize_columns(Normalization::ZScore);
            assert!(z.values().iter().all(|v| v.is_finite()));
            let _ = pc.pairwise_distances();
        }
    }
});
