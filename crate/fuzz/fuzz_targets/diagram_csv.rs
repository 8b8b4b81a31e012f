#![no_main]

use libfuzzer_sys::fuzz_target;
use tda_core::PersistenceDiagram;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(diagram) = PersistenceDiagram::from_csv(text) {
            let again = PersistenceDiagram::from_csv(&diagram.to_csv()).expect("written diagram reparses");
            assert_eq!(again, diagram);
        }
    }
});
