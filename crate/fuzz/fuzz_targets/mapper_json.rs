#![no_main]

use libfuzzer_sys::fuzz_target;
use tda_core::mapper::MapperGraph;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(graph) = MapperGraph::from_json(text) {
            let _ = graph.to_dot();
        }
    }
});
