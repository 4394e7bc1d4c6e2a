#![no_main]

use libfuzzer_sys::fuzz_target;
use strategy_templates::fixtures::six;
use strategy_templates::io::{parse_edge_list, parse_vertex_list};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let (g, _) = six();
    if let Ok(es) = parse_edge_list(&g, text) {
        assert!(es.iter().all(|e| g.has_edge(e.source, e.target)));
    }
    let _ = parse_vertex_list(&g, text);
});
