#![no_main]

use libfuzzer_sys::fuzz_target;
use strategy_templates::fixtures::six;
use strategy_templates::io::{emit_template, parse_template};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let (g, _) = six();
    if let Ok(t) = parse_template(&g, text) {
        assert_eq!(parse_template(&g, &emit_template(&g, &t)).unwrap(), t);
    }
});
