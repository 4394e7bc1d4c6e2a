#![no_main]

use libfuzzer_sys::fuzz_target;
use strategy_templates::fixtures::six;
use strategy_templates::io::{emit_strategy, parse_strategy};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let (g, _) = six();
    if let Ok(s) = parse_strategy(&g, text) {
        assert_eq!(parse_strategy(&g, &emit_strategy(&g, &s)).unwrap(), s);
    }
});
