#![no_main]

use libfuzzer_sys::fuzz_target;
use strategy_templates::io::{emit_game, parse_game};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(game) = parse_game(text) {
        let again = parse_game(&emit_game(&game)).expect("emitted games parse");
        assert_eq!(again.graph, game.graph);
    }
});
