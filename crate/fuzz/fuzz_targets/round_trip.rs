#![no_main]

use libfuzzer_sys::fuzz_target;
use strategy_templates::io::generate::{generate, GeneratorConfig};
use strategy_templates::io::{
    emit_game, emit_strategy, emit_template, parse_game, parse_strategy, parse_template,
};
use strategy_templates::{extract_strategy, parity_template};

// Bytes pick a generated game; every text form of it must read back.
fuzz_target!(|data: (u8, u8, u8, u8, u64)| {
    let (n, density, k, max, seed) = data;
    let vertices = usize::from(n % 40) + 1;
    let game = generate(&GeneratorConfig {
        base: None,
        vertices,
        edges: vertices * (usize::from(density % 4) + 1),
        objectives: usize::from(k % 3) + 1,
        max_priority: u32::from(max % 6) + 1,
        seed,
    });
    let text = emit_game(&game);
    let back = parse_game(&text).unwrap();
    assert_eq!(back.graph, game.graph);
    assert_eq!(emit_game(&back), text);
    let g = &game.graph;
    let t = parity_template(g, &game.objectives[0]).unwrap().template;
    assert_eq!(parse_template(g, &emit_template(g, &t)).unwrap(), t);
    let s = extract_strategy(g, &t).unwrap();
    assert_eq!(parse_strategy(g, &emit_strategy(g, &s)).unwrap(), s);
});
