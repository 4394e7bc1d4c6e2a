//! File formats and the random game generator.

pub mod format;
pub mod generate;
pub mod template_text;

pub use format::{emit_game, parse_game, GenParityGame};
pub use template_text::{
    emit_strategy, emit_template, parse_edge_list, parse_strategy, parse_template,
    parse_vertex_list,
};
