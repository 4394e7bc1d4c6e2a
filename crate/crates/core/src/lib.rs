//! Strategy templates for two-player games on graphs.
//!
//! A template marks some edges unsafe or co-live and bundles others into
//! live groups. Together these constraints describe a whole family of
//! winning strategies. Templates are computed per objective, from safety up
//! to parity, and composed for conjunctions of parity objectives. A template
//! can be adapted to faulty edges before a strategy is extracted from it.

pub mod compose;
pub mod error;
pub mod fault;
pub mod fixtures;
pub mod graph;
pub mod io;
pub mod oracle;
mod scc;
pub mod solvers;
pub mod strategy;
pub mod template;
pub mod transformers;

pub use io::generate;

pub use compose::{add_objective, compose_templates, relabel, ComposeState};
pub use error::{GraphError, OracleError, ParseError, SolveError, StrategyError};
pub use fault::{fault_correction, gaf_tolerant, simulate_fault_conflicts, OnlineStrategy};
pub use graph::{
    edges_between, restrict, Edge, EdgeSet, GameGraph, GameGraphBuilder, Player, PriorityFunction,
    VertexId, VertexMap, VertexSet,
};
pub use solvers::{
    buchi_template, buchi_win, cobuchi_template, cobuchi_win, parity_template, reach_template,
    safety_template, safety_win, SolveResult,
};
pub use strategy::{extract_strategy, verify_strategy, Lasso, ProductVerdict, Strategy};
pub use template::{conjoin, find_conflicts, ConflictReport, LiveGroup, StrategyTemplate};
