use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use strategy_templates::compose::compose_templates_with;
use strategy_templates::fault::{fault_benchmark, stats_csv, BenchConfig};
use strategy_templates::io::generate::{generate, GeneratorConfig};
use strategy_templates::io::template_text::Labels;
use strategy_templates::io::{
    emit_game, emit_strategy, emit_template, parse_edge_list, parse_game, parse_strategy,
    parse_template, parse_vertex_list, GenParityGame,
};
use strategy_templates::oracle::{brute_force_gen_parity_region, zielonka_regions};
use strategy_templates::{
    add_objective, extract_strategy, fault_correction, gaf_tolerant, parity_template,
    verify_strategy, ComposeState, GameGraph, OracleError, ParseError, Player, PriorityFunction,
    SolveError, StrategyError, StrategyTemplate, VertexSet,
};
use thiserror::Error;

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}:{source}")]
    Parse { path: String, source: ParseError },
    #[error("{0}")]
    Conflict(String),
    #[error("{0}")]
    Verify(String),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Strategy(#[from] StrategyError),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse { .. } => 2,
            CliError::Conflict(_) | CliError::Strategy(StrategyError::Conflict(_)) => 3,
            CliError::Verify(_) => 4,
            CliError::Oracle(_) | CliError::Strategy(StrategyError::ProductTooLarge(_)) => 5,
            _ => 1,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

/// Permissive strategy templates for parity and generalized parity games.
#[derive(Parser)]
#[command(name = "stemp", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Write the result here instead of standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one objective and print its winning region and template.
    Solve {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        objective: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Compose templates for all objectives of a game.
    Compose {
        file: PathBuf,
        #[arg(long, conflicts_with = "incremental")]
        one_shot: bool,
        /// Add objectives one at a time and report each step.
        #[arg(long)]
        incremental: bool,
        /// Objectives solved in parallel per round.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Extract a strategy from a template.
    Extract {
        file: PathBuf,
        #[arg(long)]
        template: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Check that a strategy wins every objective. Exits 0 only if it does.
    Verify {
        file: PathBuf,
        #[arg(
            long,
            conflicts_with = "strategy",
            required_unless_present = "strategy"
        )]
        template: Option<PathBuf>,
        #[arg(long)]
        strategy: Option<PathBuf>,
        /// Comma-separated start vertices.
        #[arg(long)]
        from: Option<String>,
        /// Check only this objective instead of all of them.
        #[arg(long)]
        objective: Option<usize>,
    },
    /// Adapt a template to faulty Player-0 edges.
    Fault {
        file: PathBuf,
        #[arg(long)]
        template: PathBuf,
        /// Edges such as "(u,v),(u,w)".
        #[arg(long)]
        faulty: String,
        /// Only check tolerance of faults that recur infinitely often.
        #[arg(long)]
        gaf: bool,
        #[arg(long, default_value_t = 0)]
        objective: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Generate a random game.
    Gen {
        #[arg(long, required_unless_present = "base")]
        vertices: Option<usize>,
        #[arg(long, required_unless_present = "base")]
        edges: Option<usize>,
        #[arg(long, default_value_t = 1)]
        objectives: usize,
        #[arg(long)]
        max_priority: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Draw priorities on the graph of this game.
        #[arg(long)]
        base: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Winning regions from the reference solvers.
    Oracle { file: PathBuf },
    /// Benchmarks on random games.
    #[command(subcommand)]
    Bench(Bench),
}

#[derive(Subcommand)]
enum Bench {
    /// Conflict rates of templates under random faulty edges, as CSV.
    Fault {
        /// Fault fractions, comma-separated.
        #[arg(long, value_delimiter = ',', required = true)]
        fraction: Vec<f64>,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 50)]
        games: usize,
        #[arg(long, default_value_t = 200)]
        vertices: usize,
        #[arg(long, default_value_t = 800)]
        edges: usize,
        #[arg(long, default_value_t = 4)]
        max_priority: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn parse_error(path: impl Into<String>) -> impl FnOnce(ParseError) -> CliError {
    let path = path.into();
    move |source| CliError::Parse { path, source }
}

fn read_game(path: &Path) -> Result<GenParityGame> {
    parse_game(&read(path)?).map_err(parse_error(path.display().to_string()))
}

fn read_template(g: &GameGraph, path: &Path) -> Result<StrategyTemplate> {
    parse_template(g, &read(path)?).map_err(parse_error(path.display().to_string()))
}

fn objective(game: &GenParityGame, i: usize) -> Result<&PriorityFunction> {
    game.objectives.get(i).ok_or_else(|| {
        CliError::Usage(format!(
            "objective {i} out of range, the game has {}",
            game.objective_count()
        ))
    })
}

fn write(out: &Output, text: &str) -> Result<()> {
    match &out.output {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn show_set(g: &GameGraph, set: &VertexSet) -> String {
    let labels = Labels::new(g);
    let names: Vec<String> = set.iter().map(|v| labels.show(v)).collect();
    format!("{{{}}}", names.join(", "))
}

const INCOMPLETE_NOTE: &str =
    "note: the composed region is empty, but the game may still be winning; \
template composition is incomplete (see README, section \"Incompleteness\"); \
`stemp oracle` computes exact regions for small games";

fn run(command: Command) -> Result<()> {
    match command {
        Command::Solve {
            file,
            objective: i,
            out,
        } => {
            let game = read_game(&file)?;
            let g = &game.graph;
            let r = parity_template(g, objective(&game, i)?)?;
            println!("W0: {}", show_set(g, &r.region0));
            write(&out, &emit_template(g, &r.template))
        }
        Command::Compose {
            file,
            incremental,
            jobs,
            out,
            ..
        } => {
            let game = read_game(&file)?;
            let g = &game.graph;
            let start = Instant::now();
            let (state, template) = if incremental {
                let mut state = ComposeState::new(g);
                let mut template = StrategyTemplate::trivial(g);
                for (i, p) in game.objectives.iter().enumerate() {
                    (state, template) = add_objective(g, state, p)?;
                    println!(
                        "step {}: W0 = {} ({} vertices), {:.3} ms",
                        i + 1,
                        show_set(g, &state.region),
                        state.region.len(),
                        start.elapsed().as_secs_f64() * 1e3
                    );
                }
                (state, template)
            } else {
                compose_templates_with(g, ComposeState::new(g), &game.objectives, jobs)?
            };
            println!("W0: {}", show_set(g, &state.region));
            if state.region.is_empty() && g.vertex_count() > 0 {
                eprintln!("{INCOMPLETE_NOTE}");
            }
            write(&out, &emit_template(g, &template))
        }
        Command::Extract {
            file,
            template,
            out,
        } => {
            let game = read_game(&file)?;
            let t = read_template(&game.graph, &template)?;
            let s = extract_strategy(&game.graph, &t)?;
            write(&out, &emit_strategy(&game.graph, &s))
        }
        Command::Verify {
            file,
            template,
            strategy,
            from,
            objective: only,
        } => {
            let game = read_game(&file)?;
            let g = &game.graph;
            let (s, default_from) = match (template, strategy) {
                (Some(path), _) => {
                    let t = read_template(g, &path)?;
                    (extract_strategy(g, &t)?, t.region)
                }
                (None, Some(path)) => {
                    let s = parse_strategy(g, &read(&path)?)
                        .map_err(parse_error(path.display().to_string()))?;
                    let defined = defined_region(g, &s);
                    (s, defined)
                }
                (None, None) => unreachable!("clap requires one of --template and --strategy"),
            };
            let from = match from {
                Some(list) => parse_vertex_list(g, &list).map_err(parse_error("--from"))?,
                None => default_from,
            };
            let objectives = match only {
                Some(i) => vec![objective(&game, i)?.clone()],
                None => game.objectives.clone(),
            };
            let verdict = verify_strategy(g, &s, &objectives, &from)?;
            println!("winning from: {}", show_set(g, &verdict.winning_from));
            if from.is_subset(&verdict.winning_from) {
                println!("verified");
                return Ok(());
            }
            let mut msg = format!(
                "losing from {}",
                show_set(g, &from.difference(&verdict.winning_from))
            );
            if let Some(lasso) = verdict.counterexample {
                let labels = Labels::new(g);
                let path = |vs: &[strategy_templates::VertexId]| {
                    vs.iter()
                        .map(|&v| labels.show(v))
                        .collect::<Vec<_>>()
                        .join(" ")
                };
                write!(
                    msg,
                    "; objective {} violated by prefix [{}] then cycle [{}] forever",
                    lasso.objective,
                    path(&lasso.prefix),
                    path(&lasso.cycle)
                )
                .unwrap();
            }
            Err(CliError::Verify(msg))
        }
        Command::Fault {
            file,
            template,
            faulty,
            gaf,
            objective: i,
            out,
        } => {
            let game = read_game(&file)?;
            let g = &game.graph;
            let t = read_template(g, &template)?;
            let f = parse_edge_list(g, &faulty).map_err(parse_error("--faulty"))?;
            if gaf {
                let report = gaf_tolerant(g, &t, &f);
                if report.tolerant {
                    println!("tolerant");
                    return Ok(());
                }
                return Err(CliError::Conflict(format!(
                    "not tolerant at {}",
                    show_set(g, &report.offending)
                )));
            }
            let fixed = fault_correction(g, objective(&game, i)?, &t, &f)?;
            if fixed.recomputed {
                println!("recomputed on the game without the faulty edges");
            } else {
                println!("template kept, faulty edges marked unsafe");
            }
            println!("W0: {}", show_set(g, &fixed.template.region));
            write(&out, &emit_template(g, &fixed.template))
        }
        Command::Gen {
            vertices,
            edges,
            objectives,
            max_priority,
            seed,
            base,
            out,
        } => {
            if objectives == 0 || max_priority == 0 {
                return Err(CliError::Usage(
                    "--objectives and --max-priority must be at least 1".into(),
                ));
            }
            let base = base.map(|p| read_game(&p)).transpose()?.map(|g| g.graph);
            let game = generate(&GeneratorConfig {
                base,
                vertices: vertices.unwrap_or(0),
                edges: edges.unwrap_or(0),
                objectives,
                max_priority,
                seed,
            });
            write(&out, &emit_game(&game))
        }
        Command::Oracle { file } => {
            let game = read_game(&file)?;
            let g = &game.graph;
            if let [p] = game.objectives.as_slice() {
                let r = zielonka_regions(g, p);
                println!("W0: {}", show_set(g, &r.region0));
                println!("W1: {}", show_set(g, &r.region1));
            } else {
                let w0 = brute_force_gen_parity_region(g, &game.objectives)?;
                println!("W0: {}", show_set(g, &w0));
                println!("W1: {}", show_set(g, &w0.complement()));
            }
            Ok(())
        }
        Command::Bench(Bench::Fault {
            fraction,
            trials,
            games,
            vertices,
            edges,
            max_priority,
            seed,
            out,
        }) => {
            if let Some(f) = fraction.iter().find(|f| !(0.0..=1.0).contains(*f)) {
                return Err(CliError::Usage(format!(
                    "fault fraction {f} is not in [0, 1]"
                )));
            }
            if max_priority == 0 {
                return Err(CliError::Usage("--max-priority must be at least 1".into()));
            }
            let rows = fault_benchmark(&BenchConfig {
                games,
                vertices,
                edges,
                max_priority,
                fractions: fraction,
                trials,
                seed,
            })?;
            write(&out, &stats_csv(&rows))
        }
    }
}

/// Vertices from which every play consistent with `s` only meets Player-0
/// vertices that have moves.
fn defined_region(g: &GameGraph, s: &strategy_templates::Strategy) -> VertexSet {
    let mut region = g.full_set();
    loop {
        let drop: Vec<_> = region
            .iter()
            .filter(|&v| match g.owner(v) {
                Player::Zero => {
                    s.moves(v).is_empty() || s.moves(v).iter().any(|&w| !region.contains(w))
                }
                Player::One => g.successors(v).iter().any(|&w| !region.contains(w)),
            })
            .collect();
        if drop.is_empty() {
            return region;
        }
        for v in drop {
            region.remove(v);
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
