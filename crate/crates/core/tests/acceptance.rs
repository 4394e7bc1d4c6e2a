//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;
use strategy_templates::fault::{
    check_online_periodic, delete_edges, fault_benchmark, stats_csv, BenchConfig, PeriodicTrace,
};
use strategy_templates::fixtures::{eight, six, six_parity};
use strategy_templates::io::generate::{generate, GeneratorConfig};
use strategy_templates::oracle::{
    brute_force_gen_parity_region, enumerate_winning_positional, zielonka_regions, Objective,
    PositionalStrategy,
};
use strategy_templates::*;

const GOLDEN_BUDGET: Duration = Duration::from_millis(1);
const GOLDEN_RUNS: usize = 20;
const REGION_GAMES: usize = 1000;
const REGION_BUDGET: Duration = Duration::from_secs(60);
const SOUNDNESS_GAMES: usize = 300;
const SAMPLES_PER_TEMPLATE: usize = 50;
const SAFETY_GAMES: usize = 100;
const GEN_PARITY_GAMES: usize = 200;
const FAULT_GAMES: usize = 200;
const FAULT_FRACTION: f64 = 0.10;
const LARGE_VERTICES: usize = 100_000;
const LARGE_EDGES: usize = 400_000;
const LARGE_MAX_PRIORITY: u32 = 4;
const LARGE_SOLVE_BUDGET: Duration = Duration::from_secs(10);
const LARGE_EXTRACT_BUDGET: Duration = Duration::from_millis(200);
const BENCH_GAMES: usize = 50;
const BENCH_FRACTIONS: [f64; 4] = [0.05, 0.10, 0.20, 0.30];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

fn edges(list: &[(VertexId, VertexId)]) -> EdgeSet {
    list.iter().map(|&(s, t)| Edge::new(s, t)).collect()
}

/// Fastest of several runs of `f`, with the last result.
fn fastest<T>(mut f: impl FnMut() -> T) -> (T, Duration) {
    let mut best = Duration::MAX;
    let mut out = None;
    for _ in 0..GOLDEN_RUNS {
        let start = Instant::now();
        let r = f();
        best = best.min(start.elapsed());
        out = Some(r);
    }
    (out.expect("at least one run"), best)
}

fn six_goldens() -> Outcome {
    let (g, v) = six();
    let mut not_f = g.full_set();
    not_f.remove(v.f);

    let (safety, t1) = fastest(|| safety_template(&g, &not_f));
    ensure!(
        safety.region0 == g.set_of([v.a, v.b, v.c, v.d]),
        "safety region {:?}",
        safety.region0
    );
    ensure!(
        safety.template.unsafe_edges == edges(&[(v.d, v.e)]),
        "safety S {:?}",
        safety.template.unsafe_edges
    );
    ensure!(
        safety.template.colive.is_empty() && safety.template.live_groups.is_empty(),
        "safety extras"
    );

    let (buchi, t2) = fastest(|| buchi_template(&g, &g.set_of([v.c, v.d])).unwrap());
    ensure!(
        buchi.region0 == g.full_set(),
        "buchi region {:?}",
        buchi.region0
    );
    let expected = LiveGroup::new(&g, [Edge::new(v.a, v.c), Edge::new(v.a, v.d)]).unwrap();
    ensure!(
        buchi.template.live_groups == vec![expected],
        "buchi H {:?}",
        buchi.template.live_groups
    );
    ensure!(
        buchi.template.unsafe_edges.is_empty() && buchi.template.colive.is_empty(),
        "buchi extras"
    );

    let (cobuchi, t3) = fastest(|| cobuchi_template(&g, &g.set_of([v.a, v.c, v.d])));
    ensure!(
        cobuchi.region0 == g.full_set(),
        "co-buchi region {:?}",
        cobuchi.region0
    );
    let d = edges(&[(v.a, v.b), (v.d, v.b), (v.d, v.e)]);
    ensure!(
        cobuchi.template.colive == d,
        "co-buchi D {:?}",
        cobuchi.template.colive
    );
    ensure!(
        cobuchi.template.unsafe_edges.is_empty() && cobuchi.template.live_groups.is_empty(),
        "co-buchi extras"
    );

    for (name, t) in [("safety", t1), ("buchi", t2), ("co-buchi", t3)] {
        ensure!(t < GOLDEN_BUDGET, "{name} took {t:?}");
    }
    Ok(format!("times {t1:?} {t2:?} {t3:?}"))
}

fn eight_golden() -> Outcome {
    let (g, p, v) = eight();
    let (r, t) = fastest(|| parity_template(&g, &p).unwrap());
    ensure!(r.region0 == g.full_set(), "region {:?}", r.region0);
    ensure!(
        r.template.colive == edges(&[(v.b, v.c)]),
        "D {:?}",
        r.template.colive
    );
    ensure!(
        r.template.unsafe_edges.is_empty(),
        "S {:?}",
        r.template.unsafe_edges
    );
    let pinned: Vec<LiveGroup> = [(v.g, v.f), (v.a, v.b), (v.h, v.d)]
        .iter()
        .map(|&(s, t)| LiveGroup::new(&g, [Edge::new(s, t)]).unwrap())
        .collect();
    ensure!(
        r.template.live_groups == pinned,
        "H {:?}",
        r.template.live_groups
    );
    ensure!(t < GOLDEN_BUDGET, "took {t:?}");
    Ok(format!("time {t:?}"))
}

fn region_equivalence() -> Outcome {
    let mut rng = common::rng(3);
    let start = Instant::now();
    for i in 0..REGION_GAMES {
        let g = common::graph(&mut rng, 1, 50, 4);
        let p = common::priorities(&mut rng, &g, 6);
        let r = parity_template(&g, &p).map_err(|e| e.to_string())?;
        let z = zielonka_regions(&g, &p);
        ensure!(
            r.region0 == z.region0 && r.region1 == z.region1,
            "game {i}: regions differ"
        );
        ensure!(r.template.is_conflict_free(&g), "game {i}: conflict");
    }
    let t = start.elapsed();
    ensure!(t < REGION_BUDGET, "took {t:?}");
    Ok(format!("{REGION_GAMES} games in {t:?}"))
}

/// Template and objective of the `i`th soundness instance.
fn soundness_instance(
    rng: &mut rand_chacha::ChaCha8Rng,
    i: usize,
) -> (GameGraph, PriorityFunction, SolveResult) {
    let g = common::graph(rng, 1, 10, 3);
    match i % 3 {
        0 => {
            let goal = common::subset(rng, &g, 0.3);
            let r = buchi_template(&g, &goal).expect("buchi");
            (g, PriorityFunction::buchi(&goal), r)
        }
        1 => {
            let stay = common::subset(rng, &g, 0.7);
            let r = cobuchi_template(&g, &stay);
            (g, PriorityFunction::cobuchi(&stay), r)
        }
        _ => {
            let p = common::priorities(rng, &g, 4);
            let r = parity_template(&g, &p).expect("parity");
            (g, p, r)
        }
    }
}

fn template_soundness() -> Outcome {
    let mut rng = common::rng(4);
    let mut checked = 0;
    for i in 0..SOUNDNESS_GAMES {
        let (g, p, r) = soundness_instance(&mut rng, i);
        let t = &r.template;
        let s = extract_strategy(&g, t).map_err(|e| format!("game {i}: {e}"))?;
        let verdict = verify_strategy(&g, &s, std::slice::from_ref(&p), &t.region)
            .map_err(|e| e.to_string())?;
        ensure!(
            verdict.winning_from == t.region,
            "game {i}: extracted strategy loses: {:?}",
            verdict.counterexample
        );
        for j in 0..SAMPLES_PER_TEMPLATE {
            let s = common::sample_compliant(&mut rng, &g, t);
            let verdict = verify_strategy(&g, &s, std::slice::from_ref(&p), &t.region)
                .map_err(|e| e.to_string())?;
            ensure!(
                verdict.is_winning(),
                "game {i} sample {j}: {:?}",
                verdict.counterexample
            );
            checked += 1;
        }
    }
    Ok(format!(
        "{SOUNDNESS_GAMES} templates, {checked} sampled strategies"
    ))
}

fn conflict_freeness() -> Outcome {
    let mut rng = common::rng(3);
    for i in 0..REGION_GAMES {
        let g = common::graph(&mut rng, 1, 50, 4);
        let p = common::priorities(&mut rng, &g, 6);
        let r = parity_template(&g, &p).map_err(|e| e.to_string())?;
        ensure!(
            find_conflicts(&g, &r.template).is_empty(),
            "region game {i}"
        );
    }
    let mut rng = common::rng(4);
    for i in 0..SOUNDNESS_GAMES {
        let (g, _, r) = soundness_instance(&mut rng, i);
        ensure!(
            find_conflicts(&g, &r.template).is_empty(),
            "soundness game {i}"
        );
        for _ in 0..SAMPLES_PER_TEMPLATE {
            common::sample_compliant(&mut rng, &g, &r.template);
        }
    }
    Ok(format!("{} templates", REGION_GAMES + SOUNDNESS_GAMES))
}

/// Every positional Player-0 strategy of `g`.
fn all_positional(g: &GameGraph) -> Vec<PositionalStrategy> {
    let mut out: Vec<PositionalStrategy> = vec![vec![None; g.vertex_count()]];
    for v in g.vertices() {
        if g.owner(v) != Player::Zero {
            continue;
        }
        out = out
            .into_iter()
            .flat_map(|s| {
                g.successors(v).iter().map(move |&w| {
                    let mut s = s.clone();
                    s[v.index()] = Some(w);
                    s
                })
            })
            .collect();
    }
    out
}

fn safety_permissiveness() -> Outcome {
    let mut rng = common::rng(6);
    let mut total = 0;
    for i in 0..SAFETY_GAMES {
        let g = common::graph(&mut rng, 1, 7, 3);
        let safe = common::subset(&mut rng, &g, 0.7);
        let r = safety_template(&g, &safe);
        let (region, mut winning) =
            enumerate_winning_positional(&g, &Objective::Safety(safe.clone()))
                .map_err(|e| e.to_string())?;
        ensure!(region == r.region0, "game {i}: region differs");
        let mut avoiding: Vec<PositionalStrategy> = all_positional(&g)
            .into_iter()
            .filter(|s| {
                r.region0.iter().all(|v| match s[v.index()] {
                    Some(w) => !r.template.unsafe_edges.contains(&Edge::new(v, w)),
                    None => true,
                })
            })
            .collect();
        winning.sort();
        avoiding.sort();
        ensure!(
            winning == avoiding,
            "game {i}: {} winning vs {} avoiding S",
            winning.len(),
            avoiding.len()
        );
        total += winning.len();
    }
    Ok(format!("{SAFETY_GAMES} games, {total} strategies"))
}

fn gen_parity_instances() -> Vec<(GameGraph, Vec<PriorityFunction>)> {
    let mut rng = common::rng(7);
    (0..GEN_PARITY_GAMES)
        .map(|_| {
            let g = common::graph(&mut rng, 1, 8, 3);
            let k = rng.gen_range(1..=3);
            let objectives = (0..k)
                .map(|_| common::priorities(&mut rng, &g, 2))
                .collect();
            (g, objectives)
        })
        .collect()
}

fn compose_soundness() -> Outcome {
    let mut incomplete = 0;
    for (i, (g, objectives)) in gen_parity_instances().iter().enumerate() {
        let (state, t) =
            compose_templates(g, ComposeState::new(g), objectives).map_err(|e| e.to_string())?;
        let oracle = brute_force_gen_parity_region(g, objectives).map_err(|e| e.to_string())?;
        ensure!(
            state.region.is_subset(&oracle),
            "game {i}: region not contained in the oracle region"
        );
        if state.region != oracle {
            incomplete += 1;
        }
        ensure!(t.is_conflict_free(g), "game {i}: conflict");
        let s = extract_strategy(g, &t).map_err(|e| format!("game {i}: {e}"))?;
        let verdict = verify_strategy(g, &s, objectives, &t.region).map_err(|e| e.to_string())?;
        ensure!(
            verdict.is_winning(),
            "game {i}: {:?}",
            verdict.counterexample
        );
    }
    Ok(format!("{GEN_PARITY_GAMES} games, {incomplete} incomplete"))
}

fn documented_incompleteness() -> Outcome {
    let (g, v) = six();
    let avoid_b = PriorityFunction::cobuchi(&g.set_of([v.a, v.c, v.d, v.e, v.f]));
    let objectives = [avoid_b, six_parity()];
    let (state, _) =
        compose_templates(&g, ComposeState::new(&g), &objectives).map_err(|e| e.to_string())?;
    ensure!(state.region.is_empty(), "compose region {:?}", state.region);
    let oracle = brute_force_gen_parity_region(&g, &objectives).map_err(|e| e.to_string())?;
    ensure!(oracle == g.full_set(), "oracle region {:?}", oracle);
    Ok("compose 0 vertices, oracle 6".into())
}

fn incremental_consistency() -> Outcome {
    for (i, (g, objectives)) in gen_parity_instances().iter().enumerate() {
        let (one_shot, _) =
            compose_templates(g, ComposeState::new(g), objectives).map_err(|e| e.to_string())?;
        let mut state = ComposeState::new(g);
        for p in objectives {
            state = add_objective(g, state, p).map_err(|e| e.to_string())?.0;
        }
        ensure!(
            state.region == one_shot.region,
            "game {i}: incremental region differs"
        );
    }
    Ok(format!("{GEN_PARITY_GAMES} games"))
}

fn fault_completeness() -> Outcome {
    let mut rng = common::rng(10);
    let mut fast = 0;
    for i in 0..FAULT_GAMES {
        let g = common::graph(&mut rng, 1, 30, 4);
        let p = common::priorities(&mut rng, &g, 4);
        let t = parity_template(&g, &p).map_err(|e| e.to_string())?.template;
        let player0: Vec<Edge> = g
            .edges()
            .filter(|e| g.owner(e.source) == Player::Zero)
            .collect();
        let faulty: EdgeSet = player0
            .iter()
            .copied()
            .filter(|_| rng.gen_bool(FAULT_FRACTION))
            .collect();
        let fixed = fault_correction(&g, &p, &t, &faulty).map_err(|e| e.to_string())?;
        let (reduced, rp) = delete_edges(&g, &p, &faulty).map_err(|e| e.to_string())?;
        let z = zielonka_regions(&reduced, &rp);
        ensure!(
            fixed.template.region == z.region0,
            "game {i}: region differs from the reduced game"
        );
        if !fixed.recomputed {
            fast += 1;
            let s = extract_strategy(&reduced, &fixed.template)
                .map_err(|e| format!("game {i}: {e}"))?;
            let verdict = verify_strategy(&reduced, &s, &[rp], &fixed.template.region)
                .map_err(|e| e.to_string())?;
            ensure!(verdict.is_winning(), "game {i}: fast path strategy loses");
        }
    }
    Ok(format!("{FAULT_GAMES} games, {fast} fast path"))
}

fn gaf_check() -> Outcome {
    let mut rng = common::rng(4);
    for i in 0..SOUNDNESS_GAMES {
        let (g, _, r) = soundness_instance(&mut rng, i);
        ensure!(
            gaf_tolerant(&g, &r.template, &EdgeSet::new()).tolerant,
            "game {i}"
        );
        for _ in 0..SAMPLES_PER_TEMPLATE {
            common::sample_compliant(&mut rng, &g, &r.template);
        }
    }
    let (g, v) = six();
    let goal = g.set_of([v.c, v.d]);
    let t = buchi_template(&g, &goal)
        .map_err(|e| e.to_string())?
        .template;
    let faulty = edges(&[(v.a, v.d)]);
    let report = gaf_tolerant(&g, &t, &faulty);
    ensure!(
        report.tolerant,
        "six (a,d): offending {:?}",
        report.offending
    );
    let trace = PeriodicTrace {
        unavailable: vec![faulty.clone(), EdgeSet::new(), faulty],
    };
    let ok = check_online_periodic(&g, &t, &trace, &PriorityFunction::buchi(&goal), &t.region)
        .map_err(|e| e.to_string())?;
    ensure!(ok, "online strategy loses under the periodic trace");
    Ok("empty fault sets tolerated, six (a,d) tolerated and verified".into())
}

fn scalability() -> Outcome {
    let game = generate(&GeneratorConfig {
        base: None,
        vertices: LARGE_VERTICES,
        edges: LARGE_EDGES,
        objectives: 1,
        max_priority: LARGE_MAX_PRIORITY,
        seed: 12,
    });
    let start = Instant::now();
    let r = parity_template(&game.graph, &game.objectives[0]).map_err(|e| e.to_string())?;
    let solve = start.elapsed();
    let start = Instant::now();
    let s = extract_strategy(&game.graph, &r.template).map_err(|e| e.to_string())?;
    let extract = start.elapsed();
    ensure!(
        s.domain().len()
            == r.region0
                .intersection(&game.graph.players(Player::Zero))
                .len(),
        "partial strategy"
    );
    ensure!(solve < LARGE_SOLVE_BUDGET, "solve took {solve:?}");
    ensure!(extract < LARGE_EXTRACT_BUDGET, "extract took {extract:?}");
    Ok(format!(
        "|W0|={} solve {solve:?} extract {extract:?}",
        r.region0.len()
    ))
}

fn fault_monte_carlo() -> Outcome {
    let rows = fault_benchmark(&BenchConfig {
        games: BENCH_GAMES,
        vertices: 200,
        edges: 800,
        max_priority: 4,
        fractions: BENCH_FRACTIONS.to_vec(),
        trials: 20,
        seed: 13,
    })
    .map_err(|e| e.to_string())?;
    let csv = stats_csv(&rows);
    ensure!(csv.lines().count() == BENCH_FRACTIONS.len() + 1, "csv rows");
    for w in rows.windows(2) {
        ensure!(
            w[0].conflict_rate <= w[1].conflict_rate,
            "rate drops at {}",
            w[1].fault_fraction
        );
    }
    let rates: Vec<String> = rows
        .iter()
        .map(|r| format!("{:.3}", r.conflict_rate))
        .collect();
    Ok(format!("conflict rates {}", rates.join(" ")))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 13] = [
        ("six-vertex goldens", six_goldens),
        ("eight-vertex golden", eight_golden),
        ("region equivalence", region_equivalence),
        ("template soundness", template_soundness),
        ("conflict freeness", conflict_freeness),
        ("safety permissiveness", safety_permissiveness),
        ("compose soundness", compose_soundness),
        ("documented incompleteness", documented_incompleteness),
        ("incremental consistency", incremental_consistency),
        ("fault completeness", fault_completeness),
        ("gaf check", gaf_check),
        ("scalability", scalability),
        ("fault monte carlo", fault_monte_carlo),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome =
            catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
