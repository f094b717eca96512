//! The subcommands, as functions from parsed arguments to output text.

use std::sync::Arc;

use anyhow::{bail, Context, Result};
use mgame_core::game::{play_with, PlayOptions, Transcript};
use mgame_core::list::{
    check_condition3, color_from_lists, graph_degree_lists, multiple_basis_exchange, partition_exchange_to_bases_of_a,
    partition_exchange_to_bases_of_b, ListAssignment, SizeFunction,
};
use mgame_core::strategy::{build_mk, by_name, game_chromatic_number, solve_with, SolveOptions};
use mgame_core::union::{chromatic_number, fractional_chromatic, w_covering, WeightFunction};
use mgame_core::{GameConfig, Matroid, Player};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::input::{load_game, load_matroid, parse_json_arg, parse_numbers, parse_set, parse_sets, GameOverrides};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

pub fn pretty(value: &impl Serialize) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)?)
}

pub fn chromatic(path: &str) -> Result<Value> {
    let m = load_matroid(path)?;
    let chi = chromatic_number(m.matroid.as_ref())?;
    Ok(json!({ "chi": chi.value, "partition": chi.partition }))
}

pub fn fractional(path: &str) -> Result<Value> {
    let m = load_matroid(path)?;
    let f = fractional_chromatic(m.matroid.as_ref())?;
    Ok(json!({
        "value": f.value.to_string(),
        "numerator": f.value.numer(),
        "denominator": f.value.denom(),
        "a": f.a,
        "b": f.covering.sets.len(),
        "covering": f.covering.sets,
        "densest": f.densest,
    }))
}

pub fn cover(path: &str, colors: usize, weights: &str) -> Result<Value> {
    let m = load_matroid(path)?;
    let n = m.matroid.ground_size();
    let w = WeightFunction(parse_numbers(weights, n)?);
    let copies = vec![m.matroid.as_ref(); colors];
    Ok(serde_json::to_value(w_covering(&copies, &w)?)?)
}

/// `sizes` is a number list or `degree` for graph degree lists.
pub fn list_check(path: &str, sizes: &str, weights: &str) -> Result<Value> {
    let m = load_matroid(path)?;
    let n = m.matroid.ground_size();
    let sizes = if sizes == "degree" {
        graph_degree_lists(&m.graph().context("degree lists need a graphic matroid")?)
    } else {
        SizeFunction(parse_numbers(sizes, n)?)
    };
    let w = WeightFunction(parse_numbers(weights, n)?);
    let verdict = check_condition3(m.matroid.as_ref(), &sizes, &w)?;
    Ok(json!({ "sizes": sizes.0, "weights": w.0, "verdict": verdict }))
}

pub fn list_color(path: &str, lists: &str, weights: &str) -> Result<Value> {
    let m = load_matroid(path)?;
    let n = m.matroid.ground_size();
    let lists: ListAssignment = parse_json_arg(lists)?;
    let w = WeightFunction(parse_numbers(weights, n)?);
    Ok(serde_json::to_value(color_from_lists(m.matroid.as_ref(), &lists, &w)?)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ExchangeTarget {
    /// Every `(B \ B_i) ∪ A_i` is a basis.
    B,
    /// Every `(A \ A_i) ∪ B_i` is a basis.
    A,
}

/// With `a1`: the multiple exchange of `a1 ⊆ b1` into `b2`. With `parts`:
/// a partition of `b1` (playing `A`) matched to the partition `parts` of
/// `b2` (playing `B`).
pub fn basis_exchange(
    path: &str,
    b1: &str,
    b2: &str,
    a1: Option<&str>,
    parts: Option<&str>,
    target: ExchangeTarget,
) -> Result<Value> {
    let m = load_matroid(path)?;
    let matroid: Arc<dyn Matroid> = m.matroid.clone();
    let (b1, b2) = (parse_set(b1)?, parse_set(b2)?);
    match (a1, parts) {
        (Some(a1), None) => {
            let a1 = parse_set(a1)?;
            let a2 = multiple_basis_exchange(&matroid, &b1, &b2, &a1)?;
            Ok(json!({
                "a2": a2,
                "b1_exchanged": b1.difference(&a1).union(&a2),
                "b2_exchanged": b2.difference(&a2).union(&a1),
            }))
        }
        (None, Some(parts)) => {
            let parts = parse_sets(parts)?;
            let out = match target {
                ExchangeTarget::B => partition_exchange_to_bases_of_b(&matroid, &b1, &b2, &parts)?,
                ExchangeTarget::A => partition_exchange_to_bases_of_a(&matroid, &b1, &b2, &parts)?,
            };
            Ok(json!({ "parts": out }))
        }
        _ => bail!("give exactly one of --a1 or --parts"),
    }
}

pub fn play(
    path: &str,
    overrides: &GameOverrides,
    alice: &str,
    bob: &str,
    seed: u64,
    snapshots: bool,
) -> Result<Transcript> {
    let (cfg, spec) = load_game(path, overrides)?;
    let mut a = by_name(alice, &cfg).with_context(|| format!("strategy {alice} for Alice"))?;
    let mut b = by_name(bob, &cfg).with_context(|| format!("strategy {bob} for Bob"))?;
    let opts = PlayOptions {
        check_invariants: true,
        snapshots,
    };
    let mut t = play_with(&cfg, &mut a, &mut b, seed, opts);
    t.config = Some(spec);
    Ok(t)
}

pub fn replay(path: &str) -> Result<Value> {
    let text = crate::input::read_source(path)?;
    let t: Transcript = serde_json::from_str(&text).context("parsing transcript")?;
    let state = t.replay()?;
    Ok(json!({
        "ok": true,
        "winner": t.winner(),
        "reason": t.outcome.reason,
        "plies": state.plies(),
        "moves": t.moves.len(),
    }))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TournamentRow {
    pub alice: String,
    pub bob: String,
    pub games: usize,
    pub alice_wins: usize,
    pub bob_wins: usize,
    pub alice_win_rate: f64,
    pub forfeits: usize,
    pub violations: usize,
}

/// Every Alice strategy against every Bob strategy, `games` games each with
/// seeds `seed, seed + 1, …`, spread over rayon workers.
pub fn tournament(
    cfg: &GameConfig,
    alices: &[String],
    bobs: &[String],
    games: usize,
    seed: u64,
) -> Result<Vec<TournamentRow>> {
    for name in alices.iter().chain(bobs) {
        by_name(name, cfg).with_context(|| format!("strategy {name}"))?;
    }
    let mut rows = Vec::new();
    for alice in alices {
        for bob in bobs {
            let results: Vec<(Player, bool, usize)> = (0..games as u64)
                .into_par_iter()
                .map(|i| {
                    let mut a = by_name(alice, cfg).expect("checked above");
                    let mut b = by_name(bob, cfg).expect("checked above");
                    let t = play_with(cfg, &mut a, &mut b, seed.wrapping_add(i), PlayOptions::default());
                    (t.winner(), t.outcome.forfeit.is_some(), t.violations.len())
                })
                .collect();
            let alice_wins = results.iter().filter(|r| r.0 == Player::Alice).count();
            rows.push(TournamentRow {
                alice: alice.clone(),
                bob: bob.clone(),
                games,
                alice_wins,
                bob_wins: games - alice_wins,
                alice_win_rate: if games == 0 {
                    0.0
                } else {
                    alice_wins as f64 / games as f64
                },
                forfeits: results.iter().filter(|r| r.1).count(),
                violations: results.iter().map(|r| r.2).sum(),
            });
        }
    }
    Ok(rows)
}

pub fn render_rows(rows: &[TournamentRow], format: Format) -> Result<String> {
    match format {
        Format::Json => pretty(&rows),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in rows {
                w.serialize(r)?;
            }
            Ok(String::from_utf8(w.into_inner()?)?)
        }
    }
}

pub fn solve(path: &str, overrides: &GameOverrides, game_chromatic: bool, max_colors: usize) -> Result<Value> {
    let (cfg, _) = load_game(path, overrides)?;
    let opts = SolveOptions {
        max_colors: max_colors.max(cfg.colors()),
        ..SolveOptions::default()
    };
    let sol = solve_with(&cfg, opts)?;
    let mut out = json!({
        "winner": sol.winner,
        "positions": sol.positions,
        "winningMove": sol.winning_move,
    });
    if game_chromatic {
        let shared = (0..cfg.colors()).all(|c| cfg.matroid_id(c) == cfg.matroid_id(0));
        if !shared || cfg.multiplicity() != 1 || cfg.lists().is_some() {
            bail!("--game-chromatic needs a plain game on one matroid");
        }
        let chi_g = game_chromatic_number(cfg.matroids()[0].clone(), cfg.first_player(), max_colors)?;
        out["gameChromatic"] = json!(chi_g);
        out["maxColors"] = json!(max_colors);
    }
    Ok(out)
}

/// The `M_k` matroid file; its `partition` is the canonical `k`-coloring.
pub fn mk(k: usize) -> Result<Value> {
    let spec = build_mk(k)?;
    Ok(serde_json::to_value(spec.file())?)
}
