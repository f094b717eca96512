//! Reading matroids, games and number lists from files, stdin or flags.

use std::io::Read;

use anyhow::{bail, Context, Result};
use mgame_core::matroid::spec::{load_matroid_text, LoadedMatroid, MatroidFile};
use mgame_core::{ElementSet, GameConfig, GameSpec, Player};

/// Contents of `path`, or of stdin when `path` is `-`.
pub fn read_source(path: &str) -> Result<String> {
    if path == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).context("reading stdin")?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

pub fn load_matroid(path: &str) -> Result<LoadedMatroid> {
    let text = read_source(path)?;
    load_matroid_text(&text).with_context(|| format!("loading matroid from {path}"))
}

/// Command-line adjustments applied on top of a game file.
#[derive(Debug, Clone, Default)]
pub struct GameOverrides {
    pub colors: Option<usize>,
    pub multiplicity: Option<usize>,
    pub first_player: Option<Player>,
}

/// Parses a game description: either a game JSON (with `matroid` or
/// `matroids`) or any matroid file, in which case `--colors` is required.
pub fn game_from_text(text: &str, overrides: &GameOverrides) -> Result<(GameConfig, GameSpec)> {
    let value: Option<serde_json::Value> = serde_json::from_str(text).ok();
    let is_game = value
        .as_ref()
        .and_then(|v| v.as_object())
        .is_some_and(|o| o.contains_key("matroid") || o.contains_key("matroids"));
    let mut spec = if is_game {
        serde_json::from_value::<GameSpec>(value.expect("parsed above")).context("parsing game file")?
    } else {
        let loaded = load_matroid_text(text).context("parsing matroid file")?;
        let colors = overrides.colors.context("a bare matroid file needs --colors")?;
        GameSpec::new(strip_partition(loaded.file), colors)
    };
    if let Some(d) = overrides.colors {
        if spec.matroids.is_some() {
            bail!("--colors cannot override a per-color game");
        }
        spec.colors = Some(d);
    }
    if let Some(k) = overrides.multiplicity {
        spec.multiplicity = k;
    }
    if let Some(p) = overrides.first_player {
        spec.first_player = p;
    }
    let cfg = spec.build().context("building game")?;
    Ok((cfg, spec))
}

pub fn load_game(path: &str, overrides: &GameOverrides) -> Result<(GameConfig, GameSpec)> {
    game_from_text(&read_source(path)?, overrides)
}

/// Partitions ride along in matroid files but mean nothing to a game.
fn strip_partition(mut file: MatroidFile) -> MatroidFile {
    file.partition = None;
    file
}

/// `"3"` (constant over `n`), `"1,2,2"`, or a file holding a JSON array.
pub fn parse_numbers(arg: &str, n: usize) -> Result<Vec<usize>> {
    let arg = arg.trim();
    if let Ok(c) = arg.parse::<usize>() {
        return Ok(vec![c; n]);
    }
    let values: Vec<usize> = if arg.contains(',') {
        arg.split(',')
            .map(|t| t.trim().parse().with_context(|| format!("bad number {t:?}")))
            .collect::<Result<_>>()?
    } else {
        serde_json::from_str(&read_source(arg)?).with_context(|| format!("parsing {arg} as a JSON array"))?
    };
    if values.len() != n {
        bail!("{} values given for {n} elements", values.len());
    }
    Ok(values)
}

/// `"0,2,5"` or `""` for the empty set.
pub fn parse_set(arg: &str) -> Result<ElementSet> {
    arg.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().with_context(|| format!("bad element {t:?}")))
        .collect()
}

/// Sets separated by `;`, e.g. `"0,1;2"`.
pub fn parse_sets(arg: &str) -> Result<Vec<ElementSet>> {
    arg.split(';').map(parse_set).collect()
}

/// Inline JSON (`[[1,2],[2]]`) or a path to a JSON file.
pub fn parse_json_arg<T: serde::de::DeserializeOwned>(arg: &str) -> Result<T> {
    let trimmed = arg.trim_start();
    let text = if trimmed.starts_with('[') || trimmed.starts_with('{') {
        arg.to_string()
    } else {
        read_source(arg)?
    };
    serde_json::from_str(&text).context("parsing JSON argument")
}
