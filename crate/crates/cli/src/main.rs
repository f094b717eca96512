use anyhow::Result;
use clap::{Parser, Subcommand};
use mgame_cli::commands::{self, pretty, ExchangeTarget, Format};
use mgame_cli::input::{load_game, GameOverrides};
use mgame_core::Player;

/// Matroid coloring games: covering numbers, list coloring, strategies and
/// an exhaustive solver. Inputs named `-` are read from stdin.
#[derive(Parser)]
#[command(name = "mgame", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone, Default)]
struct GameFlags {
    /// Number of colors d (required for a bare matroid file).
    #[arg(long)]
    colors: Option<usize>,
    /// Colors each element must receive.
    #[arg(long)]
    multiplicity: Option<usize>,
    #[arg(long, value_parser = parse_player)]
    first_player: Option<Player>,
}

impl From<GameFlags> for GameOverrides {
    fn from(f: GameFlags) -> Self {
        Self {
            colors: f.colors,
            multiplicity: f.multiplicity,
            first_player: f.first_player,
        }
    }
}

fn parse_player(s: &str) -> Result<Player, String> {
    s.parse()
}

#[derive(Subcommand)]
enum Command {
    /// Chromatic number and a witness partition.
    Chromatic { matroid: String },
    /// Exact fractional chromatic number with its covering.
    Fractional { matroid: String },
    /// A W-covering by d independent sets, or a violated set.
    Cover {
        matroid: String,
        #[arg(long)]
        colors: usize,
        /// A constant, a comma list, or a JSON array file.
        #[arg(long, default_value = "1")]
        weights: String,
    },
    /// Whether every list assignment of the given sizes admits a W-coloring.
    ListCheck {
        matroid: String,
        /// A constant, a comma list, a JSON array file, or `degree`.
        #[arg(long)]
        sizes: String,
        #[arg(long, default_value = "1")]
        weights: String,
    },
    /// Colors each element from its list.
    ListColor {
        matroid: String,
        /// Inline JSON such as `[[1,2],[2,3]]` or a file.
        #[arg(long)]
        lists: String,
        #[arg(long, default_value = "1")]
        weights: String,
    },
    /// Multiple or partition basis exchange between bases B1 and B2.
    BasisExchange {
        matroid: String,
        #[arg(long)]
        b1: String,
        #[arg(long)]
        b2: String,
        /// Subset of B1 to exchange, e.g. `0,2`.
        #[arg(long)]
        a1: Option<String>,
        /// Partition of B2, e.g. `3;4,5`; B1 gets partitioned to match.
        #[arg(long)]
        parts: Option<String>,
        #[arg(long, value_enum, default_value = "b")]
        into: ExchangeTarget,
    },
    /// Plays one game and prints the transcript.
    Play {
        game: String,
        #[arg(long, default_value = "alice-covering")]
        alice: String,
        #[arg(long, default_value = "greedy")]
        bob: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        snapshots: bool,
        #[command(flatten)]
        game_flags: GameFlags,
    },
    /// Replays a transcript and checks its recorded outcome.
    Replay { transcript: String },
    /// Win rates for every Alice strategy against every Bob strategy.
    Tournament {
        game: String,
        #[arg(long, value_delimiter = ',', default_value = "alice-covering")]
        alice: Vec<String>,
        #[arg(long, value_delimiter = ',', default_value = "greedy,spiteful,random")]
        bob: Vec<String>,
        #[arg(long, default_value_t = 100)]
        games: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[command(flatten)]
        game_flags: GameFlags,
    },
    /// Exact winner under optimal play.
    Solve {
        game: String,
        /// Also compute the game chromatic number.
        #[arg(long)]
        game_chromatic: bool,
        #[arg(long, default_value_t = 4)]
        max_colors: usize,
        #[command(flatten)]
        game_flags: GameFlags,
    },
    /// Prints the M_k matroid with its canonical k-coloring.
    Mk { k: usize },
    /// Runs the HTTP session API.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
    },
}

fn run(cli: Cli) -> Result<String> {
    Ok(match cli.command {
        Command::Chromatic { matroid } => pretty(&commands::chromatic(&matroid)?)?,
        Command::Fractional { matroid } => pretty(&commands::fractional(&matroid)?)?,
        Command::Cover {
            matroid,
            colors,
            weights,
        } => pretty(&commands::cover(&matroid, colors, &weights)?)?,
        Command::ListCheck {
            matroid,
            sizes,
            weights,
        } => pretty(&commands::list_check(&matroid, &sizes, &weights)?)?,
        Command::ListColor {
            matroid,
            lists,
            weights,
        } => pretty(&commands::list_color(&matroid, &lists, &weights)?)?,
        Command::BasisExchange {
            matroid,
            b1,
            b2,
            a1,
            parts,
            into,
        } => pretty(&commands::basis_exchange(
            &matroid,
            &b1,
            &b2,
            a1.as_deref(),
            parts.as_deref(),
            into,
        )?)?,
        Command::Play {
            game,
            alice,
            bob,
            seed,
            snapshots,
            game_flags,
        } => pretty(&commands::play(
            &game,
            &game_flags.into(),
            &alice,
            &bob,
            seed,
            snapshots,
        )?)?,
        Command::Replay { transcript } => pretty(&commands::replay(&transcript)?)?,
        Command::Tournament {
            game,
            alice,
            bob,
            games,
            seed,
            format,
            game_flags,
        } => {
            let (cfg, _) = load_game(&game, &game_flags.into())?;
            commands::render_rows(&commands::tournament(&cfg, &alice, &bob, games, seed)?, format)?
        }
        Command::Solve {
            game,
            game_chromatic,
            max_colors,
            game_flags,
        } => pretty(&commands::solve(&game, &game_flags.into(), game_chromatic, max_colors)?)?,
        Command::Mk { k } => pretty(&commands::mk(k)?)?,
        Command::Serve { port } => {
            tokio::runtime::Runtime::new()?.block_on(mgame_cli::server::serve(port))?;
            String::new()
        }
    })
}

fn main() {
    match run(Cli::parse()) {
        Ok(out) => {
            if !out.is_empty() {
                println!("{}", out.trim_end());
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(1);
        }
    }
}
