use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use teamup::arena::emit::{read_trace, replay, write_json, write_table, write_trace};
use teamup::arena::summary::{summarize, trace_stage_classes};
use teamup::arena::{
    default_roster, run_match, run_tournament, state_visit_summary_between, ArenaError,
    MatchConfig, StateVisitSummary, TournamentConfig,
};
use teamup::{AbstractionParams, AgentKind, AgentSpec, Game, Lemonade, MatrixGame};

/// Repeated-game matches and tournaments with the TeamUP planner.
#[derive(Parser)]
#[command(name = "teamup", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Master seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Stages per match.
    #[arg(long)]
    stages: Option<usize>,
    /// JSON config file (match or tournament config).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Table-driven game description (JSON); the Lemonade Stand game otherwise.
    #[arg(long)]
    game: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Play one match and write its trace.
    Match {
        #[command(flatten)]
        common: Common,
    },
    /// Play a round robin and write the standings.
    Tournament {
        #[command(flatten)]
        common: Common,
        /// Repeats per roster triple.
        #[arg(long)]
        repeats: Option<usize>,
        /// Also write every match trace.
        #[arg(long)]
        traces: bool,
    },
    /// State-visit breakdown of one seat in a trace.
    Summary {
        trace: PathBuf,
        /// Seat to summarize; defaults to the recorded planner, else seat 0.
        #[arg(long)]
        planner: Option<usize>,
        /// First stage to include.
        #[arg(long, default_value_t = 1)]
        from: usize,
        /// Last stage to include.
        #[arg(long)]
        to: Option<usize>,
        #[arg(long)]
        game: Option<PathBuf>,
        /// Write summary.json here as well as printing it.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a trace against the game's payoffs.
    Replay {
        trace: PathBuf,
        #[arg(long)]
        game: Option<PathBuf>,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Arena(#[from] ArenaError),
    #[error("{0}")]
    Input(String),
}

fn load_game(path: Option<&Path>) -> Result<Box<dyn Game>, CliError> {
    let Some(path) = path else {
        return Ok(Box::new(Lemonade));
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let game = MatrixGame::from_json(&text)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok(Box::new(game))
}

fn load_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

#[derive(Serialize)]
struct MatchReport<'a> {
    names: &'a [String],
    seed: u64,
    stages: usize,
    mean_utilities: Vec<f64>,
    planner: Option<usize>,
    state_visits: Option<StateVisitSummary>,
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Match { common } => {
            let game = load_game(common.game.as_deref())?;
            let mut config = match &common.config {
                Some(path) => load_json(path)?,
                None => MatchConfig::new(
                    vec![
                        AgentSpec::new(AgentKind::TeamUp {
                            config: Default::default(),
                        }),
                        AgentSpec::new(AgentKind::IdealFollower { target: Some(0) }),
                        AgentSpec::new(AgentKind::UniformRandom),
                    ],
                    100,
                    0,
                ),
            };
            config.seed = common.seed.unwrap_or(config.seed);
            config.stages = common.stages.unwrap_or(config.stages);
            let result = run_match(game.as_ref(), &config)?;
            let params = AbstractionParams::default();
            let report = MatchReport {
                names: &result.names,
                seed: config.seed,
                stages: config.stages,
                mean_utilities: result.mean_utilities(),
                planner: result.planner,
                state_visits: result.planner.map(|p| {
                    state_visit_summary_between(&result, p, &params, game.as_ref(), 1, usize::MAX)
                }),
            };
            write_trace(&common.out.join("trace.jsonl"), &result)?;
            write_json(&common.out.join("match.json"), &report)?;
            for (name, mean) in result.names.iter().zip(&report.mean_utilities) {
                println!("{name:<20} {mean:.4}");
            }
        }
        Command::Tournament {
            common,
            repeats,
            traces,
        } => {
            let game = load_game(common.game.as_deref())?;
            let mut config = match &common.config {
                Some(path) => load_json(path)?,
                None => TournamentConfig::new(default_roster(), 30, 100, 0),
            };
            config.seed = common.seed.unwrap_or(config.seed);
            config.stages = common.stages.unwrap_or(config.stages);
            config.repeats = repeats.unwrap_or(config.repeats);
            let outcome = run_tournament(game.as_ref(), &config, traces)?;
            write_table(&common.out.join("standings.csv"), &outcome.table)?;
            if let Some(results) = &outcome.traces {
                for (summary, result) in outcome.matches.iter().zip(results) {
                    let name = format!("g{:03}_r{:03}.jsonl", summary.group, summary.repeat);
                    write_trace(&common.out.join("traces").join(name), result)?;
                }
            }
            for row in &outcome.table.rows {
                println!(
                    "{:>2}. {:<20} {:.4} ± {:.4}",
                    row.rank, row.strategy, row.avg_utility, row.std_err
                );
            }
        }
        Command::Summary {
            trace,
            planner,
            from,
            to,
            game,
            out,
        } => {
            let game = load_game(game.as_deref())?;
            let records = read_trace(&trace)?;
            let seat = planner
                .or_else(|| records.first().and_then(|r| r.planner_seat))
                .unwrap_or(0);
            if seat >= game.num_players() {
                return Err(CliError::Input(format!("seat {seat} out of range")));
            }
            let classes =
                trace_stage_classes(&records, seat, &AbstractionParams::default(), game.as_ref())?;
            let summary = summarize(&classes, from, to.unwrap_or(usize::MAX));
            println!(
                "seat {seat}: optimal {:.4} worst {:.4} other {:.4} over {} stages",
                summary.optimal, summary.worst, summary.other, summary.stages
            );
            if let Some(dir) = out {
                write_json(&dir.join("summary.json"), &summary)?;
            }
        }
        Command::Replay { trace, game } => {
            let game = load_game(game.as_deref())?;
            let records = read_trace(&trace)?;
            let report = replay(game.as_ref(), &records)?;
            let means: Vec<String> = report
                .mean_utilities
                .iter()
                .map(|m| format!("{m:.4}"))
                .collect();
            println!(
                "ok: {} stages, mean utilities [{}]",
                report.stages,
                means.join(", ")
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
