//! Seeded matches, round-robin tournaments, and their outputs.

pub mod emit;
pub mod summary;
pub mod tournament;

use std::path::PathBuf;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abstraction::{classify_all, AbstractionParams, ActionHistory, BehaviorFeature};
use crate::agent::{Agent, AgentError, Observation};
use crate::game::{check_profile, Action, Game, GameError, Player};
use crate::planner::StageDiagnostics;
use crate::zoo::AgentSpec;

pub use summary::{state_visit_summary, state_visit_summary_between, StateVisitSummary};
pub use tournament::{
    default_roster, run_tournament, run_tournament_serial, RosterEntry, TournamentConfig,
    TournamentOutcome, TournamentTable,
};
pub use tournament::{MatchSummary, TableRow};

#[derive(Debug, Error)]
pub enum ArenaError {
    #[error("stage {stage}, seat {seat}: {source}")]
    Agent {
        stage: usize,
        seat: Player,
        #[source]
        source: AgentError,
    },
    #[error("stage {stage}, seat {seat}: could not build agent: {source}")]
    Build {
        stage: usize,
        seat: Player,
        #[source]
        source: AgentError,
    },
    #[error("stage {stage}: {source}")]
    Game {
        stage: usize,
        #[source]
        source: GameError,
    },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}, line {line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("replay failed at stage {stage}: {message}")]
    Replay { stage: usize, message: String },
}

fn default_stages() -> usize {
    100
}

/// One match: an agent per seat, a stage count, and a master seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatchConfig {
    pub agents: Vec<AgentSpec>,
    #[serde(default = "default_stages")]
    pub stages: usize,
    #[serde(default)]
    pub seed: u64,
}

impl MatchConfig {
    pub fn new(agents: Vec<AgentSpec>, stages: usize, seed: u64) -> Self {
        Self {
            agents,
            stages,
            seed,
        }
    }
}

/// Seed of stream `stream` under `master`. Distinct streams give
/// independent seeds; the mapping never depends on scheduling order.
pub fn derive_seed(master: u64, stream: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(stream);
    rng.next_u64()
}

/// Everything that happened in one stage.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageRecord {
    pub stage: usize,
    pub actions: Vec<Action>,
    pub utilities: Vec<f64>,
    /// Each seat's feature at decision time (absolute seat indices), from the
    /// match's reference parameters.
    pub features: Vec<BehaviorFeature>,
    /// Planner diagnostics per seat, for seats that plan.
    pub diagnostics: Vec<Option<StageDiagnostics>>,
}

/// Full trace of a match.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatchResult {
    pub names: Vec<String>,
    /// First seat that reported planner diagnostics.
    pub planner: Option<Player>,
    pub stages: Vec<StageRecord>,
}

impl MatchResult {
    pub fn players(&self) -> usize {
        self.names.len()
    }

    pub fn history(&self) -> ActionHistory {
        ActionHistory::from_stages(
            self.players(),
            self.stages.iter().map(|s| s.actions.clone()).collect(),
        )
        .expect("recorded joint actions have one entry per seat")
    }

    /// Mean per-stage utility of `seat` over stages `from..=to` (1-based,
    /// clamped to the match).
    pub fn mean_utility_between(&self, seat: Player, from: usize, to: usize) -> f64 {
        let picked: Vec<f64> = self
            .stages
            .iter()
            .filter(|s| s.stage >= from && s.stage <= to)
            .map(|s| s.utilities[seat])
            .collect();
        picked.iter().sum::<f64>() / picked.len().max(1) as f64
    }

    pub fn mean_utility(&self, seat: Player) -> f64 {
        self.mean_utility_between(seat, 1, usize::MAX)
    }

    pub fn mean_utilities(&self) -> Vec<f64> {
        (0..self.players())
            .map(|seat| self.mean_utility(seat))
            .collect()
    }
}

/// Build every seat's agent from `config` and play the match.
pub fn run_match(game: &dyn Game, config: &MatchConfig) -> Result<MatchResult, ArenaError> {
    let n = game.num_players();
    if config.agents.len() != n {
        return Err(ArenaError::Config(format!(
            "{} agents for a {n}-player game",
            config.agents.len()
        )));
    }
    let agents = config
        .agents
        .iter()
        .enumerate()
        .map(|(seat, spec)| {
            spec.build(seat, n, derive_seed(config.seed, seat as u64))
                .map_err(|source| ArenaError::Build {
                    stage: 1,
                    seat,
                    source,
                })
        })
        .collect::<Result<Vec<_>, _>>()?;
    play(game, agents, config.stages, &AbstractionParams::default())
}

/// Play already-built agents against each other. `reference` parameterizes
/// the per-stage features recorded for every seat.
pub fn play(
    game: &dyn Game,
    mut agents: Vec<Box<dyn Agent>>,
    stages: usize,
    reference: &AbstractionParams,
) -> Result<MatchResult, ArenaError> {
    let n = game.num_players();
    if agents.len() != n {
        return Err(ArenaError::Config(format!(
            "{} agents for a {n}-player game",
            agents.len()
        )));
    }
    if stages == 0 {
        return Err(ArenaError::Config(
            "a match needs at least one stage".into(),
        ));
    }
    let names = agents.iter().map(|a| a.name().to_string()).collect();
    let mut history = ActionHistory::new(n);
    let mut utilities: Vec<Vec<f64>> = Vec::with_capacity(stages);
    let mut records = Vec::with_capacity(stages);
    let mut planner = None;

    for stage in 1..=stages {
        let mut joint = Vec::with_capacity(n);
        let mut diagnostics = Vec::with_capacity(n);
        for (seat, agent) in agents.iter_mut().enumerate() {
            let observation = Observation {
                seat,
                history: &history,
                utilities: &utilities,
            };
            let action = agent
                .act(game, &observation)
                .map_err(|source| ArenaError::Agent {
                    stage,
                    seat,
                    source,
                })?;
            joint.push(action);
            diagnostics.push(agent.diagnostics().cloned());
        }
        check_profile(game, &joint).map_err(|source| ArenaError::Game { stage, source })?;
        if planner.is_none() {
            planner = diagnostics.iter().position(Option::is_some);
        }
        let features = classify_all(&history, planner.unwrap_or(0), reference, game);
        let payoff = game.utilities(&joint);
        records.push(StageRecord {
            stage,
            actions: joint.clone(),
            utilities: payoff.clone(),
            features,
            diagnostics,
        });
        history
            .push(joint)
            .expect("joint action length checked against the game");
        utilities.push(payoff);
    }

    Ok(MatchResult {
        names,
        planner,
        stages: records,
    })
}
