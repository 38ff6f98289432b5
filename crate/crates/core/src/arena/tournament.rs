//! Round-robin tournaments over every unordered triple of a roster.

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{derive_seed, run_match, ArenaError, MatchConfig, MatchResult};
use crate::game::Game;
use crate::zoo::AgentSpec;

fn default_repeats() -> usize {
    30
}

fn default_stages() -> usize {
    100
}

/// A named strategy in a tournament roster.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RosterEntry {
    pub name: String,
    #[serde(flatten)]
    pub agent: AgentSpec,
}

impl RosterEntry {
    pub fn new(name: impl Into<String>, agent: AgentSpec) -> Self {
        Self {
            name: name.into(),
            agent,
        }
    }
}

/// TeamUP and the six zoo strategies with default parameters.
pub fn default_roster() -> Vec<RosterEntry> {
    use crate::zoo::AgentKind;
    let entry = |name: &str, kind| RosterEntry::new(name, AgentSpec::new(kind));
    vec![
        entry(
            "TeamUP",
            AgentKind::TeamUp {
                config: Default::default(),
            },
        ),
        entry("constant_lead", AgentKind::ConstantLead),
        entry("ideal_follower", AgentKind::IdealFollower { target: None }),
        entry("uniform_random", AgentKind::UniformRandom),
        entry("noisy_lead", AgentKind::NoisyLead { p: 0.1 }),
        entry(
            "satisficing_cycler",
            AgentKind::SatisficingCycler { threshold: 7.0 },
        ),
        entry(
            "myopic_partner",
            AgentKind::MyopicPartner { threshold: 8.0 },
        ),
    ]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TournamentConfig {
    pub roster: Vec<RosterEntry>,
    #[serde(default = "default_repeats")]
    pub repeats: usize,
    #[serde(default = "default_stages")]
    pub stages: usize,
    #[serde(default)]
    pub seed: u64,
}

impl TournamentConfig {
    pub fn new(roster: Vec<RosterEntry>, repeats: usize, stages: usize, seed: u64) -> Self {
        Self {
            roster,
            repeats,
            stages,
            seed,
        }
    }
}

/// One played match, summarized.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatchSummary {
    /// Index of the roster triple, in lexicographic order.
    pub group: usize,
    pub repeat: usize,
    /// Roster index sitting in each seat.
    pub seats: Vec<usize>,
    pub seed: u64,
    /// Mean per-stage utility of each seat.
    pub means: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub rank: usize,
    pub strategy: String,
    pub avg_utility: f64,
    /// Sample standard deviation of the per-match means over √(matches).
    pub std_err: f64,
    pub matches: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TournamentTable {
    pub rows: Vec<TableRow>,
}

impl TournamentTable {
    pub fn row(&self, strategy: &str) -> Option<&TableRow> {
        self.rows.iter().find(|r| r.strategy == strategy)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TournamentOutcome {
    pub table: TournamentTable,
    pub matches: Vec<MatchSummary>,
    /// Full traces, in the same order as `matches`, when requested.
    pub traces: Option<Vec<MatchResult>>,
}

struct Job {
    group: usize,
    repeat: usize,
    seats: Vec<usize>,
    seed: u64,
}

fn jobs(config: &TournamentConfig, players: usize) -> Result<Vec<Job>, ArenaError> {
    if config.roster.len() < players {
        return Err(ArenaError::Config(format!(
            "roster of {} cannot fill a {players}-player game",
            config.roster.len()
        )));
    }
    if config.repeats == 0 {
        return Err(ArenaError::Config("repeats must be positive".into()));
    }
    let names: Vec<&str> = config.roster.iter().map(|e| e.name.as_str()).collect();
    if names.iter().duplicates().next().is_some() {
        return Err(ArenaError::Config("roster names must be unique".into()));
    }
    for entry in &config.roster {
        entry
            .agent
            .validate()
            .map_err(|e| ArenaError::Config(format!("{}: {e}", entry.name)))?;
    }
    let seatings: Vec<Vec<usize>> = (0..players).permutations(players).collect();
    let mut out = Vec::new();
    for (group, members) in (0..config.roster.len()).combinations(players).enumerate() {
        let group_seed = derive_seed(config.seed, group as u64);
        for repeat in 0..config.repeats {
            let order = &seatings[repeat % seatings.len()];
            out.push(Job {
                group,
                repeat,
                seats: order.iter().map(|&k| members[k]).collect(),
                seed: derive_seed(group_seed, repeat as u64),
            });
        }
    }
    Ok(out)
}

fn play_job(
    game: &dyn Game,
    config: &TournamentConfig,
    job: &Job,
    keep: bool,
) -> Result<(MatchSummary, Option<MatchResult>), ArenaError> {
    let agents = job
        .seats
        .iter()
        .map(|&k| config.roster[k].agent.clone())
        .collect();
    let mut result = run_match(game, &MatchConfig::new(agents, config.stages, job.seed))?;
    for (seat, &k) in job.seats.iter().enumerate() {
        result.names[seat] = config.roster[k].name.clone();
    }
    let summary = MatchSummary {
        group: job.group,
        repeat: job.repeat,
        seats: job.seats.clone(),
        seed: job.seed,
        means: result.mean_utilities(),
    };
    Ok((summary, keep.then_some(result)))
}

fn tabulate(config: &TournamentConfig, matches: &[MatchSummary]) -> TournamentTable {
    let mut samples: Vec<Vec<f64>> = vec![Vec::new(); config.roster.len()];
    for m in matches {
        for (seat, &k) in m.seats.iter().enumerate() {
            samples[k].push(m.means[seat]);
        }
    }
    let mut rows: Vec<TableRow> = config
        .roster
        .iter()
        .zip(&samples)
        .map(|(entry, xs)| {
            let count = xs.len();
            let mean = xs.iter().sum::<f64>() / count as f64;
            let std_err = if count > 1 {
                let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (count - 1) as f64;
                (var / count as f64).sqrt()
            } else {
                0.0
            };
            TableRow {
                rank: 0,
                strategy: entry.name.clone(),
                avg_utility: mean,
                std_err,
                matches: count,
            }
        })
        .collect();
    rows.sort_by(|a, b| {
        b.avg_utility
            .total_cmp(&a.avg_utility)
            .then_with(|| a.strategy.cmp(&b.strategy))
    });
    for (i, row) in rows.iter_mut().enumerate() {
        row.rank = i + 1;
    }
    TournamentTable { rows }
}

fn run(
    game: &dyn Game,
    config: &TournamentConfig,
    parallel: bool,
    keep: bool,
) -> Result<TournamentOutcome, ArenaError> {
    let jobs = jobs(config, game.num_players())?;
    let played: Vec<_> = if parallel {
        jobs.par_iter()
            .map(|job| play_job(game, config, job, keep))
            .collect::<Result<_, _>>()?
    } else {
        jobs.iter()
            .map(|job| play_job(game, config, job, keep))
            .collect::<Result<_, _>>()?
    };
    let (matches, traces): (Vec<_>, Vec<_>) = played.into_iter().unzip();
    let table = tabulate(config, &matches);
    Ok(TournamentOutcome {
        table,
        matches,
        traces: keep.then(|| traces.into_iter().flatten().collect()),
    })
}

/// Play every unordered triple of the roster `repeats` times, rotating the
/// seating each repeat, across threads. The outcome does not depend on the
/// thread count.
pub fn run_tournament(
    game: &dyn Game,
    config: &TournamentConfig,
    keep_traces: bool,
) -> Result<TournamentOutcome, ArenaError> {
    run(game, config, true, keep_traces)
}

/// Single-threaded [`run_tournament`].
pub fn run_tournament_serial(
    game: &dyn Game,
    config: &TournamentConfig,
    keep_traces: bool,
) -> Result<TournamentOutcome, ArenaError> {
    run(game, config, false, keep_traces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Lemonade;
    use crate::zoo::AgentKind;

    fn roster() -> Vec<RosterEntry> {
        vec![
            RosterEntry::new("a", AgentSpec::new(AgentKind::ConstantLead)),
            RosterEntry::new("b", AgentSpec::new(AgentKind::UniformRandom)),
            RosterEntry::new("c", AgentSpec::new(AgentKind::NoisyLead { p: 0.2 })),
            RosterEntry::new(
                "d",
                AgentSpec::new(AgentKind::IdealFollower { target: None }),
            ),
        ]
    }

    #[test]
    fn every_triple_and_rotation() {
        let config = TournamentConfig {
            roster: roster(),
            repeats: 6,
            stages: 20,
            seed: 1,
        };
        let out = run_tournament(&Lemonade, &config, false).unwrap();
        assert_eq!(out.matches.len(), 4 * 6);
        for group in out.matches.chunks(6) {
            let seatings: std::collections::BTreeSet<_> =
                group.iter().map(|m| m.seats.clone()).collect();
            assert_eq!(seatings.len(), 6);
        }
        assert_eq!(out.table.rows.len(), 4);
        assert!(out.table.rows.iter().all(|r| r.matches == 18));
        assert!(out
            .table
            .rows
            .windows(2)
            .all(|w| w[0].avg_utility >= w[1].avg_utility));
        let total: f64 = out.matches.iter().flat_map(|m| m.means.iter()).sum();
        assert!((total / out.matches.len() as f64 - 24.0).abs() < 1e-9);
    }

    #[test]
    fn parallel_matches_serial() {
        let config = TournamentConfig {
            roster: roster(),
            repeats: 3,
            stages: 30,
            seed: 9,
        };
        let a = run_tournament(&Lemonade, &config, true).unwrap();
        let b = run_tournament_serial(&Lemonade, &config, true).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_small_or_duplicate_rosters() {
        let mut config = TournamentConfig {
            roster: roster()[..2].to_vec(),
            repeats: 1,
            stages: 5,
            seed: 0,
        };
        assert!(matches!(
            run_tournament(&Lemonade, &config, false),
            Err(ArenaError::Config(_))
        ));
        config.roster = vec![roster()[0].clone(); 3];
        assert!(matches!(
            run_tournament(&Lemonade, &config, false),
            Err(ArenaError::Config(_))
        ));
    }
}
