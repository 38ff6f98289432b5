//! Scripted and lightly adaptive opponents.
//!
//! These are behavioral stand-ins for the kinds of strategies seen in
//! Lemonade Stand tournaments, not reimplementations of any entrant:
//!
//! * [`ConstantLead`] picks a spot and never moves.
//! * [`IdealFollower`] always best-responds to one player's previous move.
//! * [`UniformRandom`] draws a fresh spot every stage.
//! * [`NoisyLead`] mostly stays put but drifts one step with probability `p`.
//! * [`SatisficingCycler`] cycles lead → follow first → follow second whenever
//!   its last payoff falls below a threshold.
//! * [`MyopicPartner`] best-responds to whichever opponent currently looks
//!   most like a partner, and stays put while it is doing well.
//!
//! Every agent is deterministic given its seed and what it observes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::abstraction::{index_report, AbstractionParams};
use crate::agent::{Agent, AgentError, InitialPosition, Observation, StageClock};
use crate::game::{Action, Game, Player};
use crate::planner::{TeamUp, TeamUpConfig};

fn default_cycler_threshold() -> f64 {
    7.0
}

fn default_partner_threshold() -> f64 {
    8.0
}

/// Which strategy an [`AgentSpec`] builds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum AgentKind {
    ConstantLead,
    /// `target: None` follows the next seat, `(seat + 1) mod n`.
    IdealFollower {
        #[serde(default)]
        target: Option<Player>,
    },
    UniformRandom,
    NoisyLead {
        p: f64,
    },
    SatisficingCycler {
        #[serde(default = "default_cycler_threshold")]
        threshold: f64,
    },
    MyopicPartner {
        #[serde(default = "default_partner_threshold")]
        threshold: f64,
    },
    #[serde(rename = "teamup")]
    TeamUp {
        #[serde(default)]
        config: TeamUpConfig,
    },
}

impl AgentKind {
    pub fn label(&self) -> &'static str {
        match self {
            AgentKind::ConstantLead => "constant_lead",
            AgentKind::IdealFollower { .. } => "ideal_follower",
            AgentKind::UniformRandom => "uniform_random",
            AgentKind::NoisyLead { .. } => "noisy_lead",
            AgentKind::SatisficingCycler { .. } => "satisficing_cycler",
            AgentKind::MyopicPartner { .. } => "myopic_partner",
            AgentKind::TeamUp { .. } => "teamup",
        }
    }
}

/// A buildable agent description, as found in match and roster configs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AgentSpec {
    #[serde(flatten)]
    pub kind: AgentKind,
    /// Overrides the seed the arena derives for this seat.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default)]
    pub initial: InitialPosition,
}

impl AgentSpec {
    pub fn new(kind: AgentKind) -> Self {
        Self {
            kind,
            seed: None,
            initial: InitialPosition::Random,
        }
    }

    pub fn with_initial(mut self, initial: InitialPosition) -> Self {
        self.initial = initial;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    /// Check parameters that do not depend on the seat.
    pub fn validate(&self) -> Result<(), AgentError> {
        match &self.kind {
            AgentKind::NoisyLead { p } if !(0.0..=1.0).contains(p) => Err(AgentError::Config(
                format!("noise probability {p} outside [0, 1]"),
            )),
            AgentKind::SatisficingCycler { threshold } | AgentKind::MyopicPartner { threshold }
                if !(*threshold > 0.0 && *threshold < 24.0) =>
            {
                Err(AgentError::Config(format!(
                    "threshold {threshold} outside (0, 24)"
                )))
            }
            AgentKind::TeamUp { config } => config.validate(),
            _ => Ok(()),
        }
    }

    /// Build the agent for `seat` of an `n`-player game. `derived_seed` is used
    /// unless the spec pins its own.
    pub fn build(
        &self,
        seat: Player,
        players: usize,
        derived_seed: u64,
    ) -> Result<Box<dyn Agent>, AgentError> {
        self.validate()?;
        let seed = self.seed.unwrap_or(derived_seed);
        let initial = self.initial;
        Ok(match &self.kind {
            AgentKind::ConstantLead => Box::new(ConstantLead::new(initial, seed)),
            AgentKind::IdealFollower { target } => {
                let target = target.unwrap_or((seat + 1) % players);
                if target == seat || target >= players {
                    return Err(AgentError::Config(format!(
                        "seat {seat} cannot follow player {target}"
                    )));
                }
                Box::new(IdealFollower::new(target, initial, seed))
            }
            AgentKind::UniformRandom => Box::new(UniformRandom::new(seed)),
            AgentKind::NoisyLead { p } => Box::new(NoisyLead::new(*p, initial, seed)),
            AgentKind::SatisficingCycler { threshold } => {
                Box::new(SatisficingCycler::new(*threshold, initial, seed))
            }
            AgentKind::MyopicPartner { threshold } => {
                Box::new(MyopicPartner::new(*threshold, initial, seed))
            }
            AgentKind::TeamUp { config } => {
                let config = TeamUpConfig {
                    initial_position: initial,
                    ..*config
                };
                Box::new(TeamUp::new(config, players, seed)?)
            }
        })
    }
}

/// First pairwise best response closest to `from`.
fn respond_to<G: Game + ?Sized>(
    game: &G,
    seat: Player,
    target: Player,
    action: Action,
    from: Action,
) -> Action {
    game.pairwise_best_response(seat, target, action)
        .into_iter()
        .min_by(|&a, &b| {
            game.distance(from, a)
                .total_cmp(&game.distance(from, b))
                .then(a.cmp(&b))
        })
        .expect("pairwise best response is never empty")
}

#[derive(Debug, Clone)]
pub struct ConstantLead {
    initial: InitialPosition,
    rng: ChaCha8Rng,
    clock: StageClock,
    position: Option<Action>,
}

impl ConstantLead {
    pub fn new(initial: InitialPosition, seed: u64) -> Self {
        Self {
            initial,
            rng: ChaCha8Rng::seed_from_u64(seed),
            clock: StageClock::new(),
            position: None,
        }
    }
}

impl Agent for ConstantLead {
    fn name(&self) -> &str {
        "constant_lead"
    }

    fn act(
        &mut self,
        game: &dyn Game,
        observation: &Observation<'_>,
    ) -> Result<Action, AgentError> {
        self.clock.tick(observation)?;
        if let Some(position) = self.position {
            return Ok(position);
        }
        let position = self
            .initial
            .draw(game.num_actions(observation.seat), &mut self.rng)?;
        self.position = Some(position);
        Ok(position)
    }
}

#[derive(Debug, Clone)]
pub struct IdealFollower {
    target: Player,
    initial: InitialPosition,
    rng: ChaCha8Rng,
    clock: StageClock,
}

impl IdealFollower {
    pub fn new(target: Player, initial: InitialPosition, seed: u64) -> Self {
        Self {
            target,
            initial,
            rng: ChaCha8Rng::seed_from_u64(seed),
            clock: StageClock::new(),
        }
    }

    pub fn target(&self) -> Player {
        self.target
    }
}

impl Agent for IdealFollower {
    fn name(&self) -> &str {
        "ideal_follower"
    }

    fn act(
        &mut self,
        game: &dyn Game,
        observation: &Observation<'_>,
    ) -> Result<Action, AgentError> {
        self.clock.tick(observation)?;
        let seat = observation.seat;
        match observation.last_joint() {
            None => self.initial.draw(game.num_actions(seat), &mut self.rng),
            Some(last) => Ok(respond_to(
                game,
                seat,
                self.target,
                last[self.target],
                last[seat],
            )),
        }
    }
}

#[derive(Debug, Clone)]
pub struct UniformRandom {
    rng: ChaCha8Rng,
    clock: StageClock,
}

impl UniformRandom {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            clock: StageClock::new(),
        }
    }
}

impl Agent for UniformRandom {
    fn name(&self) -> &str {
        "uniform_random"
    }

    fn act(
        &mut self,
        game: &dyn Game,
        observation: &Observation<'_>,
    ) -> Result<Action, AgentError> {
        self.clock.tick(observation)?;
        Ok(self.rng.gen_range(0..game.num_actions(observation.seat)))
    }
}

/// Stays on its spot, but each stage drifts one step either way with
/// probability `p`; the drift persists.
#[derive(Debug, Clone)]
pub struct NoisyLead {
    p: f64,
    initial: InitialPosition,
    rng: ChaCha8Rng,
    clock: StageClock,
    position: Option<Action>,
}

impl NoisyLead {
    pub fn new(p: f64, initial: InitialPosition, seed: u64) -> Self {
        Self {
            p,
            initial,
            rng: ChaCha8Rng::seed_from_u64(seed),
            clock: StageClock::new(),
            position: None,
        }
    }
}

impl Agent for NoisyLead {
    fn name(&self) -> &str {
        "noisy_lead"
    }

    fn act(
        &mut self,
        game: &dyn Game,
        observation: &Observation<'_>,
    ) -> Result<Action, AgentError> {
        self.clock.tick(observation)?;
        let m = game.num_actions(observation.seat);
        let position = match self.position {
            None => self.initial.draw(m, &mut self.rng)?,
            Some(current) => {
                if self.rng.gen_bool(self.p) {
                    if self.rng.gen_bool(0.5) {
                        (current + 1) % m
                    } else {
                        (current + m - 1) % m
                    }
                } else {
                    current
                }
            }
        };
        self.position = Some(position);
        Ok(position)
    }
}

/// Mode of a [`SatisficingCycler`]: lead, or follow the k-th other player.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CyclerMode {
    Lead,
    Follow(usize),
}

/// Keeps its mode while its previous payoff is at least `threshold`,
/// otherwise moves on to the next mode in lead → follow first other → follow
/// second other → … order.
#[derive(Debug, Clone)]
pub struct SatisficingCycler {
    threshold: f64,
    initial: InitialPosition,
    rng: ChaCha8Rng,
    clock: StageClock,
    mode: usize,
}

impl SatisficingCycler {
    pub fn new(threshold: f64, initial: InitialPosition, seed: u64) -> Self {
        Self {
            threshold,
            initial,
            rng: ChaCha8Rng::seed_from_u64(seed),
            clock: StageClock::new(),
            mode: 0,
        }
    }

    pub fn mode(&self) -> CyclerMode {
        match self.mode {
            0 => CyclerMode::Lead,
            k => CyclerMode::Follow(k - 1),
        }
    }
}

impl Agent for SatisficingCycler {
    fn name(&self) -> &str {
        "satisficing_cycler"
    }

    fn act(
        &mut self,
        game: &dyn Game,
        observation: &Observation<'_>,
    ) -> Result<Action, AgentError> {
        self.clock.tick(observation)?;
        let seat = observation.seat;
        let n = game.num_players();
        let Some(last) = observation.last_joint() else {
            return self.initial.draw(game.num_actions(seat), &mut self.rng);
        };
        if observation
            .last_reward()
            .is_some_and(|r| r < self.threshold)
        {
            self.mode = (self.mode + 1) % n;
        }
        Ok(match self.mode() {
            CyclerMode::Lead => last[seat],
            CyclerMode::Follow(k) => {
                let target = (seat + 1 + k) % n;
                respond_to(game, seat, target, last[target], last[seat])
            }
        })
    }
}

/// Scores each opponent by how much it looks like a partner (the larger of
/// its lead index and its follow index towards this agent) and best-responds
/// to the best-scoring one. While its own last payoff is at least `threshold`
/// it stays where it is.
#[derive(Debug, Clone)]
pub struct MyopicPartner {
    threshold: f64,
    params: AbstractionParams,
    initial: InitialPosition,
    rng: ChaCha8Rng,
    clock: StageClock,
}

impl MyopicPartner {
    pub fn new(threshold: f64, initial: InitialPosition, seed: u64) -> Self {
        Self {
            threshold,
            params: AbstractionParams::default(),
            initial,
            rng: ChaCha8Rng::seed_from_u64(seed),
            clock: StageClock::new(),
        }
    }
}

impl Agent for MyopicPartner {
    fn name(&self) -> &str {
        "myopic_partner"
    }

    fn act(
        &mut self,
        game: &dyn Game,
        observation: &Observation<'_>,
    ) -> Result<Action, AgentError> {
        self.clock.tick(observation)?;
        let seat = observation.seat;
        let Some(last) = observation.last_joint() else {
            return self.initial.draw(game.num_actions(seat), &mut self.rng);
        };
        if observation.history.len() < 2
            || observation
                .last_reward()
                .is_some_and(|r| r >= self.threshold)
        {
            return Ok(last[seat]);
        }
        let mut best: Option<(Player, f64)> = None;
        for j in (0..game.num_players()).filter(|&j| j != seat) {
            let Some(report) = index_report(j, observation.history, &self.params, game) else {
                continue;
            };
            let towards_me = report
                .follow
                .iter()
                .find(|&&(target, _)| target == seat)
                .map_or(f64::NEG_INFINITY, |&(_, f)| f);
            let score = report.lead.max(towards_me);
            if best.is_none_or(|(_, b)| score > b) {
                best = Some((j, score));
            }
        }
        Ok(match best {
            Some((partner, _)) => respond_to(game, seat, partner, last[partner], last[seat]),
            None => last[seat],
        })
    }
}
