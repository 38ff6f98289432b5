//! The TeamUP planner.
//!
//! TeamUP plans over abstract states made of its own last high-level action
//! and a lead/follow feature per opponent. It counts `(s, a, s')` experiences,
//! treats pairs tried fewer than `K` times as a jump to an absorbing
//! fictitious state worth the potential of the state they leave, and re-runs
//! value iteration whenever a pair's count reaches a multiple of `K`.
//!
//! Potentials rank states where an opponent follows the planner above
//! ordinary states, and those above states where the two opponents have
//! paired up without it, so untried actions look attractive exactly where a
//! partnership is forming.

pub mod model;
pub mod shaping;
pub mod vi;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::abstraction::{
    build_state, classify, AbstractState, AbstractionParams, BehaviorFeature, HighLevelAction,
    StateSpace,
};
use crate::agent::{Agent, AgentError, InitialPosition, Observation, StageClock};
use crate::game::{Action, Game, SeatView};

pub use model::PlannerModel;
pub use shaping::{class_of, state_class, ShapingPotentials, StateClass};
pub use vi::{value_iteration, Mdp, Solution};

/// Every TeamUP parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TeamUpConfig {
    /// γ, decay of the lead/follow indices.
    pub response_rate: f64,
    /// ρ, exponent on action distances.
    pub distance_exponent: f64,
    /// δ, classification tolerance.
    pub tolerance: f64,
    /// ε, potential gap between optimal and ordinary states.
    pub epsilon: f64,
    /// γ', planning discount.
    pub discount: f64,
    /// K, visits before a pair's empirical model is trusted.
    pub known_threshold: u32,
    /// Bellman residual at which value iteration stops.
    pub vi_tolerance: f64,
    /// Stage reward assumed in optimal states.
    pub r_max: f64,
    /// Stage reward assumed in worst states.
    pub r_min: f64,
    /// Refuse to play past this stage when set.
    pub horizon: Option<usize>,
    /// Add γ'Φ(s') - Φ(s) to every experienced reward.
    pub online_shaping: bool,
    pub initial_position: InitialPosition,
}

impl Default for TeamUpConfig {
    fn default() -> Self {
        Self {
            response_rate: 0.05,
            distance_exponent: 0.5,
            tolerance: 0.3,
            epsilon: 4.0,
            discount: 0.95,
            known_threshold: 15,
            vi_tolerance: 1e-6,
            r_max: 12.0,
            r_min: 6.0,
            horizon: None,
            online_shaping: false,
            initial_position: InitialPosition::Random,
        }
    }
}

impl TeamUpConfig {
    pub fn abstraction(&self) -> AbstractionParams {
        AbstractionParams {
            response_rate: self.response_rate,
            distance_exponent: self.distance_exponent,
            tolerance: self.tolerance,
        }
    }

    pub fn potentials(&self) -> Result<ShapingPotentials, AgentError> {
        ShapingPotentials::new(self.r_max, self.r_min, self.epsilon, self.discount)
            .map_err(|e| AgentError::Config(e.to_string()))
    }

    pub fn validate(&self) -> Result<(), AgentError> {
        self.abstraction()
            .validate()
            .map_err(|e| AgentError::Config(e.to_string()))?;
        self.potentials()?;
        if self.known_threshold == 0 {
            return Err(AgentError::Config(
                "known threshold must be positive".into(),
            ));
        }
        if self.vi_tolerance.is_nan() || self.vi_tolerance <= 0.0 {
            return Err(AgentError::Config(
                "value iteration tolerance must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// What the planner saw and did in one stage.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageDiagnostics {
    pub stage: usize,
    /// Abstract state at decision time; `None` in the first stage.
    pub state: Option<AbstractState>,
    pub action: HighLevelAction,
    pub replanned: bool,
    /// State values after replanning, indexed by [`StateSpace`] order.
    pub values: Option<Vec<f64>>,
}

/// Turn a high-level action into a concrete one.
///
/// `last` is the previous joint action in planner-relative order. Leading
/// repeats the planner's own previous action; following opponent `j` plays
/// the game's pairwise best response to `j`'s previous action, picking the
/// member closest to the planner's previous action when there are several.
pub fn ground_action<G: Game + ?Sized>(
    action: HighLevelAction,
    last: &[Action],
    game: &G,
) -> Action {
    let own = last[0];
    match action {
        HighLevelAction::Lead => own,
        HighLevelAction::Follow(j) => {
            let options = game.pairwise_best_response(0, j, last[j]);
            options
                .into_iter()
                .min_by(|&a, &b| {
                    game.distance(own, a)
                        .total_cmp(&game.distance(own, b))
                        .then(a.cmp(&b))
                })
                .expect("pairwise best response is never empty")
        }
    }
}

/// The TeamUP agent.
#[derive(Debug, Clone)]
pub struct TeamUp {
    name: String,
    config: TeamUpConfig,
    params: AbstractionParams,
    model: PlannerModel,
    values: Vec<f64>,
    policy: Vec<usize>,
    rng: ChaCha8Rng,
    clock: StageClock,
    initial: Option<Action>,
    previous: Option<(usize, AbstractState, HighLevelAction)>,
    last_action: HighLevelAction,
    diagnostics: Option<StageDiagnostics>,
}

impl TeamUp {
    pub fn new(config: TeamUpConfig, players: usize, seed: u64) -> Result<Self, AgentError> {
        config.validate()?;
        if players < 2 {
            return Err(AgentError::Config(
                "the planner needs at least one opponent".into(),
            ));
        }
        let model = PlannerModel::new(
            StateSpace::new(players),
            config.known_threshold,
            config.potentials()?,
        );
        let solution =
            value_iteration(&model.planning_mdp(), config.discount, config.vi_tolerance)?;
        Ok(Self {
            name: "TeamUP".into(),
            config,
            params: config.abstraction(),
            model,
            values: solution.values,
            policy: solution.policy,
            rng: ChaCha8Rng::seed_from_u64(seed),
            clock: StageClock::new(),
            initial: None,
            previous: None,
            last_action: HighLevelAction::Lead,
            diagnostics: None,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn config(&self) -> &TeamUpConfig {
        &self.config
    }

    pub fn model(&self) -> &PlannerModel {
        &self.model
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Greedy high-level action in `state`.
    pub fn policy_action(&self, state: &AbstractState) -> HighLevelAction {
        HighLevelAction::from_index(self.policy[self.model.space().index(state)])
    }

    fn replan(&mut self) -> Result<(), AgentError> {
        let mdp = self.model.planning_mdp();
        let solution = value_iteration(&mdp, self.config.discount, self.config.vi_tolerance)?;
        self.values = solution.values;
        self.policy = solution.policy;
        Ok(())
    }

    fn observe_state<G: Game + ?Sized>(
        &self,
        view: &SeatView<'_, G>,
        observation: &Observation<'_>,
    ) -> AbstractState {
        let history = observation.history.rotated(observation.seat);
        let n = history.players();
        let opponents: Vec<BehaviorFeature> = (1..n)
            .map(|i| classify(i, &history, 0, &self.params, view))
            .collect();
        build_state(n, self.last_action, opponents).expect("classified features form a valid state")
    }
}

impl Agent for TeamUp {
    fn name(&self) -> &str {
        &self.name
    }

    fn act(
        &mut self,
        game: &dyn Game,
        observation: &Observation<'_>,
    ) -> Result<Action, AgentError> {
        let stage = self.clock.tick(observation)?;
        if self.config.horizon.is_some_and(|h| stage > h) {
            return Err(AgentError::PastHorizon(stage));
        }
        let seat = observation.seat;
        let view = SeatView::new(game, seat);

        let Some(last) = observation.last_joint() else {
            let position = self
                .config
                .initial_position
                .draw(game.num_actions(seat), &mut self.rng)?;
            self.initial = Some(position);
            self.last_action = HighLevelAction::Lead;
            self.diagnostics = Some(StageDiagnostics {
                stage,
                state: None,
                action: HighLevelAction::Lead,
                replanned: false,
                values: None,
            });
            return Ok(position);
        };
        let last = crate::abstraction::rotate(last, seat);

        let state = self.observe_state(&view, observation);
        let index = self.model.space().index(&state);
        let mut replanned = false;
        if let Some((prev_index, prev_state, prev_action)) = self.previous.take() {
            let mut reward = observation.last_reward().unwrap_or(0.0);
            if self.config.online_shaping {
                reward += self.model.potentials().shaping_reward(&prev_state, &state);
            }
            if self
                .model
                .observe(prev_index, prev_action.index(), index, reward)
            {
                self.replan()?;
                replanned = true;
            }
        }

        // the indices need two completed stages
        let action = if stage <= 2 {
            HighLevelAction::Lead
        } else {
            HighLevelAction::from_index(self.policy[index])
        };
        let concrete = if stage <= 2 {
            self.initial.unwrap_or(last[0])
        } else {
            ground_action(action, &last, &view)
        };

        self.previous = Some((index, state.clone(), action));
        self.last_action = action;
        self.diagnostics = Some(StageDiagnostics {
            stage,
            state: Some(state),
            action,
            replanned,
            values: replanned.then(|| self.values.clone()),
        });
        Ok(concrete)
    }

    fn diagnostics(&self) -> Option<&StageDiagnostics> {
        self.diagnostics.as_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abstraction::ActionHistory;
    use crate::game::Lemonade;

    #[test]
    fn grounding_examples() {
        let g = Lemonade;
        assert_eq!(ground_action(HighLevelAction::Follow(1), &[0, 2, 5], &g), 8);
        assert_eq!(ground_action(HighLevelAction::Lead, &[7, 2, 5], &g), 7);
        assert_eq!(
            ground_action(HighLevelAction::Follow(2), &[0, 2, 11], &g),
            5
        );
    }

    #[test]
    fn initial_policy_leads_everywhere() {
        let agent = TeamUp::new(TeamUpConfig::default(), 3, 1).unwrap();
        for s in agent.model().space().states() {
            assert_eq!(agent.policy_action(&s), HighLevelAction::Lead);
            let i = agent.model().space().index(&s);
            let expected = agent.model().potentials().potential(&s);
            assert!((agent.values()[i] - expected).abs() < 1e-5);
        }
    }

    #[test]
    fn rejects_invalid_config() {
        let bad = TeamUpConfig {
            epsilon: 7.0,
            ..TeamUpConfig::default()
        };
        assert!(matches!(TeamUp::new(bad, 3, 0), Err(AgentError::Config(_))));
        let bad = TeamUpConfig {
            tolerance: 2.0,
            ..TeamUpConfig::default()
        };
        assert!(TeamUp::new(bad, 3, 0).is_err());
    }

    #[test]
    fn warmup_and_protocol() {
        let g = Lemonade;
        let config = TeamUpConfig {
            initial_position: InitialPosition::Fixed(4),
            ..TeamUpConfig::default()
        };
        let mut agent = TeamUp::new(config, 3, 9).unwrap();
        let mut history = ActionHistory::new(3);
        let mut utilities = Vec::new();
        let obs = Observation {
            seat: 1,
            history: &history,
            utilities: &utilities,
        };
        assert_eq!(agent.act(&g, &obs).unwrap(), 4);
        assert_eq!(agent.diagnostics().unwrap().action, HighLevelAction::Lead);
        // replaying stage 1 is a protocol violation
        assert_eq!(
            agent.act(&g, &obs),
            Err(AgentError::OutOfOrder {
                expected: 2,
                got: 1
            })
        );

        history.push(vec![0, 4, 9]).unwrap();
        utilities.push(g.utilities(&[0, 4, 9]));
        let obs = Observation {
            seat: 1,
            history: &history,
            utilities: &utilities,
        };
        assert_eq!(agent.act(&g, &obs).unwrap(), 4);
        let diag = agent.diagnostics().unwrap();
        assert_eq!(diag.state.as_ref().unwrap().to_string(), "(L,O,O)");
    }
}
