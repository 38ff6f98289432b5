//! The interface every player in a repeated game implements.

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abstraction::ActionHistory;
use crate::game::{Action, Game, GameError, Player};
use crate::planner::vi::MdpError;
use crate::planner::StageDiagnostics;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AgentError {
    #[error("asked to act in stage {got}, expected stage {expected}")]
    OutOfOrder { expected: usize, got: usize },
    #[error("agent is seated at {expected}, observation is for seat {got}")]
    WrongSeat { expected: Player, got: Player },
    #[error("stage {0} is past the agent's horizon")]
    PastHorizon(usize),
    #[error("invalid agent configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Planning(#[from] MdpError),
}

/// What a player sees before choosing its action: every earlier joint action
/// and every earlier payoff vector.
#[derive(Debug, Clone, Copy)]
pub struct Observation<'a> {
    pub seat: Player,
    pub history: &'a ActionHistory,
    pub utilities: &'a [Vec<f64>],
}

impl Observation<'_> {
    /// The stage about to be played, 1-based.
    pub fn stage(&self) -> usize {
        self.history.current_stage()
    }

    pub fn last_joint(&self) -> Option<&[Action]> {
        self.history.last()
    }

    /// Own payoff in the previous stage.
    pub fn last_reward(&self) -> Option<f64> {
        self.utilities.last().map(|u| u[self.seat])
    }

    pub fn own_last(&self) -> Option<Action> {
        self.last_joint().map(|joint| joint[self.seat])
    }
}

/// A player in a repeated game. `act` is called exactly once per stage, in
/// order.
pub trait Agent: Send {
    fn name(&self) -> &str;

    fn act(&mut self, game: &dyn Game, observation: &Observation<'_>)
        -> Result<Action, AgentError>;

    /// Planner diagnostics for the stage just played, for agents that plan.
    fn diagnostics(&self) -> Option<&StageDiagnostics> {
        None
    }
}

/// How an agent picks its first location.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitialPosition {
    /// Uniform draw from the agent's seeded stream.
    #[default]
    Random,
    Fixed(Action),
}

impl InitialPosition {
    pub fn draw<R: Rng>(self, actions: usize, rng: &mut R) -> Result<Action, AgentError> {
        match self {
            InitialPosition::Random => Ok(rng.gen_range(0..actions)),
            InitialPosition::Fixed(a) if a < actions => Ok(a),
            InitialPosition::Fixed(a) => Err(AgentError::Config(format!(
                "initial position {a} out of range ({actions} actions)"
            ))),
        }
    }
}

/// Stage counter shared by the agents: rejects skipped or repeated stages.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct StageClock {
    seat: Option<Player>,
    next: usize,
}

impl StageClock {
    pub(crate) fn new() -> Self {
        Self {
            seat: None,
            next: 1,
        }
    }

    pub(crate) fn tick(&mut self, observation: &Observation<'_>) -> Result<usize, AgentError> {
        let stage = observation.stage();
        if stage != self.next {
            return Err(AgentError::OutOfOrder {
                expected: self.next,
                got: stage,
            });
        }
        match self.seat {
            Some(seat) if seat != observation.seat => {
                return Err(AgentError::WrongSeat {
                    expected: seat,
                    got: observation.seat,
                })
            }
            _ => self.seat = Some(observation.seat),
        }
        self.next += 1;
        Ok(stage)
    }
}
