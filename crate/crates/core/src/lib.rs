//! Lead/follow planning in repeated constant-sum games.
//!
//! The crate has five layers:
//!
//! * [`game`]: the [`Game`] trait, best-response sets and pure equilibria,
//!   the three-player [`Lemonade`] stand game and table-driven [`MatrixGame`]s.
//! * [`abstraction`]: lead and follow indices over an action history, the
//!   per-player behavioral features they induce, and the abstract state space.
//! * [`planner`]: the [`TeamUp`] agent, a model-based planner over abstract
//!   states with potential-based exploration.
//! * [`zoo`]: simple scripted and adaptive opponents.
//! * [`arena`]: seeded matches, round-robin tournaments, traces and replay.
//!
//! ```
//! use teamup::game::{Game, Lemonade};
//!
//! assert_eq!(Lemonade.utilities(&[0, 6, 3]), vec![9.0, 9.0, 6.0]);
//! ```

pub mod abstraction;
pub mod agent;
pub mod arena;
pub mod game;
pub mod planner;
pub mod zoo;

pub use abstraction::{
    AbstractState, AbstractionParams, ActionHistory, BehaviorFeature, HighLevelAction, StateSpace,
};
pub use agent::{Agent, AgentError, InitialPosition, Observation};
pub use arena::{
    run_match, run_tournament, ArenaError, MatchConfig, MatchResult, TournamentConfig,
};
pub use game::{Game, GameDescription, GameError, Lemonade, MatrixGame, Metric};
pub use planner::{StateClass, TeamUp, TeamUpConfig};
pub use zoo::{AgentKind, AgentSpec};
