//! How much of a match a player spent in each class of abstract state.

use serde::{Deserialize, Serialize};

use super::emit::TraceRecord;
use super::{ArenaError, MatchResult};
use crate::abstraction::{classify, AbstractionParams, ActionHistory, BehaviorFeature};
use crate::game::{Game, Player, SeatView};
use crate::planner::{class_of, state_class, StateClass};

/// Fractions of the summarized stages spent in each state class.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StateVisitSummary {
    pub optimal: f64,
    pub worst: f64,
    pub other: f64,
    pub stages: usize,
}

/// Class of `planner`'s abstract state at the start of every stage of the
/// match. Stages before two joint actions exist count as [`StateClass::Other`].
///
/// A planner that reported diagnostics is judged by the state it saw itself;
/// any other seat is judged by classifying its own behavior and its
/// opponents' from the trace with `params`.
pub fn stage_classes(
    result: &MatchResult,
    planner: Player,
    params: &AbstractionParams,
    game: &dyn Game,
) -> Vec<StateClass> {
    let reported: Vec<Option<StateClass>> = result
        .stages
        .iter()
        .map(|r| {
            r.diagnostics[planner]
                .as_ref()
                .and_then(|d| d.state.as_ref())
                .map(state_class)
        })
        .collect();
    classes(&result.history(), &reported, planner, params, game)
}

/// [`stage_classes`] for a JSONL trace. Recorded planner states are used for
/// the seat that recorded them.
pub fn trace_stage_classes(
    records: &[TraceRecord],
    planner: Player,
    params: &AbstractionParams,
    game: &dyn Game,
) -> Result<Vec<StateClass>, ArenaError> {
    let players = game.num_players();
    let mut reported = Vec::with_capacity(records.len());
    for (i, record) in records.iter().enumerate() {
        let class = match (&record.planner_state, record.planner_seat) {
            (Some(text), Some(seat)) if seat == planner => Some(
                parse_state_class(text, players).map_err(|message| ArenaError::Replay {
                    stage: i + 1,
                    message,
                })?,
            ),
            _ => None,
        };
        reported.push(class);
    }
    let history =
        ActionHistory::from_stages(players, records.iter().map(|r| r.actions.clone()).collect())
            .map_err(|e| ArenaError::Replay {
                stage: 0,
                message: e.to_string(),
            })?;
    Ok(classes(&history, &reported, planner, params, game))
}

/// Class of a state written as `(o0,o1,...)`.
fn parse_state_class(text: &str, players: usize) -> Result<StateClass, String> {
    let inner = text
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| format!("malformed state {text:?}"))?;
    let features = inner
        .split(',')
        .map(str::parse::<BehaviorFeature>)
        .collect::<Result<Vec<_>, _>>()?;
    if features.len() != players {
        return Err(format!(
            "state {text:?} has {} features, expected {players}",
            features.len()
        ));
    }
    Ok(class_of(features[0], &features[1..]))
}

fn classes(
    history: &ActionHistory,
    reported: &[Option<StateClass>],
    planner: Player,
    params: &AbstractionParams,
    game: &dyn Game,
) -> Vec<StateClass> {
    let history = history.rotated(planner);
    let view = SeatView::new(game, planner);
    let n = history.players();
    reported
        .iter()
        .enumerate()
        .map(|(t, known)| {
            if t < 2 {
                return StateClass::Other;
            }
            if let Some(class) = known {
                return *class;
            }
            let before = history.prefix(t);
            let own = classify(0, &before, 0, params, &view);
            let opponents: Vec<BehaviorFeature> = (1..n)
                .map(|i| classify(i, &before, 0, params, &view))
                .collect();
            class_of(own, &opponents)
        })
        .collect()
}

/// Fractions of `classes` at stages `from..=to` (1-based).
pub fn summarize(classes: &[StateClass], from: usize, to: usize) -> StateVisitSummary {
    let picked: Vec<StateClass> = classes
        .iter()
        .enumerate()
        .filter(|(i, _)| i + 1 >= from && *i < to)
        .map(|(_, &c)| c)
        .collect();
    let total = picked.len();
    let share = |class: StateClass| {
        if total == 0 {
            0.0
        } else {
            picked.iter().filter(|&&c| c == class).count() as f64 / total as f64
        }
    };
    StateVisitSummary {
        optimal: share(StateClass::Optimal),
        worst: share(StateClass::Worst),
        other: share(StateClass::Other),
        stages: total,
    }
}

/// [`state_visit_summary`] restricted to stages `from..=to` (1-based).
pub fn state_visit_summary_between(
    result: &MatchResult,
    planner: Player,
    params: &AbstractionParams,
    game: &dyn Game,
    from: usize,
    to: usize,
) -> StateVisitSummary {
    summarize(&stage_classes(result, planner, params, game), from, to)
}

pub fn state_visit_summary(
    result: &MatchResult,
    planner: Player,
    params: &AbstractionParams,
    game: &dyn Game,
) -> StateVisitSummary {
    state_visit_summary_between(result, planner, params, game, 1, usize::MAX)
}
