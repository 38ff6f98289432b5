//! Normal-form stage games.
//!
//! A [`Game`] describes an n-player simultaneous-move game through three
//! oracles: the payoff of a joint action, a distance between actions of the
//! same player, and a pairwise best response of one player to a single
//! opponent's action. The free functions in this module (best responses,
//! considered and reciprocal best responses, pure Nash equilibria) work on any
//! implementor.
//!
//! Two games ship with the crate: the [`Lemonade`] stand game, and
//! [`MatrixGame`], a dense payoff table loadable from JSON.

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Index of a player, `0..n`.
pub type Player = usize;

/// Index of an action, `0..m` for the player's action count `m`.
pub type Action = usize;

/// Default cap on the number of profiles [`pure_nash_equilibria`] will enumerate.
pub const DEFAULT_PROFILE_CAP: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GameError {
    #[error("joint action has {got} entries, game has {expected} players")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("action {action} out of range for player {player} ({count} actions)")]
    ActionOutOfRange {
        player: Player,
        action: Action,
        count: usize,
    },
    #[error("player {0} out of range")]
    PlayerOutOfRange(Player),
    #[error("players must differ, got {0} twice")]
    SamePlayer(Player),
    #[error("distance to an empty action set is undefined")]
    EmptySet,
    #[error("game has {size} joint actions, enumeration cap is {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("invalid game description: {0}")]
    InvalidDescription(String),
}

/// An n-player normal-form game with an action metric and a pairwise
/// best-response oracle.
pub trait Game: Send + Sync {
    fn num_players(&self) -> usize;

    fn num_actions(&self, player: Player) -> usize;

    /// Per-player utilities of a joint action. Callers are expected to have
    /// validated the profile; see [`payoff`] for the checked entry point.
    fn utilities(&self, profile: &[Action]) -> Vec<f64>;

    /// Distance between two actions. Must be a metric.
    fn distance(&self, a: Action, b: Action) -> f64;

    /// Best responses of `player` to `opponent` playing `action`, ignoring
    /// everyone else. Never empty.
    fn pairwise_best_response(
        &self,
        player: Player,
        opponent: Player,
        action: Action,
    ) -> Vec<Action>;

    /// The fixed payoff total, if the game is constant-sum.
    fn constant_sum(&self) -> Option<f64> {
        None
    }

    /// Short human-readable name.
    fn name(&self) -> &str;
}

pub fn check_profile<G: Game + ?Sized>(game: &G, profile: &[Action]) -> Result<(), GameError> {
    let n = game.num_players();
    if profile.len() != n {
        return Err(GameError::DimensionMismatch {
            expected: n,
            got: profile.len(),
        });
    }
    for (player, &action) in profile.iter().enumerate() {
        check_action(game, player, action)?;
    }
    Ok(())
}

fn check_player<G: Game + ?Sized>(game: &G, player: Player) -> Result<(), GameError> {
    if player >= game.num_players() {
        return Err(GameError::PlayerOutOfRange(player));
    }
    Ok(())
}

fn check_action<G: Game + ?Sized>(
    game: &G,
    player: Player,
    action: Action,
) -> Result<(), GameError> {
    let count = game.num_actions(player);
    if action >= count {
        return Err(GameError::ActionOutOfRange {
            player,
            action,
            count,
        });
    }
    Ok(())
}

/// Checked payoff of a joint action.
pub fn payoff<G: Game + ?Sized>(game: &G, profile: &[Action]) -> Result<Vec<f64>, GameError> {
    check_profile(game, profile)?;
    Ok(game.utilities(profile))
}

/// The set of actions of `player` maximizing its utility against the rest of
/// `profile`. Entry `profile[player]` is ignored.
pub fn best_response_set<G: Game + ?Sized>(
    game: &G,
    player: Player,
    profile: &[Action],
) -> Result<Vec<Action>, GameError> {
    check_player(game, player)?;
    check_others(game, player, profile)?;
    Ok(best_responses_unchecked(game, player, profile))
}

fn check_others<G: Game + ?Sized>(
    game: &G,
    player: Player,
    profile: &[Action],
) -> Result<(), GameError> {
    let n = game.num_players();
    if profile.len() != n {
        return Err(GameError::DimensionMismatch {
            expected: n,
            got: profile.len(),
        });
    }
    for (other, &action) in profile.iter().enumerate() {
        if other != player {
            check_action(game, other, action)?;
        }
    }
    Ok(())
}

fn best_responses_unchecked<G: Game + ?Sized>(
    game: &G,
    player: Player,
    profile: &[Action],
) -> Vec<Action> {
    let mut probe = profile.to_vec();
    let mut best = f64::NEG_INFINITY;
    let mut set = Vec::new();
    for action in 0..game.num_actions(player) {
        probe[player] = action;
        let value = game.utilities(&probe)[player];
        if value > best {
            best = value;
            set.clear();
            set.push(action);
        } else if value == best {
            set.push(action);
        }
    }
    set
}

/// The members of `player`'s best-response set that maximize `beneficiary`'s
/// utility.
pub fn considered_best_response<G: Game + ?Sized>(
    game: &G,
    player: Player,
    beneficiary: Player,
    profile: &[Action],
) -> Result<Vec<Action>, GameError> {
    check_player(game, player)?;
    check_player(game, beneficiary)?;
    if player == beneficiary {
        return Err(GameError::SamePlayer(player));
    }
    check_others(game, player, profile)?;
    Ok(considered_unchecked(game, player, beneficiary, profile))
}

fn considered_unchecked<G: Game + ?Sized>(
    game: &G,
    player: Player,
    beneficiary: Player,
    profile: &[Action],
) -> Vec<Action> {
    let mut probe = profile.to_vec();
    let mut best = f64::NEG_INFINITY;
    let mut set = Vec::new();
    for action in best_responses_unchecked(game, player, profile) {
        probe[player] = action;
        let value = game.utilities(&probe)[beneficiary];
        if value > best {
            best = value;
            set.clear();
            set.push(action);
        } else if value == best {
            set.push(action);
        }
    }
    set
}

/// Considered best responses of `player` towards `partner` after which
/// `partner`'s current action `profile[partner]` is itself a best response.
///
/// An empty result means no reciprocal best response exists at this profile.
pub fn reciprocal_best_response<G: Game + ?Sized>(
    game: &G,
    player: Player,
    partner: Player,
    profile: &[Action],
) -> Result<Vec<Action>, GameError> {
    let considered = considered_best_response(game, player, partner, profile)?;
    let mut probe = profile.to_vec();
    Ok(considered
        .into_iter()
        .filter(|&action| {
            probe[player] = action;
            best_responses_unchecked(game, partner, &probe).contains(&profile[partner])
        })
        .collect())
}

/// Number of joint actions, or `None` on overflow.
pub fn profile_count<G: Game + ?Sized>(game: &G) -> Option<usize> {
    (0..game.num_players()).try_fold(1usize, |acc, p| acc.checked_mul(game.num_actions(p)))
}

/// Every joint action in lexicographic order (player 0 most significant).
pub fn profiles<G: Game + ?Sized>(game: &G) -> impl Iterator<Item = Vec<Action>> {
    (0..game.num_players())
        .map(|p| 0..game.num_actions(p))
        .multi_cartesian_product()
}

/// All pure Nash equilibria, by exhaustive enumeration.
pub fn pure_nash_equilibria<G: Game + ?Sized>(game: &G) -> Result<Vec<Vec<Action>>, GameError> {
    pure_nash_equilibria_capped(game, DEFAULT_PROFILE_CAP)
}

pub fn pure_nash_equilibria_capped<G: Game + ?Sized>(
    game: &G,
    cap: usize,
) -> Result<Vec<Vec<Action>>, GameError> {
    let size = profile_count(game).unwrap_or(usize::MAX);
    if size > cap {
        return Err(GameError::TooLarge { size, cap });
    }
    let n = game.num_players();
    // A single player has a trivially empty opponent set; the product below
    // still enumerates its actions.
    Ok(profiles(game)
        .filter(|profile| {
            (0..n).all(|player| {
                best_responses_unchecked(game, player, profile).contains(&profile[player])
            })
        })
        .collect())
}

/// Minimum distance from `action` to any member of `set`.
pub fn distance_to_set<G: Game + ?Sized>(
    game: &G,
    action: Action,
    set: &[Action],
) -> Result<f64, GameError> {
    set.iter()
        .map(|&s| game.distance(action, s))
        .min_by(f64::total_cmp)
        .ok_or(GameError::EmptySet)
}

/// Largest distance between any two actions of `player`.
pub fn max_distance<G: Game + ?Sized>(game: &G, player: Player) -> f64 {
    let m = game.num_actions(player);
    (0..m)
        .cartesian_product(0..m)
        .map(|(x, y)| game.distance(x, y))
        .fold(0.0, f64::max)
}

/// The Lemonade Stand Game: three vendors on a ring of twelve locations.
///
/// Distinct locations earn the arc to the nearest vendor clockwise plus the
/// arc to the nearest vendor anticlockwise. Two vendors sharing a spot get 6
/// each and the third gets 12; all three on one spot get 8 each.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Lemonade;

impl Lemonade {
    pub const PLAYERS: usize = 3;
    pub const LOCATIONS: usize = 12;
    pub const TOTAL: f64 = 24.0;

    /// The spot directly across the ring.
    pub fn opposite(location: Action) -> Action {
        (location + Self::LOCATIONS / 2) % Self::LOCATIONS
    }

    pub fn ring_distance(a: Action, b: Action) -> usize {
        let d = a.abs_diff(b) % Self::LOCATIONS;
        d.min(Self::LOCATIONS - d)
    }
}

impl Game for Lemonade {
    fn num_players(&self) -> usize {
        Self::PLAYERS
    }

    fn num_actions(&self, _player: Player) -> usize {
        Self::LOCATIONS
    }

    fn utilities(&self, profile: &[Action]) -> Vec<f64> {
        let m = Self::LOCATIONS;
        let [a, b, c] = [profile[0], profile[1], profile[2]];
        if a == b && b == c {
            return vec![8.0; 3];
        }
        if a == b {
            return vec![6.0, 6.0, 12.0];
        }
        if a == c {
            return vec![6.0, 12.0, 6.0];
        }
        if b == c {
            return vec![12.0, 6.0, 6.0];
        }
        profile
            .iter()
            .enumerate()
            .map(|(i, &me)| {
                let others = profile
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, &x)| x);
                let clockwise = others.clone().map(|x| (x + m - me) % m).min().unwrap_or(0);
                let anticlockwise = others.map(|x| (me + m - x) % m).min().unwrap_or(0);
                (clockwise + anticlockwise) as f64
            })
            .collect()
    }

    fn distance(&self, a: Action, b: Action) -> f64 {
        Self::ring_distance(a, b) as f64
    }

    fn pairwise_best_response(
        &self,
        _player: Player,
        _opponent: Player,
        action: Action,
    ) -> Vec<Action> {
        vec![Self::opposite(action)]
    }

    fn constant_sum(&self) -> Option<f64> {
        Some(Self::TOTAL)
    }

    fn name(&self) -> &str {
        "lemonade"
    }
}

/// A game seen from one seat: player 0 is `seat`, the others follow in
/// cyclic order.
#[derive(Clone, Copy)]
pub struct SeatView<'a, G: ?Sized> {
    game: &'a G,
    seat: Player,
}

impl<'a, G: Game + ?Sized> SeatView<'a, G> {
    pub fn new(game: &'a G, seat: Player) -> Self {
        Self { game, seat }
    }

    /// Absolute seat of relative player `player`.
    pub fn absolute(&self, player: Player) -> Player {
        (self.seat + player) % self.game.num_players()
    }

    /// Relative index of absolute seat `seat`.
    pub fn relative(&self, seat: Player) -> Player {
        let n = self.game.num_players();
        (seat + n - self.seat) % n
    }
}

impl<G: Game + ?Sized> Game for SeatView<'_, G> {
    fn num_players(&self) -> usize {
        self.game.num_players()
    }

    fn num_actions(&self, player: Player) -> usize {
        self.game.num_actions(self.absolute(player))
    }

    fn utilities(&self, profile: &[Action]) -> Vec<f64> {
        let n = profile.len();
        let absolute: Vec<Action> = (0..n).map(|seat| profile[self.relative(seat)]).collect();
        let utilities = self.game.utilities(&absolute);
        (0..n).map(|p| utilities[self.absolute(p)]).collect()
    }

    fn distance(&self, a: Action, b: Action) -> f64 {
        self.game.distance(a, b)
    }

    fn pairwise_best_response(
        &self,
        player: Player,
        opponent: Player,
        action: Action,
    ) -> Vec<Action> {
        self.game
            .pairwise_best_response(self.absolute(player), self.absolute(opponent), action)
    }

    fn constant_sum(&self) -> Option<f64> {
        self.game.constant_sum()
    }

    fn name(&self) -> &str {
        self.game.name()
    }
}

/// Distance used by a [`MatrixGame`] between two actions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    /// 0 for equal actions, 1 otherwise.
    #[default]
    Discrete,
    /// |a - b|.
    Line,
    /// Shortest way around a ring of the given size.
    Ring(usize),
}

impl Metric {
    pub fn eval(self, a: Action, b: Action) -> f64 {
        match self {
            Metric::Discrete => f64::from(u8::from(a != b)),
            Metric::Line => a.abs_diff(b) as f64,
            Metric::Ring(size) => {
                let d = a.abs_diff(b) % size;
                d.min(size - d) as f64
            }
        }
    }
}

/// On-disk description of a [`MatrixGame`].
///
/// `payoffs` lists one utility vector per joint action in lexicographic order,
/// player 0 most significant:
///
/// ```json
/// { "name": "pennies", "actions": [2, 2],
///   "payoffs": [[1, -1], [-1, 1], [-1, 1], [1, -1]],
///   "constant_sum": 0 }
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GameDescription {
    #[serde(default)]
    pub name: Option<String>,
    pub actions: Vec<usize>,
    pub payoffs: Vec<Vec<f64>>,
    #[serde(default)]
    pub metric: Metric,
    #[serde(default)]
    pub constant_sum: Option<f64>,
}

/// A dense payoff table.
///
/// The pairwise best response of `i` to `j` playing `a` maximizes `i`'s
/// utility averaged over the remaining players' actions, taken uniformly. For
/// two players that is the ordinary best response.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixGame {
    name: String,
    actions: Vec<usize>,
    payoffs: Vec<Vec<f64>>,
    metric: Metric,
    constant_sum: Option<f64>,
}

const CONSTANT_SUM_TOLERANCE: f64 = 1e-9;

impl MatrixGame {
    pub fn new(description: GameDescription) -> Result<Self, GameError> {
        let GameDescription {
            name,
            actions,
            payoffs,
            metric,
            constant_sum,
        } = description;
        let invalid = |msg: String| Err(GameError::InvalidDescription(msg));
        if actions.is_empty() {
            return invalid("at least one player is required".into());
        }
        if actions.contains(&0) {
            return invalid("every player needs at least one action".into());
        }
        let expected = actions
            .iter()
            .try_fold(1usize, |acc, &m| acc.checked_mul(m))
            .ok_or_else(|| GameError::InvalidDescription("payoff table too large".into()))?;
        if payoffs.len() != expected {
            return invalid(format!(
                "expected {expected} payoff rows, found {}",
                payoffs.len()
            ));
        }
        let n = actions.len();
        if let Some(row) = payoffs.iter().position(|row| row.len() != n) {
            return invalid(format!("payoff row {row} does not have {n} entries"));
        }
        if let Metric::Ring(size) = metric {
            if actions.iter().any(|&m| m > size) || size == 0 {
                return invalid(format!("ring of size {size} cannot hold every action"));
            }
        }
        if let Some(total) = constant_sum {
            if let Some(row) = payoffs.iter().position(|row| {
                let sum: f64 = row.iter().sum();
                (sum - total).abs() > CONSTANT_SUM_TOLERANCE * total.abs().max(1.0)
            }) {
                return invalid(format!("payoff row {row} does not sum to {total}"));
            }
        }
        Ok(Self {
            name: name.unwrap_or_else(|| "matrix".into()),
            actions,
            payoffs,
            metric,
            constant_sum,
        })
    }

    pub fn from_json(text: &str) -> Result<Self, GameError> {
        let description: GameDescription =
            serde_json::from_str(text).map_err(|e| GameError::InvalidDescription(e.to_string()))?;
        Self::new(description)
    }

    pub fn description(&self) -> GameDescription {
        GameDescription {
            name: Some(self.name.clone()),
            actions: self.actions.clone(),
            payoffs: self.payoffs.clone(),
            metric: self.metric,
            constant_sum: self.constant_sum,
        }
    }

    fn row_index(&self, profile: &[Action]) -> usize {
        profile
            .iter()
            .zip(&self.actions)
            .fold(0, |acc, (&a, &m)| acc * m + a)
    }
}

impl Game for MatrixGame {
    fn num_players(&self) -> usize {
        self.actions.len()
    }

    fn num_actions(&self, player: Player) -> usize {
        self.actions[player]
    }

    fn utilities(&self, profile: &[Action]) -> Vec<f64> {
        self.payoffs[self.row_index(profile)].clone()
    }

    fn distance(&self, a: Action, b: Action) -> f64 {
        self.metric.eval(a, b)
    }

    fn pairwise_best_response(
        &self,
        player: Player,
        opponent: Player,
        action: Action,
    ) -> Vec<Action> {
        let n = self.num_players();
        let rest: Vec<Player> = (0..n).filter(|&p| p != player && p != opponent).collect();
        let mut best = f64::NEG_INFINITY;
        let mut set = Vec::new();
        for own in 0..self.actions[player] {
            let mut profile = vec![0; n];
            profile[player] = own;
            profile[opponent] = action;
            let mut total = 0.0;
            let mut count = 0usize;
            for fill in rest
                .iter()
                .map(|&p| 0..self.actions[p])
                .multi_cartesian_product()
            {
                for (&p, &a) in rest.iter().zip(&fill) {
                    profile[p] = a;
                }
                total += self.payoffs[self.row_index(&profile)][player];
                count += 1;
            }
            // multi_cartesian_product of nothing yields nothing
            if rest.is_empty() {
                total = self.payoffs[self.row_index(&profile)][player];
                count = 1;
            }
            let value = total / count as f64;
            if value > best {
                best = value;
                set.clear();
                set.push(own);
            } else if value == best {
                set.push(own);
            }
        }
        set
    }

    fn constant_sum(&self) -> Option<f64> {
        self.constant_sum
    }

    fn name(&self) -> &str {
        &self.name
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pennies() -> MatrixGame {
        MatrixGame::from_json(
            r#"{"actions":[2,2],"payoffs":[[1,-1],[-1,1],[-1,1],[1,-1]],"constant_sum":0}"#,
        )
        .unwrap()
    }

    fn coordination() -> MatrixGame {
        MatrixGame::from_json(r#"{"actions":[2,2],"payoffs":[[1,1],[0,0],[0,0],[1,1]]}"#).unwrap()
    }

    #[test]
    fn lemonade_payoff_examples() {
        let g = Lemonade;
        assert_eq!(payoff(&g, &[5, 5, 5]).unwrap(), vec![8.0, 8.0, 8.0]);
        assert_eq!(payoff(&g, &[3, 3, 9]).unwrap(), vec![6.0, 6.0, 12.0]);
        assert_eq!(payoff(&g, &[0, 4, 8]).unwrap(), vec![8.0, 8.0, 8.0]);
        assert_eq!(payoff(&g, &[0, 6, 3]).unwrap(), vec![9.0, 9.0, 6.0]);
        assert_eq!(payoff(&g, &[9, 3, 9]).unwrap(), vec![6.0, 12.0, 6.0]);
    }

    #[test]
    fn payoff_rejects_bad_profiles() {
        assert_eq!(
            payoff(&Lemonade, &[1, 2]),
            Err(GameError::DimensionMismatch {
                expected: 3,
                got: 2
            })
        );
        assert!(matches!(
            payoff(&Lemonade, &[1, 12, 0]),
            Err(GameError::ActionOutOfRange {
                player: 1,
                action: 12,
                ..
            })
        ));
    }

    #[test]
    fn best_response_geometry() {
        let g = Lemonade;
        // the responder's own slot is ignored
        assert_eq!(
            best_response_set(&g, 2, &[0, 3, 0]).unwrap(),
            (4..12).collect::<Vec<_>>()
        );
        assert_eq!(
            best_response_set(&g, 2, &[0, 6, 11]).unwrap(),
            (0..12).collect::<Vec<_>>()
        );
        let mut expected: Vec<_> = (0..12).collect();
        expected.retain(|&x| x != 5);
        assert_eq!(best_response_set(&g, 0, &[0, 5, 5]).unwrap(), expected);
    }

    #[test]
    fn considered_best_response_examples() {
        let g = Lemonade;
        // player 2 responds, player 0 at 0 benefits, player 1 at 3
        assert_eq!(
            considered_best_response(&g, 2, 0, &[0, 3, 0]).unwrap(),
            vec![4]
        );
        assert_eq!(g.utilities(&[0, 3, 4])[0], 11.0);
        assert_eq!(
            considered_best_response(&g, 2, 2, &[0, 3, 0]),
            Err(GameError::SamePlayer(2))
        );

        let single = MatrixGame::from_json(r#"{"actions":[1,1],"payoffs":[[0,0]]}"#).unwrap();
        assert_eq!(
            considered_best_response(&single, 0, 1, &[0, 0]).unwrap(),
            vec![0]
        );
    }

    #[test]
    fn considered_best_response_against_opposite_pair() {
        // Oracle: scan every location for the beneficiary's payoff by hand.
        let g = Lemonade;
        let mut best = f64::NEG_INFINITY;
        let mut expected = Vec::new();
        for x in 0..12 {
            let v = g.utilities(&[0, 6, x])[0];
            if v > best {
                best = v;
                expected = vec![x];
            } else if v == best {
                expected.push(x);
            }
        }
        assert_eq!(
            considered_best_response(&g, 2, 0, &[0, 6, 0]).unwrap(),
            expected
        );
        // sharing the other opponent's spot hands the beneficiary 12
        assert_eq!(expected, vec![6]);
        assert_eq!(best, 12.0);
    }

    #[test]
    fn reciprocal_best_response_examples() {
        let g = Lemonade;
        assert_eq!(
            reciprocal_best_response(&g, 2, 0, &[0, 3, 0]).unwrap(),
            vec![4]
        );
        assert!(best_response_set(&g, 0, &[0, 3, 4]).unwrap().contains(&0));

        let p = pennies();
        let empty = (0..2)
            .flat_map(|a| (0..2).map(move |b| vec![a, b]))
            .any(|profile| {
                reciprocal_best_response(&p, 0, 1, &profile)
                    .unwrap()
                    .is_empty()
            });
        assert!(empty);
    }

    #[test]
    fn nash_of_small_games() {
        assert_eq!(
            pure_nash_equilibria(&coordination()).unwrap(),
            vec![vec![0, 0], vec![1, 1]]
        );
        assert!(pure_nash_equilibria(&pennies()).unwrap().is_empty());
        assert_eq!(
            pure_nash_equilibria_capped(&Lemonade, 1000),
            Err(GameError::TooLarge {
                size: 1728,
                cap: 1000
            })
        );
    }

    #[test]
    fn reciprocal_exists_at_every_equilibrium() {
        let g = Lemonade;
        for profile in pure_nash_equilibria(&g).unwrap() {
            for i in 0..3 {
                for j in (0..3).filter(|&j| j != i) {
                    assert!(
                        !reciprocal_best_response(&g, i, j, &profile)
                            .unwrap()
                            .is_empty(),
                        "{profile:?} {i}->{j}"
                    );
                }
            }
        }
    }

    #[test]
    fn set_distance() {
        let g = Lemonade;
        assert_eq!(distance_to_set(&g, 9, &[8]).unwrap(), 1.0);
        assert_eq!(distance_to_set(&g, 0, &[5, 7]).unwrap(), 5.0);
        assert_eq!(distance_to_set(&g, 4, &[1, 4]).unwrap(), 0.0);
        assert_eq!(distance_to_set(&g, 4, &[]), Err(GameError::EmptySet));
        assert_eq!(max_distance(&g, 0), 6.0);
    }

    #[test]
    fn ring_metric_axioms() {
        let g = Lemonade;
        for x in 0..12 {
            assert_eq!(g.distance(x, x), 0.0);
            for y in 0..12 {
                assert_eq!(g.distance(x, y), g.distance(y, x));
                for z in 0..12 {
                    assert!(g.distance(x, z) <= g.distance(x, y) + g.distance(y, z));
                }
            }
        }
    }

    #[test]
    fn matrix_description_validation() {
        assert!(MatrixGame::from_json(r#"{"actions":[2,2],"payoffs":[[1,1]]}"#).is_err());
        assert!(MatrixGame::from_json(r#"{"actions":[2],"payoffs":[[1],[1,2]]}"#).is_err());
        assert!(
            MatrixGame::from_json(r#"{"actions":[1,1],"payoffs":[[1,2]],"constant_sum":4}"#)
                .is_err()
        );
        assert!(MatrixGame::from_json("not json").is_err());
        let g = pennies();
        assert_eq!(MatrixGame::new(g.description()).unwrap(), g);
    }

    #[test]
    fn seat_view_rotates_players() {
        let g = MatrixGame::from_json(
            r#"{"actions":[2,3],"payoffs":[[0,1],[2,3],[4,5],[6,7],[8,9],[10,11]]}"#,
        )
        .unwrap();
        let view = SeatView::new(&g, 1);
        assert_eq!(view.num_actions(0), 3);
        assert_eq!(view.num_actions(1), 2);
        // relative (own=2, other=1) is absolute (1, 2)
        assert_eq!(view.utilities(&[2, 1]), vec![11.0, 10.0]);
        assert_eq!(view.relative(0), 1);
        assert_eq!(view.absolute(1), 0);
        assert_eq!(
            view.pairwise_best_response(0, 1, 0),
            g.pairwise_best_response(1, 0, 0)
        );
    }

    #[test]
    fn matrix_pairwise_best_response() {
        let p = pennies();
        // row player matches, column player mismatches
        assert_eq!(p.pairwise_best_response(0, 1, 1), vec![1]);
        assert_eq!(p.pairwise_best_response(1, 0, 1), vec![0]);
        assert_eq!(Metric::Ring(5).eval(0, 4), 1.0);
        assert_eq!(Metric::Line.eval(0, 4), 4.0);
        assert_eq!(Metric::Discrete.eval(2, 2), 0.0);
    }
}
