//! Lead and follow indices, behavioral features, and the abstract state.
//!
//! A player's lead index measures how far its recent moves are from standing
//! still; its follow index towards another player measures how far its moves
//! are from a best response to that player's previous move. Both are
//! discounted, normalized and negated, so 0 means an exact ideal type and the
//! floor `f_min = -(max distance)^ρ` is the worst possible value.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::game::{distance_to_set, max_distance, Action, Game, Player};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AbstractionError {
    #[error("response rate must lie in (0, 1], got {0}")]
    ResponseRate(f64),
    #[error("distance exponent must be positive, got {0}")]
    DistanceExponent(f64),
    #[error("tolerance must lie in [0, 1], got {0}")]
    Tolerance(f64),
    #[error("indices need at least two past stages, history has {0}")]
    InsufficientHistory(usize),
    #[error("a player cannot follow itself ({0})")]
    SelfFollow(Player),
    #[error("histories have different lengths ({0} and {1})")]
    RaggedHistory(usize, usize),
    #[error("expected {expected} opponent features, got {got}")]
    FeatureCount { expected: usize, got: usize },
    #[error("player {0} out of range")]
    PlayerOutOfRange(Player),
    #[error("joint action has {got} entries, expected {expected}")]
    JointActionLength { expected: usize, got: usize },
}

/// Parameters of the lead/follow indices and the classification threshold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AbstractionParams {
    /// γ in (0, 1]: weight decay per stage into the past.
    pub response_rate: f64,
    /// ρ > 0: exponent applied to each distance.
    pub distance_exponent: f64,
    /// δ in [0, 1]: fraction of the index floor that is still tolerated.
    pub tolerance: f64,
}

impl AbstractionParams {
    pub fn new(
        response_rate: f64,
        distance_exponent: f64,
        tolerance: f64,
    ) -> Result<Self, AbstractionError> {
        let params = Self {
            response_rate,
            distance_exponent,
            tolerance,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<(), AbstractionError> {
        if !(self.response_rate > 0.0 && self.response_rate <= 1.0) {
            return Err(AbstractionError::ResponseRate(self.response_rate));
        }
        if !(self.distance_exponent > 0.0 && self.distance_exponent.is_finite()) {
            return Err(AbstractionError::DistanceExponent(self.distance_exponent));
        }
        if !(0.0..=1.0).contains(&self.tolerance) {
            return Err(AbstractionError::Tolerance(self.tolerance));
        }
        Ok(())
    }
}

impl Default for AbstractionParams {
    /// γ = 0.05, ρ = 0.5, δ = 0.3.
    fn default() -> Self {
        Self {
            response_rate: 0.05,
            distance_exponent: 0.5,
            tolerance: 0.3,
        }
    }
}

/// Joint actions observed so far, one entry per completed stage.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ActionHistory {
    players: usize,
    stages: Vec<Vec<Action>>,
}

impl ActionHistory {
    pub fn new(players: usize) -> Self {
        Self {
            players,
            stages: Vec::new(),
        }
    }

    pub fn from_stages(players: usize, stages: Vec<Vec<Action>>) -> Result<Self, AbstractionError> {
        let mut history = Self::new(players);
        for joint in stages {
            history.push(joint)?;
        }
        Ok(history)
    }

    pub fn push(&mut self, joint: Vec<Action>) -> Result<(), AbstractionError> {
        if joint.len() != self.players {
            return Err(AbstractionError::JointActionLength {
                expected: self.players,
                got: joint.len(),
            });
        }
        self.stages.push(joint);
        Ok(())
    }

    pub fn players(&self) -> usize {
        self.players
    }

    /// Number of completed stages, `t - 1`.
    pub fn len(&self) -> usize {
        self.stages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stages.is_empty()
    }

    /// The stage about to be played, 1-based.
    pub fn current_stage(&self) -> usize {
        self.stages.len() + 1
    }

    pub fn stages(&self) -> &[Vec<Action>] {
        &self.stages
    }

    pub fn last(&self) -> Option<&[Action]> {
        self.stages.last().map(Vec::as_slice)
    }

    /// The action sequence of one player.
    pub fn actions_of(&self, player: Player) -> Vec<Action> {
        self.stages.iter().map(|joint| joint[player]).collect()
    }

    /// The first `len` stages.
    pub fn prefix(&self, len: usize) -> ActionHistory {
        Self {
            players: self.players,
            stages: self.stages[..len.min(self.stages.len())].to_vec(),
        }
    }

    /// Reindex players so that `seat` becomes player 0, keeping cyclic order.
    pub fn rotated(&self, seat: Player) -> ActionHistory {
        Self {
            players: self.players,
            stages: self
                .stages
                .iter()
                .map(|joint| rotate(joint, seat))
                .collect(),
        }
    }
}

/// `joint` reindexed so that `seat` comes first.
pub fn rotate<T: Clone>(joint: &[T], seat: Player) -> Vec<T> {
    let n = joint.len();
    (0..n).map(|k| joint[(seat + k) % n].clone()).collect()
}

/// Normalizer Γ = Σ_{k=2}^{t-1} γ^{t-1-k} for a history of `len` = t - 1 stages.
pub fn normalizer(response_rate: f64, len: usize) -> f64 {
    let mut weight = 1.0;
    let mut total = 0.0;
    for _ in 1..len {
        total += weight;
        weight *= response_rate;
    }
    total
}

/// Weighted mean of `distance(k)^ρ` for k = 1..len (0-based, k indexes the
/// later element of each lag-one pair), most recent weighted 1, negated.
fn discounted_index(
    len: usize,
    params: &AbstractionParams,
    mut distance: impl FnMut(usize) -> f64,
) -> f64 {
    let mut weight = 1.0;
    let mut gamma = 0.0;
    let mut total = 0.0;
    for k in (1..len).rev() {
        let d = distance(k);
        if d != 0.0 {
            total += weight * d.powf(params.distance_exponent);
        }
        gamma += weight;
        weight *= params.response_rate;
        // older terms would add exactly zero
        if weight == 0.0 {
            break;
        }
    }
    if total == 0.0 {
        0.0
    } else {
        -total / gamma
    }
}

/// Lead index of a single action sequence (the player's own actions from
/// stage 1 to t - 1).
pub fn lead_index<G: Game + ?Sized>(
    actions: &[Action],
    params: &AbstractionParams,
    game: &G,
) -> Result<f64, AbstractionError> {
    if actions.len() < 2 {
        return Err(AbstractionError::InsufficientHistory(actions.len()));
    }
    Ok(discounted_index(actions.len(), params, |k| {
        game.distance(actions[k], actions[k - 1])
    }))
}

/// Follow index of `player` (actions `own`) towards `target` (actions
/// `theirs`).
pub fn follow_index<G: Game + ?Sized>(
    player: Player,
    own: &[Action],
    target: Player,
    theirs: &[Action],
    params: &AbstractionParams,
    game: &G,
) -> Result<f64, AbstractionError> {
    if player == target {
        return Err(AbstractionError::SelfFollow(player));
    }
    if own.len() != theirs.len() {
        return Err(AbstractionError::RaggedHistory(own.len(), theirs.len()));
    }
    if own.len() < 2 {
        return Err(AbstractionError::InsufficientHistory(own.len()));
    }
    Ok(discounted_index(own.len(), params, |k| {
        let responses = game.pairwise_best_response(player, target, theirs[k - 1]);
        distance_to_set(game, own[k], &responses).expect("pairwise best response is never empty")
    }))
}

/// Index floor and classification threshold `(f_min, B)` for one player.
pub fn feature_floor<G: Game + ?Sized>(
    params: &AbstractionParams,
    game: &G,
    player: Player,
) -> (f64, f64) {
    let floor = -max_distance(game, player).powf(params.distance_exponent);
    (floor, floor * params.tolerance)
}

/// Behavioral feature of one player.
///
/// Inside an abstract state, indices are relative to the planner, which is
/// always player 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BehaviorFeature {
    Lead,
    Follow(Player),
    Other,
}

impl fmt::Display for BehaviorFeature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BehaviorFeature::Lead => write!(f, "L"),
            BehaviorFeature::Follow(j) => write!(f, "F{j}"),
            BehaviorFeature::Other => write!(f, "O"),
        }
    }
}

impl std::str::FromStr for BehaviorFeature {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "L" => Ok(BehaviorFeature::Lead),
            "O" => Ok(BehaviorFeature::Other),
            _ => s
                .strip_prefix('F')
                .and_then(|j| j.parse().ok())
                .map(BehaviorFeature::Follow)
                .ok_or_else(|| format!("unknown feature {s:?}")),
        }
    }
}

/// All index values behind one classification.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexReport {
    pub player: Player,
    pub lead: f64,
    /// `(target, f_ij)` for every other player, in index order.
    pub follow: Vec<(Player, f64)>,
    pub normalizer: f64,
    pub floor: f64,
    pub threshold: f64,
}

impl IndexReport {
    /// Best follow target: highest index, ties to `planner`, then lowest index.
    pub fn best_follow(&self, planner: Player) -> Option<(Player, f64)> {
        let mut best: Option<(Player, f64)> = None;
        for &(target, value) in &self.follow {
            best = match best {
                None => Some((target, value)),
                Some((b, bv))
                    if value > bv || (value == bv && target == planner && b != planner) =>
                {
                    Some((target, value))
                }
                keep => keep,
            };
        }
        best
    }

    /// Feature implied by these indices.
    pub fn feature(&self, planner: Player) -> BehaviorFeature {
        match self.best_follow(planner) {
            Some((target, f)) if f >= self.threshold && f >= self.lead => {
                BehaviorFeature::Follow(target)
            }
            _ if self.lead >= self.threshold => BehaviorFeature::Lead,
            _ => BehaviorFeature::Other,
        }
    }
}

/// Lead and follow indices for `player`, or `None` while the history is
/// shorter than two stages.
pub fn index_report<G: Game + ?Sized>(
    player: Player,
    history: &ActionHistory,
    params: &AbstractionParams,
    game: &G,
) -> Option<IndexReport> {
    if history.len() < 2 {
        return None;
    }
    let own = history.actions_of(player);
    let lead = lead_index(&own, params, game).ok()?;
    let follow = (0..history.players())
        .filter(|&j| j != player)
        .map(|j| {
            let theirs = history.actions_of(j);
            follow_index(player, &own, j, &theirs, params, game).map(|f| (j, f))
        })
        .collect::<Result<Vec<_>, _>>()
        .ok()?;
    let (floor, threshold) = feature_floor(params, game, player);
    Some(IndexReport {
        player,
        lead,
        follow,
        normalizer: normalizer(params.response_rate, history.len()),
        floor,
        threshold,
    })
}

/// Classify `player` as a leader, a follower of someone, or neither.
///
/// Histories shorter than two stages classify as [`BehaviorFeature::Other`].
/// Follow wins ties against lead; among follow targets the `planner` wins
/// ties, then the lowest index.
pub fn classify<G: Game + ?Sized>(
    player: Player,
    history: &ActionHistory,
    planner: Player,
    params: &AbstractionParams,
    game: &G,
) -> BehaviorFeature {
    index_report(player, history, params, game)
        .map(|report| report.feature(planner))
        .unwrap_or(BehaviorFeature::Other)
}

/// Classify every player at once.
pub fn classify_all<G: Game + ?Sized>(
    history: &ActionHistory,
    planner: Player,
    params: &AbstractionParams,
    game: &G,
) -> Vec<BehaviorFeature> {
    (0..history.players())
        .map(|i| classify(i, history, planner, params, game))
        .collect()
}

/// A high-level action of the planner: stay put, or best-respond to an
/// opponent's previous move. Opponents are numbered `1..n` relative to the
/// planner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum HighLevelAction {
    Lead,
    Follow(Player),
}

impl HighLevelAction {
    /// Dense index: `Lead` is 0, `Follow(j)` is `j`.
    pub fn index(self) -> usize {
        match self {
            HighLevelAction::Lead => 0,
            HighLevelAction::Follow(j) => j,
        }
    }

    pub fn from_index(index: usize) -> Self {
        if index == 0 {
            HighLevelAction::Lead
        } else {
            HighLevelAction::Follow(index)
        }
    }

    /// Every high-level action for an `n`-player game, in tie-break order.
    pub fn all(players: usize) -> impl Iterator<Item = HighLevelAction> {
        (0..players).map(Self::from_index)
    }

    pub fn as_feature(self) -> BehaviorFeature {
        match self {
            HighLevelAction::Lead => BehaviorFeature::Lead,
            HighLevelAction::Follow(j) => BehaviorFeature::Follow(j),
        }
    }
}

impl fmt::Display for HighLevelAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.as_feature().fmt(f)
    }
}

/// The planner's view of a stage: its own last high-level action followed by
/// one feature per opponent, all indexed relative to the planner.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbstractState {
    own: HighLevelAction,
    opponents: Vec<BehaviorFeature>,
}

impl AbstractState {
    pub fn own(&self) -> HighLevelAction {
        self.own
    }

    /// Features of opponents `1..n`; entry `k` describes opponent `k + 1`.
    pub fn opponents(&self) -> &[BehaviorFeature] {
        &self.opponents
    }

    /// Feature of relative player `i` (0 is the planner's own action).
    pub fn feature(&self, i: Player) -> BehaviorFeature {
        if i == 0 {
            self.own.as_feature()
        } else {
            self.opponents[i - 1]
        }
    }

    pub fn players(&self) -> usize {
        self.opponents.len() + 1
    }
}

impl fmt::Display for AbstractState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.own)?;
        for o in &self.opponents {
            write!(f, ",{o}")?;
        }
        write!(f, ")")
    }
}

/// Assemble an abstract state for an `n`-player game from the planner's last
/// high-level action and the opponents' features (relative indexing).
pub fn build_state(
    players: usize,
    own: HighLevelAction,
    opponents: Vec<BehaviorFeature>,
) -> Result<AbstractState, AbstractionError> {
    if opponents.len() + 1 != players {
        return Err(AbstractionError::FeatureCount {
            expected: players.saturating_sub(1),
            got: opponents.len(),
        });
    }
    match own {
        HighLevelAction::Follow(0) => return Err(AbstractionError::SelfFollow(0)),
        HighLevelAction::Follow(j) if j >= players => {
            return Err(AbstractionError::PlayerOutOfRange(j))
        }
        _ => {}
    }
    for (k, feature) in opponents.iter().enumerate() {
        match *feature {
            BehaviorFeature::Follow(j) if j == k + 1 => {
                return Err(AbstractionError::SelfFollow(j))
            }
            BehaviorFeature::Follow(j) if j >= players => {
                return Err(AbstractionError::PlayerOutOfRange(j))
            }
            _ => {}
        }
    }
    Ok(AbstractState { own, opponents })
}

/// Dense numbering of every abstract state of an `n`-player game plus the
/// fictitious state, which takes the last index.
///
/// There are `n` choices for the planner's slot and `n + 1` per opponent
/// (lead, other, or following one of the `n - 1` other players), so a
/// three-player game has 3 × 4 × 4 = 48 real states.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StateSpace {
    players: usize,
}

impl StateSpace {
    pub fn new(players: usize) -> Self {
        assert!(
            players >= 2,
            "an abstract state needs at least one opponent"
        );
        Self { players }
    }

    pub fn players(&self) -> usize {
        self.players
    }

    pub fn real_states(&self) -> usize {
        self.players * (self.players + 1).pow((self.players - 1) as u32)
    }

    /// Real states plus the fictitious one.
    pub fn len(&self) -> usize {
        self.real_states() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn fictitious(&self) -> usize {
        self.real_states()
    }

    fn feature_code(&self, slot: Player, feature: BehaviorFeature) -> usize {
        match feature {
            BehaviorFeature::Lead => 0,
            BehaviorFeature::Other => 1,
            // skip the slot's own index
            BehaviorFeature::Follow(j) if j < slot => 2 + j,
            BehaviorFeature::Follow(j) => 1 + j,
        }
    }

    fn feature_from_code(&self, slot: Player, code: usize) -> BehaviorFeature {
        match code {
            0 => BehaviorFeature::Lead,
            1 => BehaviorFeature::Other,
            c if c - 2 < slot => BehaviorFeature::Follow(c - 2),
            c => BehaviorFeature::Follow(c - 1),
        }
    }

    pub fn index(&self, state: &AbstractState) -> usize {
        let base = self.players + 1;
        state
            .opponents
            .iter()
            .enumerate()
            .fold(state.own.index(), |acc, (k, &f)| {
                acc * base + self.feature_code(k + 1, f)
            })
    }

    /// The state with a given index, or `None` for the fictitious index.
    pub fn state(&self, index: usize) -> Option<AbstractState> {
        if index >= self.real_states() {
            return None;
        }
        let base = self.players + 1;
        let mut rest = index;
        let mut opponents = vec![BehaviorFeature::Other; self.players - 1];
        for slot in (1..self.players).rev() {
            opponents[slot - 1] = self.feature_from_code(slot, rest % base);
            rest /= base;
        }
        Some(AbstractState {
            own: HighLevelAction::from_index(rest),
            opponents,
        })
    }

    pub fn states(&self) -> impl Iterator<Item = AbstractState> + '_ {
        (0..self.real_states()).filter_map(|i| self.state(i))
    }
}
