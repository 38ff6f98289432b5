//! Counted transition and reward model over abstract states.

use crate::abstraction::{AbstractState, StateSpace};

use super::shaping::ShapingPotentials;
use super::vi::Mdp;

/// Experience counts `c(s, a, s')`, cumulative rewards `u(s, a)` and mean
/// rewards `R(s, a)` over a [`StateSpace`].
///
/// A pair is *known* once it has been tried `known_threshold` times. Unknown
/// pairs are planned as a jump to the absorbing fictitious state that pays the
/// state's potential once.
#[derive(Debug, Clone)]
pub struct PlannerModel {
    space: StateSpace,
    actions: usize,
    known_threshold: u32,
    potentials: ShapingPotentials,
    counts: Vec<u32>,
    visits: Vec<u32>,
    reward_sums: Vec<f64>,
    mean_rewards: Vec<f64>,
}

impl PlannerModel {
    pub fn new(space: StateSpace, known_threshold: u32, potentials: ShapingPotentials) -> Self {
        assert!(known_threshold > 0, "known threshold must be positive");
        let states = space.len();
        let actions = space.players();
        Self {
            space,
            actions,
            known_threshold,
            potentials,
            counts: vec![0; states * actions * states],
            visits: vec![0; states * actions],
            reward_sums: vec![0.0; states * actions],
            mean_rewards: vec![0.0; states * actions],
        }
    }

    pub fn space(&self) -> &StateSpace {
        &self.space
    }

    pub fn actions(&self) -> usize {
        self.actions
    }

    pub fn potentials(&self) -> &ShapingPotentials {
        &self.potentials
    }

    pub fn known_threshold(&self) -> u32 {
        self.known_threshold
    }

    fn pair(&self, state: usize, action: usize) -> usize {
        state * self.actions + action
    }

    /// Record one `(s, a, s', r)` experience. Returns `true` when the pair's
    /// visit count reaches a positive multiple of the known threshold.
    pub fn observe(&mut self, state: usize, action: usize, next: usize, reward: f64) -> bool {
        let states = self.space.len();
        let pair = self.pair(state, action);
        self.counts[pair * states + next] += 1;
        self.visits[pair] += 1;
        self.reward_sums[pair] += reward;
        self.mean_rewards[pair] = self.reward_sums[pair] / f64::from(self.visits[pair]);
        self.visits[pair].is_multiple_of(self.known_threshold)
    }

    pub fn count(&self, state: usize, action: usize, next: usize) -> u32 {
        self.counts[self.pair(state, action) * self.space.len() + next]
    }

    /// Σ_{s'} c(s, a, s').
    pub fn visits(&self, state: usize, action: usize) -> u32 {
        self.visits[self.pair(state, action)]
    }

    pub fn reward_sum(&self, state: usize, action: usize) -> f64 {
        self.reward_sums[self.pair(state, action)]
    }

    pub fn mean_reward(&self, state: usize, action: usize) -> f64 {
        self.mean_rewards[self.pair(state, action)]
    }

    pub fn is_known(&self, state: usize, action: usize) -> bool {
        self.visits(state, action) >= self.known_threshold
    }

    /// Empirical T(s, a, ·), or `None` before the first visit.
    pub fn empirical_transitions(&self, state: usize, action: usize) -> Option<Vec<(usize, f64)>> {
        let total = self.visits(state, action);
        if total == 0 {
            return None;
        }
        let states = self.space.len();
        let base = self.pair(state, action) * states;
        Some(
            (0..states)
                .filter(|&next| self.counts[base + next] > 0)
                .map(|next| (next, f64::from(self.counts[base + next]) / f64::from(total)))
                .collect(),
        )
    }

    fn potential_of(&self, state: usize) -> f64 {
        self.space
            .state(state)
            .map(|s: AbstractState| self.potentials.potential(&s))
            .unwrap_or(0.0)
    }

    /// The full planning MDP: known pairs use their empirical transitions and
    /// mean reward, unknown pairs jump to the fictitious state with the
    /// potential of the state they leave as reward. The fictitious state is
    /// absorbing with zero reward.
    pub fn planning_mdp(&self) -> Mdp {
        let states = self.space.len();
        let fictitious = self.space.fictitious();
        let mut mdp = Mdp::new(states, self.actions);
        for state in 0..states {
            for action in 0..self.actions {
                if state == fictitious {
                    mdp.set(state, action, 0.0, vec![(fictitious, 1.0)]);
                } else if self.is_known(state, action) {
                    let successors = self
                        .empirical_transitions(state, action)
                        .expect("known pairs have visits");
                    mdp.set(state, action, self.mean_reward(state, action), successors);
                } else {
                    mdp.set(
                        state,
                        action,
                        self.potential_of(state),
                        vec![(fictitious, 1.0)],
                    );
                }
            }
        }
        mdp
    }
}
