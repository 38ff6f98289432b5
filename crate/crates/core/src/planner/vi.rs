//! Tabular MDPs and value iteration.

use thiserror::Error;

/// Default cap on value-iteration sweeps.
pub const DEFAULT_MAX_SWEEPS: usize = 100_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MdpError {
    #[error("state {state}, action {action}: transition probabilities sum to {sum}")]
    NotADistribution {
        state: usize,
        action: usize,
        sum: f64,
    },
    #[error("state {state}, action {action}: successor {next} out of range")]
    SuccessorOutOfRange {
        state: usize,
        action: usize,
        next: usize,
    },
    #[error("value iteration did not converge in {sweeps} sweeps (residual {residual})")]
    NoConvergence { sweeps: usize, residual: f64 },
    #[error("discount must lie in [0, 1), got {0}")]
    Discount(f64),
}

/// A finite MDP with sparse transitions. Every state has the same action set.
#[derive(Debug, Clone, PartialEq)]
pub struct Mdp {
    states: usize,
    actions: usize,
    /// `(next, probability)` lists indexed by `state * actions + action`.
    transitions: Vec<Vec<(usize, f64)>>,
    rewards: Vec<f64>,
}

impl Mdp {
    /// Every pair starts as a zero-reward self-loop.
    pub fn new(states: usize, actions: usize) -> Self {
        Self {
            states,
            actions,
            transitions: (0..states * actions)
                .map(|i| vec![(i / actions, 1.0)])
                .collect(),
            rewards: vec![0.0; states * actions],
        }
    }

    pub fn states(&self) -> usize {
        self.states
    }

    pub fn actions(&self) -> usize {
        self.actions
    }

    pub fn set(&mut self, state: usize, action: usize, reward: f64, successors: Vec<(usize, f64)>) {
        let i = state * self.actions + action;
        self.rewards[i] = reward;
        self.transitions[i] = successors;
    }

    pub fn reward(&self, state: usize, action: usize) -> f64 {
        self.rewards[state * self.actions + action]
    }

    pub fn successors(&self, state: usize, action: usize) -> &[(usize, f64)] {
        &self.transitions[state * self.actions + action]
    }

    /// Check every row is a probability distribution over valid states.
    pub fn validate(&self) -> Result<(), MdpError> {
        for state in 0..self.states {
            for action in 0..self.actions {
                let row = self.successors(state, action);
                if let Some(&(next, _)) = row.iter().find(|&&(next, _)| next >= self.states) {
                    return Err(MdpError::SuccessorOutOfRange {
                        state,
                        action,
                        next,
                    });
                }
                let sum: f64 = row.iter().map(|&(_, p)| p).sum();
                if (sum - 1.0).abs() > 1e-9 || row.iter().any(|&(_, p)| p < 0.0) {
                    return Err(MdpError::NotADistribution { state, action, sum });
                }
            }
        }
        Ok(())
    }

    /// R(s,a) + γ Σ T(s,a,s') V(s').
    pub fn q_value(&self, state: usize, action: usize, values: &[f64], discount: f64) -> f64 {
        let future: f64 = self
            .successors(state, action)
            .iter()
            .map(|&(next, p)| p * values[next])
            .sum();
        self.reward(state, action) + discount * future
    }

    /// Best action and its value; ties go to the lowest action index.
    pub fn greedy(&self, state: usize, values: &[f64], discount: f64) -> (usize, f64) {
        let mut best = (0, self.q_value(state, 0, values, discount));
        for action in 1..self.actions {
            let q = self.q_value(state, action, values, discount);
            if q > best.1 {
                best = (action, q);
            }
        }
        best
    }

    /// Largest |V(s) - max_a Q(s,a)|.
    pub fn bellman_residual(&self, values: &[f64], discount: f64) -> f64 {
        (0..self.states)
            .map(|s| (values[s] - self.greedy(s, values, discount).1).abs())
            .fold(0.0, f64::max)
    }
}

/// Values and greedy policy from [`value_iteration`].
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub values: Vec<f64>,
    pub policy: Vec<usize>,
    pub sweeps: usize,
}

/// Solve `mdp` until the Bellman residual is at most `tolerance`.
pub fn value_iteration(mdp: &Mdp, discount: f64, tolerance: f64) -> Result<Solution, MdpError> {
    value_iteration_from(
        mdp,
        discount,
        tolerance,
        vec![0.0; mdp.states()],
        DEFAULT_MAX_SWEEPS,
    )
}

/// Value iteration starting from `values`, giving up after `max_sweeps`.
pub fn value_iteration_from(
    mdp: &Mdp,
    discount: f64,
    tolerance: f64,
    mut values: Vec<f64>,
    max_sweeps: usize,
) -> Result<Solution, MdpError> {
    if !(0.0..1.0).contains(&discount) {
        return Err(MdpError::Discount(discount));
    }
    let mut next = vec![0.0; mdp.states()];
    let mut change = f64::INFINITY;
    for sweep in 1..=max_sweeps {
        change = 0.0;
        for (s, slot) in next.iter_mut().enumerate() {
            *slot = mdp.greedy(s, &values, discount).1;
            change = f64::max(change, (*slot - values[s]).abs());
        }
        std::mem::swap(&mut values, &mut next);
        // residual of the new iterate is at most discount * change
        if change * discount <= tolerance {
            let policy = (0..mdp.states())
                .map(|s| mdp.greedy(s, &values, discount).0)
                .collect();
            return Ok(Solution {
                values,
                policy,
                sweeps: sweep,
            });
        }
    }
    Err(MdpError::NoConvergence {
        sweeps: max_sweeps,
        residual: change,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_state_geometric_series() {
        let mut mdp = Mdp::new(1, 1);
        mdp.set(0, 0, 8.0, vec![(0, 1.0)]);
        let sol = value_iteration(&mdp, 0.95, 1e-6).unwrap();
        // residual τ bounds the value error by τ / (1 - γ)
        assert!((sol.values[0] - 160.0).abs() <= 1e-6 / 0.05);
        assert!(mdp.bellman_residual(&sol.values, 0.95) <= 1e-6);
    }

    #[test]
    fn two_state_chain_closed_form() {
        // 0 -a0-> 1 reward 1; 0 -a1-> 0 reward 0.5; 1 -> 0 reward 2 (both actions)
        let mut mdp = Mdp::new(2, 2);
        mdp.set(0, 0, 1.0, vec![(1, 1.0)]);
        mdp.set(0, 1, 0.5, vec![(0, 1.0)]);
        mdp.set(1, 0, 2.0, vec![(0, 1.0)]);
        mdp.set(1, 1, 2.0, vec![(0, 1.0)]);
        let g: f64 = 0.9;
        // alternating: V0 = 1 + g V1, V1 = 2 + g V0
        let v0 = (1.0 + 2.0 * g) / (1.0 - g * g);
        let v1 = 2.0 + g * v0;
        let sol = value_iteration(&mdp, g, 1e-9).unwrap();
        assert!((sol.values[0] - v0).abs() < 1e-7);
        assert!((sol.values[1] - v1).abs() < 1e-7);
        assert_eq!(sol.policy, vec![0, 0]);
    }

    #[test]
    fn ties_break_to_first_action() {
        let mdp = Mdp::new(3, 3);
        let sol = value_iteration(&mdp, 0.5, 1e-9).unwrap();
        assert_eq!(sol.policy, vec![0, 0, 0]);
    }

    #[test]
    fn validation() {
        let mut mdp = Mdp::new(2, 1);
        mdp.set(0, 0, 0.0, vec![(1, 0.5)]);
        assert!(matches!(
            mdp.validate(),
            Err(MdpError::NotADistribution { .. })
        ));
        mdp.set(0, 0, 0.0, vec![(2, 1.0)]);
        assert!(matches!(
            mdp.validate(),
            Err(MdpError::SuccessorOutOfRange { next: 2, .. })
        ));
        assert_eq!(
            value_iteration(&Mdp::new(1, 1), 1.0, 1e-6),
            Err(MdpError::Discount(1.0))
        );
    }

    #[test]
    fn reports_non_convergence() {
        let mut mdp = Mdp::new(1, 1);
        mdp.set(0, 0, 1.0, vec![(0, 1.0)]);
        let err = value_iteration_from(&mdp, 0.99, 1e-12, vec![0.0], 5).unwrap_err();
        assert!(matches!(err, MdpError::NoConvergence { sweeps: 5, .. }));
    }
}
