//! State classes and potentials used to initialize the planner's model.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abstraction::{AbstractState, BehaviorFeature};

/// Which potential a state receives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StateClass {
    /// Some opponent follows the planner, and the planner either leads or
    /// follows that opponent back.
    Optimal,
    /// Two opponents have paired up without the planner.
    Worst,
    Other,
}

/// Class of a state given the planner's own slot and the opponents' features,
/// all in planner-relative indexing.
///
/// `own` is a feature rather than a high-level action so that post-hoc
/// classifications of arbitrary players (whose own slot may be `Other`) can be
/// scored the same way.
pub fn class_of(own: BehaviorFeature, opponents: &[BehaviorFeature]) -> StateClass {
    let feature = |i: usize| {
        if i == 0 {
            own
        } else {
            opponents[i - 1]
        }
    };
    let n = opponents.len() + 1;
    let optimal = (1..n).any(|j| {
        feature(j) == BehaviorFeature::Follow(0)
            && (own == BehaviorFeature::Lead || own == BehaviorFeature::Follow(j))
    });
    if optimal {
        return StateClass::Optimal;
    }
    let worst = (1..n).any(|j| {
        (1..n).filter(|&k| k != j).any(|k| {
            feature(j) == BehaviorFeature::Follow(k)
                && (feature(k) == BehaviorFeature::Lead || feature(k) == BehaviorFeature::Follow(j))
        })
    });
    if worst {
        StateClass::Worst
    } else {
        StateClass::Other
    }
}

/// Class of a real abstract state.
pub fn state_class(state: &AbstractState) -> StateClass {
    class_of(state.own().as_feature(), state.opponents())
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ShapingError {
    #[error("planning discount must lie in (0, 1), got {0}")]
    Discount(f64),
    #[error("reward bounds need r_max > r_min, got {r_max} and {r_min}")]
    Bounds { r_max: f64, r_min: f64 },
    #[error("margin must lie in (0, r_max - r_min), got {0}")]
    Margin(f64),
}

/// Potentials of the three state classes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShapingPotentials {
    r_max: f64,
    r_min: f64,
    margin: f64,
    discount: f64,
}

impl ShapingPotentials {
    /// `margin` is ε, how far below `r_max` unclassified states sit.
    pub fn new(r_max: f64, r_min: f64, margin: f64, discount: f64) -> Result<Self, ShapingError> {
        if !(discount > 0.0 && discount < 1.0) {
            return Err(ShapingError::Discount(discount));
        }
        if !r_max.is_finite() || !r_min.is_finite() || r_max <= r_min {
            return Err(ShapingError::Bounds { r_max, r_min });
        }
        if !(margin > 0.0 && margin < r_max - r_min) {
            return Err(ShapingError::Margin(margin));
        }
        Ok(Self {
            r_max,
            r_min,
            margin,
            discount,
        })
    }

    pub fn discount(&self) -> f64 {
        self.discount
    }

    /// Per-stage reward the class is assumed to pay forever.
    pub fn stage_reward(&self, class: StateClass) -> f64 {
        match class {
            StateClass::Optimal => self.r_max,
            StateClass::Worst => self.r_min,
            StateClass::Other => self.r_max - self.margin,
        }
    }

    pub fn of_class(&self, class: StateClass) -> f64 {
        self.stage_reward(class) / (1.0 - self.discount)
    }

    pub fn potential(&self, state: &AbstractState) -> f64 {
        self.of_class(state_class(state))
    }

    /// Shaping term γ'Φ(s') - Φ(s).
    pub fn shaping_reward(&self, from: &AbstractState, to: &AbstractState) -> f64 {
        self.discount * self.potential(to) - self.potential(from)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abstraction::{build_state, HighLevelAction};
    use BehaviorFeature::*;

    fn state(own: HighLevelAction, a: BehaviorFeature, b: BehaviorFeature) -> AbstractState {
        build_state(3, own, vec![a, b]).unwrap()
    }

    #[test]
    fn classes_match_listed_sets() {
        use HighLevelAction as H;
        assert_eq!(
            state_class(&state(H::Lead, Follow(0), Other)),
            StateClass::Optimal
        );
        assert_eq!(
            state_class(&state(H::Lead, Follow(2), Lead)),
            StateClass::Worst
        );
        assert_eq!(state_class(&state(H::Lead, Lead, Lead)), StateClass::Other);
        // following the opponent who follows back
        assert_eq!(
            state_class(&state(H::Follow(2), Lead, Follow(0))),
            StateClass::Optimal
        );
        // following the other opponent is not enough
        assert_eq!(
            state_class(&state(H::Follow(2), Follow(0), Other)),
            StateClass::Other
        );
    }

    #[test]
    fn classes_exhaustive_against_set_listing() {
        // Literal membership in the wild-carded sets for three players.
        let optimal = |s: &AbstractState| {
            let (o0, o1, o2) = (s.own(), s.opponents()[0], s.opponents()[1]);
            (o0 == HighLevelAction::Lead && o1 == Follow(0))
                || (o0 == HighLevelAction::Lead && o2 == Follow(0))
                || (o0 == HighLevelAction::Follow(1) && o1 == Follow(0))
                || (o0 == HighLevelAction::Follow(2) && o2 == Follow(0))
        };
        let worst = |s: &AbstractState| {
            let (o1, o2) = (s.opponents()[0], s.opponents()[1]);
            (o1 == Follow(2) && o2 == Lead)
                || (o1 == Lead && o2 == Follow(1))
                || (o1 == Follow(2) && o2 == Follow(1))
        };
        let space = crate::abstraction::StateSpace::new(3);
        let mut counts = [0; 3];
        for s in space.states() {
            let expected = if optimal(&s) {
                StateClass::Optimal
            } else if worst(&s) {
                StateClass::Worst
            } else {
                StateClass::Other
            };
            assert!(!(optimal(&s) && worst(&s)));
            assert_eq!(state_class(&s), expected, "{s}");
            counts[expected as usize] += 1;
        }
        assert_eq!(counts.iter().sum::<usize>(), 48);
    }

    #[test]
    fn lemonade_potentials() {
        let p = ShapingPotentials::new(12.0, 6.0, 4.0, 0.95).unwrap();
        assert!((p.of_class(StateClass::Optimal) - 240.0).abs() < 1e-9);
        assert!((p.of_class(StateClass::Worst) - 120.0).abs() < 1e-9);
        assert!((p.of_class(StateClass::Other) - 160.0).abs() < 1e-9);
    }

    #[test]
    fn rejects_bad_potentials() {
        assert_eq!(
            ShapingPotentials::new(12.0, 6.0, 4.0, 1.0),
            Err(ShapingError::Discount(1.0))
        );
        assert_eq!(
            ShapingPotentials::new(12.0, 6.0, 6.0, 0.9),
            Err(ShapingError::Margin(6.0))
        );
        assert_eq!(
            ShapingPotentials::new(12.0, 6.0, 0.0, 0.9),
            Err(ShapingError::Margin(0.0))
        );
        assert!(ShapingPotentials::new(6.0, 12.0, 1.0, 0.9).is_err());
    }
}
