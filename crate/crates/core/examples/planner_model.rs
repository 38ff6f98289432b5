//! The planner's counted model and value iteration on its planning MDP.

use teamup::abstraction::{build_state, StateSpace};
use teamup::planner::{state_class, value_iteration, PlannerModel, ShapingPotentials};
use teamup::{BehaviorFeature, HighLevelAction};

fn main() {
    let potentials = ShapingPotentials::new(12.0, 6.0, 4.0, 0.95).unwrap();
    let space = StateSpace::new(3);
    let mut model = PlannerModel::new(space, 15, potentials);

    // an opponent that follows us while we stay put: the pair becomes known
    let teamed = build_state(
        3,
        HighLevelAction::Lead,
        vec![BehaviorFeature::Follow(0), BehaviorFeature::Other],
    )
    .unwrap();
    let s = space.index(&teamed);
    for _ in 0..15 {
        model.observe(s, HighLevelAction::Lead.index(), s, 9.0);
    }

    let mdp = model.planning_mdp();
    let solution = value_iteration(&mdp, 0.95, 1e-6).unwrap();
    // untried pairs are worth the potential of the state they leave, so the
    // planner prefers exploring them over the known pair paying 9
    println!("{} states, {} sweeps", mdp.states(), solution.sweeps);
    for state in space.states().take(6).chain([teamed.clone()]) {
        let i = space.index(&state);
        println!(
            "{state} {:?}: V = {:.2}, policy {}",
            state_class(&state),
            solution.values[i],
            HighLevelAction::from_index(solution.policy[i])
        );
    }
}
