//! A table-driven game loaded from JSON, as accepted by `teamup --game`.

use teamup::game::{pure_nash_equilibria, reciprocal_best_response};
use teamup::{Game, MatrixGame};

const PENNIES: &str = r#"{
  "name": "pennies",
  "actions": [2, 2],
  "payoffs": [[1, -1], [-1, 1], [-1, 1], [1, -1]],
  "constant_sum": 0
}"#;

const STAG_HUNT: &str = r#"{
  "name": "stag hunt",
  "actions": [2, 2],
  "payoffs": [[4, 4], [0, 3], [3, 0], [3, 3]]
}"#;

fn main() {
    for text in [PENNIES, STAG_HUNT] {
        let game = MatrixGame::from_json(text).unwrap();
        let ne = pure_nash_equilibria(&game).unwrap();
        println!("{}: pure equilibria {ne:?}", game.name());
        for profile in &ne {
            println!(
                "  at {profile:?} player 0's reciprocal responses to player 1: {:?}",
                reciprocal_best_response(&game, 0, 1, profile).unwrap()
            );
        }
    }
}
