//! Lemonade Stand payoffs, best responses and pure equilibria.

use teamup::game::{best_response_set, considered_best_response, pure_nash_equilibria};
use teamup::{Game, Lemonade};

fn main() {
    for profile in [[0, 4, 8], [0, 6, 3], [2, 2, 9], [5, 5, 5]] {
        let u = Lemonade.utilities(&profile);
        println!("{profile:?} -> {u:?} (sum {})", u.iter().sum::<f64>());
    }

    let profile = [0, 6, 3];
    println!(
        "best responses of player 2 to {profile:?}: {:?}",
        best_response_set(&Lemonade, 2, &profile).unwrap()
    );
    println!(
        "of those, the ones sitting opposite player 0: {:?}",
        considered_best_response(&Lemonade, 2, 0, &profile).unwrap()
    );

    let ne = pure_nash_equilibria(&Lemonade).unwrap();
    println!("{} pure equilibria, e.g. {:?}", ne.len(), &ne[..3]);
}
