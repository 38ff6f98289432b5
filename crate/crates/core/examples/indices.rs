//! Lead and follow indices of three scripted players, and how they classify.

use teamup::abstraction::index_report;
use teamup::{AbstractionParams, ActionHistory, Lemonade};

fn main() {
    // player 0 stays on 2, player 1 sits opposite player 0's last spot,
    // player 2 wanders
    let stages = vec![
        vec![2, 5, 0],
        vec![2, 8, 7],
        vec![2, 8, 3],
        vec![2, 8, 11],
        vec![2, 8, 4],
        vec![2, 8, 9],
    ];
    let history = ActionHistory::from_stages(3, stages).unwrap();
    let params = AbstractionParams::default();

    for player in 0..3 {
        let report = index_report(player, &history, &params, &Lemonade).unwrap();
        let follows: Vec<String> = report
            .follow
            .iter()
            .map(|(j, f)| format!("to {j}: {f:.3}"))
            .collect();
        println!(
            "player {player}: lead {:.3}, follow [{}], threshold {:.3} -> {}",
            report.lead,
            follows.join(", "),
            report.threshold,
            report.feature(0)
        );
    }
}
