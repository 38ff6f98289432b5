//! One match of TeamUP against a player that follows it and a random player.

use teamup::arena::{run_match, state_visit_summary_between, MatchConfig};
use teamup::{AbstractionParams, AgentKind, AgentSpec, Lemonade};

fn main() {
    let config = MatchConfig::new(
        vec![
            AgentSpec::new(AgentKind::TeamUp {
                config: Default::default(),
            }),
            AgentSpec::new(AgentKind::IdealFollower { target: Some(0) }),
            AgentSpec::new(AgentKind::UniformRandom),
        ],
        200,
        7,
    );
    let result = run_match(&Lemonade, &config).unwrap();
    for (name, mean) in result.names.iter().zip(result.mean_utilities()) {
        println!("{name:<16} {mean:.3}");
    }
    let late = result.mean_utility_between(0, 101, 200);
    println!("planner over stages 101-200: {late:.3}");

    let visits = state_visit_summary_between(
        &result,
        0,
        &AbstractionParams::default(),
        &Lemonade,
        21,
        200,
    );
    println!(
        "planner states from stage 21: optimal {:.2}, worst {:.2}, other {:.2}",
        visits.optimal, visits.worst, visits.other
    );

    for record in result.stages.iter().skip(195) {
        let d = record.diagnostics[0].as_ref().unwrap();
        let state = d.state.as_ref().map(|s| s.to_string()).unwrap_or_default();
        println!(
            "stage {:>3} {:?} {state} -> {}",
            record.stage, record.actions, d.action
        );
    }
}
