//! Write a match trace, read it back, replay it and summarize every seat.

use teamup::arena::emit::{read_trace, replay, write_trace};
use teamup::arena::summary::{summarize, trace_stage_classes};
use teamup::arena::{run_match, MatchConfig};
use teamup::{AbstractionParams, AgentKind, AgentSpec, Lemonade};

fn main() {
    let config = MatchConfig::new(
        vec![
            AgentSpec::new(AgentKind::MyopicPartner { threshold: 8.0 }),
            AgentSpec::new(AgentKind::NoisyLead { p: 0.1 }),
            AgentSpec::new(AgentKind::SatisficingCycler { threshold: 7.0 }),
        ],
        100,
        3,
    );
    let result = run_match(&Lemonade, &config).unwrap();

    let dir = std::env::temp_dir().join("teamup-strategy-trace");
    let path = dir.join("trace.jsonl");
    write_trace(&path, &result).unwrap();
    let records = read_trace(&path).unwrap();
    let report = replay(&Lemonade, &records).unwrap();
    println!("replayed {} stages from {}", report.stages, path.display());

    for (seat, name) in result.names.iter().enumerate() {
        let classes =
            trace_stage_classes(&records, seat, &AbstractionParams::default(), &Lemonade).unwrap();
        let s = summarize(&classes, 3, 100);
        println!(
            "{name:<20} mean {:.3}  optimal {:.2} worst {:.2} other {:.2}",
            report.mean_utilities[seat], s.optimal, s.worst, s.other
        );
    }
}
