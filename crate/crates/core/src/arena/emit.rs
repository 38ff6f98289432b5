//! Result files: the standings CSV, per-stage JSONL traces, and trace replay.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::tournament::TournamentTable;
use super::{ArenaError, MatchResult};
use crate::game::{check_profile, Game};

/// One line of a JSONL trace. Features use absolute seats; the planner state
/// and action are in the planner's own relative indexing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceRecord {
    pub stage: usize,
    pub actions: Vec<usize>,
    pub utilities: Vec<f64>,
    pub features: Vec<String>,
    pub planner_seat: Option<usize>,
    pub planner_state: Option<String>,
    pub planner_action: Option<String>,
    pub replanned: bool,
}

pub fn trace_records(result: &MatchResult) -> Vec<TraceRecord> {
    result
        .stages
        .iter()
        .map(|s| {
            let diag = result.planner.and_then(|p| s.diagnostics[p].as_ref());
            TraceRecord {
                stage: s.stage,
                actions: s.actions.clone(),
                utilities: s.utilities.clone(),
                features: s.features.iter().map(ToString::to_string).collect(),
                planner_seat: result.planner,
                planner_state: diag.and_then(|d| d.state.as_ref()).map(ToString::to_string),
                planner_action: diag.map(|d| d.action.to_string()),
                replanned: diag.is_some_and(|d| d.replanned),
            }
        })
        .collect()
}

fn io_error(path: &Path) -> impl FnOnce(std::io::Error) -> ArenaError + '_ {
    move |source| ArenaError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn create(path: &Path) -> Result<BufWriter<File>, ArenaError> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent).map_err(io_error(parent))?;
    }
    File::create(path)
        .map(BufWriter::new)
        .map_err(io_error(path))
}

pub fn write_trace_to<W: Write>(mut out: W, result: &MatchResult) -> std::io::Result<()> {
    for record in trace_records(result) {
        serde_json::to_writer(&mut out, &record)?;
        out.write_all(b"\n")?;
    }
    out.flush()
}

pub fn write_trace(path: &Path, result: &MatchResult) -> Result<(), ArenaError> {
    write_trace_to(create(path)?, result).map_err(io_error(path))
}

pub fn read_trace(path: &Path) -> Result<Vec<TraceRecord>, ArenaError> {
    let file = File::open(path).map_err(io_error(path))?;
    let mut records = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(io_error(path))?;
        if line.trim().is_empty() {
            continue;
        }
        let record = serde_json::from_str(&line).map_err(|e| ArenaError::Parse {
            path: path.to_path_buf(),
            line: i + 1,
            message: e.to_string(),
        })?;
        records.push(record);
    }
    Ok(records)
}

/// Totals recomputed from a replayed trace.
#[derive(Debug, Clone, PartialEq)]
pub struct ReplayReport {
    pub stages: usize,
    pub mean_utilities: Vec<f64>,
}

/// Re-evaluate every recorded joint action and check it against the
/// recorded utilities, the stage numbering, and the game's constant sum.
pub fn replay(game: &dyn Game, records: &[TraceRecord]) -> Result<ReplayReport, ArenaError> {
    let n = game.num_players();
    let mut totals = vec![0.0; n];
    for (i, record) in records.iter().enumerate() {
        let stage = i + 1;
        let fail = |message: String| ArenaError::Replay { stage, message };
        if record.stage != stage {
            return Err(fail(format!("record numbered {}", record.stage)));
        }
        check_profile(game, &record.actions).map_err(|e| fail(e.to_string()))?;
        let utilities = game.utilities(&record.actions);
        if utilities != record.utilities {
            return Err(fail(format!(
                "recorded utilities {:?}, game gives {utilities:?}",
                record.utilities
            )));
        }
        if let Some(total) = game.constant_sum() {
            let sum: f64 = utilities.iter().sum();
            if (sum - total).abs() > 1e-9 {
                return Err(fail(format!("utilities sum to {sum}, expected {total}")));
            }
        }
        for (t, u) in totals.iter_mut().zip(&utilities) {
            *t += u;
        }
    }
    let stages = records.len();
    Ok(ReplayReport {
        stages,
        mean_utilities: totals
            .into_iter()
            .map(|t| t / stages.max(1) as f64)
            .collect(),
    })
}

#[derive(Serialize)]
struct CsvRow<'a> {
    rank: usize,
    strategy: &'a str,
    avg_utility: f64,
    std_err: f64,
}

pub const TABLE_HEADER: [&str; 4] = ["rank", "strategy", "avg_utility", "std_err"];

/// Standings as CSV. An empty table still gets its header line.
pub fn write_table_to<W: Write>(out: W, table: &TournamentTable) -> Result<(), csv::Error> {
    let mut writer = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(out);
    writer.write_record(TABLE_HEADER)?;
    for row in &table.rows {
        writer.serialize(CsvRow {
            rank: row.rank,
            strategy: &row.strategy,
            avg_utility: row.avg_utility,
            std_err: row.std_err,
        })?;
    }
    writer.flush()?;
    Ok(())
}

pub fn write_table(path: &Path, table: &TournamentTable) -> Result<(), ArenaError> {
    write_table_to(create(path)?, table).map_err(|e| ArenaError::Io {
        path: path.to_path_buf(),
        source: e.into(),
    })
}

/// Pretty-printed JSON with a trailing newline.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), ArenaError> {
    let mut out = create(path)?;
    serde_json::to_writer_pretty(&mut out, value)
        .map_err(std::io::Error::from)
        .and_then(|()| out.write_all(b"\n"))
        .and_then(|()| out.flush())
        .map_err(io_error(path))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arena::tournament::TableRow;
    use crate::arena::{run_match, MatchConfig};
    use crate::game::Lemonade;
    use crate::zoo::{AgentKind, AgentSpec};

    fn result() -> MatchResult {
        let config = MatchConfig::new(
            vec![
                AgentSpec::new(AgentKind::TeamUp {
                    config: Default::default(),
                }),
                AgentSpec::new(AgentKind::IdealFollower { target: Some(0) }),
                AgentSpec::new(AgentKind::UniformRandom),
            ],
            25,
            4,
        );
        run_match(&Lemonade, &config).unwrap()
    }

    #[test]
    fn trace_roundtrip_and_replay() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("nested/trace.jsonl");
        let result = result();
        write_trace(&path, &result).unwrap();
        let records = read_trace(&path).unwrap();
        assert_eq!(records, trace_records(&result));
        assert_eq!(records[0].planner_state, None);
        assert_eq!(records[1].planner_state.as_deref(), Some("(L,O,O)"));
        let report = replay(&Lemonade, &records).unwrap();
        assert_eq!(report.stages, 25);
        assert_eq!(report.mean_utilities, result.mean_utilities());
    }

    #[test]
    fn replay_catches_tampering() {
        let mut records = trace_records(&result());
        records[3].utilities[0] += 1.0;
        assert!(matches!(
            replay(&Lemonade, &records),
            Err(ArenaError::Replay { stage: 4, .. })
        ));
        let mut records = trace_records(&result());
        records.swap(5, 6);
        assert!(matches!(
            replay(&Lemonade, &records),
            Err(ArenaError::Replay { stage: 6, .. })
        ));
    }

    #[test]
    fn csv_header_and_rows() {
        let mut buf = Vec::new();
        write_table_to(&mut buf, &TournamentTable { rows: vec![] }).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "rank,strategy,avg_utility,std_err\n"
        );
        let table = TournamentTable {
            rows: vec![TableRow {
                rank: 1,
                strategy: "x".into(),
                avg_utility: 8.5,
                std_err: 0.25,
                matches: 3,
            }],
        };
        let mut buf = Vec::new();
        write_table_to(&mut buf, &table).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "rank,strategy,avg_utility,std_err\n1,x,8.5,0.25\n"
        );
    }

    #[test]
    fn io_errors_name_the_path() {
        let err = read_trace(Path::new("/nonexistent/trace.jsonl")).unwrap_err();
        assert!(err.to_string().contains("/nonexistent/trace.jsonl"));
    }
}
