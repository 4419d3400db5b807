//! Match logs: one line per hand with the deal, the action string and each
//! seat's net chips.
//!
//! ```text
//! # match g000-set00-perm0
//! # seats nash-lb,honest,modeler
//! # hand,cards,actions,seat1,seat2,seat3
//! 0,QKA,KKBFC,-1,-2,3
//! ...
//! # totals -12,5,7
//! ```

use std::fmt::Write as _;
use std::path::Path;

use crate::error::HarnessError;
use crate::game::{is_terminal, terminal_payoffs, ActionHistory, Deal, PayoffVector, NUM_SEATS};

use super::play::{HandRecord, MatchRecord};
use super::tournament::TournamentReport;

pub fn format_match_log(id: &str, record: &MatchRecord) -> String {
    let mut out = String::with_capacity(32 * record.hands.len() + 128);
    writeln!(out, "# match {id}").unwrap();
    writeln!(out, "# seats {}", record.seats.join(",")).unwrap();
    out.push_str("# hand,cards,actions,seat1,seat2,seat3\n");
    for h in &record.hands {
        let [a, b, c] = h.payoffs.0;
        writeln!(out, "{},{},{},{a},{b},{c}", h.index, h.deal, h.history).unwrap();
    }
    let [a, b, c] = record.seat_totals;
    writeln!(out, "# totals {a},{b},{c}").unwrap();
    out
}

pub fn write_match_log(path: &Path, id: &str, record: &MatchRecord) -> Result<(), HarnessError> {
    std::fs::write(path, format_match_log(id, record)).map_err(|source| HarnessError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// A parsed match log.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchLog {
    pub id: String,
    pub record: MatchRecord,
}

pub fn parse_match_log(text: &str) -> Result<MatchLog, HarnessError> {
    let err = |line: usize, message: String| HarnessError::Log { line, message };
    let mut id = None;
    let mut seats = None;
    let mut totals = None;
    let mut hands = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.trim();
        if content.is_empty() {
            continue;
        }
        if let Some(meta) = content.strip_prefix('#') {
            let meta = meta.trim();
            if let Some(v) = meta.strip_prefix("match ") {
                id = Some(v.trim().to_string());
            } else if let Some(v) = meta.strip_prefix("seats ") {
                let names: Vec<String> = v.split(',').map(|s| s.trim().to_string()).collect();
                let names: [String; NUM_SEATS] = names
                    .try_into()
                    .map_err(|_| err(line, "expected three seat names".into()))?;
                seats = Some(names);
            } else if let Some(v) = meta.strip_prefix("totals ") {
                totals = Some(parse_triple(v).ok_or_else(|| err(line, format!("bad totals {v:?}")))?);
            }
            continue;
        }
        if totals.is_some() {
            return Err(err(line, "hand record after totals".into()));
        }
        let fields: Vec<&str> = content.split(',').collect();
        if fields.len() != 6 {
            return Err(err(line, format!("expected 6 fields, found {}", fields.len())));
        }
        let index: usize = fields[0]
            .parse()
            .map_err(|_| err(line, format!("bad hand index {:?}", fields[0])))?;
        let deal: Deal = fields[1].parse().map_err(|e| err(line, format!("{e}")))?;
        let history = ActionHistory::parse(fields[2]).map_err(|e| err(line, format!("{e}")))?;
        let payoffs = parse_triple(&fields[3..].join(","))
            .ok_or_else(|| err(line, "bad payoff fields".into()))?;
        hands.push(HandRecord {
            index,
            deal,
            history,
            payoffs: PayoffVector(payoffs.map(|x| x as i32)),
        });
    }
    Ok(MatchLog {
        id: id.ok_or_else(|| err(0, "missing `# match` header".into()))?,
        record: MatchRecord {
            seats: seats.ok_or_else(|| err(0, "missing `# seats` header".into()))?,
            seat_totals: totals.ok_or_else(|| err(0, "missing `# totals` trailer".into()))?,
            hands,
        },
    })
}

fn parse_triple(s: &str) -> Option<[i64; NUM_SEATS]> {
    let v: Vec<i64> = s.split(',').map(|x| x.trim().parse().ok()).collect::<Option<_>>()?;
    v.try_into().ok()
}

/// Re-derives every hand's payoffs from its cards and actions and checks
/// them, and their sums, against the log. With a report, also checks the
/// match's totals there. Returns the re-derived seat totals.
pub fn replay(log: &MatchLog, report: Option<&TournamentReport>) -> Result<[i64; NUM_SEATS], HarnessError> {
    let mismatch = |m: String| HarnessError::ReplayMismatch(format!("{}: {m}", log.id));
    let mut totals = [0i64; NUM_SEATS];
    for (i, hand) in log.record.hands.iter().enumerate() {
        if hand.index != i {
            return Err(mismatch(format!("hand {i} is numbered {}", hand.index)));
        }
        if !is_terminal(&hand.history) {
            return Err(mismatch(format!("hand {i}: {} is not a complete hand", hand.history)));
        }
        let payoffs = terminal_payoffs(&hand.deal, &hand.history).expect("terminal history");
        if payoffs != hand.payoffs {
            return Err(mismatch(format!(
                "hand {i}: logged {:?}, rules give {:?}",
                hand.payoffs.0, payoffs.0
            )));
        }
        for (t, p) in totals.iter_mut().zip(payoffs.0) {
            *t += i64::from(p);
        }
    }
    if totals != log.record.seat_totals {
        return Err(mismatch(format!(
            "logged totals {:?}, hands sum to {totals:?}",
            log.record.seat_totals
        )));
    }
    if let Some(report) = report {
        let entry = report
            .find_match(&log.id)
            .ok_or_else(|| mismatch("match not found in report".into()))?;
        if entry.seat_totals != totals || entry.seats != log.record.seats {
            return Err(mismatch(format!(
                "report has {:?} {:?}, log replays to {:?} {:?}",
                entry.seats, entry.seat_totals, log.record.seats, totals
            )));
        }
    }
    Ok(totals)
}

pub fn replay_file(path: &Path, report: Option<&TournamentReport>) -> Result<[i64; NUM_SEATS], HarnessError> {
    let text = std::fs::read_to_string(path).map_err(|source| HarnessError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    replay(&parse_match_log(&text)?, report)
}
