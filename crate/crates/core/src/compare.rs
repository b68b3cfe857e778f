//! Side-by-side run of every strategy plus the exhaustive oracle.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::describe::{self, IncrementalOptions};
use crate::description::Description;
use crate::error::Result;
use crate::genre::{GenreProfile, ImplicatureWarning};
use crate::goals::Strategy;
use crate::kb::{ContextSet, KnowledgeBase};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrategyRun {
    pub strategy: Strategy,
    pub description: Option<Description>,
    pub length: Option<usize>,
    pub warnings: Vec<ImplicatureWarning>,
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_us: Option<u128>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleRun {
    /// Cardinality shared by every minimal description.
    pub minimal_length: Option<usize>,
    pub minima: Vec<Description>,
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_us: Option<u128>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComparisonReport {
    pub referent: String,
    pub runs: Vec<StrategyRun>,
    pub oracle: OracleRun,
    /// Greedy length minus full-brevity length, when both succeeded and the
    /// oracle could check the instance.
    pub minimality_gap: Option<usize>,
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

/// Runs all three strategies and the oracle. Only input errors abort; a
/// strategy that fails is recorded in its own row.
pub fn compare(
    referent: &str,
    context: &ContextSet,
    kb: &KnowledgeBase,
    genre: &GenreProfile,
    oracle_guard: usize,
) -> Result<ComparisonReport> {
    context.require_member(referent)?;
    kb.get(referent)?;

    let runs = Strategy::ALL
        .into_iter()
        .map(|strategy| {
            let (result, elapsed) = timed(|| match strategy {
                Strategy::FullBrevity => {
                    describe::full_brevity(referent, context, kb).map(|d| (d, vec![]))
                }
                Strategy::Greedy => {
                    describe::greedy_heuristic(referent, context, kb).map(|(d, _)| (d, vec![]))
                }
                Strategy::Incremental => describe::incremental(
                    referent,
                    context,
                    kb,
                    genre,
                    IncrementalOptions::default(),
                )
                .map(|o| (o.description, o.warnings)),
            });
            let (description, warnings, error) = match result {
                Ok((d, w)) => (Some(d), w, None),
                Err(e) => (None, vec![], Some(e.to_string())),
            };
            StrategyRun {
                strategy,
                length: description.as_ref().map(Description::len),
                description,
                warnings,
                error,
                wall_time_us: Some(elapsed.as_micros()),
            }
        })
        .collect::<Vec<_>>();

    let (oracle, elapsed) =
        timed(|| describe::naive_oracle_with_guard(referent, context, kb, oracle_guard));
    let oracle = match oracle {
        Ok(minima) => OracleRun {
            minimal_length: minima.first().map(Description::len),
            minima,
            error: None,
            wall_time_us: Some(elapsed.as_micros()),
        },
        Err(e) => OracleRun {
            minimal_length: None,
            minima: vec![],
            error: Some(e.to_string()),
            wall_time_us: Some(elapsed.as_micros()),
        },
    };

    let length = |s: Strategy| runs.iter().find(|r| r.strategy == s).and_then(|r| r.length);
    let minimality_gap = match (length(Strategy::Greedy), length(Strategy::FullBrevity)) {
        (Some(greedy), Some(full)) if oracle.error.is_none() => Some(greedy - full),
        _ => None,
    };

    Ok(ComparisonReport {
        referent: referent.to_owned(),
        runs,
        oracle,
        minimality_gap,
    })
}

impl ComparisonReport {
    pub fn length_of(&self, strategy: Strategy) -> Option<usize> {
        self.runs
            .iter()
            .find(|r| r.strategy == strategy)
            .and_then(|r| r.length)
    }

    /// Drops wall-clock fields so repeated renderings are byte-identical.
    pub fn without_timings(mut self) -> Self {
        for run in &mut self.runs {
            run.wall_time_us = None;
        }
        self.oracle.wall_time_us = None;
        self
    }

    pub fn render_table(&self, genre: &GenreProfile) -> String {
        let timings = self.oracle.wall_time_us.is_some();
        let mut out = String::new();
        let _ = write!(out, "{:<14} {:>6}  description", "strategy", "length");
        if timings {
            out.push_str("  [time]");
        }
        out.push('\n');
        for run in &self.runs {
            let length = run.length.map_or("-".to_owned(), |l| l.to_string());
            let body = match (&run.description, &run.error) {
                (Some(d), _) => format!("{{{d}}}"),
                (None, Some(e)) => format!("error: {e}"),
                (None, None) => String::new(),
            };
            let _ = write!(out, "{:<14} {:>6}  {}", run.strategy.name(), length, body);
            if let Some(us) = run.wall_time_us {
                let _ = write!(out, "  [{us} us]");
            }
            out.push('\n');
            for w in &run.warnings {
                let _ = writeln!(out, "{:<14} {:>6}    warning: {}", "", "", w.render(genre));
            }
        }
        let length = self
            .oracle
            .minimal_length
            .map_or("-".to_owned(), |l| l.to_string());
        let body = match &self.oracle.error {
            Some(e) => format!("error: {e}"),
            None => self
                .oracle
                .minima
                .iter()
                .map(|d| format!("{{{d}}}"))
                .collect::<Vec<_>>()
                .join(" "),
        };
        let _ = write!(out, "{:<14} {:>6}  {}", "oracle", length, body);
        if let Some(us) = self.oracle.wall_time_us {
            let _ = write!(out, "  [{us} us]");
        }
        out.push('\n');
        let gap = self
            .minimality_gap
            .map_or("-".to_owned(), |g| g.to_string());
        let _ = writeln!(out, "minimality gap: {gap}");
        out
    }
}
