use super::{program_typings, require_query, AnalysisError};
use crate::report::{CheckReport, Condition, Finding};
use crate::syntax::{Program, Query, TermSubstitution};
use crate::trees::{derivations, ClauseDb, DeriveConfig, Selection};
use crate::typecheck::is_typable;

#[derive(Debug, Clone)]
pub struct MonitorOutcome {
    pub report: CheckReport,
    /// Computed answers of the successful derivations, in search order.
    pub answers: Vec<TermSubstitution>,
    /// Number of derivations (including prefixes) inspected.
    pub explored: usize,
}

/// Runs every derivation of length `≤ depth` from `q` and checks that each
/// derived query is typable.
pub fn monitor_derivation(
    p: &Program,
    q: &Query,
    depth: usize,
    selection: Selection,
) -> Result<MonitorOutcome, AnalysisError> {
    program_typings(p)?;
    require_query(p, q)?;
    let db = ClauseDb::new(p, Some(q));
    let mut report = CheckReport::new().with_depth_bound(depth);
    let mut answers = Vec::new();
    let mut explored = 0;
    for d in derivations(&db, q, DeriveConfig::new(depth).selection(selection)) {
        explored += 1;
        if !is_typable(&p.signature, d.last()) {
            report.push(Finding::new(
                d.steps.last().map(|s| s.clause),
                Condition::QueryUntypable,
                format!("`{}` after:\n{d}", d.last()),
            ));
            break;
        }
        if d.is_success() {
            answers.push(d.answer());
        }
    }
    Ok(MonitorOutcome {
        report,
        answers,
        explored,
    })
}
