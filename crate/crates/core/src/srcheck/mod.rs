//! Subject reduction: type skeletons, the bounded proof-theoretic check,
//! the operational monitor, and the static conditions that imply it.

mod conditions;
mod monitor;
mod partition;
mod skeleton;

use std::fmt;

pub use conditions::{check_head_condition, check_semi_generic, nearest_partition, search_partition};
pub use monitor::{monitor_derivation, MonitorOutcome};
pub use partition::Partition;
pub use skeleton::{
    assembled_typing, check_subject_reduction_bounded, eq_of_type_skeleton, is_proper_type_skeleton, split_equations,
    type_skeleton_of, NodeTypeError, SrCounterexample, SrOutcome, TypeLabel, TypeSkeleton,
};

use crate::syntax::{Program, Query, Symbol};
use crate::typecheck::{clause_typing, query_typing, ClauseTyping, TypeError};

/// Inputs an analysis refuses to start on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    Untypable {
        clause: usize,
        error: TypeError,
    },
    QueryUntypable {
        query: Query,
        error: TypeError,
    },
    PartitionArity {
        pred: Symbol,
        expected: usize,
        found: usize,
    },
    UnknownPredicate(Symbol),
}

impl fmt::Display for AnalysisError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnalysisError::Untypable { clause, error } => write!(f, "clause {clause} is not typable: {error}"),
            AnalysisError::QueryUntypable { query, error } => write!(f, "query `{query}` is not typable: {error}"),
            AnalysisError::PartitionArity { pred, expected, found } => {
                write!(
                    f,
                    "partition for {pred} has {found} position(s), the predicate has arity {expected}"
                )
            }
            AnalysisError::UnknownPredicate(p) => write!(f, "partition names undeclared predicate {p}"),
        }
    }
}

impl std::error::Error for AnalysisError {}

/// Most general types of all program clauses, in order.
fn program_typings(p: &Program) -> Result<Vec<ClauseTyping>, AnalysisError> {
    p.clauses
        .iter()
        .enumerate()
        .map(|(i, c)| clause_typing(&p.signature, c).map_err(|error| AnalysisError::Untypable { clause: i, error }))
        .collect()
}

fn require_query(p: &Program, q: &Query) -> Result<(), AnalysisError> {
    query_typing(&p.signature, q)
        .map(|_| ())
        .map_err(|error| AnalysisError::QueryUntypable {
            query: q.clone(),
            error,
        })
}
