use std::collections::BTreeSet;

use super::{program_typings, AnalysisError, Partition};
use crate::report::{CheckReport, Condition, Finding};
use crate::syntax::{is_variant, pars, Clause, Genericity, Param, Program, Query, Signature, Type, TypeTuple};
use crate::typecheck::{clause_typing, ClauseTyping};

fn tuple(types: &[Type]) -> String {
    TypeTuple(types.to_vec()).to_string()
}

fn declared<'a>(sig: &'a Signature, pred: &str) -> &'a [Type] {
    sig.pred(pred).map(|d| d.args.as_slice()).unwrap_or(&[])
}

/// Each clause's head type must be a variant of the declared type.
pub fn check_head_condition(p: &Program) -> Result<CheckReport, AnalysisError> {
    let typings = program_typings(p)?;
    let mut report = CheckReport::new();
    for (i, (c, ct)) in p.clauses.iter().zip(&typings).enumerate() {
        let decl = declared(&p.signature, &c.head.pred);
        let head = ct.head().types();
        if !is_variant(decl, head) {
            report.push(Finding::new(
                Some(i),
                Condition::HeadCondition,
                format!("{}: head has type {}, declared {}", c.head, tuple(head), tuple(decl)),
            ));
        }
    }
    Ok(report)
}

/// One atom of a clause, split by role.
struct Split {
    pred: String,
    /// Generic positions: head-generic in the head, body-generic in the body.
    generic: Vec<Type>,
    /// The same positions of the declared type.
    generic_decl: Vec<Type>,
    /// The remaining positions.
    other: Vec<Type>,
}

fn split_clause(sig: &Signature, part: &Partition, c: &Clause, ct: &ClauseTyping) -> Vec<Split> {
    c.atoms()
        .zip(&ct.atoms)
        .enumerate()
        .map(|(k, (a, t))| {
            let (g, o) = if k == 0 {
                (Genericity::Head, Genericity::Body)
            } else {
                (Genericity::Body, Genericity::Head)
            };
            Split {
                pred: a.pred.to_string(),
                generic: part.select_tuple(&a.pred, t, g),
                generic_decl: part.select(&a.pred, declared(sig, &a.pred), g),
                other: part.select_tuple(&a.pred, t, o),
            }
        })
        .collect()
}

fn names(ps: &BTreeSet<Param>) -> String {
    ps.iter().map(Param::to_string).collect::<Vec<_>>().join(",")
}

fn generic_ok(s: &Split) -> bool {
    is_variant(&s.generic_decl, &s.generic)
}

fn condition3(s: &Split, k: usize) -> Option<String> {
    (!generic_ok(s)).then(|| {
        format!(
            "atom {k} ({}): generic positions have type {}, declared {}",
            s.pred,
            tuple(&s.generic),
            tuple(&s.generic_decl)
        )
    })
}

/// Findings for one clause. Condition 2 is evaluated on the instantiated
/// types, like conditions 1 and 3.
fn clause_findings(splits: &[Split], clause: Option<usize>, label: &str) -> Vec<Finding> {
    let mut out = Vec::new();
    let gp: Vec<BTreeSet<Param>> = splits.iter().map(|s| pars(&s.generic)).collect();
    for i in 0..splits.len() {
        for j in i + 1..splits.len() {
            let shared: BTreeSet<Param> = gp[i].intersection(&gp[j]).cloned().collect();
            if !shared.is_empty() {
                out.push(Finding::new(
                    clause,
                    Condition::SemiGeneric1,
                    format!(
                        "{label}: generic positions of atoms {i} and {j} share {}",
                        names(&shared)
                    ),
                ));
            }
        }
    }
    for i in 1..splits.len() {
        let later: BTreeSet<Param> = gp[i..].iter().flatten().cloned().collect();
        let shared: BTreeSet<Param> = pars(&splits[i].other).intersection(&later).cloned().collect();
        if !shared.is_empty() {
            out.push(Finding::new(
                clause,
                Condition::SemiGeneric2,
                format!(
                    "{label}: head-generic positions of atom {i} share {} with body-generic positions at or after it",
                    names(&shared)
                ),
            ));
        }
    }
    for (k, s) in splits.iter().enumerate() {
        if let Some(w) = condition3(s, k) {
            out.push(Finding::new(clause, Condition::SemiGeneric3, format!("{label}: {w}")));
        }
    }
    out
}

fn query_typings(p: &Program, queries: &[Query]) -> Result<Vec<(Clause, ClauseTyping)>, AnalysisError> {
    queries
        .iter()
        .map(|q| {
            let c = q.wrapper();
            clause_typing(&p.signature, &c)
                .map(|ct| (c, ct))
                .map_err(|error| AnalysisError::QueryUntypable {
                    query: q.clone(),
                    error,
                })
        })
        .collect()
}

fn check_partition(p: &Program, part: &Partition) -> Result<(), AnalysisError> {
    for (pred, roles) in part.entries() {
        let decl = p
            .signature
            .preds()
            .iter()
            .find(|d| d.name == *pred)
            .ok_or_else(|| AnalysisError::UnknownPredicate(pred.clone()))?;
        if decl.args.len() != roles.len() {
            return Err(AnalysisError::PartitionArity {
                pred: pred.clone(),
                expected: decl.args.len(),
                found: roles.len(),
            });
        }
    }
    Ok(())
}

/// Semi-genericity of every clause and of each query's wrapper `go ← Q`.
/// Query findings carry no clause index.
pub fn check_semi_generic(p: &Program, part: &Partition, queries: &[Query]) -> Result<CheckReport, AnalysisError> {
    check_partition(p, part)?;
    let typings = program_typings(p)?;
    let qs = query_typings(p, queries)?;
    let mut report = CheckReport::new();
    report.note("semi-generic-2 compares parameters of the instantiated clause types");
    for (i, (c, ct)) in p.clauses.iter().zip(&typings).enumerate() {
        let splits = split_clause(&p.signature, part, c, ct);
        for f in clause_findings(&splits, Some(i), c.to_string().trim_end_matches('.')) {
            report.push(f);
        }
    }
    for (q, (c, ct)) in queries.iter().zip(&qs) {
        let splits = split_clause(&p.signature, part, c, ct);
        for f in clause_findings(&splits, None, &format!("query {q}")) {
            report.push(f);
        }
    }
    Ok(report)
}

/// A clause prepared for the search: its splits are recomputed per
/// candidate, so only the typing is cached.
struct Item<'a> {
    clause: Clause,
    typing: &'a ClauseTyping,
    /// Rank of the last searched predicate the clause mentions, if any.
    last: Option<usize>,
}

/// The first partition, in a fixed order, under which the program and all
/// `queries` are semi-generic.
///
/// Predicates are assigned in declaration order and each one's role
/// vectors are tried lexicographically with `h` before `b`, so a program
/// fulfilling the head condition gets the all-head partition. A clause
/// violating condition 3 at an assigned atom, or any condition once all its
/// predicates are assigned, prunes the branch.
pub fn search_partition(p: &Program, queries: &[Query]) -> Result<Option<Partition>, AnalysisError> {
    let typings = program_typings(p)?;
    let qs = query_typings(p, queries)?;
    let sig = &p.signature;
    let preds: Vec<(String, usize)> = sig.preds().iter().map(|d| (d.name.to_string(), d.args.len())).collect();
    let rank = |name: &str| preds.iter().position(|(p, _)| p == name);
    let items: Vec<Item> = p
        .clauses
        .iter()
        .cloned()
        .zip(&typings)
        .chain(qs.iter().map(|(c, ct)| (c.clone(), ct)))
        .map(|(clause, typing)| {
            let last = clause.atoms().filter_map(|a| rank(&a.pred)).max();
            Item { clause, typing, last }
        })
        .collect();
    // Clauses with no searched predicate are fixed from the start.
    let part = Partition::all_head(sig);
    for it in items.iter().filter(|it| it.last.is_none()) {
        if !clause_findings(&split_clause(sig, &part, &it.clause, it.typing), None, "").is_empty() {
            return Ok(None);
        }
    }
    let mut part = part;
    Ok(assign(sig, &preds, &items, 0, &mut part).then_some(part))
}

fn assign(sig: &Signature, preds: &[(String, usize)], items: &[Item], r: usize, part: &mut Partition) -> bool {
    let Some((name, arity)) = preds.get(r) else {
        return true;
    };
    for mask in 0..(1usize << arity) {
        let roles: Vec<Genericity> = (0..*arity)
            .map(|k| {
                if mask >> (arity - 1 - k) & 1 == 0 {
                    Genericity::Head
                } else {
                    Genericity::Body
                }
            })
            .collect();
        part.set(sig, name, roles).expect("arity matches the declaration");
        if viable(sig, items, r, name, part) && assign(sig, preds, items, r + 1, part) {
            return true;
        }
    }
    part.set(sig, name, vec![Genericity::Head; *arity])
        .expect("arity matches the declaration");
    false
}

fn viable(sig: &Signature, items: &[Item], r: usize, name: &str, part: &Partition) -> bool {
    items.iter().all(|it| {
        let splits = split_clause(sig, part, &it.clause, it.typing);
        if it.last == Some(r) {
            return clause_findings(&splits, None, "").is_empty();
        }
        splits.iter().filter(|s| s.pred == name).all(generic_ok)
    })
}

/// Cap on exhaustive enumeration in [`nearest_partition`].
const NEAREST_LIMIT: usize = 12;

/// A partition to explain why no partition works, with its report.
///
/// Among all partitions it picks the one whose failing clauses, compared
/// from the last clause backwards, sit earliest in the program: later
/// clauses constrain the roles, and the report shows the first clause those
/// constraints break. Ties go to the first partition in search order. Falls
/// back to the all-head partition beyond `NEAREST_LIMIT` positions.
pub fn nearest_partition(p: &Program, queries: &[Query]) -> Result<(Partition, CheckReport), AnalysisError> {
    let sig = &p.signature;
    let preds: Vec<(String, usize)> = sig.preds().iter().map(|d| (d.name.to_string(), d.args.len())).collect();
    let positions: usize = preds.iter().map(|(_, n)| n).sum();
    let mut best = Partition::all_head(sig);
    let mut best_key = None;
    if positions <= NEAREST_LIMIT {
        for mask in 0..(1usize << positions) {
            let mut part = Partition::all_head(sig);
            let mut bit = positions;
            for (name, arity) in &preds {
                let roles = (0..*arity)
                    .map(|_| {
                        bit -= 1;
                        if mask >> bit & 1 == 0 {
                            Genericity::Head
                        } else {
                            Genericity::Body
                        }
                    })
                    .collect();
                part.set(sig, name, roles).expect("arity matches the declaration");
            }
            let report = check_semi_generic(p, &part, queries)?;
            let mut failing: Vec<usize> = report
                .findings()
                .iter()
                .map(|f| f.clause.unwrap_or(usize::MAX))
                .collect();
            failing.sort_unstable_by(|a, b| b.cmp(a));
            failing.dedup();
            if best_key.as_ref().is_none_or(|k| failing < *k) {
                best_key = Some(failing);
                best = part;
            }
        }
    }
    let report = check_semi_generic(p, &best, queries)?;
    Ok((best, report))
}
