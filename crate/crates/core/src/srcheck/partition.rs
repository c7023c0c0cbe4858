use std::fmt;

use super::AnalysisError;
use crate::syntax::{Genericity, PartitionDecl, Signature, Symbol, Type, TypeTuple};

/// Head-/body-generic roles of every argument position.
///
/// Predicates without an entry, including `=` and `go`, are all
/// head-generic.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Partition {
    entries: Vec<(Symbol, Vec<Genericity>)>,
}

impl Partition {
    /// Every position of every declared predicate head-generic.
    pub fn all_head(sig: &Signature) -> Partition {
        Partition {
            entries: sig
                .preds()
                .iter()
                .map(|d| (d.name.clone(), vec![Genericity::Head; d.args.len()]))
                .collect(),
        }
    }

    /// All-head, overridden by the given annotations.
    pub fn from_decls(sig: &Signature, decls: &[PartitionDecl]) -> Result<Partition, AnalysisError> {
        let mut part = Partition::all_head(sig);
        for d in decls {
            part.set(sig, &d.pred, d.positions.clone())?;
        }
        Ok(part)
    }

    pub fn set(&mut self, sig: &Signature, pred: &str, roles: Vec<Genericity>) -> Result<(), AnalysisError> {
        let Some(decl) = sig.preds().iter().find(|d| &*d.name == pred) else {
            return Err(AnalysisError::UnknownPredicate(pred.into()));
        };
        if decl.args.len() != roles.len() {
            return Err(AnalysisError::PartitionArity {
                pred: decl.name.clone(),
                expected: decl.args.len(),
                found: roles.len(),
            });
        }
        match self.entries.iter_mut().find(|(p, _)| &**p == pred) {
            Some(e) => e.1 = roles,
            None => self.entries.push((decl.name.clone(), roles)),
        }
        Ok(())
    }

    pub fn roles(&self, pred: &str) -> Option<&[Genericity]> {
        self.entries
            .iter()
            .find(|(p, _)| &**p == pred)
            .map(|(_, r)| r.as_slice())
    }

    pub fn role(&self, pred: &str, position: usize) -> Genericity {
        self.roles(pred)
            .and_then(|r| r.get(position).copied())
            .unwrap_or(Genericity::Head)
    }

    pub fn entries(&self) -> &[(Symbol, Vec<Genericity>)] {
        &self.entries
    }

    /// The types at positions of `pred` with role `want`, in order.
    pub fn select(&self, pred: &str, types: &[Type], want: Genericity) -> Vec<Type> {
        types
            .iter()
            .enumerate()
            .filter(|(i, _)| self.role(pred, *i) == want)
            .map(|(_, t)| t.clone())
            .collect()
    }

    pub(crate) fn select_tuple(&self, pred: &str, types: &TypeTuple, want: Genericity) -> Vec<Type> {
        self.select(pred, types.types(), want)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (p, roles) in self.entries.iter().filter(|(_, r)| !r.is_empty()) {
            if !first {
                f.write_str(", ")?;
            }
            first = false;
            let letters: Vec<String> = roles.iter().map(|g| g.letter().to_string()).collect();
            write!(f, "{p}({})", letters.join(","))?;
        }
        if first {
            f.write_str("(no argument positions)")?;
        }
        Ok(())
    }
}
