use std::fmt;

use super::ident::{NameSource, Symbol};
use super::signature::Signature;
use super::subst::Substitutable;
use super::term::{Clause, Query, Term};
use super::types::Type;
use super::GO;

/// Role of an argument position in a partition annotation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Genericity {
    Head,
    Body,
}

impl Genericity {
    pub fn letter(self) -> char {
        match self {
            Genericity::Head => 'h',
            Genericity::Body => 'b',
        }
    }
}

/// `partition p(g₁, …, gₘ).`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionDecl {
    pub pred: Symbol,
    pub positions: Vec<Genericity>,
}

/// Signature, clauses in textual order, and optional partition annotations.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Program {
    pub signature: Signature,
    pub clauses: Vec<Clause>,
    pub partitions: Vec<PartitionDecl>,
}

impl Program {
    pub fn new(signature: Signature, clauses: Vec<Clause>) -> Program {
        Program {
            signature,
            clauses,
            partitions: Vec::new(),
        }
    }

    /// Largest freshness index used by any variable or parameter.
    pub fn max_index(&self) -> u32 {
        let vars = self
            .clauses
            .iter()
            .flat_map(Substitutable::<Term>::tree_vars)
            .map(|v| v.0.index());
        let pars = self.signature.pars().into_iter().map(|p| p.0.index());
        vars.chain(pars).max().unwrap_or(0)
    }

    /// A name source that cannot collide with anything in the program or
    /// in `query`.
    pub fn name_source(&self, query: Option<&Query>) -> NameSource {
        let q = query
            .map(|q| q.vars().iter().map(|v| v.0.index()).max().unwrap_or(0))
            .unwrap_or(0);
        NameSource::above(self.max_index().max(q))
    }

    /// Body of the first user clause for `go`, if any.
    pub fn go_query(&self) -> Option<Query> {
        self.clauses
            .iter()
            .find(|c| &*c.head.pred == GO && c.head.args.is_empty())
            .map(|c| Query(c.body.clone()))
    }

    pub fn uses_equality(&self) -> bool {
        self.clauses.iter().any(|c| c.body.iter().any(|a| a.is_equality()))
    }

    /// Integer literals occurring in the clauses.
    pub fn int_literals(&self) -> Vec<i64> {
        fn walk(t: &Term, out: &mut Vec<i64>) {
            match t {
                Term::Int(i) => {
                    if !out.contains(i) {
                        out.push(*i)
                    }
                }
                Term::App(_, args) => args.iter().for_each(|a| walk(a, out)),
                Term::Var(_) => {}
            }
        }
        let mut out = Vec::new();
        for c in &self.clauses {
            for a in c.atoms() {
                a.args.iter().for_each(|t| walk(t, &mut out));
            }
        }
        out.sort_unstable();
        out
    }

    pub fn declared_pred_types(&self, pred: &str) -> Option<&[Type]> {
        self.signature.pred(pred).map(|d| d.args.as_slice())
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.signature)?;
        for p in &self.partitions {
            let letters: Vec<String> = p.positions.iter().map(|g| g.letter().to_string()).collect();
            writeln!(f, "partition {}({}).", p.pred, letters.join(","))?;
        }
        for c in &self.clauses {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}
