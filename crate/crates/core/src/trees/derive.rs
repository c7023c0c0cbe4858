use std::fmt;

use super::ClauseDb;
use crate::syntax::{Clause, NameSource, Query, Substitutable, TermSubstitution};
use crate::unify::mgu_atoms;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Selection {
    /// Always the first atom.
    #[default]
    Leftmost,
    /// Every atom in turn.
    All,
}

/// `(a₁, …, aₖ₋₁, B, aₖ₊₁, …, aₘ)θ` for θ = mgu(h, aₖ), with `k` 0-based.
///
/// `c` must already be renamed apart from `q`. Returns `None` when the
/// head and the selected atom do not unify or `k` is out of range.
pub fn derive_step(q: &Query, k: usize, c: &Clause) -> Option<(Query, TermSubstitution)> {
    let selected = q.atoms().get(k)?;
    let theta = mgu_atoms(&c.head, selected)?;
    let mut atoms = Vec::with_capacity(q.len() + c.body.len());
    atoms.extend_from_slice(&q.atoms()[..k]);
    atoms.extend(c.body.iter().cloned());
    atoms.extend_from_slice(&q.atoms()[k + 1..]);
    Some((Query(atoms).apply(&theta), theta))
}

/// One resolution step of a derivation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    /// Selected position, 0-based.
    pub position: usize,
    /// Clause index in the [`ClauseDb`].
    pub clause: usize,
    /// The renamed clause copy used.
    pub renamed: Clause,
    pub mgu: TermSubstitution,
    /// The derived query, after arithmetic evaluation if enabled.
    pub result: Query,
}

/// `Q ⇝* Q′` as a list of steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub start: Query,
    pub steps: Vec<Step>,
}

impl Derivation {
    pub fn last(&self) -> &Query {
        self.steps.last().map_or(&self.start, |s| &s.result)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Ends in the empty query.
    pub fn is_success(&self) -> bool {
        self.last().is_empty()
    }

    /// Composition of the step unifiers, restricted to the start query.
    pub fn answer(&self) -> TermSubstitution {
        let mut theta = TermSubstitution::new();
        for s in &self.steps {
            theta = theta.compose(&s.mgu);
        }
        let theta = theta.restrict_to(&self.start);
        // Arithmetic is evaluated on queries; do the same on answers.
        let mut out = TermSubstitution::new();
        for (v, t) in theta.iter() {
            out.insert(v.clone(), t.eval_arith());
        }
        out
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.start)?;
        for s in &self.steps {
            write!(f, "\n  ⇝[{}, clause {}] {}", s.position + 1, s.clause, s.result)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeriveConfig {
    /// Maximum number of steps.
    pub depth: usize,
    pub selection: Selection,
    /// Reduce `minus` on integer literals after each step.
    pub arith: bool,
}

impl DeriveConfig {
    pub fn new(depth: usize) -> DeriveConfig {
        DeriveConfig {
            depth,
            selection: Selection::Leftmost,
            arith: true,
        }
    }

    pub fn selection(mut self, selection: Selection) -> DeriveConfig {
        self.selection = selection;
        self
    }

    pub fn arith(mut self, arith: bool) -> DeriveConfig {
        self.arith = arith;
        self
    }
}

/// Every derivation of at most `depth` steps, prefixes included, in
/// depth-first order with clauses tried textually.
pub struct Derivations<'a> {
    db: &'a ClauseDb,
    cfg: DeriveConfig,
    names: NameSource,
    stack: Vec<Derivation>,
}

impl Iterator for Derivations<'_> {
    type Item = Derivation;

    fn next(&mut self) -> Option<Derivation> {
        let d = self.stack.pop()?;
        if d.len() < self.cfg.depth {
            let q = d.last().clone();
            let positions = match self.cfg.selection {
                Selection::Leftmost => 0..q.len().min(1),
                Selection::All => 0..q.len(),
            };
            let mut children = Vec::new();
            for k in positions {
                for index in self.db.candidates(&q.atoms()[k].pred) {
                    let renamed = self.db.clause(index).rename_apart(&mut self.names);
                    if let Some((result, mgu)) = derive_step(&q, k, &renamed) {
                        let result = if self.cfg.arith { result.eval_arith() } else { result };
                        let mut next = d.clone();
                        next.steps.push(Step {
                            position: k,
                            clause: index,
                            renamed,
                            mgu,
                            result,
                        });
                        children.push(next);
                    }
                }
            }
            self.stack.extend(children.into_iter().rev());
        }
        Some(d)
    }
}

pub fn derivations<'a>(db: &'a ClauseDb, q: &Query, cfg: DeriveConfig) -> Derivations<'a> {
    let start = if cfg.arith { q.eval_arith() } else { q.clone() };
    let mut names = db.names();
    let floor = q.vars().iter().map(|v| v.ident().index()).max().unwrap_or(0);
    if floor > names.high_water() {
        names = NameSource::above(floor);
    }
    Derivations {
        db,
        cfg,
        names,
        stack: vec![Derivation {
            start,
            steps: Vec::new(),
        }],
    }
}
