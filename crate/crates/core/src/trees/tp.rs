use std::collections::{BTreeMap, BTreeSet};

use super::ClauseDb;
use crate::syntax::{match_into, Atom, FirstOrder, Substitutable, Symbol, Term, TermSubstitution, Var, MINUS};

/// A finite set of ground atoms, all of term depth at most `bound`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GroundAtomSet {
    pub bound: usize,
    pub atoms: BTreeSet<Atom>,
}

impl GroundAtomSet {
    pub fn empty(bound: usize) -> GroundAtomSet {
        GroundAtomSet {
            bound,
            atoms: BTreeSet::new(),
        }
    }

    pub fn contains(&self, a: &Atom) -> bool {
        self.atoms.contains(a)
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Atom> {
        self.atoms.iter()
    }
}

/// Ground terms of depth `≤ d`, indexed by `d`, built from the program's
/// function symbols (without `minus`) and its integer literals.
struct Universe {
    by_depth: Vec<Vec<Term>>,
}

impl Universe {
    fn new(db: &ClauseDb, bound: usize) -> Universe {
        let sig = db.signature();
        let mut symbols: Vec<(Symbol, usize)> = sig
            .funcs()
            .iter()
            .filter(|f| &*f.name != MINUS)
            .map(|f| (f.name.clone(), f.args.len()))
            .collect();
        symbols.dedup();
        let mut ints = BTreeSet::new();
        for c in db.clauses() {
            for a in c.atoms() {
                for t in &a.args {
                    collect_ints(t, &mut ints);
                }
            }
        }
        // by_depth[d] holds exactly the terms of depth ≤ d.
        let mut by_depth: Vec<Vec<Term>> = Vec::new();
        let leaves: Vec<Term> = symbols
            .iter()
            .filter(|(_, n)| *n == 0)
            .map(|(f, _)| Term::App(f.clone(), Vec::new()))
            .chain(ints.iter().map(|&i| Term::Int(i)))
            .collect();
        by_depth.push(leaves);
        for d in 1..=bound {
            let prev = by_depth[d - 1].clone();
            let mut layer: BTreeSet<Term> = prev.iter().cloned().collect();
            for (f, n) in symbols.iter().filter(|(_, n)| *n > 0) {
                for args in product(&prev, *n) {
                    layer.insert(Term::App(f.clone(), args));
                }
            }
            by_depth.push(layer.into_iter().collect());
        }
        Universe { by_depth }
    }

    fn up_to(&self, d: usize) -> &[Term] {
        &self.by_depth[d.min(self.by_depth.len() - 1)]
    }
}

fn collect_ints(t: &Term, out: &mut BTreeSet<i64>) {
    match t {
        Term::Int(i) => {
            out.insert(*i);
        }
        Term::App(_, args) => args.iter().for_each(|a| collect_ints(a, out)),
        Term::Var(_) => {}
    }
}

fn product(items: &[Term], n: usize) -> Vec<Vec<Term>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * items.len());
        for prefix in &out {
            for t in items {
                let mut p = prefix.clone();
                p.push(t.clone());
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// For each variable of `a`, the deepest nesting level at which it occurs.
fn var_nesting(a: &Atom, out: &mut BTreeMap<Var, usize>) {
    fn go(t: &Term, level: usize, out: &mut BTreeMap<Var, usize>) {
        match t {
            Term::Var(v) => {
                let e = out.entry(v.clone()).or_insert(level);
                *e = (*e).max(level);
            }
            Term::App(_, args) => args.iter().for_each(|x| go(x, level + 1, out)),
            Term::Int(_) => {}
        }
    }
    for t in &a.args {
        go(t, 0, out);
    }
}

fn match_body(body: &[Atom], m: &GroundAtomSet, acc: TermSubstitution, out: &mut Vec<TermSubstitution>) {
    let Some((first, rest)) = body.split_first() else {
        out.push(acc);
        return;
    };
    let pattern = first.as_term();
    for g in m.iter().filter(|g| g.pred == first.pred && g.arity() == first.arity()) {
        let mut s = acc.clone();
        if match_into(&pattern, &g.as_term(), &mut s) {
            match_body(rest, m, s, out);
        }
    }
}

fn step_with(db: &ClauseDb, universe: &Universe, m: &GroundAtomSet) -> GroundAtomSet {
    let mut out = GroundAtomSet::empty(m.bound);
    for index in db.program_clauses() {
        let c = db.clause(index);
        let mut thetas = Vec::new();
        match_body(&c.body, m, TermSubstitution::new(), &mut thetas);
        for theta in thetas {
            let head = c.head.apply(&theta);
            let mut nesting = BTreeMap::new();
            var_nesting(&head, &mut nesting);
            let mut partial = vec![TermSubstitution::new()];
            for (v, level) in &nesting {
                if m.bound < *level {
                    partial.clear();
                    break;
                }
                let mut next = Vec::new();
                for s in &partial {
                    for t in universe.up_to(m.bound - level) {
                        let mut s2 = s.clone();
                        s2.insert(v.clone(), t.clone());
                        next.push(s2);
                    }
                }
                partial = next;
            }
            for s in partial {
                let h = head.apply(&s);
                if h.is_ground() && h.args.iter().all(|t| t.depth() <= m.bound) {
                    out.atoms.insert(h);
                }
            }
        }
    }
    out
}

/// `T_P(M)`, restricted to atoms of term depth at most `m.bound`.
///
/// Untyped: head variables not bound by the body range over every ground
/// term of the program's symbols that fits the bound.
pub fn tp_step(db: &ClauseDb, m: &GroundAtomSet) -> GroundAtomSet {
    step_with(db, &Universe::new(db, m.bound), m)
}

/// `T_P ↑ n` from the empty set.
pub fn tp_iterate(db: &ClauseDb, n: usize, bound: usize) -> GroundAtomSet {
    let universe = Universe::new(db, bound);
    let mut m = GroundAtomSet::empty(bound);
    for _ in 0..n {
        m = step_with(db, &universe, &m);
    }
    m
}

/// Least fixpoint of the bounded operator. Terminates because the set of
/// candidate atoms is finite and the operator is monotone.
pub fn tp_fixpoint_bounded(db: &ClauseDb, bound: usize) -> GroundAtomSet {
    let universe = Universe::new(db, bound);
    let mut m = GroundAtomSet::empty(bound);
    loop {
        let next = step_with(db, &universe, &m);
        if next == m {
            return m;
        }
        m = next;
    }
}
