//! Reference implementations the library is checked against. They share
//! no code with the library beyond the data types.

use std::collections::BTreeMap;

use tlpc::syntax::{Atom, FirstOrder, Ident, Param, Query, Signature, Term, Type, VariableTyping};

/// Idempotent solution as a plain map.
pub type Solution<T> = BTreeMap<<T as FirstOrder>::Var, T>;

fn walk<T: FirstOrder>(t: &T, bind: &Solution<T>) -> T {
    let mut cur = t.clone();
    while let Some(next) = cur.as_var().and_then(|v| bind.get(v)) {
        cur = next.clone();
    }
    cur
}

fn resolve<T: FirstOrder>(t: &T, bind: &Solution<T>) -> T {
    let t = walk(t, bind);
    if t.as_var().is_some() {
        return t;
    }
    t.with_children(t.children().iter().map(|c| resolve(c, bind)).collect())
}

/// Substitution application for an idempotent map.
pub fn apply<T: FirstOrder>(t: &T, s: &Solution<T>) -> T {
    match t.as_var() {
        Some(v) => s.get(v).cloned().unwrap_or_else(|| t.clone()),
        None => t.with_children(t.children().iter().map(|c| apply(c, s)).collect()),
    }
}

/// Robinson unification over a triangular binding store. Variables for
/// which `rigid` holds are treated as constants.
pub fn robinson<T: FirstOrder>(eqs: &[(T, T)], rigid: &dyn Fn(&T::Var) -> bool) -> Option<Solution<T>> {
    let mut bind: Solution<T> = BTreeMap::new();
    let mut todo: Vec<(T, T)> = eqs.iter().rev().cloned().collect();
    while let Some((a, b)) = todo.pop() {
        let a = walk(&a, &bind);
        let b = walk(&b, &bind);
        match (a.as_var(), b.as_var()) {
            (Some(x), Some(y)) if x == y => {}
            (Some(x), _) if !rigid(x) => {
                if resolve(&b, &bind).occurs(x) {
                    return None;
                }
                bind.insert(x.clone(), b.clone());
            }
            (_, Some(y)) if !rigid(y) => {
                if resolve(&a, &bind).occurs(y) {
                    return None;
                }
                bind.insert(y.clone(), a.clone());
            }
            (Some(_), _) | (_, Some(_)) => return None,
            _ => {
                if !a.same_head(&b) {
                    return None;
                }
                for (c, d) in a.children().iter().zip(b.children()).rev() {
                    todo.push((c.clone(), d.clone()));
                }
            }
        }
    }
    let keys: Vec<T::Var> = bind.keys().cloned().collect();
    Some(
        keys.into_iter()
            .map(|k| {
                let t = resolve(&T::from_var(k.clone()), &bind);
                (k, t)
            })
            .filter(|(k, t)| t.as_var() != Some(k))
            .collect(),
    )
}

pub fn unifiable<T: FirstOrder>(eqs: &[(T, T)]) -> bool {
    robinson(eqs, &|_| false).is_some()
}

/// Parameters introduced by the oracle carry this base, which no generated
/// or declared type uses.
const FRESH: &str = "ω";

/// Bottom-up typing: each symbol occurrence gets a fresh copy of its
/// declaration and argument types are equated with the copy. Parameters
/// of the variable typing and of expected types stay rigid.
struct Checker<'a> {
    sig: &'a Signature,
    typing: &'a VariableTyping,
    next: u32,
    eqs: Vec<(Type, Type)>,
}

impl<'a> Checker<'a> {
    fn new(sig: &'a Signature, typing: &'a VariableTyping) -> Self {
        Checker {
            sig,
            typing,
            next: 1,
            eqs: Vec::new(),
        }
    }

    fn copy(&mut self, ts: &[Type]) -> Vec<Type> {
        let mut map: Solution<Type> = BTreeMap::new();
        for t in ts {
            t.for_each_var(&mut |p| {
                if !map.contains_key(p) {
                    map.insert(p.clone(), Type::Param(Param(Ident::new(FRESH, self.next))));
                    self.next += 1;
                }
            });
        }
        ts.iter().map(|t| apply(t, &map)).collect()
    }

    fn term(&mut self, t: &Term) -> Option<Type> {
        match t {
            Term::Var(v) => self.typing.get(v).cloned(),
            Term::Int(_) => self.sig.literal_type(),
            Term::App(f, args) => {
                let decl = self.sig.func(f)?;
                if decl.args.len() != args.len() {
                    return None;
                }
                let mut all = decl.args.clone();
                all.push(decl.result.clone());
                let copy = self.copy(&all);
                for (a, want) in args.iter().zip(&copy) {
                    let got = self.term(a)?;
                    self.eqs.push((got, want.clone()));
                }
                copy.last().cloned()
            }
        }
    }

    fn atom(&mut self, a: &Atom) -> Option<()> {
        let decl = self.sig.pred(&a.pred)?;
        if decl.args.len() != a.args.len() {
            return None;
        }
        let copy = self.copy(&decl.args);
        for (t, want) in a.args.iter().zip(copy) {
            let got = self.term(t)?;
            self.eqs.push((got, want));
        }
        Some(())
    }

    fn solve(&self) -> bool {
        robinson(&self.eqs, &|p: &Param| p.0.base() != FRESH).is_some()
    }
}

/// `U ⊢ t : σ`.
pub fn has_type(sig: &Signature, typing: &VariableTyping, t: &Term, expected: &Type) -> bool {
    let mut c = Checker::new(sig, typing);
    match c.term(t) {
        Some(got) => {
            c.eqs.push((got, expected.clone()));
            c.solve()
        }
        None => false,
    }
}

/// `U ⊢ A₁, …, Aₙ Query`.
pub fn query_typed(sig: &Signature, typing: &VariableTyping, q: &Query) -> bool {
    let mut c = Checker::new(sig, typing);
    q.atoms().iter().all(|a| c.atom(a).is_some()) && c.solve()
}

pub fn atom_typed(sig: &Signature, typing: &VariableTyping, a: &Atom) -> bool {
    query_typed(sig, typing, &Query::new(vec![a.clone()]))
}

/// Ground `T_P` iterated `n` times from the empty set.
pub fn ground_tp(clauses: &[tlpc::syntax::Clause], n: usize) -> std::collections::BTreeSet<Atom> {
    let mut m = std::collections::BTreeSet::new();
    for _ in 0..n {
        m = clauses
            .iter()
            .filter(|c| c.body.iter().all(|b| m.contains(b)))
            .map(|c| c.head.clone())
            .collect();
    }
    m
}
