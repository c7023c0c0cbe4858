use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::ident::{Ident, NameSource, Param, Symbol, Var};
use super::subst::{fresh_renaming, FirstOrder, Subst, Substitutable};
use super::types::{Type, TypeSubstitution};
use super::{CONS, EQ, GO, MINUS, NIL};

/// A first-order term. Integer literals are constants of type `int`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(Var),
    Int(i64),
    App(Symbol, Vec<Term>),
}

pub type TermSubstitution = Subst<Term>;

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(Var::named(name))
    }

    pub fn app(f: &str, args: Vec<Term>) -> Term {
        Term::App(f.into(), args)
    }

    pub fn constant(c: &str) -> Term {
        Term::App(c.into(), Vec::new())
    }

    pub fn nil() -> Term {
        Term::constant(NIL)
    }

    pub fn cons(head: Term, tail: Term) -> Term {
        Term::app(CONS, vec![head, tail])
    }

    /// `[t₁, …, tₙ]` built from `cons`/`nil`.
    pub fn list(items: Vec<Term>) -> Term {
        items.into_iter().rev().fold(Term::nil(), |tail, t| Term::cons(t, tail))
    }

    pub fn minus(a: Term, b: Term) -> Term {
        Term::app(MINUS, vec![a, b])
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.tree_vars()
    }

    /// Replaces every `minus(i, j)` on integer literals by `i - j`, bottom-up.
    pub fn eval_arith(&self) -> Term {
        match self {
            Term::App(f, args) => {
                let args: Vec<Term> = args.iter().map(Term::eval_arith).collect();
                if &**f == MINUS {
                    if let [Term::Int(a), Term::Int(b)] = args.as_slice() {
                        if let Some(v) = a.checked_sub(*b) {
                            return Term::Int(v);
                        }
                    }
                }
                Term::App(f.clone(), args)
            }
            _ => self.clone(),
        }
    }
}

impl FirstOrder for Term {
    type Var = Var;

    fn from_var(v: Var) -> Self {
        Term::Var(v)
    }

    fn as_var(&self) -> Option<&Var> {
        match self {
            Term::Var(v) => Some(v),
            _ => None,
        }
    }

    fn same_head(&self, other: &Self) -> bool {
        match (self, other) {
            (Term::Int(a), Term::Int(b)) => a == b,
            (Term::App(f, xs), Term::App(g, ys)) => f == g && xs.len() == ys.len(),
            _ => false,
        }
    }

    fn children(&self) -> &[Self] {
        match self {
            Term::App(_, args) => args,
            _ => &[],
        }
    }

    fn with_children(&self, children: Vec<Self>) -> Self {
        match self {
            Term::App(f, _) => Term::App(f.clone(), children),
            _ => self.clone(),
        }
    }

    fn var_ident(v: &Var) -> &Ident {
        &v.0
    }

    fn var_from_ident(id: Ident) -> Var {
        Var(id)
    }
}

/// `p(t₁, …, tₙ)`; equality atoms use the predicate `=`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub pred: Symbol,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(pred: &str, args: Vec<Term>) -> Atom {
        Atom {
            pred: pred.into(),
            args,
        }
    }

    pub fn eq(lhs: Term, rhs: Term) -> Atom {
        Atom::new(EQ, vec![lhs, rhs])
    }

    pub fn go() -> Atom {
        Atom::new(GO, Vec::new())
    }

    pub fn is_equality(&self) -> bool {
        &*self.pred == EQ
    }

    pub fn arity(&self) -> usize {
        self.args.len()
    }

    /// The atom as a tree `pred(args)`, for unification.
    pub fn as_term(&self) -> Term {
        Term::App(self.pred.clone(), self.args.clone())
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.tree_vars()
    }

    pub fn eval_arith(&self) -> Atom {
        Atom {
            pred: self.pred.clone(),
            args: self.args.iter().map(Term::eval_arith).collect(),
        }
    }

    pub fn is_ground(&self) -> bool {
        self.args.iter().all(FirstOrder::is_ground)
    }

    pub fn depth(&self) -> usize {
        self.args.iter().map(FirstOrder::depth).max().unwrap_or(0)
    }
}

impl Substitutable<Term> for Atom {
    fn for_each_tree_var(&self, f: &mut dyn FnMut(&Var)) {
        self.args.for_each_tree_var(f)
    }

    fn apply(&self, s: &TermSubstitution) -> Self {
        Atom {
            pred: self.pred.clone(),
            args: self.args.apply(s),
        }
    }
}

/// A finite sequence of atoms.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Query(pub Vec<Atom>);

impl Query {
    pub fn new(atoms: Vec<Atom>) -> Query {
        Query(atoms)
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.tree_vars()
    }

    pub fn eval_arith(&self) -> Query {
        Query(self.0.iter().map(Atom::eval_arith).collect())
    }

    /// The wrapper clause `go ← Q`.
    pub fn wrapper(&self) -> Clause {
        Clause::new(Atom::go(), self.0.clone())
    }
}

impl Substitutable<Term> for Query {
    fn for_each_tree_var(&self, f: &mut dyn FnMut(&Var)) {
        self.0.for_each_tree_var(f)
    }

    fn apply(&self, s: &TermSubstitution) -> Self {
        Query(self.0.apply(s))
    }
}

/// `h ← a₁, …, aₘ`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clause {
    pub head: Atom,
    pub body: Vec<Atom>,
}

impl Clause {
    pub fn new(head: Atom, body: Vec<Atom>) -> Clause {
        Clause { head, body }
    }

    pub fn fact(head: Atom) -> Clause {
        Clause::new(head, Vec::new())
    }

    /// Head followed by body atoms.
    pub fn atoms(&self) -> impl Iterator<Item = &Atom> {
        std::iter::once(&self.head).chain(self.body.iter())
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.tree_vars()
    }

    /// A variant of the clause whose variables are all fresh.
    pub fn rename_apart(&self, names: &mut NameSource) -> Clause {
        self.apply(&fresh_renaming(self, names))
    }
}

impl Substitutable<Term> for Clause {
    fn for_each_tree_var(&self, f: &mut dyn FnMut(&Var)) {
        self.head.for_each_tree_var(f);
        self.body.for_each_tree_var(f);
    }

    fn apply(&self, s: &TermSubstitution) -> Self {
        Clause {
            head: self.head.apply(s),
            body: self.body.apply(s),
        }
    }
}

/// Assignment of types to variables, written `U`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VariableTyping(BTreeMap<Var, Type>);

impl VariableTyping {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, Type)>) -> Self {
        VariableTyping(pairs.into_iter().collect())
    }

    pub fn get(&self, v: &Var) -> Option<&Type> {
        self.0.get(v)
    }

    /// Returns the previous type if `v` was already typed.
    pub fn insert(&mut self, v: Var, t: Type) -> Option<Type> {
        self.0.insert(v, t)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, &Type)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pars(&self) -> BTreeSet<Param> {
        self.tree_vars()
    }

    /// Union of two typings; `None` if they disagree on a shared variable.
    pub fn union(&self, other: &VariableTyping) -> Option<VariableTyping> {
        let mut out = self.clone();
        for (v, t) in other.iter() {
            if let Some(prev) = out.insert(v.clone(), t.clone()) {
                if &prev != t {
                    return None;
                }
            }
        }
        Some(out)
    }

    /// Renames variables according to a variable-to-variable substitution.
    pub fn rename_vars(&self, renaming: &TermSubstitution) -> VariableTyping {
        VariableTyping(
            self.0
                .iter()
                .map(|(v, t)| {
                    let v = match renaming.get(v) {
                        Some(Term::Var(w)) => w.clone(),
                        _ => v.clone(),
                    };
                    (v, t.clone())
                })
                .collect(),
        )
    }
}

impl fmt::Display for VariableTyping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (v, t)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}: {t}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for VariableTyping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Substitutable<Type> for VariableTyping {
    fn for_each_tree_var(&self, f: &mut dyn FnMut(&Param)) {
        for t in self.0.values() {
            t.for_each_var(f);
        }
    }

    fn apply(&self, s: &TypeSubstitution) -> Self {
        VariableTyping(self.0.iter().map(|(v, t)| (v.clone(), t.apply(s))).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vars_of_atom() {
        let a = Atom::new("app", vec![Term::var("Xs"), Term::nil(), Term::var("Zs")]);
        assert_eq!(a.vars(), [Var::named("Xs"), Var::named("Zs")].into());
    }

    #[test]
    fn term_substitution_application() {
        let s = Subst::singleton(Var::named("X"), Term::nil());
        let p = Atom::new("p", vec![Term::var("X")]);
        assert_eq!(p.apply(&s), Atom::new("p", vec![Term::nil()]));
        assert_eq!(Term::var("X").apply(&Subst::new()), Term::var("X"));
        let one = Subst::singleton(Var::named("X"), Term::Int(1));
        let t = Term::app("cons", vec![Term::var("X"), Term::var("Y")]);
        assert_eq!(t.apply(&one), Term::app("cons", vec![Term::Int(1), Term::var("Y")]));
    }

    #[test]
    fn restriction() {
        let s = Subst::from_pairs([(Var::named("X"), Term::nil()), (Var::named("Y"), Term::Int(1))]);
        let r = s.restrict_to(&Term::var("X"));
        assert_eq!(r, Subst::singleton(Var::named("X"), Term::nil()));
    }

    #[test]
    fn rename_apart_preserves_sharing() {
        let mut names = NameSource::new();
        let c = Clause::fact(Atom::new("app", vec![Term::nil(), Term::var("Ys"), Term::var("Ys")]));
        let r = c.rename_apart(&mut names);
        assert_eq!(r.head.args[1], r.head.args[2]);
        assert!(r.vars().is_disjoint(&c.vars()));
        let ground = Clause::fact(Atom::new("r", vec![Term::list(vec![Term::Int(1)])]));
        assert_eq!(ground.rename_apart(&mut names), ground);
    }

    #[test]
    fn arithmetic_reduction() {
        let t = Term::minus(Term::minus(Term::Int(3), Term::Int(1)), Term::Int(1));
        assert_eq!(t.eval_arith(), Term::Int(1));
        let open = Term::minus(Term::var("J"), Term::Int(1));
        assert_eq!(open.eval_arith(), open);
    }
}
