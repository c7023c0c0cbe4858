//! Martelli–Montanari unification, written once over [`FirstOrder`] trees
//! and used for both terms and types.
//!
//! Equations are processed leftmost first, and within an equation the
//! decomposition is left to right, so the first failure reported is
//! deterministic. The occur check is always on.

mod ordered;

use std::fmt;

pub use ordered::{ordered_unifiable, OrderedVerdict};

use crate::syntax::{
    Atom, FirstOrder, Query, Signature, Subst, Term, TermSubstitution, Type, TypeSubstitution, VariableTyping,
};

/// `lhs = rhs`; orientation is kept.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Equation<T> {
    pub lhs: T,
    pub rhs: T,
}

impl<T> Equation<T> {
    pub fn new(lhs: T, rhs: T) -> Equation<T> {
        Equation { lhs, rhs }
    }
}

impl<T: fmt::Display> fmt::Display for Equation<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

impl<T: fmt::Display> fmt::Debug for Equation<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An ordered list of equations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EquationSet<T>(pub Vec<Equation<T>>);

impl<T> Default for EquationSet<T> {
    fn default() -> Self {
        EquationSet(Vec::new())
    }
}

impl<T> EquationSet<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, lhs: T, rhs: T) {
        self.0.push(Equation::new(lhs, rhs));
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Equation<T>> {
        self.0.iter()
    }
}

impl<T> FromIterator<(T, T)> for EquationSet<T> {
    fn from_iter<I: IntoIterator<Item = (T, T)>>(iter: I) -> Self {
        EquationSet(iter.into_iter().map(|(l, r)| Equation::new(l, r)).collect())
    }
}

impl<T: fmt::Display> fmt::Display for EquationSet<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl<T: fmt::Display> fmt::Debug for EquationSet<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Equations between atoms, as equations between `pred(args)` trees.
pub fn atom_equations<'a>(pairs: impl IntoIterator<Item = (&'a Atom, &'a Atom)>) -> EquationSet<Term> {
    pairs.into_iter().map(|(l, r)| (l.as_term(), r.as_term())).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailureKind {
    /// Different symbols, or a rigid variable against anything else.
    Clash,
    Occurs,
}

/// Why an equation set has no unifier.
#[derive(Clone, PartialEq, Eq)]
pub struct UnifyError<T> {
    pub kind: FailureKind,
    /// Index of the equation whose processing failed.
    pub equation: usize,
    /// The two subtrees that could not be unified, under the bindings made so far.
    pub left: T,
    pub right: T,
}

impl<T: fmt::Display> fmt::Display for UnifyError<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FailureKind::Clash => write!(
                f,
                "equation {}: {} clashes with {}",
                self.equation, self.left, self.right
            ),
            FailureKind::Occurs => write!(
                f,
                "equation {}: occur check fails for {} = {}",
                self.equation, self.left, self.right
            ),
        }
    }
}

impl<T: fmt::Display> fmt::Debug for UnifyError<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<T: fmt::Display> std::error::Error for UnifyError<T> {}

/// Incremental unifier: equations can be added one at a time and the
/// solved form is always an idempotent substitution.
#[derive(Clone, Debug)]
pub struct Unifier<T: FirstOrder> {
    solved: Subst<T>,
    count: usize,
}

impl<T: FirstOrder> Default for Unifier<T> {
    fn default() -> Self {
        Unifier {
            solved: Subst::new(),
            count: 0,
        }
    }
}

impl<T: FirstOrder> Unifier<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn solution(&self) -> &Subst<T> {
        &self.solved
    }

    pub fn into_solution(self) -> Subst<T> {
        self.solved
    }

    /// Adds `lhs = rhs`. Only variables accepted by `can_bind` may be bound;
    /// the others behave like constants. On failure the unifier is left
    /// unchanged.
    pub fn add(&mut self, lhs: &T, rhs: &T, can_bind: &dyn Fn(&T::Var) -> bool) -> Result<(), UnifyError<T>> {
        let index = self.count;
        self.count += 1;
        let mut solved = self.solved.clone();
        let mut stack = vec![(lhs.clone(), rhs.clone())];
        while let Some((l, r)) = stack.pop() {
            let l = solved.apply_tree(&l);
            let r = solved.apply_tree(&r);
            if l == r {
                continue;
            }
            let fail = |kind, l: &T, r: &T| UnifyError {
                kind,
                equation: index,
                left: l.clone(),
                right: r.clone(),
            };
            let binding = match (l.as_var(), r.as_var()) {
                (Some(v), _) if can_bind(v) => Some((v.clone(), r.clone())),
                (_, Some(w)) if can_bind(w) => Some((w.clone(), l.clone())),
                (Some(_), _) | (_, Some(_)) => return Err(fail(FailureKind::Clash, &l, &r)),
                (None, None) => None,
            };
            match binding {
                Some((v, t)) => {
                    if t.occurs(&v) {
                        return Err(fail(FailureKind::Occurs, &l, &r));
                    }
                    solved.bind_solved(v, t);
                }
                None => {
                    if !l.same_head(&r) {
                        return Err(fail(FailureKind::Clash, &l, &r));
                    }
                    // Reverse so the leftmost argument pair is processed first.
                    for (a, b) in l.children().iter().zip(r.children()).rev() {
                        stack.push((a.clone(), b.clone()));
                    }
                }
            }
        }
        self.solved = solved;
        Ok(())
    }
}

/// Most general unifier with some variables held rigid.
pub fn unify_with<T: FirstOrder>(
    eqs: &EquationSet<T>,
    can_bind: &dyn Fn(&T::Var) -> bool,
) -> Result<Subst<T>, UnifyError<T>> {
    let mut u = Unifier::new();
    for e in eqs.iter() {
        u.add(&e.lhs, &e.rhs, can_bind)?;
    }
    Ok(u.into_solution())
}

/// Idempotent most general unifier of an equation set.
pub fn unify<T: FirstOrder>(eqs: &EquationSet<T>) -> Result<Subst<T>, UnifyError<T>> {
    unify_with(eqs, &|_| true)
}

pub fn mgu_terms(eqs: &EquationSet<Term>) -> Result<TermSubstitution, UnifyError<Term>> {
    unify(eqs)
}

pub fn mgu_types(eqs: &EquationSet<Type>) -> Result<TypeSubstitution, UnifyError<Type>> {
    unify(eqs)
}

/// Most general unifier of two atoms, `None` if they do not unify.
pub fn mgu_atoms(a: &Atom, b: &Atom) -> Option<TermSubstitution> {
    if a.pred != b.pred || a.arity() != b.arity() {
        return None;
    }
    let mut u = Unifier::new();
    for (s, t) in a.args.iter().zip(&b.args) {
        u.add(s, t, &|_| true).ok()?;
    }
    Some(u.into_solution())
}

/// The bindings of θ as the equation query `x₁ = t₁, …, xₘ = tₘ`.
pub fn bindings_query(theta: &TermSubstitution) -> Query {
    Query(
        theta
            .iter()
            .map(|(v, t)| Atom::eq(Term::Var(v.clone()), t.clone()))
            .collect(),
    )
}

/// (θ, U) is a typed substitution: `U ⊢ x₁ = t₁, …, xₘ = tₘ Query`.
pub fn is_typed_substitution(sig: &Signature, theta: &TermSubstitution, typing: &VariableTyping) -> bool {
    crate::typecheck::judge_query(sig, typing, &bindings_query(theta)).is_ok()
}

#[cfg(test)]
mod tests;
