use std::fmt;

use crate::syntax::{Atom, Clause, Query, Substitutable, Term, TermSubstitution};
use crate::unify::{mgu_terms, EquationSet, UnifyError};

/// An ordered tree whose leaves may be ⊥.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Tree<L> {
    Bottom,
    Node(L, Vec<Tree<L>>),
}

impl<L> Tree<L> {
    pub fn is_bottom(&self) -> bool {
        matches!(self, Tree::Bottom)
    }

    pub fn label(&self) -> Option<&L> {
        match self {
            Tree::Node(l, _) => Some(l),
            Tree::Bottom => None,
        }
    }

    pub fn children(&self) -> &[Tree<L>] {
        match self {
            Tree::Node(_, c) => c,
            Tree::Bottom => &[],
        }
    }

    /// Number of complete levels: ⊥ has height 0.
    pub fn height(&self) -> usize {
        match self {
            Tree::Bottom => 0,
            Tree::Node(_, c) => 1 + c.iter().map(Tree::height).max().unwrap_or(0),
        }
    }

    pub fn complete_count(&self) -> usize {
        match self {
            Tree::Bottom => 0,
            Tree::Node(_, c) => 1 + c.iter().map(Tree::complete_count).sum::<usize>(),
        }
    }

    pub fn node_count(&self) -> usize {
        1 + self.children().iter().map(Tree::node_count).sum::<usize>()
    }

    pub fn is_complete(&self) -> bool {
        match self {
            Tree::Bottom => false,
            Tree::Node(_, c) => c.iter().all(Tree::is_complete),
        }
    }

    /// Complete labels in preorder.
    pub fn labels(&self) -> Vec<&L> {
        let mut out = Vec::new();
        self.walk(&mut |t| {
            if let Tree::Node(l, _) = t {
                out.push(l);
            }
        });
        out
    }

    /// Preorder traversal.
    pub fn walk<'a>(&'a self, f: &mut dyn FnMut(&'a Tree<L>)) {
        f(self);
        for c in self.children() {
            c.walk(f);
        }
    }

    /// Every (parent, position, child) edge, depth first, parent before
    /// child, left to right; an edge is visited just before its child's
    /// subtree.
    pub fn for_each_edge<'a>(&'a self, f: &mut dyn FnMut(&'a L, usize, &'a Tree<L>)) {
        if let Tree::Node(l, children) = self {
            for (i, c) in children.iter().enumerate() {
                f(l, i, c);
                c.for_each_edge(f);
            }
        }
    }

    pub fn map<M>(&self, f: &mut dyn FnMut(&L) -> M) -> Tree<M> {
        match self {
            Tree::Bottom => Tree::Bottom,
            Tree::Node(l, c) => {
                let m = f(l);
                Tree::Node(m, c.iter().map(|t| t.map(f)).collect())
            }
        }
    }

    pub fn try_map<M, E>(&self, f: &mut dyn FnMut(&L) -> Result<M, E>) -> Result<Tree<M>, E> {
        match self {
            Tree::Bottom => Ok(Tree::Bottom),
            Tree::Node(l, c) => {
                let m = f(l)?;
                let children = c.iter().map(|t| t.try_map(f)).collect::<Result<Vec<_>, E>>()?;
                Ok(Tree::Node(m, children))
            }
        }
    }

    /// Same shape and ⊥ placement.
    pub fn same_shape<M>(&self, other: &Tree<M>) -> bool {
        match (self, other) {
            (Tree::Bottom, Tree::Bottom) => true,
            (Tree::Node(_, a), Tree::Node(_, b)) => a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.same_shape(y)),
            _ => false,
        }
    }
}

impl<L: fmt::Display> Tree<L> {
    fn write_indented(&self, f: &mut fmt::Formatter<'_>, depth: usize) -> fmt::Result {
        match self {
            Tree::Bottom => write!(f, "{:w$}⊥", "", w = depth * 2),
            Tree::Node(l, children) => {
                write!(f, "{:w$}{l}", "", w = depth * 2)?;
                for c in children {
                    writeln!(f)?;
                    c.write_indented(f, depth + 1)?;
                }
                Ok(())
            }
        }
    }
}

impl<L: fmt::Display> fmt::Display for Tree<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_indented(f, 0)
    }
}

impl<L: fmt::Display> fmt::Debug for Tree<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A skeleton node: a renamed copy of clause `index` of the clause database.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SkLabel {
    pub index: usize,
    pub clause: Clause,
}

impl fmt::Display for SkLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.clause)
    }
}

/// An instance name `⟨C, θ⟩`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Instance {
    pub index: usize,
    pub clause: Clause,
    pub theta: TermSubstitution,
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{}, {}⟩", self.clause, self.theta)
    }
}

pub type Skeleton = Tree<SkLabel>;
pub type DerivationTree = Tree<Instance>;

/// Labels that carry a clause.
pub trait HasClause {
    fn clause(&self) -> &Clause;
    fn index(&self) -> usize;
}

impl HasClause for SkLabel {
    fn clause(&self) -> &Clause {
        &self.clause
    }
    fn index(&self) -> usize {
        self.index
    }
}

impl HasClause for Instance {
    fn clause(&self) -> &Clause {
        &self.clause
    }
    fn index(&self) -> usize {
        self.index
    }
}

/// Structural well-formedness: each complete node has one child per body
/// atom, and complete children have a head with the body atom's predicate.
pub fn is_well_formed<L: HasClause>(t: &Tree<L>) -> bool {
    let mut ok = true;
    t.walk(&mut |n| {
        if let Tree::Node(l, children) = n {
            let body = &l.clause().body;
            ok &= children.len() == body.len();
            for (a, c) in body.iter().zip(children) {
                if let Some(cl) = c.label() {
                    let h = &cl.clause().head;
                    ok &= h.pred == a.pred && h.arity() == a.arity();
                }
            }
        }
    });
    ok
}

/// `Eq(S)`: `aᵢ = h′` for every complete child, in edge order.
pub fn eq_of_skeleton<L: HasClause>(s: &Tree<L>) -> EquationSet<Term> {
    let mut eqs = EquationSet::new();
    s.for_each_edge(&mut |parent, i, child| {
        if let Some(c) = child.label() {
            eqs.push(parent.clause().body[i].as_term(), c.clause().head.as_term());
        }
    });
    eqs
}

/// Properness: the MGU of `Eq(S)`, or why it does not exist.
pub fn is_proper_skeleton(s: &Skeleton) -> Result<TermSubstitution, UnifyError<Term>> {
    mgu_terms(&eq_of_skeleton(s))
}

/// `D(S)`: each label `C` becomes `⟨C, θ↾C⟩` for θ the MGU of `Eq(S)`.
pub fn most_general_derivation_tree(s: &Skeleton) -> Result<DerivationTree, UnifyError<Term>> {
    let theta = is_proper_skeleton(s)?;
    Ok(s.map(&mut |l| Instance {
        index: l.index,
        clause: l.clause.clone(),
        theta: theta.restrict_to(&l.clause),
    }))
}

/// `Sk(T)`.
pub fn skeleton_of(t: &DerivationTree) -> Skeleton {
    t.map(&mut |l| SkLabel {
        index: l.index,
        clause: l.clause.clone(),
    })
}

/// Checks the defining conditions of a derivation tree: well-formed, and
/// `h′θ′ = aᵢθ` between every node and each complete child.
pub fn is_derivation_tree(t: &DerivationTree) -> bool {
    if !is_well_formed(t) {
        return false;
    }
    let mut ok = true;
    t.for_each_edge(&mut |parent, i, child| {
        if let Some(c) = child.label() {
            ok &= c.clause.head.apply(&c.theta) == parent.clause.body[i].apply(&parent.theta);
        }
    });
    ok
}

/// Node atoms in preorder: `hθ` at complete nodes, `aᵢθ` of the parent at ⊥.
pub fn node_atoms(t: &DerivationTree) -> Vec<Atom> {
    let mut out = Vec::new();
    if let Tree::Node(l, _) = t {
        out.push(l.clause.head.apply(&l.theta));
    }
    t.for_each_edge(&mut |parent, i, child| match child {
        Tree::Node(l, _) => out.push(l.clause.head.apply(&l.theta)),
        Tree::Bottom => out.push(parent.clause.body[i].apply(&parent.theta)),
    });
    out
}

/// Node atom of the root.
pub fn head(t: &DerivationTree) -> Option<Atom> {
    t.label().map(|l| l.clause.head.apply(&l.theta))
}

/// Node atoms of incomplete nodes, left to right.
pub fn frontier(t: &DerivationTree) -> Query {
    let mut out = Vec::new();
    t.for_each_edge(&mut |parent, i, child| {
        if child.is_bottom() {
            out.push(parent.clause.body[i].apply(&parent.theta));
        }
    });
    Query(out)
}

/// Renamed-apart check: distinct complete nodes share no variable.
pub fn is_renamed_apart<L: HasClause>(t: &Tree<L>) -> bool {
    let mut seen = std::collections::BTreeSet::new();
    t.labels().into_iter().all(|l| {
        let vars = l.clause().vars();
        let ok = vars.is_disjoint(&seen);
        seen.extend(vars);
        ok
    })
}
