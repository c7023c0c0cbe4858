use std::fmt;

use super::{program_typings, require_query, AnalysisError, Partition};
use crate::report::{CheckReport, Condition, Finding};
use crate::syntax::{
    Genericity, NameSource, Param, Program, Query, Signature, Subst, Substitutable, Symbol, Type, TypeSubstitution,
    TypeTuple, VariableTyping,
};
use crate::trees::{enumerate_skeletons, is_proper_skeleton, ClauseDb, Skeleton, Tree};
use crate::typecheck::{clause_typing, TypeError};
use crate::unify::{mgu_types, Equation, EquationSet, UnifyError};

/// A type-skeleton node: the most general type of the node's clause, with
/// parameters private to the node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeLabel {
    /// Clause database index of the source node.
    pub index: usize,
    /// Predicate of the head, then of each body atom.
    pub preds: Vec<Symbol>,
    /// Argument types of the head, then of each body atom.
    pub atoms: Vec<TypeTuple>,
    /// `U_n`: types of the source clause's variables under `atoms`.
    pub typing: VariableTyping,
}

impl TypeLabel {
    pub fn head(&self) -> &TypeTuple {
        &self.atoms[0]
    }

    pub fn body(&self) -> &[TypeTuple] {
        &self.atoms[1..]
    }
}

fn write_type_atom(f: &mut fmt::Formatter<'_>, pred: &str, t: &TypeTuple) -> fmt::Result {
    if t.is_empty() {
        f.write_str(pred)
    } else {
        let parts: Vec<String> = t.types().iter().map(Type::to_string).collect();
        write!(f, "{pred}({})", parts.join(","))
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_type_atom(f, &self.preds[0], self.head())?;
        for (i, (p, t)) in self.preds[1..].iter().zip(self.body()).enumerate() {
            f.write_str(if i == 0 { " ← " } else { ", " })?;
            write_type_atom(f, p, t)?;
        }
        Ok(())
    }
}

pub type TypeSkeleton = Tree<TypeLabel>;

/// A skeleton node whose clause has no type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeTypeError {
    /// Preorder position among complete nodes.
    pub node: usize,
    pub index: usize,
    pub error: TypeError,
}

impl fmt::Display for NodeTypeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "node {} (clause {}): {}", self.node, self.index, self.error)
    }
}

fn sig_floor(sig: &Signature) -> u32 {
    sig.pars().iter().map(|p| p.ident().index()).max().unwrap_or(0)
}

/// The type skeleton corresponding to `s`: same shape and ⊥ placement,
/// each complete node replaced by its clause's most general type.
pub fn type_skeleton_of(sig: &Signature, s: &Skeleton) -> Result<TypeSkeleton, NodeTypeError> {
    let mut names = NameSource::above(sig_floor(sig));
    let mut node = 0;
    s.try_map(&mut |l| {
        let here = node;
        node += 1;
        let ct = clause_typing(sig, &l.clause).map_err(|error| NodeTypeError {
            node: here,
            index: l.index,
            error,
        })?;
        let mut order: Vec<Param> = ct.tuple().tree_vars_ordered();
        for p in ct.typing.tree_vars_ordered() {
            if !order.contains(&p) {
                order.push(p);
            }
        }
        let fresh: TypeSubstitution =
            Subst::from_pairs(order.iter().map(|p| (p.clone(), Type::Param(names.fresh_param(p)))));
        Ok(TypeLabel {
            index: l.index,
            preds: l.clause.atoms().map(|a| a.pred.clone()).collect(),
            atoms: ct.atoms.iter().map(|t| t.apply(&fresh)).collect(),
            typing: ct.typing.apply(&fresh),
        })
    })
}

fn tuple_term(pred: &str, types: Vec<Type>) -> Type {
    Type::con(pred, types)
}

/// Equations of `Eq(TS)` with the level of the child node of each.
fn leveled_equations(ts: &TypeSkeleton) -> Vec<(Equation<Type>, usize)> {
    fn go(t: &TypeSkeleton, level: usize, out: &mut Vec<(Equation<Type>, usize)>) {
        if let Tree::Node(l, children) = t {
            for (i, c) in children.iter().enumerate() {
                if let Some(cl) = c.label() {
                    let pred = &l.preds[i + 1];
                    let eq = Equation::new(
                        tuple_term(pred, l.atoms[i + 1].0.clone()),
                        tuple_term(pred, cl.head().0.clone()),
                    );
                    out.push((eq, level + 1));
                }
                go(c, level + 1, out);
            }
        }
    }
    let mut out = Vec::new();
    go(ts, 0, &mut out);
    out
}

/// `Eq(TS)`, ordered as `Eq(S)`: one `p(τ̄ᵢ) = p(τ̄′)` per complete child.
pub fn eq_of_type_skeleton(ts: &TypeSkeleton) -> EquationSet<Type> {
    EquationSet(leveled_equations(ts).into_iter().map(|(e, _)| e).collect())
}

pub fn is_proper_type_skeleton(ts: &TypeSkeleton) -> Result<TypeSubstitution, UnifyError<Type>> {
    mgu_types(&eq_of_type_skeleton(ts))
}

/// `⋃ U_n Θ` over all complete nodes; `None` if two nodes disagree.
pub fn assembled_typing(ts: &TypeSkeleton, theta: &TypeSubstitution) -> Option<VariableTyping> {
    let mut out = VariableTyping::new();
    for l in ts.labels() {
        out = out.union(&l.typing.apply(theta))?;
    }
    Some(out)
}

/// `Eq′`: each equation `pᵢ(τ̄′ᵢ, σ̄′ᵢ) = pᵢ(σ̄ᵢ, τ̄ᵢ)` split into
/// `σ̄ᵢ = τ̄′ᵢ` and `σ̄′ᵢ = τ̄ᵢ`, so that generic positions are on the right.
///
/// Order: at each node, for each complete child, the head-generic
/// equation, then the child's subtree, then the body-generic equation.
/// Empty halves are dropped.
pub fn split_equations(ts: &TypeSkeleton, part: &Partition) -> EquationSet<Type> {
    fn go(t: &TypeSkeleton, part: &Partition, out: &mut EquationSet<Type>) {
        let Tree::Node(l, children) = t else { return };
        for (i, c) in children.iter().enumerate() {
            let Some(cl) = c.label() else { continue };
            let pred = &l.preds[i + 1];
            let atom = &l.atoms[i + 1];
            let sigma = part.select_tuple(pred, atom, Genericity::Head);
            let tau = part.select_tuple(pred, atom, Genericity::Body);
            let tau_child = part.select_tuple(pred, cl.head(), Genericity::Head);
            let sigma_child = part.select_tuple(pred, cl.head(), Genericity::Body);
            if !sigma.is_empty() {
                out.push(tuple_term(pred, sigma), tuple_term(pred, tau_child));
            }
            go(c, part, out);
            if !tau.is_empty() {
                out.push(tuple_term(pred, sigma_child), tuple_term(pred, tau));
            }
        }
    }
    let mut out = EquationSet::new();
    go(ts, part, &mut out);
    out
}

/// The smallest proper skeleton whose type skeleton is not proper.
#[derive(Debug, Clone)]
pub struct SrCounterexample {
    pub skeleton: Skeleton,
    pub type_skeleton: TypeSkeleton,
    pub error: UnifyError<Type>,
    /// The `Eq(TS)` equation on which unification failed.
    pub equation: Equation<Type>,
    /// Level of the child node of that equation; the root is level 0.
    pub level: usize,
}

#[derive(Debug, Clone)]
pub struct SrOutcome {
    pub report: CheckReport,
    /// Proper skeletons examined.
    pub proper_skeletons: usize,
    pub counterexample: Option<SrCounterexample>,
}

/// Enumerates the skeletons of `P ∪ {go ← Q}` with head `go` up to `depth`
/// in order of height and checks that every proper one has a proper type
/// skeleton. Stops at the first counterexample.
///
/// A pass only covers skeletons up to the bound.
pub fn check_subject_reduction_bounded(p: &Program, q: &Query, depth: usize) -> Result<SrOutcome, AnalysisError> {
    program_typings(p)?;
    require_query(p, q)?;
    let db = ClauseDb::new(p, Some(q));
    let mut report = CheckReport::new().with_depth_bound(depth);
    report.note(format!(
        "checked proper skeletons with complete nodes at levels 0..={depth} only; a pass is not a proof beyond that bound"
    ));
    let mut proper = 0;
    for s in enumerate_skeletons(&db, depth) {
        if is_proper_skeleton(&s).is_err() {
            continue;
        }
        proper += 1;
        let ts = type_skeleton_of(&p.signature, &s).map_err(|e| AnalysisError::Untypable {
            clause: e.index,
            error: e.error,
        })?;
        if let Err(error) = is_proper_type_skeleton(&ts) {
            let (equation, level) = leveled_equations(&ts).swap_remove(error.equation);
            report.push(Finding::new(
                None,
                Condition::TypeSkeletonNonproper,
                format!("{equation} has no solution at level {level} ({error})"),
            ));
            return Ok(SrOutcome {
                report,
                proper_skeletons: proper,
                counterexample: Some(SrCounterexample {
                    skeleton: s,
                    type_skeleton: ts,
                    error,
                    equation,
                    level,
                }),
            });
        }
    }
    Ok(SrOutcome {
        report,
        proper_skeletons: proper,
        counterexample: None,
    })
}
