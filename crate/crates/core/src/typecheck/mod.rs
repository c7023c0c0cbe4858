//! Type judgements and most general types.
//!
//! Checking is constraint generation: each occurrence of a function or
//! predicate symbol gets a fresh copy of its declared type, and the copies
//! are unified against the expected types top-down. Parameters that come
//! from the variable typing or the expected type are rigid; the copies are
//! flexible. A judgement is derivable iff the constraints are solvable, and
//! the solution gives the most general proof.

mod proof;

use std::collections::BTreeSet;

pub use proof::{Judgement, JudgementProof, Rule, TypeError};

use crate::syntax::{
    canonical_name, Atom, Clause, FirstOrder, Ident, NameSource, Param, Program, Query, Signature, Subst,
    Substitutable, Term, Type, TypeSubstitution, TypeTuple, VariableTyping,
};
use crate::unify::Unifier;

/// Anything a judgement can be about.
#[derive(Debug, Clone, Copy)]
pub enum Object<'a> {
    Term(&'a Term),
    Atom(&'a Atom),
    Query(&'a Query),
    Clause(&'a Clause),
    Program(&'a Program),
}

struct Infer<'a> {
    sig: &'a Signature,
    names: NameSource,
    rigid: BTreeSet<Param>,
    unifier: Unifier<Type>,
    typing: VariableTyping,
}

impl<'a> Infer<'a> {
    fn new(sig: &'a Signature, typing: VariableTyping, rigid: BTreeSet<Param>, extra: &[&Type]) -> Infer<'a> {
        let mut floor = 0;
        let mut bump = |p: &Param| floor = floor.max(p.ident().index());
        typing.for_each_tree_var(&mut bump);
        for t in extra {
            t.for_each_var(&mut bump);
        }
        for p in sig.pars() {
            bump(&p);
        }
        Infer {
            sig,
            names: NameSource::above(floor),
            rigid,
            unifier: Unifier::new(),
            typing,
        }
    }

    fn resolve(&self, t: &Type) -> Type {
        self.unifier.solution().apply_tree(t)
    }

    fn constrain(&mut self, found: &Type, expected: &Type) -> bool {
        let rigid = &self.rigid;
        self.unifier.add(found, expected, &|p| !rigid.contains(p)).is_ok()
    }

    /// Fresh copy of declared types: the renaming Θ and the renamed types.
    fn instantiate(&mut self, declared: &[Type]) -> (TypeSubstitution, Vec<Type>) {
        let mut theta = Subst::new();
        for p in declared.to_vec().tree_vars_ordered() {
            let fresh = self.names.fresh_param(&p);
            theta.insert(p, Type::Param(fresh));
        }
        let inst = declared.iter().map(|t| t.apply(&theta)).collect();
        (theta, inst)
    }

    fn term(&mut self, t: &Term, expected: &Type) -> Result<JudgementProof, TypeError> {
        match t {
            Term::Var(x) => {
                let Some(ty) = self.typing.get(x).cloned() else {
                    return Err(TypeError::new(
                        Rule::Var,
                        Judgement::Term(t.clone(), self.resolve(expected)),
                        format!("{x} is not typed by the variable typing"),
                    ));
                };
                if !self.constrain(&ty, expected) {
                    return Err(TypeError::mismatch(
                        Rule::Var,
                        Judgement::Term(t.clone(), self.resolve(expected)),
                        self.resolve(&ty),
                    ));
                }
                Ok(JudgementProof::leaf(
                    Rule::Var,
                    Judgement::Term(t.clone(), expected.clone()),
                ))
            }
            Term::Int(_) => {
                let int = match self.sig.literal_type() {
                    Some(int) => int,
                    None => {
                        return Err(TypeError::new(
                            Rule::Func,
                            Judgement::Term(t.clone(), self.resolve(expected)),
                            "integer literals need `int/0`",
                        ))
                    }
                };
                if !self.constrain(&int, expected) {
                    return Err(TypeError::mismatch(
                        Rule::Func,
                        Judgement::Term(t.clone(), self.resolve(expected)),
                        int,
                    ));
                }
                Ok(JudgementProof::leaf(
                    Rule::Func,
                    Judgement::Term(t.clone(), expected.clone()),
                ))
            }
            Term::App(f, args) => {
                let judgement = || Judgement::Term(t.clone(), expected.clone());
                let Some(decl) = self.sig.func(f) else {
                    return Err(TypeError::new(
                        Rule::Func,
                        judgement(),
                        format!("undeclared function `{f}`"),
                    ));
                };
                if decl.args.len() != args.len() {
                    return Err(TypeError::new(
                        Rule::Func,
                        judgement(),
                        format!("`{f}` expects {} argument(s)", decl.args.len()),
                    ));
                }
                let (theta, inst) = self.instantiate(&decl.profile().0);
                let (arg_types, result) = inst.split_at(decl.args.len());
                if !self.constrain(&result[0], expected) {
                    return Err(TypeError::mismatch(
                        Rule::Func,
                        Judgement::Term(t.clone(), self.resolve(expected)),
                        self.resolve(&result[0]),
                    ));
                }
                let premises = args
                    .iter()
                    .zip(arg_types)
                    .map(|(a, ty)| self.term(a, ty))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(JudgementProof::new(Rule::Func, judgement(), theta, premises))
            }
        }
    }

    fn atom(&mut self, a: &Atom) -> Result<(JudgementProof, Vec<Type>), TypeError> {
        let judgement = || Judgement::Atom(a.clone());
        let Some(decl) = self.sig.pred(&a.pred) else {
            return Err(TypeError::new(
                Rule::Atom,
                judgement(),
                format!("undeclared predicate `{}`", a.pred),
            ));
        };
        if decl.args.len() != a.args.len() {
            return Err(TypeError::new(
                Rule::Atom,
                judgement(),
                format!("`{}` expects {} argument(s)", a.pred, decl.args.len()),
            ));
        }
        let (theta, inst) = self.instantiate(&decl.args);
        let premises = a
            .args
            .iter()
            .zip(&inst)
            .map(|(t, ty)| self.term(t, ty))
            .collect::<Result<Vec<_>, _>>()?;
        Ok((JudgementProof::new(Rule::Atom, judgement(), theta, premises), inst))
    }

    fn atoms<'b>(
        &mut self,
        atoms: impl Iterator<Item = &'b Atom>,
    ) -> Result<(Vec<JudgementProof>, Vec<Vec<Type>>), TypeError> {
        let mut proofs = Vec::new();
        let mut types = Vec::new();
        for a in atoms {
            let (p, t) = self.atom(a)?;
            proofs.push(p);
            types.push(t);
        }
        Ok((proofs, types))
    }

    fn finish(&self, p: JudgementProof) -> JudgementProof {
        p.apply_types(self.unifier.solution())
    }
}

fn rigid_of(typing: &VariableTyping, expected: Option<&Type>) -> BTreeSet<Param> {
    let mut rigid = typing.pars();
    if let Some(e) = expected {
        rigid.extend(e.tree_vars());
    }
    rigid
}

/// `U ⊢ t : τ`.
pub fn judge_term(
    sig: &Signature,
    typing: &VariableTyping,
    t: &Term,
    expected: &Type,
) -> Result<JudgementProof, TypeError> {
    let mut inf = Infer::new(sig, typing.clone(), rigid_of(typing, Some(expected)), &[expected]);
    let p = inf.term(t, expected)?;
    Ok(inf.finish(p))
}

/// `U ⊢ A Atom`.
pub fn judge_atom(sig: &Signature, typing: &VariableTyping, a: &Atom) -> Result<JudgementProof, TypeError> {
    let mut inf = Infer::new(sig, typing.clone(), rigid_of(typing, None), &[]);
    let (p, _) = inf.atom(a)?;
    Ok(inf.finish(p))
}

/// `U ⊢ Q Query`.
pub fn judge_query(sig: &Signature, typing: &VariableTyping, q: &Query) -> Result<JudgementProof, TypeError> {
    let mut inf = Infer::new(sig, typing.clone(), rigid_of(typing, None), &[]);
    let (premises, _) = inf.atoms(q.atoms().iter())?;
    Ok(inf.finish(JudgementProof::new(
        Rule::Query,
        Judgement::Query(q.clone()),
        Subst::new(),
        premises,
    )))
}

/// `U ⊢ C Clause`.
pub fn judge_clause(sig: &Signature, typing: &VariableTyping, c: &Clause) -> Result<JudgementProof, TypeError> {
    let mut inf = Infer::new(sig, typing.clone(), rigid_of(typing, None), &[]);
    let (premises, _) = inf.atoms(c.atoms())?;
    Ok(inf.finish(JudgementProof::new(
        Rule::Clause,
        Judgement::Clause(c.clone(), typing.clone()),
        Subst::new(),
        premises,
    )))
}

/// `⊢ P Program`: every clause is typable under some variable typing.
pub fn judge_program(p: &Program) -> Result<JudgementProof, (usize, TypeError)> {
    let mut premises = Vec::new();
    for (i, c) in p.clauses.iter().enumerate() {
        let mgt = clause_typing(&p.signature, c).map_err(|e| (i, e))?;
        premises.push(judge_clause(&p.signature, &mgt.typing, c).map_err(|e| (i, e))?);
    }
    Ok(JudgementProof::new(
        Rule::Program,
        Judgement::Program,
        Subst::new(),
        premises,
    ))
}

/// Dispatches on the kind of object. `expected` is required for terms and
/// ignored otherwise; for programs `typing` is ignored.
pub fn judge(
    sig: &Signature,
    typing: &VariableTyping,
    object: Object<'_>,
    expected: Option<&Type>,
) -> Result<JudgementProof, TypeError> {
    match object {
        Object::Term(t) => {
            let fallback;
            let expected = match expected {
                Some(e) => e,
                None => {
                    fallback = Type::param("T");
                    &fallback
                }
            };
            judge_term(sig, typing, t, expected)
        }
        Object::Atom(a) => judge_atom(sig, typing, a),
        Object::Query(q) => judge_query(sig, typing, q),
        Object::Clause(c) => judge_clause(sig, typing, c),
        Object::Program(p) => judge_program(p).map_err(|(_, e)| e),
    }
}

/// The most general type of a clause, split by atom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClauseTyping {
    /// Typing of the clause variables.
    pub typing: VariableTyping,
    /// Argument types of the head, then of each body atom.
    pub atoms: Vec<TypeTuple>,
    /// Per atom, Θ with `declared Θ = atoms[i]` (domain: declared parameters).
    pub thetas: Vec<TypeSubstitution>,
}

impl ClauseTyping {
    /// The concatenated type tuple `(τ̄, τ̄₁, …, τ̄ₘ)`.
    pub fn tuple(&self) -> TypeTuple {
        TypeTuple(self.atoms.iter().flat_map(|t| t.0.iter().cloned()).collect())
    }

    pub fn head(&self) -> &TypeTuple {
        &self.atoms[0]
    }

    pub fn body(&self) -> &[TypeTuple] {
        &self.atoms[1..]
    }

    fn apply(&self, s: &TypeSubstitution) -> ClauseTyping {
        ClauseTyping {
            typing: self.typing.apply(s),
            atoms: self.atoms.iter().map(|t| t.apply(s)).collect(),
            thetas: self.thetas.iter().map(|th| apply_range(th, s)).collect(),
        }
    }
}

fn apply_range(theta: &TypeSubstitution, s: &TypeSubstitution) -> TypeSubstitution {
    let mut out = Subst::new();
    for (p, t) in theta.iter() {
        out.insert(p.clone(), t.apply(s));
    }
    out
}

/// Renames the flexible parameters of `order` (first occurrence order) to
/// `A`, `B`, ..., skipping names of rigid parameters.
fn canonical_flexible(order: &[Param], rigid: &BTreeSet<Param>) -> TypeSubstitution {
    let mut s = Subst::new();
    let mut next = 0;
    for p in order {
        if rigid.contains(p) {
            continue;
        }
        let name = loop {
            let candidate = Param(Ident::new(canonical_name(next), 0));
            next += 1;
            if !rigid.contains(&candidate) {
                break candidate;
            }
        };
        s.insert(p.clone(), Type::Param(name));
    }
    s
}

fn infer_clause(
    sig: &Signature,
    c: &Clause,
    typing: VariableTyping,
    rigid: BTreeSet<Param>,
) -> Result<ClauseTyping, TypeError> {
    let mut inf = Infer::new(sig, typing, rigid.clone(), &[]);
    let mut atoms = Vec::new();
    let mut thetas = Vec::new();
    for a in c.atoms() {
        let (proof, inst) = inf.atom(a)?;
        atoms.push(TypeTuple(inst));
        thetas.push(proof.theta.clone());
    }
    let sol = inf.unifier.solution().clone();
    let solved = ClauseTyping {
        typing: inf.typing.apply(&sol),
        atoms,
        thetas,
    }
    .apply(&sol);
    let mut order: Vec<Param> = solved.tuple().tree_vars_ordered();
    for p in solved.typing.tree_vars_ordered() {
        if !order.contains(&p) {
            order.push(p);
        }
    }
    Ok(solved.apply(&canonical_flexible(&order, &rigid)))
}

/// Most general type of `c` over all variable typings, with the typing it
/// needs. Parameters are named canonically over the tuple, then the typing.
pub fn clause_typing(sig: &Signature, c: &Clause) -> Result<ClauseTyping, TypeError> {
    let mut names = NameSource::above(sig.pars().iter().map(|p| p.ident().index()).max().unwrap_or(0));
    let typing = VariableTyping::from_pairs(
        c.vars()
            .into_iter()
            .map(|v| (v, Type::Param(names.fresh_param(&Param::named("V"))))),
    );
    infer_clause(sig, c, typing, BTreeSet::new())
}

/// Most general type of `c` with respect to a fixed `U`.
///
/// Every variable of `c` must be typed by `U`. Parameters of `U` are kept;
/// the others are named canonically.
pub fn clause_typing_wrt(sig: &Signature, typing: &VariableTyping, c: &Clause) -> Result<ClauseTyping, TypeError> {
    infer_clause(sig, c, typing.clone(), typing.pars())
}

pub fn most_general_type(sig: &Signature, c: &Clause) -> Result<(VariableTyping, TypeTuple), TypeError> {
    clause_typing(sig, c).map(|ct| {
        let t = ct.tuple();
        (ct.typing, t)
    })
}

pub fn most_general_type_wrt(sig: &Signature, typing: &VariableTyping, c: &Clause) -> Result<TypeTuple, TypeError> {
    clause_typing_wrt(sig, typing, c).map(|ct| ct.tuple())
}

/// Most general type of a term under `U`.
pub fn infer_term(sig: &Signature, typing: &VariableTyping, t: &Term) -> Result<Type, TypeError> {
    let rigid = typing.pars();
    let mut inf = Infer::new(sig, typing.clone(), rigid.clone(), &[]);
    let hole = Type::Param(inf.names.fresh_param(&Param::named("T")));
    inf.term(t, &hole)?;
    let ty = inf.resolve(&hole);
    Ok(ty.apply(&canonical_flexible(&ty.tree_vars_ordered(), &rigid)))
}

/// A variable typing under which `q` is a well-typed query.
pub fn query_typing(sig: &Signature, q: &Query) -> Result<VariableTyping, TypeError> {
    clause_typing(sig, &q.wrapper()).map(|ct| ct.typing)
}

/// `_ ⊢ Q Query`.
pub fn is_typable(sig: &Signature, q: &Query) -> bool {
    query_typing(sig, q).is_ok()
}
