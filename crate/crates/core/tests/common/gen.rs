//! Proptest strategies: untyped terms and equation sets, and well-typed
//! terms, atoms, queries and programs over a given signature.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use proptest::prelude::*;
use proptest::strategy::Union;
use tlpc::parser::parse_program;
use tlpc::syntax::{
    is_instance, Atom, Clause, Ident, Param, Program, Query, Signature, Substitutable, Term, Type, TypeSubstitution,
    Var, VariableTyping,
};

// ---------------------------------------------------------------- untyped

fn var(base: &str, index: u32) -> Term {
    Term::Var(Var(Ident::new(base, index)))
}

/// Terms over `f/1`, `g/2`, `a`, `b`, small integers and the variables in
/// `pool`.
pub fn arb_term(pool: Vec<(&'static str, u32)>, depth: u32) -> BoxedStrategy<Term> {
    let vars = prop::sample::select(pool).prop_map(|(b, i)| var(b, i));
    let leaf = prop_oneof![
        3 => vars,
        1 => Just(Term::constant("a")),
        1 => Just(Term::constant("b")),
        1 => (0..2i64).prop_map(Term::Int),
    ];
    leaf.prop_recursive(depth, 16, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|t| Term::app("f", vec![t])),
            (inner.clone(), inner).prop_map(|(s, t)| Term::app("g", vec![s, t])),
        ]
    })
    .boxed()
}

pub fn xyz() -> Vec<(&'static str, u32)> {
    vec![("X", 0), ("Y", 0), ("Z", 0)]
}

/// `(t, tσ)` with σ's range over variables disjoint from `t`: always
/// unifiable.
pub fn arb_instance_pair() -> BoxedStrategy<(Term, Term)> {
    let range = || arb_term(vec![("P", 0), ("Q", 0)], 2);
    (arb_term(xyz(), 3), range(), range(), range())
        .prop_map(|(t, a, b, c)| {
            let s = tlpc::syntax::TermSubstitution::from_pairs([
                (Var::named("X"), a),
                (Var::named("Y"), b),
                (Var::named("Z"), c),
            ]);
            let u = t.apply(&s);
            (t, u)
        })
        .boxed()
}

/// Small equation sets mixing arbitrary and unifiable pairs.
pub fn arb_equations() -> BoxedStrategy<Vec<(Term, Term)>> {
    let pair = prop_oneof![(arb_term(xyz(), 3), arb_term(xyz(), 3)), arb_instance_pair(),];
    prop::collection::vec(pair, 1..4).boxed()
}

fn pool8() -> Vec<(&'static str, u32)> {
    (1..=4).flat_map(|i| [("X", i), ("Y", i)]).collect()
}

/// Equation sets `lᵢ = rᵢ` with variable-disjoint right-hand sides and each
/// `lᵢ` an instance of `rᵢ`; the dependency graph is left to chance.
pub fn arb_oriented() -> BoxedStrategy<Vec<(Term, Term)>> {
    let eq = (
        arb_term(vec![("X", 0), ("Y", 0)], 2),
        arb_term(pool8(), 1),
        arb_term(pool8(), 1),
    );
    prop::collection::vec(eq, 1..4)
        .prop_map(|items| {
            items
                .into_iter()
                .enumerate()
                .map(|(i, (r, x, y))| {
                    let i = i as u32 + 1;
                    let own = tlpc::syntax::TermSubstitution::from_pairs([
                        (Var::named("X"), var("X", i)),
                        (Var::named("Y"), var("Y", i)),
                    ]);
                    let r = r.apply(&own);
                    let inst = tlpc::syntax::TermSubstitution::from_pairs([
                        (Var(Ident::new("X", i)), x),
                        (Var(Ident::new("Y", i)), y),
                    ]);
                    (r.apply(&inst), r)
                })
                .collect()
        })
        .boxed()
}

// ------------------------------------------------------------------ typed

fn registry() -> &'static Mutex<HashMap<Var, Type>> {
    static R: OnceLock<Mutex<HashMap<Var, Type>>> = OnceLock::new();
    R.get_or_init(Default::default)
}

fn mangle(t: &Type) -> String {
    t.to_string()
        .chars()
        .map(|c| match c {
            '(' => 'L',
            ')' => 'R',
            ',' => 'C',
            c if c.is_alphanumeric() => c,
            _ => 'x',
        })
        .collect()
}

/// The variable in `slot` for type `t`. A variable's name determines its
/// type, so every generated object is typed by [`typing_of`].
pub fn typed_var(t: &Type, slot: u32) -> Var {
    let v = Var(Ident::new(format!("V{}", mangle(t)), slot));
    registry().lock().unwrap().insert(v.clone(), t.clone());
    v
}

/// The typing implied by the variable names of `o`.
pub fn typing_of<O: Substitutable<Term>>(o: &O) -> VariableTyping {
    let reg = registry().lock().unwrap();
    VariableTyping::from_pairs(o.tree_vars().into_iter().map(|v| {
        let t = reg.get(&v).unwrap_or_else(|| panic!("{v} was not generated")).clone();
        (v, t)
    }))
}

/// Parameters used in generated types; declared signatures use others.
pub const GEN_PARAMS: &[&str] = &["P", "Q"];

/// Types over the kinds of `sig` and the parameters [`GEN_PARAMS`].
pub fn arb_type(sig: &Signature, depth: u32) -> BoxedStrategy<Type> {
    let mut leaves: Vec<Type> = GEN_PARAMS.iter().map(|p| Type::param(p)).collect();
    leaves.extend(
        sig.kinds()
            .iter()
            .filter(|k| k.arity == 0)
            .map(|k| Type::constant(&k.name)),
    );
    let compound: Vec<(String, usize)> = sig
        .kinds()
        .iter()
        .filter(|k| k.arity > 0)
        .map(|k| (k.name.to_string(), k.arity))
        .collect();
    let leaf = prop::sample::select(leaves);
    if compound.is_empty() {
        return leaf.boxed();
    }
    leaf.prop_recursive(depth, 8, 2, move |inner| {
        Union::new(compound.clone().into_iter().map(move |(name, n)| {
            prop::collection::vec(inner.clone(), n)
                .prop_map(move |args| Type::con(&name, args))
                .boxed()
        }))
    })
    .boxed()
}

/// `types Θ` for a random Θ over the parameters of `types`.
pub fn arb_instance(sig: &Signature, types: Vec<Type>) -> BoxedStrategy<Vec<Type>> {
    let params: Vec<Param> = types.tree_vars_ordered();
    prop::collection::vec(arb_type(sig, 2), params.len())
        .prop_map(move |images| {
            let theta = TypeSubstitution::from_pairs(params.iter().cloned().zip(images));
            types.apply(&theta)
        })
        .boxed()
}

/// Terms `t` with `U ⊢ t : ty` for the implied typing `U`.
pub fn typed_term(sig: &Arc<Signature>, ty: &Type, depth: u32) -> BoxedStrategy<Term> {
    let t = ty.clone();
    let mut opts: Vec<(u32, BoxedStrategy<Term>)> =
        vec![(2, (0..2u32).prop_map(move |s| Term::Var(typed_var(&t, s))).boxed())];
    if sig.literal_type().as_ref() == Some(ty) {
        opts.push((2, (0..4i64).prop_map(Term::Int).boxed()));
        if depth > 0 && sig.func("minus").is_some() {
            let a = typed_term(sig, ty, depth - 1);
            let b = typed_term(sig, ty, depth - 1);
            opts.push((1, (a, b).prop_map(|(a, b)| Term::minus(a, b)).boxed()));
        }
    }
    for f in sig.funcs() {
        let Some(theta) = is_instance(ty, &f.result) else {
            continue;
        };
        if f.args.is_empty() {
            opts.push((2, Just(Term::constant(&f.name)).boxed()));
        } else if depth > 0 {
            let args: Vec<BoxedStrategy<Term>> = f
                .args
                .iter()
                .map(|a| typed_term(sig, &a.apply(&theta), depth - 1))
                .collect();
            let name = f.name.clone();
            opts.push((3, args.prop_map(move |xs| Term::app(&name, xs)).boxed()));
        }
    }
    Union::new_weighted(opts).boxed()
}

/// A typable atom for one of `preds`, its arguments at a random instance
/// of the declared type.
pub fn typed_atom(sig: &Arc<Signature>, preds: Vec<String>, depth: u32) -> BoxedStrategy<Atom> {
    let sig = sig.clone();
    prop::sample::select(preds)
        .prop_flat_map(move |pred| {
            let decl = sig.pred(&pred).expect("declared").args.clone();
            let sig = sig.clone();
            arb_instance(&sig, decl).prop_flat_map(move |types| {
                let args: Vec<BoxedStrategy<Term>> = types.iter().map(|t| typed_term(&sig, t, depth)).collect();
                let pred = pred.clone();
                args.prop_map(move |xs| Atom::new(&pred, xs))
            })
        })
        .boxed()
}

pub fn user_preds(sig: &Signature) -> Vec<String> {
    sig.preds().iter().map(|d| d.name.to_string()).collect()
}

/// Typable queries of `1..=max` atoms over the user predicates of `sig`.
pub fn typed_query(sig: &Arc<Signature>, max: usize, depth: u32) -> BoxedStrategy<Query> {
    prop::collection::vec(typed_atom(sig, user_preds(sig), depth), 1..=max)
        .prop_map(Query::new)
        .boxed()
}

/// Signature for random typed programs.
pub const TYPED_SIG: &str = "
kind list/1. kind int/0. kind pair/2.
func nil : list(U).
func cons(U, list(U)) : list(U).
func mk(U, V) : pair(U, V).
pred p(list(U), U).
pred q(pair(U, V), V).
pred r(int).
pred s(U, list(U)).
";

pub fn typed_signature() -> Arc<Signature> {
    Arc::new(parse_program(TYPED_SIG).expect("generator signature parses").signature)
}

/// Programs of typable clauses over `sig`; clause variables share types by
/// name, so every clause is typable.
pub fn typed_program(sig: &Arc<Signature>) -> BoxedStrategy<Program> {
    let preds = user_preds(sig);
    let clause = (
        typed_atom(sig, preds.clone(), 1),
        prop::collection::vec(typed_atom(sig, preds, 1), 0..3),
    )
        .prop_map(|(h, b)| Clause::new(h, b));
    let sig = sig.clone();
    prop::collection::vec(clause, 1..4)
        .prop_map(move |cs| Program::new((*sig).clone(), cs))
        .boxed()
}

// ----------------------------------------------------------------- ground

fn nat(n: u32) -> Term {
    (0..n).fold(Term::constant("z"), |t, _| Term::app("s", vec![t]))
}

fn ground_atom(sig: &Signature) -> BoxedStrategy<Atom> {
    let preds: Vec<(String, usize)> = sig.preds().iter().map(|d| (d.name.to_string(), d.args.len())).collect();
    prop::sample::select(preds)
        .prop_flat_map(|(p, n)| {
            prop::collection::vec(0..3u32, n).prop_map(move |ks| Atom::new(&p, ks.into_iter().map(nat).collect()))
        })
        .boxed()
}

/// Ground programs over the signature of `base`, whose predicates take
/// only `nat` arguments.
pub fn ground_program(base: &Program) -> BoxedStrategy<Program> {
    let sig = base.signature.clone();
    let clause =
        (ground_atom(&sig), prop::collection::vec(ground_atom(&sig), 0..3)).prop_map(|(h, b)| Clause::new(h, b));
    prop::collection::vec(clause, 1..7)
        .prop_map(move |cs| Program::new(sig.clone(), cs))
        .boxed()
}
