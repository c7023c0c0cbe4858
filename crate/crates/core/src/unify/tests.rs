use super::*;
use crate::parser::{parse_program, parse_term, parse_type};
use crate::syntax::{Program, Var};

fn lists() -> Program {
    parse_program(
        "kind int/0. kind list/1.
         func nil : list(U). func cons(U, list(U)) : list(U).
         func f(int) : int. func a : int. func b : int.
         pred p(list(int)). pred q(list(int)).",
    )
    .unwrap()
}

fn terms(p: &Program, pairs: &[(&str, &str)]) -> EquationSet<Term> {
    pairs
        .iter()
        .map(|(l, r)| {
            (
                parse_term(l, &p.signature).unwrap(),
                parse_term(r, &p.signature).unwrap(),
            )
        })
        .collect()
}

fn types(pairs: &[(&str, &str)]) -> EquationSet<Type> {
    pairs
        .iter()
        .map(|(l, r)| (parse_type(l).unwrap(), parse_type(r).unwrap()))
        .collect()
}

#[test]
fn solves_atom_equations() {
    let p = lists();
    let eqs = atom_equations([
        (
            &Atom::new("q", vec![Term::var("X")]),
            &Atom::new("q", vec![Term::nil()]),
        ),
        (
            &Atom::new("p", vec![Term::var("X")]),
            &Atom::new("p", vec![Term::var("X_1")]),
        ),
    ]);
    let mgu = mgu_terms(&eqs).unwrap();
    assert_eq!(mgu.get(&Var::named("X")), Some(&Term::nil()));
    assert_eq!(mgu.get(&Var::named("X_1")), Some(&Term::nil()));
    assert_eq!(mgu.len(), 2);
    let _ = p;
}

#[test]
fn decomposition() {
    let p = lists();
    let mgu = mgu_terms(&terms(&p, &[("[X]", "[1|Y]")])).unwrap();
    assert_eq!(mgu.get(&Var::named("X")), Some(&Term::Int(1)));
    assert_eq!(mgu.get(&Var::named("Y")), Some(&Term::nil()));
}

#[test]
fn occur_check_and_clash() {
    let p = lists();
    let err = mgu_terms(&terms(&p, &[("a", "a"), ("X", "[X]")])).unwrap_err();
    assert_eq!(err.kind, FailureKind::Occurs);
    assert_eq!(err.equation, 1);
    let err = mgu_types(&types(&[("int", "list(U)")])).unwrap_err();
    assert_eq!(err.kind, FailureKind::Clash);
}

#[test]
fn type_level() {
    let mgu = mgu_types(&types(&[("list(int)", "list(U_2)")])).unwrap();
    assert_eq!(mgu.to_string(), "{U_2 ↦ int}");
}

#[test]
fn result_is_idempotent() {
    let p = lists();
    let mgu = mgu_terms(&terms(&p, &[("X", "[Y]"), ("Y", "[Z]"), ("Z", "W")])).unwrap();
    assert!(mgu.is_idempotent());
    assert_eq!(mgu.get(&Var::named("X")).unwrap().to_string(), "[[W]]");
}

#[test]
fn rigid_variables() {
    let u = crate::syntax::Param::named("U");
    let eqs = types(&[("U", "list(V)")]);
    let err = unify_with(&eqs, &|p| p != &u).unwrap_err();
    assert_eq!(err.kind, FailureKind::Clash);
    let s = unify_with(&types(&[("U", "V")]), &|p| p != &u).unwrap();
    assert_eq!(s.to_string(), "{V ↦ U}");
}

#[test]
fn ordered_test() {
    let p = lists();
    assert_eq!(
        ordered_unifiable(&EquationSet::<Term>::new()),
        OrderedVerdict::Guaranteed
    );
    assert_eq!(
        ordered_unifiable(&terms(&p, &[("f(a)", "X"), ("f(b)", "X")])),
        OrderedVerdict::Unknown
    );
    assert_eq!(
        ordered_unifiable(&types(&[("list(int)", "list(U)"), ("list(U)", "V")])),
        OrderedVerdict::Guaranteed
    );
    // Self-loop: r shares a variable with its own l.
    assert_eq!(ordered_unifiable(&types(&[("list(U)", "U")])), OrderedVerdict::Unknown);
    // Two-cycle.
    assert_eq!(
        ordered_unifiable(&types(&[("list(V)", "U"), ("list(U)", "V")])),
        OrderedVerdict::Unknown
    );
}

#[test]
fn typed_substitutions() {
    let p = lists();
    let u = VariableTyping::from_pairs([(Var::named("X"), parse_type("list(int)").unwrap())]);
    let nil = Subst::singleton(Var::named("X"), Term::nil());
    let one = Subst::singleton(Var::named("X"), Term::Int(1));
    assert!(is_typed_substitution(&p.signature, &nil, &u));
    assert!(!is_typed_substitution(&p.signature, &one, &u));
    assert!(is_typed_substitution(&p.signature, &Subst::new(), &u));
}
