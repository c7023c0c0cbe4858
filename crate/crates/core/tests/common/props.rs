//! Property suites, shared by the test harness and the acceptance runner.
//! Each suite runs a seeded proptest runner and reports the first
//! minimised failure as text.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestCaseResult, TestRunner};
use tlpc::corpus;
use tlpc::srcheck::{
    assembled_typing, check_head_condition, check_semi_generic, check_subject_reduction_bounded,
    is_proper_type_skeleton, monitor_derivation, search_partition, split_equations, type_skeleton_of, Partition,
};
use tlpc::syntax::{
    canonicalize, is_variant, Atom, FirstOrder, Program, Query, Substitutable, Term, Type, TypeSubstitution,
};
use tlpc::trees::{
    derivations, enumerate_proof_skeletons, enumerate_skeletons, eq_of_skeleton, frontier, head, is_derivation_tree,
    is_proper_skeleton, most_general_derivation_tree, node_atoms, skeleton_of, ClauseDb, DeriveConfig, Selection,
};
use tlpc::typecheck::{judge_query, judge_term};
use tlpc::unify::{
    bindings_query, is_typed_substitution, mgu_terms, ordered_unifiable, unify, EquationSet, OrderedVerdict,
};

use super::gen::{self, typing_of};
use super::oracle;

pub const CASES: u32 = 256;
const SEED: u64 = 0x7e57_5eed;

pub fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(SEED),
        failure_persistence: None,
        max_global_rejects: 100_000,
        ..Config::default()
    }
}

fn check<S>(strategy: S, test: impl Fn(S::Value) -> TestCaseResult) -> Result<(), String>
where
    S: Strategy,
{
    TestRunner::new(config(CASES))
        .run(&strategy, test)
        .map_err(|e| e.to_string())
}

/// A named property suite.
pub struct Suite {
    pub name: &'static str,
    pub run: fn() -> Result<(), String>,
}

/// The suites of the acceptance run, in order.
pub const SUITES: &[Suite] = &[
    Suite {
        name: "parameter substitution preserves typing",
        run: lemma_params,
    },
    Suite {
        name: "typed substitutions preserve typing",
        run: lemma_terms,
    },
    Suite {
        name: "MGUs of typed equations are typed",
        run: lemma_mgu_typed,
    },
    Suite {
        name: "MGU correctness and most-generality",
        run: mgu_correct,
    },
    Suite {
        name: "proper skeletons carry derivation trees",
        run: proper_iff_tree,
    },
    Suite {
        name: "proof-tree heads match T_P (ground)",
        run: proof_heads_tp,
    },
    Suite {
        name: "frontiers match derived queries",
        run: frontiers_derivations,
    },
    Suite {
        name: "ordered unifiability is sound",
        run: ordered_sound,
    },
    Suite {
        name: "bounded SR implies the monitor passes",
        run: sr_implies_monitor,
    },
    Suite {
        name: "semi-generic programs pass SR at depth 5",
        run: semi_generic_sr,
    },
    Suite {
        name: "head condition implies semi-generic",
        run: head_implies_semi,
    },
];

// ------------------------------------------------------------- corpus cases

struct Entry {
    name: &'static str,
    program: Arc<Program>,
    sig: Arc<tlpc::syntax::Signature>,
}

fn corpus_entries(filter: impl Fn(&Program) -> bool) -> Vec<Entry> {
    corpus::ALL
        .iter()
        .map(|(name, _)| {
            let p = corpus::load(name);
            Entry {
                name,
                sig: Arc::new(p.signature.clone()),
                program: Arc::new(p),
            }
        })
        .filter(|e| filter(&e.program))
        .collect()
}

/// A corpus program with a random typable query and a depth.
fn corpus_case(
    entries: Vec<Entry>,
    atoms: usize,
    depths: std::ops::RangeInclusive<usize>,
) -> BoxedStrategy<(&'static str, Arc<Program>, Query, usize)> {
    let entries: Vec<(&'static str, Arc<Program>, BoxedStrategy<Query>)> = entries
        .into_iter()
        .map(|e| (e.name, e.program, gen::typed_query(&e.sig, atoms, 1)))
        .collect();
    let idx: Vec<usize> = (0..entries.len()).collect();
    let entries = std::rc::Rc::new(entries);
    (prop::sample::select(idx), depths)
        .prop_flat_map(move |(i, d)| {
            let (name, p, qs) = &entries[i];
            let (name, p) = (*name, p.clone());
            qs.clone().prop_map(move |q| (name, p.clone(), q, d))
        })
        .boxed()
}

// ----------------------------------------------------------------- typing

fn arb_theta(sig: &tlpc::syntax::Signature) -> BoxedStrategy<TypeSubstitution> {
    prop::collection::vec(gen::arb_type(sig, 2), gen::GEN_PARAMS.len())
        .prop_map(|images| {
            TypeSubstitution::from_pairs(
                gen::GEN_PARAMS
                    .iter()
                    .map(|p| tlpc::syntax::Param::named(p))
                    .zip(images),
            )
        })
        .boxed()
}

fn arb_typed_term(sig: &Arc<tlpc::syntax::Signature>) -> BoxedStrategy<(Type, Term)> {
    let s = sig.clone();
    gen::arb_type(sig, 2)
        .prop_flat_map(move |ty| gen::typed_term(&s, &ty, 2).prop_map(move |t| (ty.clone(), t)))
        .boxed()
}

/// `U ⊢ t:σ` implies `UΘ ⊢ t:σΘ`, and likewise for queries. Also checks
/// that the library judgement agrees with the oracle, on the generated
/// type and on an unrelated one.
pub fn lemma_params() -> Result<(), String> {
    let sig = gen::typed_signature();
    let strat = (
        arb_typed_term(&sig),
        gen::arb_type(&sig, 2),
        gen::typed_query(&sig, 3, 2),
        arb_theta(&sig),
    );
    check(strat, |((ty, t), other, q, theta)| {
        let u = typing_of(&t);
        prop_assert!(
            oracle::has_type(&sig, &u, &t, &ty),
            "oracle rejects generated {t} : {ty}"
        );
        prop_assert!(
            judge_term(&sig, &u, &t, &ty).is_ok(),
            "judge rejects {t} : {ty} under {u}"
        );
        prop_assert_eq!(
            judge_term(&sig, &u, &t, &other).is_ok(),
            oracle::has_type(&sig, &u, &t, &other)
        );
        let (ut, tt) = (u.apply(&theta), ty.apply(&theta));
        prop_assert!(judge_term(&sig, &ut, &t, &tt).is_ok(), "{t} : {tt} fails under {ut}");
        prop_assert!(oracle::has_type(&sig, &ut, &t, &tt));

        let uq = typing_of(&q);
        prop_assert!(judge_query(&sig, &uq, &q).is_ok(), "query {q} rejected under {uq}");
        prop_assert!(oracle::query_typed(&sig, &uq, &q));
        let uqt = uq.apply(&theta);
        prop_assert!(judge_query(&sig, &uqt, &q).is_ok(), "query {q} rejected under {uqt}");
        for a in q.atoms() {
            prop_assert!(oracle::atom_typed(&sig, &uqt, a));
        }
        Ok(())
    })
}

/// A typable query plus typable equations, all under the implied typing.
fn arb_typed_problem() -> BoxedStrategy<(Query, EquationSet<Term>)> {
    let sig = gen::typed_signature();
    let s = sig.clone();
    let eq = gen::arb_type(&sig, 1).prop_flat_map(move |ty| (gen::typed_term(&s, &ty, 2), gen::typed_term(&s, &ty, 2)));
    (gen::typed_query(&sig, 2, 2), prop::collection::vec(eq, 1..4))
        .prop_map(|(q, eqs)| (q, eqs.into_iter().collect()))
        .boxed()
}

fn eq_query(eqs: &EquationSet<Term>) -> Query {
    Query::new(eqs.iter().map(|e| Atom::eq(e.lhs.clone(), e.rhs.clone())).collect())
}

/// For the MGU θ of typed equations, `U ⊢ o` implies `U ⊢ oθ`.
pub fn lemma_terms() -> Result<(), String> {
    let sig = gen::typed_signature();
    check(arb_typed_problem(), |(q, eqs)| {
        let mut all = q.clone();
        all.0.extend(eq_query(&eqs).0);
        let u = typing_of(&all);
        prop_assert!(judge_query(&sig, &u, &q).is_ok());
        if let Ok(theta) = mgu_terms(&eqs) {
            let qt = q.apply(&theta);
            prop_assert!(
                judge_query(&sig, &u, &qt).is_ok(),
                "{qt} rejected under {u} (θ = {theta})"
            );
            prop_assert!(oracle::query_typed(&sig, &u, &qt));
        }
        Ok(())
    })
}

/// The MGU of a typed equation set is a typed substitution.
pub fn lemma_mgu_typed() -> Result<(), String> {
    let sig = gen::typed_signature();
    check(arb_typed_problem(), |(_, eqs)| {
        let u = typing_of(&eq_query(&eqs));
        prop_assert!(oracle::query_typed(&sig, &u, &eq_query(&eqs)));
        if let Ok(theta) = mgu_terms(&eqs) {
            prop_assert!(
                is_typed_substitution(&sig, &theta, &u),
                "θ = {theta} is not typed under {u}"
            );
            prop_assert!(oracle::query_typed(&sig, &u, &bindings_query(&theta)));
        }
        Ok(())
    })
}

// ------------------------------------------------------------ unification

fn vars_of(eqs: &[(Term, Term)]) -> Vec<Term> {
    let mut seen = BTreeSet::new();
    for (l, r) in eqs {
        l.for_each_var(&mut |v| {
            seen.insert(v.clone());
        });
        r.for_each_var(&mut |v| {
            seen.insert(v.clone());
        });
    }
    seen.into_iter().map(Term::Var).collect()
}

/// The library MGU solves the equations, is idempotent, agrees with the
/// oracle on unifiability and is a variant of the oracle's MGU.
pub fn mgu_correct() -> Result<(), String> {
    check((gen::arb_equations(), gen::arb_instance_pair()), |(eqs, (s, t))| {
        let set: EquationSet<Term> = eqs.iter().cloned().collect();
        let ours = unify(&set);
        let theirs = oracle::robinson(&eqs, &|_| false);
        prop_assert_eq!(ours.is_ok(), theirs.is_some(), "disagree on {}", set);
        if let (Ok(theta), Some(sol)) = (&ours, &theirs) {
            for (l, r) in &eqs {
                prop_assert_eq!(l.apply(theta), r.apply(theta));
            }
            prop_assert!(theta.is_idempotent());
            let vs = vars_of(&eqs);
            let a: Vec<Term> = vs.apply(theta);
            let b: Vec<Term> = vs.iter().map(|v| oracle::apply(v, sol)).collect();
            prop_assert!(is_variant(&a, &b), "{a:?} vs {b:?}");
        }
        let one: EquationSet<Term> = [(s.clone(), t.clone())].into_iter().collect();
        prop_assert!(unify(&one).is_ok(), "{s} = {t} must unify");
        Ok(())
    })
}

/// A `Guaranteed` verdict is never given to a non-unifiable set.
pub fn ordered_sound() -> Result<(), String> {
    let hits = AtomicUsize::new(0);
    check((gen::arb_oriented(), gen::arb_equations()), |(oriented, arbitrary)| {
        for eqs in [oriented, arbitrary] {
            let set: EquationSet<Term> = eqs.iter().cloned().collect();
            if ordered_unifiable(&set) == OrderedVerdict::Guaranteed {
                hits.fetch_add(1, Ordering::Relaxed);
                prop_assert!(oracle::unifiable(&eqs), "guaranteed but not unifiable: {}", set);
            }
        }
        Ok(())
    })?;
    nonvacuous("guaranteed verdicts", hits.into_inner(), CASES as usize / 8)
}

fn nonvacuous(what: &str, hits: usize, at_least: usize) -> Result<(), String> {
    if hits >= at_least {
        Ok(())
    } else {
        Err(format!("only {hits} {what}; need {at_least}"))
    }
}

// -------------------------------------------------------------- skeletons

fn canonical_query(q: &Query) -> Vec<Term> {
    canonicalize(&q.atoms().iter().map(Atom::as_term).collect::<Vec<Term>>())
}

/// A skeleton is proper iff the oracle unifies `Eq(S)`, iff its most
/// general derivation tree exists; that tree is a derivation tree with
/// skeleton `S`.
pub fn proper_iff_tree() -> Result<(), String> {
    check(corpus_case(corpus_entries(|_| true), 2, 0..=3), |(name, p, q, d)| {
        let db = ClauseDb::new(&p, Some(&q));
        for s in enumerate_skeletons(&db, d) {
            let eqs: Vec<(Term, Term)> = eq_of_skeleton(&s)
                .iter()
                .map(|e| (e.lhs.clone(), e.rhs.clone()))
                .collect();
            let proper = is_proper_skeleton(&s).is_ok();
            prop_assert_eq!(proper, oracle::unifiable(&eqs), "{}: {}", name, s);
            match most_general_derivation_tree(&s) {
                Ok(t) => {
                    prop_assert!(proper);
                    prop_assert!(is_derivation_tree(&t), "{}: not a derivation tree: {}", name, t);
                    prop_assert_eq!(skeleton_of(&t), s);
                }
                Err(_) => prop_assert!(!proper),
            }
        }
        Ok(())
    })
}

/// Heads of proof trees with complete nodes at levels `≤ d` are exactly
/// `T_P^{d+1}(∅)` on ground programs.
pub fn proof_heads_tp() -> Result<(), String> {
    let base = corpus::load("ground");
    let heads_match = |p: &Program, d: usize| {
        let db = ClauseDb::new(p, None);
        let heads: BTreeSet<Atom> = enumerate_proof_skeletons(&db, d)
            .iter()
            .filter_map(|s| most_general_derivation_tree(s).ok())
            .filter_map(|t| head(&t))
            .collect();
        (heads.clone(), oracle::ground_tp(&p.clauses, d + 1))
    };
    for d in 0..=3 {
        let (a, b) = heads_match(&base, d);
        if a != b {
            return Err(format!("ground corpus at depth {d}: {a:?} vs {b:?}"));
        }
    }
    check((gen::ground_program(&base), 0..=3usize), |(p, d)| {
        let (a, b) = heads_match(&p, d);
        prop_assert_eq!(a, b, "depth {}", d);
        Ok(())
    })
}

/// Every derived query is, up to renaming, the frontier of a most general
/// derivation tree, and every such frontier with few enough nodes is
/// derived.
pub fn frontiers_derivations() -> Result<(), String> {
    check(corpus_case(corpus_entries(|_| true), 2, 0..=4), |(name, p, q, d)| {
        let db = ClauseDb::new(&p, Some(&q));
        let cfg = DeriveConfig::new(d).selection(Selection::All).arith(false);
        let derived: BTreeSet<Vec<Term>> = derivations(&db, &q, cfg).map(|x| canonical_query(x.last())).collect();
        let mut small = BTreeSet::new();
        let mut all = BTreeSet::new();
        for s in enumerate_skeletons(&db, d) {
            if let Ok(t) = most_general_derivation_tree(&s) {
                let f = canonical_query(&frontier(&t));
                if s.complete_count() <= d + 1 {
                    small.insert(f.clone());
                }
                all.insert(f);
            }
        }
        for f in &derived {
            prop_assert!(all.contains(f), "{}: derived {:?} is no frontier", name, f);
        }
        for f in &small {
            prop_assert!(derived.contains(f), "{}: frontier {:?} is not derived", name, f);
        }
        Ok(())
    })
}

// --------------------------------------------------------------- analyses

/// Bounded subject reduction at depth `d` implies that every derivation of
/// at most `d` steps keeps the query typable.
pub fn sr_implies_monitor() -> Result<(), String> {
    let hits = AtomicUsize::new(0);
    check(corpus_case(corpus_entries(|_| true), 2, 0..=5), |(name, p, q, d)| {
        let sr = check_subject_reduction_bounded(&p, &q, d).map_err(|e| TestCaseError::fail(e.to_string()))?;
        if sr.report.passed() {
            hits.fetch_add(1, Ordering::Relaxed);
            let sel = if d <= 3 { Selection::All } else { Selection::Leftmost };
            let m = monitor_derivation(&p, &q, d, sel).map_err(|e| TestCaseError::fail(e.to_string()))?;
            prop_assert!(m.report.passed(), "{}: {} at depth {}: {}", name, q, d, m.report);
        }
        Ok(())
    })?;
    nonvacuous("subject reduction passes", hits.into_inner(), CASES as usize / 2)
}

fn semi_generic_programs() -> Vec<Entry> {
    corpus_entries(|p| matches!(search_partition(p, &[]), Ok(Some(_))))
}

/// Semi-generic program and query: bounded subject reduction holds at
/// depth 5, and the split equations of each type skeleton are ordered.
pub fn semi_generic_sr() -> Result<(), String> {
    let hits = AtomicUsize::new(0);
    check(corpus_case(semi_generic_programs(), 2, 5..=5), |(name, p, q, d)| {
        let Some(part) =
            search_partition(&p, std::slice::from_ref(&q)).map_err(|e| TestCaseError::fail(e.to_string()))?
        else {
            return Ok(());
        };
        hits.fetch_add(1, Ordering::Relaxed);
        let sr = check_subject_reduction_bounded(&p, &q, d).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert!(sr.report.passed(), "{}: {} with {}: {}", name, q, part, sr.report);
        ordered_splits(&p, &q, &part, 3)?;
        Ok(())
    })?;
    nonvacuous("semi-generic queries", hits.into_inner(), CASES as usize / 2)
}

fn ordered_splits(p: &Program, q: &Query, part: &Partition, depth: usize) -> TestCaseResult {
    let db = ClauseDb::new(p, Some(q));
    for s in enumerate_skeletons(&db, depth) {
        let ts = type_skeleton_of(&p.signature, &s).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let eqs = split_equations(&ts, part);
        prop_assert_eq!(
            ordered_unifiable(&eqs),
            OrderedVerdict::Guaranteed,
            "{} for {}",
            eqs,
            ts
        );
    }
    Ok(())
}

/// Programs fulfilling the head condition are semi-generic under the
/// all-head partition, with any query, and the search finds that partition.
pub fn head_implies_semi() -> Result<(), String> {
    for (name, _) in corpus::ALL {
        let p = corpus::load(name);
        if check_head_condition(&p).is_ok_and(|r| r.passed()) {
            let all_head = Partition::all_head(&p.signature);
            let ok = check_semi_generic(&p, &all_head, &[]).is_ok_and(|r| r.passed());
            if !ok || search_partition(&p, &[]) != Ok(Some(all_head)) {
                return Err(format!("{name}: head condition holds but all-head is not found"));
            }
        }
    }
    let sig = gen::typed_signature();
    let hits = AtomicUsize::new(0);
    check((gen::typed_program(&sig), gen::typed_query(&sig, 2, 1)), |(p, q)| {
        let Ok(hc) = check_head_condition(&p) else {
            return Err(TestCaseError::fail(format!("generated program is untypable:\n{p}")));
        };
        if hc.passed() {
            hits.fetch_add(1, Ordering::Relaxed);
            let qs = std::slice::from_ref(&q);
            let all_head = Partition::all_head(&p.signature);
            let r = check_semi_generic(&p, &all_head, qs).map_err(|e| TestCaseError::fail(e.to_string()))?;
            prop_assert!(r.passed(), "{}\nquery {}: {}", p, q, r);
            prop_assert_eq!(search_partition(&p, qs), Ok(Some(all_head)));
        }
        Ok(())
    })?;
    nonvacuous(
        "programs with the head condition",
        hits.into_inner(),
        CASES as usize / 10,
    )
}

/// Type skeletons mirror their skeletons, and a proper type skeleton's
/// assembled typing types every node atom of the most general derivation
/// tree.
pub fn type_skeleton_instantiation() -> Result<(), String> {
    check(corpus_case(corpus_entries(|_| true), 2, 0..=3), |(name, p, q, d)| {
        let db = ClauseDb::new(&p, Some(&q));
        for s in enumerate_skeletons(&db, d) {
            let ts = type_skeleton_of(&p.signature, &s).map_err(|e| TestCaseError::fail(e.to_string()))?;
            prop_assert!(ts.same_shape(&s));
            let (Ok(t), Ok(theta)) = (most_general_derivation_tree(&s), is_proper_type_skeleton(&ts)) else {
                continue;
            };
            let u = assembled_typing(&ts, &theta);
            prop_assert!(u.is_some(), "{}: node typings clash in {}", name, ts);
            let u = u.unwrap();
            let atoms = Query::new(node_atoms(&t));
            prop_assert!(
                judge_query(&p.signature, &u, &atoms).is_ok(),
                "{}: {} under {}",
                name,
                atoms,
                u
            );
            prop_assert!(oracle::query_typed(&p.signature, &u, &atoms));
        }
        Ok(())
    })
}
