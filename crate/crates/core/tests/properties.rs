mod common;

use common::props;

fn run(f: fn() -> Result<(), String>) {
    if let Err(e) = f() {
        panic!("{e}");
    }
}

#[test]
fn parameter_substitution_preserves_typing() {
    run(props::lemma_params);
}

#[test]
fn typed_substitutions_preserve_typing() {
    run(props::lemma_terms);
}

#[test]
fn mgu_of_typed_equations_is_typed() {
    run(props::lemma_mgu_typed);
}

#[test]
fn mgu_is_correct_and_most_general() {
    run(props::mgu_correct);
}

#[test]
fn proper_skeletons_carry_derivation_trees() {
    run(props::proper_iff_tree);
}

#[test]
fn proof_tree_heads_match_tp() {
    run(props::proof_heads_tp);
}

#[test]
fn frontiers_match_derived_queries() {
    run(props::frontiers_derivations);
}

#[test]
fn ordered_unifiability_is_sound() {
    run(props::ordered_sound);
}

#[test]
fn bounded_sr_implies_monitor() {
    run(props::sr_implies_monitor);
}

#[test]
fn semi_generic_programs_pass_sr() {
    run(props::semi_generic_sr);
}

#[test]
fn head_condition_implies_semi_generic() {
    run(props::head_implies_semi);
}

#[test]
fn type_skeletons_instantiate_derivation_trees() {
    run(props::type_skeleton_instantiation);
}
