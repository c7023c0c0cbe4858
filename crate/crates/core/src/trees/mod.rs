//! SLD derivations, skeletons, derivation trees and the bounded `T_P`
//! semantics.

mod db;
mod derive;
mod enumerate;
mod json;
mod tp;
mod tree;

pub use db::ClauseDb;
pub use derive::{derivations, derive_step, Derivation, Derivations, DeriveConfig, Selection, Step};
pub use enumerate::{enumerate_proof_skeletons, enumerate_rooted, enumerate_skeletons, SkeletonConfig};
pub use json::{
    derivation_tree_from_json, derivation_tree_to_json, skeleton_from_json, skeleton_to_json, NodeJson, NodeKind,
    TreeJson, TreeJsonError,
};
pub use tp::{tp_fixpoint_bounded, tp_iterate, tp_step, GroundAtomSet};
pub use tree::{
    eq_of_skeleton, frontier, head, is_derivation_tree, is_proper_skeleton, is_renamed_apart, is_well_formed,
    most_general_derivation_tree, node_atoms, skeleton_of, DerivationTree, HasClause, Instance, SkLabel, Skeleton,
    Tree,
};
