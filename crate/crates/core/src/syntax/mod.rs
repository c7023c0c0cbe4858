//! Types, terms, substitutions, signatures and programs.

mod ident;
mod program;
mod signature;
mod subst;
mod term;
mod types;

pub use ident::{canonical_name, Ident, NameSource, Param, Symbol, Var};
pub use program::{Genericity, PartitionDecl, Program};
pub(crate) use signature::{signature_findings, DeclRef};
pub use signature::{validate_signature, FuncDecl, KindDecl, PredDecl, Signature};
pub use subst::{
    canonical_renaming, canonicalize, fresh_renaming, is_instance, is_instance_all, is_variant, match_into, FirstOrder,
    Subst, Substitutable,
};
pub use term::{Atom, Clause, Query, Term, TermSubstitution, VariableTyping};
pub use types::{fresh_copy, Type, TypeSubstitution, TypeTuple};

use std::collections::BTreeSet;

pub const EQ: &str = "=";
pub const GO: &str = "go";
pub const MINUS: &str = "minus";
pub const INT: &str = "int";
pub const LIST: &str = "list";
pub const CONS: &str = "cons";
pub const NIL: &str = "nil";

/// Parameters occurring in a type-level object.
pub fn pars<O: Substitutable<Type>>(o: &O) -> BTreeSet<Param> {
    o.tree_vars()
}

/// Variables occurring in a term-level object.
pub fn vars<O: Substitutable<Term>>(o: &O) -> BTreeSet<Var> {
    o.tree_vars()
}

/// Applies a type substitution.
pub fn apply_type_subst<O: Substitutable<Type>>(o: &O, s: &TypeSubstitution) -> O {
    o.apply(s)
}

/// Applies a term substitution.
pub fn apply_term_subst<O: Substitutable<Term>>(o: &O, s: &TermSubstitution) -> O {
    o.apply(s)
}

/// `Θ₁ ∘ Θ₂`, so that `τ(Θ₁∘Θ₂) = (τΘ₁)Θ₂`.
pub fn compose_type_subst(first: &TypeSubstitution, second: &TypeSubstitution) -> TypeSubstitution {
    first.compose(second)
}

/// A variant of `c` with fresh variables.
pub fn rename_apart(c: &Clause, names: &mut NameSource) -> Clause {
    c.rename_apart(names)
}
