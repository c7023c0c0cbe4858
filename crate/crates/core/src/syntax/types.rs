use std::collections::BTreeSet;
use std::fmt;

use super::ident::{Ident, NameSource, Param, Symbol};
use super::subst::{fresh_renaming, FirstOrder, Subst, Substitutable};

/// A type: a parameter or a constructor applied to argument types.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Type {
    Param(Param),
    Con(Symbol, Vec<Type>),
}

pub type TypeSubstitution = Subst<Type>;

impl Type {
    pub fn param(name: &str) -> Type {
        Type::Param(Param::named(name))
    }

    pub fn con(name: &str, args: Vec<Type>) -> Type {
        Type::Con(name.into(), args)
    }

    pub fn constant(name: &str) -> Type {
        Type::Con(name.into(), Vec::new())
    }

    pub fn int() -> Type {
        Type::constant(super::INT)
    }

    pub fn list(elem: Type) -> Type {
        Type::con(super::LIST, vec![elem])
    }

    pub fn pars(&self) -> BTreeSet<Param> {
        self.tree_vars()
    }
}

impl FirstOrder for Type {
    type Var = Param;

    fn from_var(v: Param) -> Self {
        Type::Param(v)
    }

    fn as_var(&self) -> Option<&Param> {
        match self {
            Type::Param(p) => Some(p),
            Type::Con(..) => None,
        }
    }

    fn same_head(&self, other: &Self) -> bool {
        match (self, other) {
            (Type::Con(a, xs), Type::Con(b, ys)) => a == b && xs.len() == ys.len(),
            _ => false,
        }
    }

    fn children(&self) -> &[Self] {
        match self {
            Type::Param(_) => &[],
            Type::Con(_, args) => args,
        }
    }

    fn with_children(&self, children: Vec<Self>) -> Self {
        match self {
            Type::Param(_) => self.clone(),
            Type::Con(k, _) => Type::Con(k.clone(), children),
        }
    }

    fn var_ident(v: &Param) -> &Ident {
        &v.0
    }

    fn var_from_ident(id: Ident) -> Param {
        Param(id)
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Type::Param(p) => write!(f, "{p}"),
            Type::Con(k, args) if args.is_empty() => write!(f, "{k}"),
            Type::Con(k, args) => {
                write!(f, "{k}(")?;
                write_list(f, args, ",")?;
                f.write_str(")")
            }
        }
    }
}

impl fmt::Debug for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub(crate) fn write_list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T], sep: &str) -> fmt::Result {
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(sep)?;
        }
        write!(f, "{item}")?;
    }
    Ok(())
}

/// A tuple of types, printed `(τ₁, …, τₙ)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypeTuple(pub Vec<Type>);

impl TypeTuple {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn types(&self) -> &[Type] {
        &self.0
    }
}

impl fmt::Display for TypeTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        write_list(f, &self.0, ", ")?;
        f.write_str(")")
    }
}

impl fmt::Debug for TypeTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Substitutable<Type> for TypeTuple {
    fn for_each_tree_var(&self, f: &mut dyn FnMut(&Param)) {
        self.0.for_each_tree_var(f)
    }

    fn apply(&self, s: &TypeSubstitution) -> Self {
        TypeTuple(self.0.apply(s))
    }
}

/// Renames the parameters of `types` apart; returns the copy.
pub fn fresh_copy<O: Substitutable<Type>>(types: &O, names: &mut NameSource) -> O {
    types.apply(&fresh_renaming(types, names))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::subst::{canonicalize, is_instance, is_variant};

    fn list(t: Type) -> Type {
        Type::list(t)
    }

    #[test]
    fn pars_of_types() {
        assert_eq!(list(Type::param("U")).pars(), [Param::named("U")].into());
        assert!(Type::int().pars().is_empty());
    }

    #[test]
    fn type_substitution_application() {
        let s = Subst::singleton(Param::named("U"), Type::int());
        assert_eq!(list(Type::param("U")).apply(&s), list(Type::int()));
        assert_eq!(Type::param("U").apply(&Subst::new()), Type::param("U"));
        let other = Subst::singleton(Param::named("V"), Type::int());
        assert_eq!(list(Type::param("U")).apply(&other), list(Type::param("U")));
    }

    #[test]
    fn composition_law() {
        let a = Subst::singleton(Param::named("U"), list(Type::param("V")));
        let b = Subst::singleton(Param::named("V"), Type::int());
        let ab = a.compose(&b);
        let t = Type::con("pair", vec![Type::param("U"), Type::param("V")]);
        assert_eq!(t.apply(&ab), t.apply(&a).apply(&b));
        assert!(ab.is_idempotent());
        assert_eq!(t.apply(&ab).apply(&ab), t.apply(&ab));
    }

    #[test]
    fn matching_and_variants() {
        let pattern = list(Type::param("U"));
        assert!(is_instance(&list(Type::int()), &pattern).is_some());
        assert!(is_instance(&pattern, &list(Type::int())).is_none());
        let a = vec![list(Type::param("A")), Type::param("B")];
        let b = vec![list(Type::param("X")), Type::param("Y")];
        let c = vec![list(Type::param("X")), Type::param("X")];
        assert!(is_variant(&a, &b));
        assert!(!is_variant(&a, &c));
        assert!(!is_variant(&c, &a));
        assert_eq!(canonicalize(&b), a);
    }

    #[test]
    fn fresh_copies_are_disjoint() {
        let mut names = NameSource::new();
        let t = TypeTuple(vec![list(Type::param("U")), Type::param("U")]);
        let c1 = fresh_copy(&t, &mut names);
        let c2 = fresh_copy(&t, &mut names);
        assert!(c1.tree_vars().is_disjoint(&c2.tree_vars()));
        assert!(is_variant(&c1.0, &t.0));
    }
}
