//! Substitutions over first-order trees.
//!
//! Terms and types share one representation discipline: a tree is either a
//! variable or a symbol applied to children. [`FirstOrder`] captures that,
//! and [`Subst`] together with the matching and renaming helpers below are
//! written once against it.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::hash::Hash;

use super::ident::{canonical_name, Ident, NameSource};

pub trait FirstOrder: Clone + Eq + Ord + fmt::Debug + fmt::Display {
    type Var: Clone + Eq + Ord + Hash + fmt::Debug + fmt::Display;

    fn from_var(v: Self::Var) -> Self;
    fn as_var(&self) -> Option<&Self::Var>;
    /// Both non-variable with the same symbol and arity.
    fn same_head(&self, other: &Self) -> bool;
    fn children(&self) -> &[Self];
    fn with_children(&self, children: Vec<Self>) -> Self;

    fn var_ident(v: &Self::Var) -> &Ident;
    fn var_from_ident(id: Ident) -> Self::Var;

    fn for_each_var(&self, f: &mut dyn FnMut(&Self::Var)) {
        match self.as_var() {
            Some(v) => f(v),
            None => {
                for c in self.children() {
                    c.for_each_var(f);
                }
            }
        }
    }

    fn occurs(&self, v: &Self::Var) -> bool {
        match self.as_var() {
            Some(w) => w == v,
            None => self.children().iter().any(|c| c.occurs(v)),
        }
    }

    fn is_ground(&self) -> bool {
        match self.as_var() {
            Some(_) => false,
            None => self.children().iter().all(FirstOrder::is_ground),
        }
    }

    /// Nesting depth: leaves have depth 0.
    fn depth(&self) -> usize {
        self.children().iter().map(|c| c.depth() + 1).max().unwrap_or(0)
    }

    fn size(&self) -> usize {
        1 + self.children().iter().map(FirstOrder::size).sum::<usize>()
    }
}

/// Objects built from trees of kind `T`, which a substitution acts on.
pub trait Substitutable<T: FirstOrder>: Sized {
    fn for_each_tree_var(&self, f: &mut dyn FnMut(&T::Var));
    fn apply(&self, s: &Subst<T>) -> Self;

    fn tree_vars(&self) -> BTreeSet<T::Var> {
        let mut out = BTreeSet::new();
        self.for_each_tree_var(&mut |v| {
            out.insert(v.clone());
        });
        out
    }

    /// Variables in order of first occurrence, without repeats.
    fn tree_vars_ordered(&self) -> Vec<T::Var> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        self.for_each_tree_var(&mut |v| {
            if seen.insert(v.clone()) {
                out.push(v.clone());
            }
        });
        out
    }
}

/// A finite substitution. Bindings `x ↦ x` are never stored.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subst<T: FirstOrder> {
    map: BTreeMap<T::Var, T>,
}

impl<T: FirstOrder> Default for Subst<T> {
    fn default() -> Self {
        Subst { map: BTreeMap::new() }
    }
}

impl<T: FirstOrder> Subst<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(v: T::Var, t: T) -> Self {
        let mut s = Self::new();
        s.insert(v, t);
        s
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (T::Var, T)>) -> Self {
        let mut s = Self::new();
        for (v, t) in pairs {
            s.insert(v, t);
        }
        s
    }

    /// Inserts a raw binding, dropping identities. Callers keep idempotency.
    pub fn insert(&mut self, v: T::Var, t: T) {
        if t.as_var() == Some(&v) {
            self.map.remove(&v);
        } else {
            self.map.insert(v, t);
        }
    }

    /// Adds `v ↦ t` to a solved substitution, keeping it idempotent.
    ///
    /// `t` must already be fully instantiated by `self` and must not
    /// contain `v`.
    pub fn bind_solved(&mut self, v: T::Var, t: T) {
        let single = Subst::singleton(v.clone(), t.clone());
        for value in self.map.values_mut() {
            *value = single.apply_tree(value);
        }
        self.map.retain(|k, val| val.as_var() != Some(k));
        self.insert(v, t);
    }

    pub fn get(&self, v: &T::Var) -> Option<&T> {
        self.map.get(v)
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&T::Var, &T)> {
        self.map.iter()
    }

    pub fn domain(&self) -> impl Iterator<Item = &T::Var> {
        self.map.keys()
    }

    pub fn range_vars(&self) -> BTreeSet<T::Var> {
        let mut out = BTreeSet::new();
        for t in self.map.values() {
            t.for_each_var(&mut |v| {
                out.insert(v.clone());
            });
        }
        out
    }

    pub fn apply_tree(&self, t: &T) -> T {
        if self.map.is_empty() {
            return t.clone();
        }
        match t.as_var() {
            Some(v) => self.map.get(v).cloned().unwrap_or_else(|| t.clone()),
            None => t.with_children(t.children().iter().map(|c| self.apply_tree(c)).collect()),
        }
    }

    /// `self ∘ other`: applying the result equals applying `self` then `other`.
    pub fn compose(&self, other: &Subst<T>) -> Subst<T> {
        let mut out = Subst::new();
        for (v, t) in &self.map {
            out.insert(v.clone(), other.apply_tree(t));
        }
        for (v, t) in &other.map {
            if !self.map.contains_key(v) {
                out.insert(v.clone(), t.clone());
            }
        }
        out
    }

    /// No domain variable occurs in the range.
    pub fn is_idempotent(&self) -> bool {
        let range = self.range_vars();
        self.map.keys().all(|v| !range.contains(v))
    }

    /// Restriction to the given variables.
    pub fn restrict(&self, keep: &BTreeSet<T::Var>) -> Subst<T> {
        Subst {
            map: self
                .map
                .iter()
                .filter(|(v, _)| keep.contains(*v))
                .map(|(v, t)| (v.clone(), t.clone()))
                .collect(),
        }
    }

    /// Restriction to the variables of `o`, written θ↾o.
    pub fn restrict_to<O: Substitutable<T>>(&self, o: &O) -> Subst<T> {
        self.restrict(&o.tree_vars())
    }

    /// True if every binding maps a variable to a variable and no two
    /// variables share an image.
    pub fn is_renaming(&self) -> bool {
        let mut images = BTreeSet::new();
        self.map
            .values()
            .all(|t| t.as_var().is_some_and(|v| images.insert(v.clone())))
    }
}

impl<T: FirstOrder> fmt::Display for Subst<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (v, t)) in self.map.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v} ↦ {t}")?;
        }
        f.write_str("}")
    }
}

impl<T: FirstOrder> fmt::Debug for Subst<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<T: FirstOrder> Substitutable<T> for T {
    fn for_each_tree_var(&self, f: &mut dyn FnMut(&T::Var)) {
        self.for_each_var(f)
    }

    fn apply(&self, s: &Subst<T>) -> Self {
        s.apply_tree(self)
    }
}

impl<T: FirstOrder, O: Substitutable<T>> Substitutable<T> for Vec<O> {
    fn for_each_tree_var(&self, f: &mut dyn FnMut(&T::Var)) {
        for o in self {
            o.for_each_tree_var(f);
        }
    }

    fn apply(&self, s: &Subst<T>) -> Self {
        self.iter().map(|o| o.apply(s)).collect()
    }
}

/// One-way matching: finds σ with `pattern σ = target`, extending `acc`.
pub fn match_into<T: FirstOrder>(pattern: &T, target: &T, acc: &mut Subst<T>) -> bool {
    match pattern.as_var() {
        Some(v) => match acc.get(v) {
            Some(bound) => bound == target,
            None => {
                acc.map.insert(v.clone(), target.clone());
                true
            }
        },
        None => {
            pattern.same_head(target)
                && pattern
                    .children()
                    .iter()
                    .zip(target.children())
                    .all(|(p, t)| match_into(p, t, acc))
        }
    }
}

/// `target` is an instance of `pattern`.
pub fn is_instance<T: FirstOrder>(target: &T, pattern: &T) -> Option<Subst<T>> {
    let mut acc = Subst::new();
    if match_into(pattern, target, &mut acc) {
        acc.map.retain(|k, v| v.as_var() != Some(k));
        Some(acc)
    } else {
        None
    }
}

/// Componentwise instance test for tuples of trees.
pub fn is_instance_all<T: FirstOrder>(targets: &[T], patterns: &[T]) -> Option<Subst<T>> {
    if targets.len() != patterns.len() {
        return None;
    }
    let mut acc = Subst::new();
    for (p, t) in patterns.iter().zip(targets) {
        if !match_into(p, t, &mut acc) {
            return None;
        }
    }
    acc.map.retain(|k, v| v.as_var() != Some(k));
    Some(acc)
}

/// Equal up to a consistent, injective renaming of variables.
pub fn is_variant<T: FirstOrder>(a: &[T], b: &[T]) -> bool {
    match is_instance_all(a, b) {
        Some(s) => {
            // Every variable of `b` must map to a distinct variable.
            let bvars: BTreeSet<T::Var> = b.to_vec().tree_vars();
            let mut images = BTreeSet::new();
            bvars.iter().all(|v| {
                let img = s.get(v).cloned().unwrap_or_else(|| T::from_var(v.clone()));
                img.as_var().is_some_and(|w| images.insert(w.clone()))
            })
        }
        None => false,
    }
}

/// Renaming that maps each variable of `o` to a fresh one from `names`.
pub fn fresh_renaming<T: FirstOrder, O: Substitutable<T>>(o: &O, names: &mut NameSource) -> Subst<T> {
    Subst::from_pairs(o.tree_vars_ordered().into_iter().map(|v| {
        let id = names.fresh(T::var_ident(&v).base());
        (v, T::from_var(T::var_from_ident(id)))
    }))
}

/// Renaming to `A`, `B`, ... in order of first occurrence.
pub fn canonical_renaming<T: FirstOrder, O: Substitutable<T>>(o: &O) -> Subst<T> {
    Subst::from_pairs(
        o.tree_vars_ordered()
            .into_iter()
            .enumerate()
            .map(|(i, v)| (v, T::from_var(T::var_from_ident(Ident::new(canonical_name(i), 0))))),
    )
}

pub fn canonicalize<T: FirstOrder, O: Substitutable<T>>(o: &O) -> O {
    o.apply(&canonical_renaming(o))
}
