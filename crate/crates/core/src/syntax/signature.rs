use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::ident::{Param, Symbol};
use super::subst::Substitutable;
use super::types::{write_list, Type, TypeTuple};
use super::{EQ, GO, INT, MINUS};
use crate::report::{CheckReport, Condition, Finding};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KindDecl {
    pub name: Symbol,
    pub arity: usize,
}

/// `f : (τ₁, …, τₘ) → τ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuncDecl {
    pub name: Symbol,
    pub args: Vec<Type>,
    pub result: Type,
}

impl FuncDecl {
    pub fn new(name: &str, args: Vec<Type>, result: Type) -> FuncDecl {
        FuncDecl {
            name: name.into(),
            args,
            result,
        }
    }

    /// `pars(τ₁, …, τₘ) ⊆ pars(τ)`.
    pub fn is_transparent(&self) -> bool {
        self.args.tree_vars().is_subset(&self.result.pars())
    }

    /// Argument types followed by the result type.
    pub fn profile(&self) -> TypeTuple {
        let mut all = self.args.clone();
        all.push(self.result.clone());
        TypeTuple(all)
    }
}

impl fmt::Display for FuncDecl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "func {}", self.name)?;
        if !self.args.is_empty() {
            f.write_str("(")?;
            write_list(f, &self.args, ",")?;
            f.write_str(")")?;
        }
        write!(f, " : {}.", self.result)
    }
}

/// `p : (τ₁, …, τₘ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredDecl {
    pub name: Symbol,
    pub args: Vec<Type>,
}

impl PredDecl {
    pub fn new(name: &str, args: Vec<Type>) -> PredDecl {
        PredDecl {
            name: name.into(),
            args,
        }
    }
}

impl fmt::Display for PredDecl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pred {}", self.name)?;
        if !self.args.is_empty() {
            f.write_str("(")?;
            write_list(f, &self.args, ",")?;
            f.write_str(")")?;
        }
        f.write_str(".")
    }
}

/// Constructors, function and predicate declarations.
///
/// Declarations are kept in textual order so duplicates stay visible to
/// [`validate_signature`]. Lookups return the first declaration.
///
/// Built-ins: the equality predicate `=` at `(u, u)`, the nullary `go`
/// predicate, and, when `int/0` is declared, integer literals and
/// `minus : (int, int) → int`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    kinds: Vec<KindDecl>,
    funcs: Vec<FuncDecl>,
    preds: Vec<PredDecl>,
    equality: PredDecl,
    go: PredDecl,
    minus: FuncDecl,
}

impl Default for Signature {
    fn default() -> Self {
        let u = Type::param("U");
        Signature {
            kinds: Vec::new(),
            funcs: Vec::new(),
            preds: Vec::new(),
            equality: PredDecl::new(EQ, vec![u.clone(), u]),
            go: PredDecl::new(GO, Vec::new()),
            minus: FuncDecl::new(MINUS, vec![Type::int(), Type::int()], Type::int()),
        }
    }
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn declare_kind(&mut self, name: &str, arity: usize) -> &mut Self {
        self.kinds.push(KindDecl {
            name: name.into(),
            arity,
        });
        self
    }

    pub fn declare_func(&mut self, decl: FuncDecl) -> &mut Self {
        self.funcs.push(decl);
        self
    }

    pub fn declare_pred(&mut self, decl: PredDecl) -> &mut Self {
        self.preds.push(decl);
        self
    }

    pub fn kinds(&self) -> &[KindDecl] {
        &self.kinds
    }

    pub fn funcs(&self) -> &[FuncDecl] {
        &self.funcs
    }

    pub fn preds(&self) -> &[PredDecl] {
        &self.preds
    }

    pub fn kind_arity(&self, name: &str) -> Option<usize> {
        self.kinds.iter().find(|k| &*k.name == name).map(|k| k.arity)
    }

    pub fn has_int(&self) -> bool {
        self.kind_arity(INT) == Some(0)
    }

    pub fn func(&self, name: &str) -> Option<&FuncDecl> {
        if name == MINUS && self.has_int() {
            return Some(&self.minus);
        }
        self.funcs.iter().find(|d| &*d.name == name)
    }

    pub fn pred(&self, name: &str) -> Option<&PredDecl> {
        if name == EQ {
            return Some(&self.equality);
        }
        self.preds
            .iter()
            .find(|d| &*d.name == name)
            .or_else(|| (name == GO).then_some(&self.go))
    }

    pub fn equality(&self) -> &PredDecl {
        &self.equality
    }

    /// Type of integer literals, if the signature has them.
    pub fn literal_type(&self) -> Option<Type> {
        self.has_int().then(Type::int)
    }

    /// Parameters occurring anywhere in the declarations.
    pub fn pars(&self) -> BTreeSet<Param> {
        let mut out = BTreeSet::new();
        for f in &self.funcs {
            out.extend(f.profile().tree_vars());
        }
        for p in &self.preds {
            out.extend(p.args.tree_vars());
        }
        out
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in &self.kinds {
            writeln!(f, "kind {}/{}.", k.name, k.arity)?;
        }
        for d in &self.funcs {
            writeln!(f, "{d}")?;
        }
        for d in &self.preds {
            writeln!(f, "{d}")?;
        }
        Ok(())
    }
}

/// Which declaration a signature finding is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum DeclRef {
    Kind(usize),
    Func(usize),
    Pred(usize),
}

fn check_type(sig: &Signature, t: &Type, context: &str, at: DeclRef, out: &mut Vec<(DeclRef, Finding)>) {
    if let Type::Con(k, args) = t {
        match sig.kind_arity(k) {
            None => out.push((
                at,
                Finding::new(
                    None,
                    Condition::UnknownConstructor,
                    format!("{context}: unknown type constructor `{k}`"),
                ),
            )),
            Some(n) if n != args.len() => out.push((
                at,
                Finding::new(
                    None,
                    Condition::ConstructorArity,
                    format!(
                        "{context}: `{k}` has arity {n} but is applied to {} argument(s)",
                        args.len()
                    ),
                ),
            )),
            Some(_) => {}
        }
        for a in args {
            check_type(sig, a, context, at, out);
        }
    }
}

/// Checks declarations: no duplicates, known constructors at the right
/// arity, and transparency of every function declaration.
pub fn validate_signature(sig: &Signature) -> CheckReport {
    CheckReport::from_findings(signature_findings(sig).into_iter().map(|(_, f)| f).collect())
}

pub(crate) fn signature_findings(sig: &Signature) -> Vec<(DeclRef, Finding)> {
    let mut findings = Vec::new();

    let mut seen: BTreeMap<(&str, &str), usize> = BTreeMap::new();
    let names = sig
        .kinds
        .iter()
        .enumerate()
        .map(|(i, k)| (DeclRef::Kind(i), ("kind", &*k.name)))
        .chain(
            sig.funcs
                .iter()
                .enumerate()
                .map(|(i, d)| (DeclRef::Func(i), ("func", &*d.name))),
        )
        .chain(
            sig.preds
                .iter()
                .enumerate()
                .map(|(i, d)| (DeclRef::Pred(i), ("pred", &*d.name))),
        );
    for (at, key) in names {
        let n = seen.entry(key).or_default();
        *n += 1;
        if *n == 2 {
            findings.push((
                at,
                Finding::new(
                    None,
                    Condition::DuplicateDeclaration,
                    format!("{} `{}` is declared more than once", key.0, key.1),
                ),
            ));
        }
    }

    for (i, d) in sig.funcs.iter().enumerate() {
        let at = DeclRef::Func(i);
        if &*d.name == MINUS {
            findings.push((
                at,
                Finding::new(
                    None,
                    Condition::DuplicateDeclaration,
                    format!("`{MINUS}` is built in and cannot be declared"),
                ),
            ));
        }
        let ctx = format!("function `{}`", d.name);
        for t in d.args.iter().chain(std::iter::once(&d.result)) {
            check_type(sig, t, &ctx, at, &mut findings);
        }
        if !d.is_transparent() {
            let missing: Vec<String> = d
                .args
                .tree_vars()
                .difference(&d.result.pars())
                .map(|p| p.to_string())
                .collect();
            findings.push((
                at,
                Finding::new(
                    None,
                    Condition::Transparency,
                    format!(
                        "function `{}`: parameter(s) {{{}}} of the argument types do not occur in the result type {}",
                        d.name,
                        missing.join(", "),
                        d.result
                    ),
                ),
            ));
        }
    }
    for (i, d) in sig.preds.iter().enumerate() {
        let at = DeclRef::Pred(i);
        if &*d.name == GO && !d.args.is_empty() {
            findings.push((
                at,
                Finding::new(
                    None,
                    Condition::ConstructorArity,
                    format!(
                        "`{GO}` is reserved for the nullary query wrapper, declared with arity {}",
                        d.args.len()
                    ),
                ),
            ));
        }
        let ctx = format!("predicate `{}`", d.name);
        for t in &d.args {
            check_type(sig, t, &ctx, at, &mut findings);
        }
    }
    findings
}
