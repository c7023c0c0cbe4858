use std::fmt;

use crate::syntax::{Atom, Clause, Query, Substitutable, Term, Type, TypeSubstitution, VariableTyping};

/// Typing rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    Var,
    Func,
    Atom,
    Query,
    Clause,
    Program,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Rule::Var => "Var",
            Rule::Func => "Func",
            Rule::Atom => "Atom",
            Rule::Query => "Query",
            Rule::Clause => "Clause",
            Rule::Program => "Program",
        };
        write!(f, "({name})")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Judgement {
    /// `U ⊢ t : τ`
    Term(Term, Type),
    /// `U ⊢ A Atom`
    Atom(Atom),
    /// `U ⊢ Q Query`
    Query(Query),
    /// `U ⊢ C Clause`, with the `U` used for this clause.
    Clause(Clause, VariableTyping),
    /// `⊢ P Program`
    Program,
}

impl fmt::Display for Judgement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Judgement::Term(t, ty) => write!(f, "U ⊢ {t} : {ty}"),
            Judgement::Atom(a) => write!(f, "U ⊢ {a} Atom"),
            Judgement::Query(q) => write!(f, "U ⊢ {q} Query"),
            Judgement::Clause(c, _) => write!(f, "U ⊢ {c} Clause"),
            Judgement::Program => f.write_str("⊢ P Program"),
        }
    }
}

/// A proof tree. `theta` instantiates the declared type of the symbol at
/// a (Func) or (Atom) node and is empty elsewhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JudgementProof {
    pub rule: Rule,
    pub judgement: Judgement,
    pub theta: TypeSubstitution,
    pub premises: Vec<JudgementProof>,
}

impl JudgementProof {
    pub(crate) fn new(
        rule: Rule,
        judgement: Judgement,
        theta: TypeSubstitution,
        premises: Vec<JudgementProof>,
    ) -> Self {
        JudgementProof {
            rule,
            judgement,
            theta,
            premises,
        }
    }

    pub(crate) fn leaf(rule: Rule, judgement: Judgement) -> Self {
        Self::new(rule, judgement, TypeSubstitution::new(), Vec::new())
    }

    /// Applies `s` to every type in the proof, including the ranges of Θ.
    pub(crate) fn apply_types(&self, s: &TypeSubstitution) -> JudgementProof {
        let judgement = match &self.judgement {
            Judgement::Term(t, ty) => Judgement::Term(t.clone(), ty.apply(s)),
            j => j.clone(),
        };
        let mut theta = TypeSubstitution::new();
        for (p, t) in self.theta.iter() {
            theta.insert(p.clone(), t.apply(s));
        }
        JudgementProof {
            rule: self.rule,
            judgement,
            theta,
            premises: self.premises.iter().map(|p| p.apply_types(s)).collect(),
        }
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(JudgementProof::size).sum::<usize>()
    }

    fn write_indented(&self, f: &mut fmt::Formatter<'_>, depth: usize) -> fmt::Result {
        write!(f, "{:width$}{} {}", "", self.rule, self.judgement, width = depth * 2)?;
        if !self.theta.is_empty() {
            write!(f, "  Θ = {}", self.theta)?;
        }
        for p in &self.premises {
            writeln!(f)?;
            p.write_indented(f, depth + 1)?;
        }
        Ok(())
    }
}

impl fmt::Display for JudgementProof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_indented(f, 0)
    }
}

/// The first sub-judgement, in top-down left-to-right order, whose rule
/// could not be applied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeError {
    pub rule: Rule,
    pub judgement: Box<Judgement>,
    /// The type the subject actually has at that point, for mismatches.
    pub found: Option<Type>,
    pub message: String,
}

impl TypeError {
    pub(crate) fn new(rule: Rule, judgement: Judgement, message: impl Into<String>) -> TypeError {
        TypeError {
            rule,
            judgement: Box::new(judgement),
            found: None,
            message: message.into(),
        }
    }

    pub(crate) fn mismatch(rule: Rule, judgement: Judgement, found: Type) -> TypeError {
        let message = match &judgement {
            Judgement::Term(t, expected) => format!("{t} has type {found}, which does not unify with {expected}"),
            _ => format!("found {found}"),
        };
        TypeError {
            rule,
            judgement: Box::new(judgement),
            found: Some(found),
            message,
        }
    }
}

impl fmt::Display for TypeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails for {}: {}", self.rule, self.judgement, self.message)
    }
}

impl std::error::Error for TypeError {}
