//! Concrete syntax for terms, atoms, queries and clauses.
//!
//! Output re-parses to the same object: lists print with brackets, `minus`
//! as infix `-`, and equality atoms as `s = t`.

use std::fmt;

use crate::syntax::{Atom, Clause, Query, Term, CONS, MINUS, NIL};

/// Renders any displayable object; a convenience for `to_string`.
pub fn render<T: fmt::Display + ?Sized>(x: &T) -> String {
    x.to_string()
}

fn write_args(f: &mut fmt::Formatter<'_>, args: &[Term]) -> fmt::Result {
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{a}")?;
    }
    Ok(())
}

fn is_cons(t: &Term) -> bool {
    matches!(t, Term::App(f, args) if &**f == CONS && args.len() == 2)
}

fn is_nil(t: &Term) -> bool {
    matches!(t, Term::App(f, args) if &**f == NIL && args.is_empty())
}

fn is_minus(t: &Term) -> bool {
    matches!(t, Term::App(f, args) if &**f == MINUS && args.len() == 2)
}

fn write_list(f: &mut fmt::Formatter<'_>, t: &Term) -> fmt::Result {
    f.write_str("[")?;
    let mut cur = t;
    let mut first = true;
    while is_cons(cur) {
        let args = match cur {
            Term::App(_, args) => args,
            _ => unreachable!(),
        };
        if !first {
            f.write_str(",")?;
        }
        first = false;
        write!(f, "{}", args[0])?;
        cur = &args[1];
    }
    if !is_nil(cur) {
        write!(f, "|{cur}")?;
    }
    f.write_str("]")
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::Int(n) => write!(f, "{n}"),
            _ if is_nil(self) => f.write_str("[]"),
            _ if is_cons(self) => write_list(f, self),
            Term::App(_, args) if is_minus(self) => {
                // `-` is left-associative; a right operand that is itself a
                // subtraction or a negative literal needs parentheses.
                write!(f, "{}-", args[0])?;
                match &args[1] {
                    r @ Term::Int(n) if *n < 0 => write!(f, "({r})"),
                    r if is_minus(r) => write!(f, "({r})"),
                    r => write!(f, "{r}"),
                }
            }
            Term::App(g, args) if args.is_empty() => write!(f, "{g}"),
            Term::App(g, args) => {
                write!(f, "{g}(")?;
                write_args(f, args)?;
                f.write_str(")")
            }
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_equality() && self.args.len() == 2 {
            return write!(f, "{} = {}", self.args[0], self.args[1]);
        }
        write!(f, "{}", self.pred)?;
        if !self.args.is_empty() {
            f.write_str("(")?;
            write_args(f, &self.args)?;
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn write_atoms(f: &mut fmt::Formatter<'_>, atoms: &[Atom]) -> fmt::Result {
    if atoms.is_empty() {
        return f.write_str("true");
    }
    for (i, a) in atoms.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{a}")?;
    }
    Ok(())
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_atoms(f, &self.0)
    }
}

impl fmt::Debug for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.head)?;
        if !self.body.is_empty() {
            f.write_str(" :- ")?;
            write_atoms(f, &self.body)?;
        }
        f.write_str(".")
    }
}

impl fmt::Debug for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
