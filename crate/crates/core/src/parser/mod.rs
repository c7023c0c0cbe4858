//! The `.tlp` surface language.
//!
//! ```text
//! kind list/1.  kind int/0.
//! func nil : list(U).
//! func cons(U, list(U)) : list(U).
//! pred app(list(U), list(U), list(U)).
//! partition app(h, h, h).
//! app([], Ys, Ys).
//! app([X|Xs], Ys, [X|Zs]) :- app(Xs, Ys, Zs).
//! ```
//!
//! Lists desugar to `cons`/`nil`, infix `=` to the built-in equality
//! predicate, and infix `-` to the built-in `minus`.

mod lexer;
mod render;

use std::fmt;

use lexer::{lex, Tok, Token};

pub use render::render;

use crate::syntax::{
    signature_findings, Atom, Clause, DeclRef, FuncDecl, Genericity, Ident, Param, PartitionDecl, PredDecl, Program,
    Query, Signature, Term, Type, Var, CONS, MINUS, NIL,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Location {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub at: Location,
    pub message: String,
}

impl Diagnostic {
    pub fn error(at: Location, message: impl Into<String>) -> Diagnostic {
        Diagnostic {
            severity: Severity::Error,
            at,
            message: message.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{}: {sev}: {}", self.at, self.message)
    }
}

/// Problems found while reading a program or query.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Diagnostics(pub Vec<Diagnostic>);

impl Diagnostics {
    pub fn errors(&self) -> impl Iterator<Item = &Diagnostic> {
        self.0.iter().filter(|d| d.severity == Severity::Error)
    }

    pub fn error_count(&self) -> usize {
        self.errors().count()
    }

    pub fn has_errors(&self) -> bool {
        self.error_count() > 0
    }
}

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl std::error::Error for Diagnostics {}

// ---------------------------------------------------------------------------
// Raw syntax

#[derive(Debug, Clone)]
enum RawTerm {
    Var(String, Location),
    Int(i64, Location),
    App(String, Vec<RawTerm>, Location),
}

#[derive(Debug, Clone)]
struct RawAtom {
    pred: String,
    args: Vec<RawTerm>,
    at: Location,
}

#[derive(Debug, Clone)]
struct RawClause {
    head: RawAtom,
    body: Vec<RawAtom>,
}

#[derive(Debug, Clone)]
enum RawType {
    Param(String),
    Con(String, Vec<RawType>),
}

enum Item {
    Kind(String, usize, Location),
    Func(String, Vec<RawType>, RawType, Location),
    Pred(String, Vec<RawType>, Location),
    Partition(String, Vec<Genericity>, Location),
    Clause(RawClause),
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    diags: Vec<Diagnostic>,
}

type PResult<T> = Result<T, ()>;

impl Parser {
    fn new(text: &str) -> Parser {
        let mut diags = Vec::new();
        let tokens = lex(text, &mut diags);
        Parser { tokens, pos: 0, diags }
    }

    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.tokens.len() - 1);
        &self.tokens[i].tok
    }

    fn here(&self) -> Location {
        self.tokens[self.pos].at
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos < self.tokens.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn fail<T>(&mut self, expected: &str) -> PResult<T> {
        let found = self.peek().describe();
        let at = self.here();
        self.diags
            .push(Diagnostic::error(at, format!("expected {expected}, found {found}")));
        Err(())
    }

    fn expect(&mut self, tok: Tok) -> PResult<()> {
        if self.eat(&tok) {
            Ok(())
        } else {
            self.fail(&tok.describe())
        }
    }

    fn lower(&mut self, what: &str) -> PResult<(String, Location)> {
        match self.peek().clone() {
            Tok::Lower(s) => {
                let at = self.here();
                self.bump();
                Ok((s, at))
            }
            _ => self.fail(what),
        }
    }

    /// Skips past the next `.` so parsing can resume at the next item.
    fn recover(&mut self) {
        loop {
            match self.peek() {
                Tok::Eof => return,
                Tok::Dot => {
                    self.bump();
                    return;
                }
                _ => {
                    self.bump();
                }
            }
        }
    }

    fn items(&mut self) -> Vec<Item> {
        let mut items = Vec::new();
        while self.peek() != &Tok::Eof {
            match self.item() {
                Ok(item) => items.push(item),
                Err(()) => self.recover(),
            }
        }
        items
    }

    fn item(&mut self) -> PResult<Item> {
        let keyword = match (self.peek(), self.peek_at(1)) {
            (Tok::Lower(k), Tok::Lower(_)) => Some(k.clone()),
            _ => None,
        };
        let at = self.here();
        match keyword.as_deref() {
            Some("kind") => {
                self.bump();
                let (name, _) = self.lower("constructor name")?;
                self.expect(Tok::Slash)?;
                let arity = match self.peek().clone() {
                    Tok::Int(n) if n >= 0 => {
                        self.bump();
                        n as usize
                    }
                    _ => return self.fail("arity"),
                };
                self.expect(Tok::Dot)?;
                Ok(Item::Kind(name, arity, at))
            }
            Some("func") => {
                self.bump();
                let (name, _) = self.lower("function name")?;
                let args = self.type_args()?;
                self.expect(Tok::Colon)?;
                let result = self.ty()?;
                self.expect(Tok::Dot)?;
                Ok(Item::Func(name, args, result, at))
            }
            Some("pred") => {
                self.bump();
                let (name, _) = self.lower("predicate name")?;
                let args = self.type_args()?;
                self.expect(Tok::Dot)?;
                Ok(Item::Pred(name, args, at))
            }
            Some("partition") => {
                self.bump();
                let (name, _) = self.lower("predicate name")?;
                let mut positions = Vec::new();
                if self.eat(&Tok::LParen) {
                    loop {
                        match self.peek().clone() {
                            Tok::Lower(s) if s == "h" => positions.push(Genericity::Head),
                            Tok::Lower(s) if s == "b" => positions.push(Genericity::Body),
                            _ => return self.fail("`h` or `b`"),
                        }
                        self.bump();
                        if !self.eat(&Tok::Comma) {
                            break;
                        }
                    }
                    self.expect(Tok::RParen)?;
                }
                self.expect(Tok::Dot)?;
                Ok(Item::Partition(name, positions, at))
            }
            _ => {
                let head = self.atom()?;
                let body = if self.eat(&Tok::Neck) { self.body()? } else { Vec::new() };
                self.expect(Tok::Dot)?;
                Ok(Item::Clause(RawClause { head, body }))
            }
        }
    }

    fn type_args(&mut self) -> PResult<Vec<RawType>> {
        let mut args = Vec::new();
        if self.eat(&Tok::LParen) {
            if self.eat(&Tok::RParen) {
                return Ok(args);
            }
            loop {
                args.push(self.ty()?);
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
            self.expect(Tok::RParen)?;
        }
        Ok(args)
    }

    fn ty(&mut self) -> PResult<RawType> {
        match self.peek().clone() {
            Tok::Upper(s) => {
                self.bump();
                Ok(RawType::Param(s))
            }
            Tok::Lower(s) => {
                self.bump();
                let args = self.type_args()?;
                Ok(RawType::Con(s, args))
            }
            _ => self.fail("a type"),
        }
    }

    fn body(&mut self) -> PResult<Vec<RawAtom>> {
        if self.peek() == &Tok::Lower("true".into()) && matches!(self.peek_at(1), Tok::Dot | Tok::Eof) {
            self.bump();
            return Ok(Vec::new());
        }
        let mut atoms = vec![self.atom()?];
        while self.eat(&Tok::Comma) {
            atoms.push(self.atom()?);
        }
        Ok(atoms)
    }

    fn atom(&mut self) -> PResult<RawAtom> {
        let at = self.here();
        let lhs = self.term()?;
        if self.eat(&Tok::Eq) {
            let rhs = self.term()?;
            return Ok(RawAtom {
                pred: "=".into(),
                args: vec![lhs, rhs],
                at,
            });
        }
        match lhs {
            RawTerm::App(pred, args, at) => Ok(RawAtom { pred, args, at }),
            RawTerm::Var(_, at) | RawTerm::Int(_, at) => {
                self.diags
                    .push(Diagnostic::error(at, "expected an atom, found a variable or number"));
                Err(())
            }
        }
    }

    fn term(&mut self) -> PResult<RawTerm> {
        let mut lhs = self.primary()?;
        while self.peek() == &Tok::Minus {
            let at = self.here();
            self.bump();
            let rhs = self.primary()?;
            lhs = RawTerm::App(MINUS.into(), vec![lhs, rhs], at);
        }
        Ok(lhs)
    }

    fn primary(&mut self) -> PResult<RawTerm> {
        let at = self.here();
        match self.peek().clone() {
            Tok::Upper(s) => {
                self.bump();
                Ok(RawTerm::Var(s, at))
            }
            Tok::Int(n) => {
                self.bump();
                Ok(RawTerm::Int(n, at))
            }
            Tok::Minus if matches!(self.peek_at(1), Tok::Int(_)) => {
                self.bump();
                let Tok::Int(n) = self.bump().tok else { unreachable!() };
                Ok(RawTerm::Int(-n, at))
            }
            Tok::Lower(f) => {
                self.bump();
                let mut args = Vec::new();
                if self.eat(&Tok::LParen) {
                    loop {
                        args.push(self.term()?);
                        if !self.eat(&Tok::Comma) {
                            break;
                        }
                    }
                    self.expect(Tok::RParen)?;
                }
                Ok(RawTerm::App(f, args, at))
            }
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Tok::LBrack => {
                self.bump();
                if self.eat(&Tok::RBrack) {
                    return Ok(RawTerm::App(NIL.into(), Vec::new(), at));
                }
                let mut items = vec![self.term()?];
                while self.eat(&Tok::Comma) {
                    items.push(self.term()?);
                }
                let tail = if self.eat(&Tok::Bar) {
                    self.term()?
                } else {
                    RawTerm::App(NIL.into(), Vec::new(), at)
                };
                self.expect(Tok::RBrack)?;
                Ok(items
                    .into_iter()
                    .rev()
                    .fold(tail, |tail, item| RawTerm::App(CONS.into(), vec![item, tail], at)))
            }
            _ => self.fail("a term"),
        }
    }
}

// ---------------------------------------------------------------------------
// Resolution against a signature

fn resolve_type(t: &RawType) -> Type {
    match t {
        RawType::Param(p) => Type::Param(Param(Ident::parse(p))),
        RawType::Con(k, args) => Type::Con(k.as_str().into(), args.iter().map(resolve_type).collect()),
    }
}

struct Resolver<'a> {
    sig: &'a Signature,
    diags: &'a mut Vec<Diagnostic>,
}

impl Resolver<'_> {
    fn term(&mut self, t: &RawTerm) -> Option<Term> {
        match t {
            RawTerm::Var(v, _) => Some(Term::Var(Var(Ident::parse(v)))),
            RawTerm::Int(n, at) => {
                if self.sig.has_int() {
                    Some(Term::Int(*n))
                } else {
                    self.diags.push(Diagnostic::error(
                        *at,
                        format!("integer literal `{n}` needs `kind int/0.` to be declared"),
                    ));
                    None
                }
            }
            RawTerm::App(f, args, at) => {
                let resolved: Vec<Option<Term>> = args.iter().map(|a| self.term(a)).collect();
                let ok = match self.sig.func(f) {
                    None if f == MINUS => {
                        self.diags
                            .push(Diagnostic::error(*at, "infix `-` needs `kind int/0.` to be declared"));
                        false
                    }
                    None if f == CONS || f == NIL => {
                        self.diags.push(Diagnostic::error(
                            *at,
                            format!("list syntax needs a declaration of function `{f}`"),
                        ));
                        false
                    }
                    None => {
                        self.diags
                            .push(Diagnostic::error(*at, format!("undeclared function `{f}`")));
                        false
                    }
                    Some(d) if d.args.len() != args.len() => {
                        self.diags.push(Diagnostic::error(
                            *at,
                            format!(
                                "function `{f}` has arity {} but is applied to {} argument(s)",
                                d.args.len(),
                                args.len()
                            ),
                        ));
                        false
                    }
                    Some(_) => true,
                };
                let args: Option<Vec<Term>> = resolved.into_iter().collect();
                match (ok, args) {
                    (true, Some(args)) => Some(Term::App(f.as_str().into(), args)),
                    _ => None,
                }
            }
        }
    }

    fn atom(&mut self, a: &RawAtom) -> Option<Atom> {
        let args: Vec<Option<Term>> = a.args.iter().map(|t| self.term(t)).collect();
        let ok = match self.sig.pred(&a.pred) {
            None => {
                self.diags
                    .push(Diagnostic::error(a.at, format!("undeclared predicate `{}`", a.pred)));
                false
            }
            Some(d) if d.args.len() != a.args.len() => {
                self.diags.push(Diagnostic::error(
                    a.at,
                    format!(
                        "predicate `{}` has arity {} but is applied to {} argument(s)",
                        a.pred,
                        d.args.len(),
                        a.args.len()
                    ),
                ));
                false
            }
            Some(_) => true,
        };
        let args: Option<Vec<Term>> = args.into_iter().collect();
        match (ok, args) {
            (true, Some(args)) => Some(Atom {
                pred: a.pred.as_str().into(),
                args,
            }),
            _ => None,
        }
    }

    fn atoms(&mut self, atoms: &[RawAtom]) -> Option<Vec<Atom>> {
        let resolved: Vec<Option<Atom>> = atoms.iter().map(|a| self.atom(a)).collect();
        resolved.into_iter().collect()
    }
}

fn finish<T>(value: T, diags: Vec<Diagnostic>) -> Result<T, Diagnostics> {
    if diags.iter().any(|d| d.severity == Severity::Error) {
        Err(Diagnostics(diags))
    } else {
        Ok(value)
    }
}

/// Parses a whole program: declarations, partition annotations, clauses.
pub fn parse_program(text: &str) -> Result<Program, Diagnostics> {
    let mut parser = Parser::new(text);
    let items = parser.items();
    let mut diags = parser.diags;

    let mut sig = Signature::new();
    let (mut kind_at, mut func_at, mut pred_at) = (Vec::new(), Vec::new(), Vec::new());
    for item in &items {
        match item {
            Item::Kind(name, arity, at) => {
                sig.declare_kind(name, *arity);
                kind_at.push(*at);
            }
            Item::Func(name, args, result, at) => {
                sig.declare_func(FuncDecl::new(
                    name,
                    args.iter().map(resolve_type).collect(),
                    resolve_type(result),
                ));
                func_at.push(*at);
            }
            Item::Pred(name, args, at) => {
                sig.declare_pred(PredDecl::new(name, args.iter().map(resolve_type).collect()));
                pred_at.push(*at);
            }
            _ => {}
        }
    }
    for (decl, finding) in signature_findings(&sig) {
        let at = match decl {
            DeclRef::Kind(i) => kind_at[i],
            DeclRef::Func(i) => func_at[i],
            DeclRef::Pred(i) => pred_at[i],
        };
        diags.push(Diagnostic::error(
            at,
            format!("{}: {}", finding.condition, finding.witness),
        ));
    }

    let mut clauses = Vec::new();
    let mut partitions = Vec::new();
    {
        let mut r = Resolver {
            sig: &sig,
            diags: &mut diags,
        };
        for item in &items {
            match item {
                Item::Clause(c) => {
                    let head = r.atom(&c.head);
                    let body = r.atoms(&c.body);
                    if let Some(h) = &head {
                        if h.is_equality() {
                            r.diags.push(Diagnostic::error(
                                c.head.at,
                                "the built-in `=` cannot be defined by clauses",
                            ));
                        }
                    }
                    if let (Some(head), Some(body)) = (head, body) {
                        clauses.push(Clause::new(head, body));
                    }
                }
                Item::Partition(pred, positions, at) => match r.sig.pred(pred) {
                    Some(d) if d.args.len() == positions.len() => partitions.push(PartitionDecl {
                        pred: pred.as_str().into(),
                        positions: positions.clone(),
                    }),
                    Some(d) => r.diags.push(Diagnostic::error(
                        *at,
                        format!(
                            "partition-arity: `{pred}` has arity {} but the partition lists {} position(s)",
                            d.args.len(),
                            positions.len()
                        ),
                    )),
                    None => r.diags.push(Diagnostic::error(
                        *at,
                        format!("partition for undeclared predicate `{pred}`"),
                    )),
                },
                _ => {}
            }
        }
    }
    finish(
        Program {
            signature: sig,
            clauses,
            partitions,
        },
        diags,
    )
}

/// Parses a query (atoms separated by commas, optional final `.`).
pub fn parse_query(text: &str, sig: &Signature) -> Result<Query, Diagnostics> {
    let mut parser = Parser::new(text);
    let raw = (|| {
        let atoms = if parser.peek() == &Tok::Lower("true".into()) && matches!(parser.peek_at(1), Tok::Dot | Tok::Eof) {
            parser.bump();
            Vec::new()
        } else {
            parser.body()?
        };
        parser.eat(&Tok::Dot);
        if parser.peek() != &Tok::Eof {
            return parser.fail("end of query");
        }
        Ok(atoms)
    })();
    let mut diags = std::mem::take(&mut parser.diags);
    let Ok(raw) = raw else {
        return Err(Diagnostics(diags));
    };
    let atoms = Resolver { sig, diags: &mut diags }.atoms(&raw);
    match atoms {
        Some(atoms) => finish(Query(atoms), diags),
        None => Err(Diagnostics(diags)),
    }
}

/// Parses a single clause against a signature.
pub fn parse_clause(text: &str, sig: &Signature) -> Result<Clause, Diagnostics> {
    let mut parser = Parser::new(text);
    let raw = (|| {
        let head = parser.atom()?;
        let body = if parser.eat(&Tok::Neck) {
            parser.body()?
        } else {
            Vec::new()
        };
        parser.eat(&Tok::Dot);
        if parser.peek() != &Tok::Eof {
            return parser.fail("end of clause");
        }
        Ok(RawClause { head, body })
    })();
    let mut diags = std::mem::take(&mut parser.diags);
    let Ok(raw) = raw else {
        return Err(Diagnostics(diags));
    };
    let mut r = Resolver { sig, diags: &mut diags };
    let head = r.atom(&raw.head);
    let body = r.atoms(&raw.body);
    match (head, body) {
        (Some(h), Some(b)) => finish(Clause::new(h, b), diags),
        _ => Err(Diagnostics(diags)),
    }
}

/// Parses a single term against a signature.
pub fn parse_term(text: &str, sig: &Signature) -> Result<Term, Diagnostics> {
    let mut parser = Parser::new(text);
    let raw = (|| {
        let t = parser.term()?;
        if parser.peek() != &Tok::Eof {
            return parser.fail("end of term");
        }
        Ok(t)
    })();
    let mut diags = std::mem::take(&mut parser.diags);
    let Ok(raw) = raw else {
        return Err(Diagnostics(diags));
    };
    match (Resolver { sig, diags: &mut diags }).term(&raw) {
        Some(t) => finish(t, diags),
        None => Err(Diagnostics(diags)),
    }
}

/// Parses a type. Constructors are not checked against a signature.
pub fn parse_type(text: &str) -> Result<Type, Diagnostics> {
    let mut parser = Parser::new(text);
    let raw = (|| {
        let t = parser.ty()?;
        if parser.peek() != &Tok::Eof {
            return parser.fail("end of type");
        }
        Ok(t)
    })();
    match raw {
        Ok(t) => finish(resolve_type(&t), parser.diags),
        Err(()) => Err(Diagnostics(parser.diags)),
    }
}
