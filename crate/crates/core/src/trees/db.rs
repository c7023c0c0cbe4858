use crate::syntax::{Atom, Clause, NameSource, Program, Query, Signature, Substitutable, Term, Var, EQ};

/// The clauses resolution and skeletons draw from.
///
/// Indices `0..n` are the program's clauses in textual order, followed by
/// the built-in `X = X` clause and, when a query is given, the wrapper
/// `go ← Q`. The wrapper only ever labels a root.
#[derive(Debug, Clone)]
pub struct ClauseDb {
    signature: Signature,
    clauses: Vec<Clause>,
    user: usize,
    eq: usize,
    go: Option<usize>,
    floor: u32,
    uses_eq: bool,
}

impl ClauseDb {
    pub fn new(program: &Program, query: Option<&Query>) -> ClauseDb {
        let mut clauses = program.clauses.clone();
        let user = clauses.len();
        let x = Term::var("X");
        clauses.push(Clause::fact(Atom::new(EQ, vec![x.clone(), x])));
        let eq = user;
        let go = query.map(|q| {
            clauses.push(q.wrapper());
            clauses.len() - 1
        });
        let floor = program.name_source(query).high_water();
        let uses_eq = program.uses_equality();
        ClauseDb {
            signature: program.signature.clone(),
            clauses,
            user,
            eq,
            go,
            floor,
            uses_eq,
        }
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn clause(&self, index: usize) -> &Clause {
        &self.clauses[index]
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    /// Number of clauses written in the program.
    pub fn user_count(&self) -> usize {
        self.user
    }

    pub fn eq_index(&self) -> usize {
        self.eq
    }

    pub fn go_index(&self) -> Option<usize> {
        self.go
    }

    pub fn is_builtin(&self, index: usize) -> bool {
        index >= self.user
    }

    /// Whether the program text contains `=` atoms.
    pub fn program_uses_equality(&self) -> bool {
        self.uses_eq
    }

    /// The wrapper's query, if any.
    pub fn query(&self) -> Option<Query> {
        self.go.map(|g| Query(self.clauses[g].body.clone()))
    }

    /// Clauses whose head can resolve an atom of `pred`, in order. The
    /// wrapper is excluded.
    pub fn candidates<'a>(&'a self, pred: &'a str) -> impl Iterator<Item = usize> + 'a {
        (0..self.clauses.len()).filter(move |&i| Some(i) != self.go && &*self.clauses[i].head.pred == pred)
    }

    /// Clauses that define the program's own predicates, plus `X = X`
    /// when the program uses equality.
    pub fn program_clauses(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.user).chain((self.uses_eq).then_some(self.eq))
    }

    /// A name source above every index in the program and query.
    pub fn names(&self) -> NameSource {
        NameSource::above(self.floor)
    }

    /// True for the reserved wrapper head.
    pub fn is_go(&self, index: usize) -> bool {
        Some(index) == self.go
    }

    /// Variables of the query, in order of first occurrence.
    pub fn query_vars(&self) -> Vec<Var> {
        self.query().map(|q| q.tree_vars_ordered()).unwrap_or_default()
    }
}
