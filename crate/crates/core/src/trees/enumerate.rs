use std::collections::HashMap;
use std::rc::Rc;

use super::{ClauseDb, SkLabel, Skeleton, Tree};
use crate::syntax::{NameSource, Symbol};

/// Clause-index shape of a skeleton, before renaming.
#[derive(Debug)]
struct Shape {
    index: usize,
    children: Vec<Option<Rc<Shape>>>,
}

/// Every way to fill one child slot; `None` is ⊥.
type Options = Rc<Vec<Option<Rc<Shape>>>>;

struct Gen<'a> {
    db: &'a ClauseDb,
    depth: usize,
    complete_only: bool,
    memo: HashMap<(Symbol, usize), Options>,
}

impl Gen<'_> {
    /// All options for a child resolving an atom of `pred` at `level`.
    fn options(&mut self, pred: &Symbol, level: usize) -> Options {
        if let Some(hit) = self.memo.get(&(pred.clone(), level)) {
            return hit.clone();
        }
        let mut out = Vec::new();
        if !self.complete_only {
            out.push(None);
        }
        if level <= self.depth {
            let candidates: Vec<usize> = self.db.candidates(pred).collect();
            for index in candidates {
                for s in self.shapes_of(index, level) {
                    out.push(Some(s));
                }
            }
        }
        let out = Rc::new(out);
        self.memo.insert((pred.clone(), level), out.clone());
        out
    }

    /// All shapes rooted at clause `index` placed at `level`.
    fn shapes_of(&mut self, index: usize, level: usize) -> Vec<Rc<Shape>> {
        let body: Vec<Symbol> = self.db.clause(index).body.iter().map(|a| a.pred.clone()).collect();
        let per_child: Vec<Rc<Vec<Option<Rc<Shape>>>>> = body.iter().map(|p| self.options(p, level + 1)).collect();
        if per_child.iter().any(|o| o.is_empty()) {
            return Vec::new();
        }
        // Cartesian product, first child varying slowest.
        let mut out = Vec::new();
        let mut cursor = vec![0usize; per_child.len()];
        loop {
            out.push(Rc::new(Shape {
                index,
                children: cursor.iter().zip(&per_child).map(|(&i, o)| o[i].clone()).collect(),
            }));
            let mut k = per_child.len();
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                cursor[k] += 1;
                if cursor[k] < per_child[k].len() {
                    break;
                }
                cursor[k] = 0;
            }
        }
    }
}

fn height(s: &Shape) -> usize {
    1 + s
        .children
        .iter()
        .map(|c| c.as_ref().map_or(0, |c| height(c)))
        .max()
        .unwrap_or(0)
}

fn materialize(db: &ClauseDb, s: &Shape, names: &mut NameSource, rename: bool) -> Skeleton {
    let clause = if rename {
        db.clause(s.index).rename_apart(names)
    } else {
        db.clause(s.index).clone()
    };
    let children = s
        .children
        .iter()
        .map(|c| match c {
            None => Tree::Bottom,
            Some(c) => materialize(db, c, names, true),
        })
        .collect();
    Tree::Node(SkLabel { index: s.index, clause }, children)
}

/// Options for bounded skeleton enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SkeletonConfig {
    /// Complete nodes appear at levels `0..=depth`; the root is level 0.
    pub depth: usize,
    /// Only proof trees (no ⊥).
    pub complete_only: bool,
}

/// Skeletons rooted at clause `root`, sorted by height (stable, so
/// earlier generation order breaks ties).
///
/// Within a level, ⊥ comes first, then clauses in textual order. The root
/// keeps its variable names when it is the query wrapper; every other
/// node is a fresh copy.
pub fn enumerate_rooted(db: &ClauseDb, root: usize, cfg: SkeletonConfig) -> Vec<Skeleton> {
    let mut g = Gen {
        db,
        depth: cfg.depth,
        complete_only: cfg.complete_only,
        memo: HashMap::new(),
    };
    let mut shapes = g.shapes_of(root, 0);
    shapes.sort_by_key(|s| height(s));
    let mut names = db.names();
    let rename_root = !db.is_go(root);
    shapes
        .iter()
        .map(|s| materialize(db, s, &mut names, rename_root))
        .collect()
}

/// All skeletons for the program plus `go ← Q` with head `go`.
///
/// Panics if the database was built without a query.
pub fn enumerate_skeletons(db: &ClauseDb, depth: usize) -> Vec<Skeleton> {
    let root = db.go_index().expect("clause database has a query");
    enumerate_rooted(
        db,
        root,
        SkeletonConfig {
            depth,
            complete_only: false,
        },
    )
}

/// All proof-tree skeletons of the program's own clauses up to `depth`.
pub fn enumerate_proof_skeletons(db: &ClauseDb, depth: usize) -> Vec<Skeleton> {
    let cfg = SkeletonConfig {
        depth,
        complete_only: true,
    };
    let roots: Vec<usize> = db.program_clauses().collect();
    let mut out = Vec::new();
    for root in roots {
        out.extend(enumerate_rooted(db, root, cfg));
    }
    out
}
