use std::collections::BTreeSet;

use super::EquationSet;
use crate::syntax::{is_instance, FirstOrder};

/// Outcome of the sufficient unifiability test. `Unknown` never means
/// the equations are not unifiable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderedVerdict {
    Guaranteed,
    Unknown,
}

fn vars_of<T: FirstOrder>(t: &T) -> BTreeSet<T::Var> {
    let mut out = BTreeSet::new();
    t.for_each_var(&mut |v| {
        out.insert(v.clone());
    });
    out
}

/// `Guaranteed` when
/// 1. the right-hand sides are pairwise variable-disjoint,
/// 2. the relation `i → j` iff `vars(rᵢ) ∩ vars(lⱼ) ≠ ∅` has no cycle
///    (a shared variable between `rᵢ` and `lᵢ` is a cycle), and
/// 3. every `lᵢ` is an instance of `rᵢ`.
pub fn ordered_unifiable<T: FirstOrder>(eqs: &EquationSet<T>) -> OrderedVerdict {
    let lv: Vec<BTreeSet<T::Var>> = eqs.iter().map(|e| vars_of(&e.lhs)).collect();
    let rv: Vec<BTreeSet<T::Var>> = eqs.iter().map(|e| vars_of(&e.rhs)).collect();
    let n = eqs.len();

    for i in 0..n {
        for j in i + 1..n {
            if !rv[i].is_disjoint(&rv[j]) {
                return OrderedVerdict::Unknown;
            }
        }
    }
    if eqs.iter().any(|e| is_instance(&e.lhs, &e.rhs).is_none()) {
        return OrderedVerdict::Unknown;
    }

    let succ: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| !rv[i].is_disjoint(&lv[j])).collect())
        .collect();
    // Iterative three-colour DFS for a directed cycle.
    let mut colour = vec![0u8; n];
    for start in 0..n {
        if colour[start] != 0 {
            continue;
        }
        let mut stack = vec![(start, 0usize)];
        colour[start] = 1;
        while let Some(&mut (node, ref mut next)) = stack.last_mut() {
            if *next < succ[node].len() {
                let m = succ[node][*next];
                *next += 1;
                match colour[m] {
                    0 => {
                        colour[m] = 1;
                        stack.push((m, 0));
                    }
                    1 => return OrderedVerdict::Unknown,
                    _ => {}
                }
            } else {
                colour[node] = 2;
                stack.pop();
            }
        }
    }
    OrderedVerdict::Guaranteed
}
