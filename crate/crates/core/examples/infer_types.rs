//! Most general clause types, with and without a fixed variable typing.

use tlpc::corpus::load;
use tlpc::parser::parse_type;
use tlpc::syntax::{Var, VariableTyping};
use tlpc::typecheck::{clause_typing, most_general_type_wrt};

fn main() {
    for name in ["ex2", "append", "ex3"] {
        let p = load(name);
        println!("{name}:");
        for c in &p.clauses {
            let ct = clause_typing(&p.signature, c).expect("corpus clauses are typable");
            println!("  {c}\n    {}  {}", ct.tuple(), ct.typing);
        }
    }

    let p = load("ex2");
    let u = VariableTyping::from_pairs([(Var::named("X"), parse_type("list(int)").unwrap())]);
    let wrt = most_general_type_wrt(&p.signature, &u, &p.clauses[0]).unwrap();
    println!("ex2 with {u}: {wrt}");
}
