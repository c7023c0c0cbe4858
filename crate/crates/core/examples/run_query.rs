//! SLD resolution with every derived query type checked.

use tlpc::corpus::load;
use tlpc::parser::parse_query;
use tlpc::srcheck::monitor_derivation;
use tlpc::trees::Selection;

fn main() {
    for (name, query, depth) in [
        ("fgs1", "fgs1(2,Y)", 12),
        ("append", "app(Xs,[],Zs), r(Xs)", 6),
        ("ex3", "p(X)", 10),
    ] {
        let p = load(name);
        let q = parse_query(query, &p.signature).unwrap();
        let out = monitor_derivation(&p, &q, depth, Selection::Leftmost).unwrap();
        println!("{name} ?- {q}  ({} derivations)", out.explored);
        for a in &out.answers {
            println!("  answer {a}");
        }
        println!("  monitor {}", out.report);
    }
}
