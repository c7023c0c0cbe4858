//! Bounded subject reduction: a counterexample for the r-chain program
//! and a pass for append.

use tlpc::corpus::load;
use tlpc::parser::parse_query;
use tlpc::srcheck::check_subject_reduction_bounded;

fn main() {
    for (name, query, depth) in [
        ("ex3", "p(X)", 4),
        ("append", "app(Xs,[],Zs), r(Xs)", 5),
        ("semigen", "p(X,Y)", 5),
    ] {
        let p = load(name);
        let q = parse_query(query, &p.signature).unwrap();
        let out = check_subject_reduction_bounded(&p, &q, depth).unwrap();
        println!(
            "{name} ?- {q}: {} proper skeletons\n{}",
            out.proper_skeletons, out.report
        );
        if let Some(cx) = out.counterexample {
            println!(
                "  skeleton {}\n  type skeleton {}\n  fails on {} at level {}",
                cx.skeleton, cx.type_skeleton, cx.equation, cx.level
            );
        }
    }
}
