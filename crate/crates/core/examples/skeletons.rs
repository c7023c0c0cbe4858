//! Enumerates skeletons, solves Eq(S) and builds most general derivation
//! trees and type skeletons.

use tlpc::corpus::load;
use tlpc::parser::parse_query;
use tlpc::srcheck::{is_proper_type_skeleton, type_skeleton_of};
use tlpc::trees::{
    enumerate_skeletons, eq_of_skeleton, frontier, is_proper_skeleton, most_general_derivation_tree, ClauseDb,
};

fn main() {
    let p = load("fig1");
    let q = parse_query("h(X)", &p.signature).unwrap();
    let db = ClauseDb::new(&p, Some(&q));
    for s in enumerate_skeletons(&db, 2) {
        println!("{s}");
        println!("  Eq(S) = {}", eq_of_skeleton(&s));
        match is_proper_skeleton(&s) {
            Ok(theta) => {
                let t = most_general_derivation_tree(&s).unwrap();
                println!("  proper, mgu {theta}, frontier {}", frontier(&t));
            }
            Err(e) => println!("  not proper: {e}"),
        }
        let ts = type_skeleton_of(&p.signature, &s).unwrap();
        println!("  type skeleton proper: {}", is_proper_type_skeleton(&ts).is_ok());
    }
}
