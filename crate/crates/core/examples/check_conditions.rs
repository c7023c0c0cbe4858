//! Static sufficient conditions for subject reduction on every bundled
//! program: the head condition and a semi-generic partition.

use tlpc::corpus::{load, ALL};
use tlpc::srcheck::{check_head_condition, nearest_partition, search_partition};

fn main() {
    for (name, _) in ALL {
        let p = load(name);
        let hc = check_head_condition(&p).unwrap();
        println!("{name}: head condition {}", if hc.passed() { "pass" } else { "fail" });
        match search_partition(&p, &[]).unwrap() {
            Some(part) => println!("  semi-generic with {part}"),
            None => {
                let (part, report) = nearest_partition(&p, &[]).unwrap();
                println!("  no partition; nearest {part}:\n{report}");
            }
        }
    }
}
