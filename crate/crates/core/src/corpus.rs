//! Bundled example programs.

use crate::parser::parse_program;
use crate::syntax::Program;

pub const FIG1: &str = include_str!("../corpus/fig1.tlp");
pub const EX2: &str = include_str!("../corpus/ex2.tlp");
pub const EX3: &str = include_str!("../corpus/ex3.tlp");
pub const APPEND: &str = include_str!("../corpus/append.tlp");
pub const SEMIGEN: &str = include_str!("../corpus/semigen.tlp");
pub const R2: &str = include_str!("../corpus/r2.tlp");
pub const FGS1: &str = include_str!("../corpus/fgs1.tlp");
pub const FGS2: &str = include_str!("../corpus/fgs2.tlp");
pub const FGS3: &str = include_str!("../corpus/fgs3.tlp");
pub const GROUND: &str = include_str!("../corpus/ground.tlp");

/// `(name, source)` for every bundled program.
pub const ALL: &[(&str, &str)] = &[
    ("fig1", FIG1),
    ("ex2", EX2),
    ("ex3", EX3),
    ("append", APPEND),
    ("semigen", SEMIGEN),
    ("r2", R2),
    ("fgs1", FGS1),
    ("fgs2", FGS2),
    ("fgs3", FGS3),
    ("ground", GROUND),
];

/// Parses a bundled program by name.
///
/// Panics on an unknown name; the bundled sources always parse.
pub fn load(name: &str) -> Program {
    let (_, src) = ALL
        .iter()
        .find(|(n, _)| *n == name)
        .unwrap_or_else(|| panic!("no bundled program `{name}`"));
    parse_program(src).unwrap_or_else(|d| panic!("bundled program `{name}` does not parse:\n{d}"))
}
