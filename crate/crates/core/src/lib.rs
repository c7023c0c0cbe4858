//! Prescriptively typed logic programs: parsing, type checking, SLD
//! resolution, skeletons, and static checks for subject reduction.

pub mod cli;
pub mod corpus;
pub mod parser;
pub mod report;
pub mod srcheck;
pub mod syntax;
pub mod trees;
pub mod typecheck;
pub mod unify;
