//! Test-side oracles, generators and property suites.
#![allow(dead_code)]

pub mod gen;
pub mod oracle;
pub mod props;
