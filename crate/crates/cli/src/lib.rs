//! Corpus handling and the randomized verification harness behind the
//! `veerkit` binary.

pub mod corpus;
pub mod verify;
