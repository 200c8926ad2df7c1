//! Oriented link diagrams, Seifert graphs, exact signatures and
//! quasipositivity certificates for alternating links.

pub mod diagram;
pub mod braid;
pub mod corpus;
pub mod fixtures;
pub mod invariants;
pub mod linalg;
pub mod quasipos;
pub mod seifert;
pub mod table;
pub mod two_bridge;
pub mod vogel;
