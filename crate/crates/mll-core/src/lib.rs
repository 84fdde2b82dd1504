//! Unit-free multiplicative linear logic in two presentations: a one-sided
//! sequent calculus and a deep inference system, with translations between
//! them, occurrence counting, and a coherence-space semantics.

pub mod counting;
pub mod di;
pub mod fuzz;
pub mod metrics;
pub mod sc;
pub mod semantics;
pub mod syntax;
pub mod translate;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] syntax::ParseError),
    #[error(transparent)]
    Path(#[from] syntax::PathError),
    #[error(transparent)]
    Sc(#[from] sc::ScError),
    #[error(transparent)]
    Di(#[from] di::DiError),
    #[error(transparent)]
    Sem(#[from] semantics::SemError),
    #[error(transparent)]
    Fuzz(#[from] fuzz::FuzzError),
}
