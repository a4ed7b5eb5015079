//! Approval-based extensions of the D'Hondt method, comparison rules and
//! mechanical axiom checks.
//!
//! An [`Election`] holds a roster, a seat count and a profile of approval
//! ballots. [`support`] computes the max-min support of a candidate set,
//! [`rules`] turns that into winner sets, and [`axioms`] checks what the
//! rules guarantee.

pub mod axioms;
pub mod catalog;
pub mod format;
pub mod model;
pub mod rational;
pub mod render;
pub mod rules;
pub mod support;

pub use model::{BallotType, CandidateId, CandidateSet, ClosedListElection, Election, ElectionError};
pub use rational::Rational;
