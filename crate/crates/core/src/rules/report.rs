//! Rule output: winner sets, tie families and per-iteration traces.

use crate::model::{CandidateId, CandidateSet, Election};
use crate::rational::Rational;

use super::subsets::combinations;
use super::{Rule, TieMode};

/// Values computed in one round of a sequential rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IterationRecord {
    /// 1-based round number.
    pub iteration: usize,
    /// Value of every candidate still unelected at the start of the round.
    pub values: Vec<(CandidateId, Rational)>,
    pub chosen: CandidateId,
}

impl IterationRecord {
    pub fn value_of(&self, c: CandidateId) -> Option<&Rational> {
        self.values.iter().find(|(x, _)| *x == c).map(|(_, v)| v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WinnerReport {
    pub rule: Rule,
    pub seats: usize,
    /// Sorted; a single set in deterministic mode (the lexicographically
    /// least one when `all_tied`). Empty when `all_tied` is set in
    /// enumerated mode.
    pub winner_sets: Vec<CandidateSet>,
    /// Rounds of the deterministic branch (sequential rules only).
    pub trace: Vec<IterationRecord>,
    pub tie_mode: TieMode,
    /// Every size-`S` subset is a winner.
    pub all_tied: bool,
    /// The tie family was cut at the configured cap.
    pub truncated: bool,
    /// Optimal objective of the winning sets, for rules that optimise one.
    pub objective: Option<Rational>,
}

impl WinnerReport {
    /// The first winner set, if any was listed.
    pub fn winners(&self) -> Option<CandidateSet> {
        self.winner_sets.first().copied()
    }

    /// Every tied outcome, materialising the all-tied case.
    pub fn outcomes(&self, e: &Election) -> Vec<CandidateSet> {
        if self.all_tied && self.winner_sets.is_empty() {
            combinations(e.num_candidates(), self.seats).collect()
        } else {
            self.winner_sets.clone()
        }
    }

    pub fn is_tie(&self) -> bool {
        self.all_tied || self.winner_sets.len() > 1
    }
}
