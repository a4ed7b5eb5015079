//! Axioms about how a rule reacts to changes: house monotonicity,
//! population monotonicity and agreement with the divisor method on
//! closed-list profiles.

use std::collections::BTreeSet;

use crate::model::{BallotType, CandidateSet, Election};
use crate::rules::{divisor_apportionment, DivisorSequence, Rule, RuleConfig, WinnerReport};

use super::{Axiom, AxiomError, AxiomVerdict, Witness};

fn run(rule: Rule, e: &Election, cfg: &RuleConfig) -> Result<WinnerReport, AxiomError> {
    Ok(rule.run(e, cfg)?)
}

/// Runs the rule at `S` and `S + 1`; violated when no outcome at `S` is
/// contained in an outcome at `S + 1`.
pub fn check_house_monotonicity(rule: Rule, e: &Election, cfg: &RuleConfig) -> Result<AxiomVerdict, AxiomError> {
    if e.seats() >= e.num_candidates() {
        return Err(AxiomError::PreconditionFailed(
            "house monotonicity needs fewer seats than candidates".to_string(),
        ));
    }
    let bigger = e
        .with_seats(e.seats() + 1)
        .map_err(|err| AxiomError::PreconditionFailed(err.to_string()))?;
    let small = run(rule, e, cfg)?;
    let large = run(rule, &bigger, cfg)?;
    let smaller = small.outcomes(e);
    let larger = large.outcomes(&bigger);
    let nested = smaller
        .iter()
        .any(|w| larger.iter().any(|w2| w.is_subset(*w2)));
    if nested {
        return Ok(AxiomVerdict::satisfied(Axiom::HouseMonotonicity));
    }
    if small.truncated || large.truncated {
        return Ok(AxiomVerdict::inconclusive(
            Axiom::HouseMonotonicity,
            "tie family truncated",
        ));
    }
    Ok(AxiomVerdict::violated(
        Axiom::HouseMonotonicity,
        Witness::House { smaller, larger },
    ))
}

fn group_precondition(rule: Rule, e: &Election, group: CandidateSet, cfg: &RuleConfig) -> Result<Vec<CandidateSet>, AxiomError> {
    if group.is_empty() {
        return Err(AxiomError::PreconditionFailed("group is empty".to_string()));
    }
    let before = run(rule, e, cfg)?.outcomes(e);
    if !before.iter().any(|w| group.is_subset(*w)) {
        return Err(AxiomError::PreconditionFailed(
            "group is not contained in any winner set".to_string(),
        ));
    }
    Ok(before)
}

fn judge(
    rule: Rule,
    condition: u8,
    group: CandidateSet,
    moved: Option<BallotType>,
    modified: Election,
    before: Vec<CandidateSet>,
    cfg: &RuleConfig,
) -> Result<AxiomVerdict, AxiomError> {
    let report = run(rule, &modified, cfg)?;
    let after = report.outcomes(&modified);
    if after.iter().any(|w| w.intersects(group)) {
        return Ok(AxiomVerdict::satisfied(Axiom::PopulationMonotonicity));
    }
    if report.truncated {
        return Ok(AxiomVerdict::inconclusive(
            Axiom::PopulationMonotonicity,
            "tie family truncated",
        ));
    }
    Ok(AxiomVerdict::violated(
        Axiom::PopulationMonotonicity,
        Witness::Population {
            condition,
            group,
            moved,
            modified: Box::new(modified),
            before,
            after,
        },
    ))
}

/// One voter of type `moved` additionally approves `group`.
pub fn population_condition_one(
    rule: Rule,
    e: &Election,
    group: CandidateSet,
    moved: BallotType,
    cfg: &RuleConfig,
) -> Result<AxiomVerdict, AxiomError> {
    let before = group_precondition(rule, e, group, cfg)?;
    if moved.intersects(group) || e.count(moved) == 0 {
        return Err(AxiomError::PreconditionFailed(
            "moved ballot must be cast and disjoint from the group".to_string(),
        ));
    }
    let modified = e
        .adjusted(&[(moved, -1), (moved.union(group), 1)], 0)
        .map_err(|err| AxiomError::PreconditionFailed(err.to_string()))?;
    judge(rule, 1, group, Some(moved), modified, before, cfg)
}

/// A new voter approving exactly `group` joins.
pub fn population_condition_two(
    rule: Rule,
    e: &Election,
    group: CandidateSet,
    cfg: &RuleConfig,
) -> Result<AxiomVerdict, AxiomError> {
    let before = group_precondition(rule, e, group, cfg)?;
    let modified = e
        .adjusted(&[(group, 1)], 1)
        .map_err(|err| AxiomError::PreconditionFailed(err.to_string()))?;
    judge(rule, 2, group, None, modified, before, cfg)
}

/// Both population-monotonicity constructions for every non-empty group
/// inside some winner set and every eligible cast ballot type. Reports the
/// first violation found.
pub fn check_population_monotonicity(rule: Rule, e: &Election, cfg: &RuleConfig) -> Result<AxiomVerdict, AxiomError> {
    let outcomes = run(rule, e, cfg)?.outcomes(e);
    let groups: BTreeSet<CandidateSet> = outcomes
        .iter()
        .flat_map(|w| w.subsets().filter(|g| !g.is_empty()))
        .collect();
    let mut open = None;
    for &group in &groups {
        let mut verdicts = vec![population_condition_two(rule, e, group, cfg)?];
        for &(moved, _) in e.profile() {
            if !moved.intersects(group) {
                verdicts.push(population_condition_one(rule, e, group, moved, cfg)?);
            }
        }
        for v in verdicts {
            match v.status {
                super::Status::Violated => return Ok(v),
                super::Status::Inconclusive(_) => open = Some(v),
                super::Status::Satisfied => {}
            }
        }
    }
    Ok(open.unwrap_or_else(|| AxiomVerdict::satisfied(Axiom::PopulationMonotonicity)))
}

/// Some tied outcome gives every list the seat count of the D'Hondt method.
pub fn check_closed_list_equivalence(rule: Rule, e: &Election, cfg: &RuleConfig) -> Result<AxiomVerdict, AxiomError> {
    let cle = e.as_closed_list().ok_or(AxiomError::NotClosedListShaped)?;
    let expected = divisor_apportionment(&cle, &DivisorSequence::DHondt).seats;
    let report = run(rule, e, cfg)?;
    let observed: Vec<Vec<usize>> = report
        .outcomes(e)
        .into_iter()
        .map(|w| cle.seats_per_list(w))
        .collect();
    if observed.contains(&expected) {
        return Ok(AxiomVerdict::satisfied(Axiom::ClosedList));
    }
    if report.truncated {
        return Ok(AxiomVerdict::inconclusive(Axiom::ClosedList, "tie family truncated"));
    }
    Ok(AxiomVerdict::violated(
        Axiom::ClosedList,
        Witness::ClosedList { expected, observed },
    ))
}
