//! Mechanical checks of proportionality and monotonicity axioms, on a fixed
//! committee or on a rule's output, plus a seeded counterexample search.

mod committee;
mod replay;
mod rule_level;
pub mod search;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::model::{BallotType, CandidateSet, Election};
use crate::rational::Rational;
use crate::rules::{Rule, RuleConfig, RuleError};

pub use committee::{check_ejr, check_jr, check_lower_quota};
pub use replay::replay;
pub use rule_level::{
    check_closed_list_equivalence, check_house_monotonicity, check_population_monotonicity,
    population_condition_one, population_condition_two,
};
pub use search::{search_counterexample, Counterexample, ElectionGenerator, GeneratorBounds};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    HouseMonotonicity,
    LowerQuota,
    PopulationMonotonicity,
    Jr,
    Ejr,
    ClosedList,
}

impl Axiom {
    pub const ALL: [Axiom; 6] = [
        Axiom::HouseMonotonicity,
        Axiom::LowerQuota,
        Axiom::PopulationMonotonicity,
        Axiom::Jr,
        Axiom::Ejr,
        Axiom::ClosedList,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::HouseMonotonicity => "house-mono",
            Axiom::LowerQuota => "lower-quota",
            Axiom::PopulationMonotonicity => "pop-mono",
            Axiom::Jr => "jr",
            Axiom::Ejr => "ejr",
            Axiom::ClosedList => "closed-list",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown axiom `{0}`")]
pub struct UnknownAxiom(pub String);

impl FromStr for Axiom {
    type Err = UnknownAxiom;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.to_ascii_lowercase();
        Axiom::ALL
            .into_iter()
            .find(|a| a.name() == lower)
            .ok_or_else(|| UnknownAxiom(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Satisfied,
    Violated,
    /// A cap stopped the check before it could decide.
    Inconclusive(String),
}

impl Status {
    pub fn is_violated(&self) -> bool {
        matches!(self, Status::Violated)
    }

    pub fn is_satisfied(&self) -> bool {
        matches!(self, Status::Satisfied)
    }

    pub fn label(&self) -> &'static str {
        match self {
            Status::Satisfied => "satisfied",
            Status::Violated => "violated",
            Status::Inconclusive(_) => "inconclusive",
        }
    }
}

/// Evidence attached to a violation, enough to re-check it by substitution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// Voters who all approve `candidate` yet none of the committee.
    Jr {
        committee: CandidateSet,
        candidate: crate::model::CandidateId,
        ballots: Vec<BallotType>,
        mass: u64,
    },
    /// Voters sharing `common` (`|common| = ell`), each with fewer than
    /// `ell` approved winners.
    Ejr {
        committee: CandidateSet,
        ell: usize,
        common: CandidateSet,
        ballots: Vec<BallotType>,
        mass: u64,
    },
    /// A group whose quota `q` entitles it to `floor` winners from its
    /// ballots, which hold only `represented`.
    LowerQuota {
        committee: CandidateSet,
        common: CandidateSet,
        ballots: Vec<BallotType>,
        quota: Rational,
        floor: u64,
        represented: usize,
    },
    /// No committee at `S` is contained in one at `S + 1`.
    House {
        smaller: Vec<CandidateSet>,
        larger: Vec<CandidateSet>,
    },
    /// The favoured group lost every seat after gaining approvals.
    Population {
        /// 1: an existing voter adds `group`; 2: a new voter approves `group`.
        condition: u8,
        group: CandidateSet,
        moved: Option<BallotType>,
        modified: Box<Election>,
        before: Vec<CandidateSet>,
        after: Vec<CandidateSet>,
    },
    /// No outcome reproduces the divisor-method seat vector.
    ClosedList {
        expected: Vec<usize>,
        observed: Vec<Vec<usize>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomVerdict {
    pub axiom: Axiom,
    pub status: Status,
    pub witness: Option<Witness>,
    /// Status per tied outcome, for rule-level committee checks.
    pub per_outcome: Vec<(CandidateSet, Status)>,
}

impl AxiomVerdict {
    pub(crate) fn satisfied(axiom: Axiom) -> Self {
        AxiomVerdict {
            axiom,
            status: Status::Satisfied,
            witness: None,
            per_outcome: Vec::new(),
        }
    }

    pub(crate) fn violated(axiom: Axiom, witness: Witness) -> Self {
        AxiomVerdict {
            axiom,
            status: Status::Violated,
            witness: Some(witness),
            per_outcome: Vec::new(),
        }
    }

    pub(crate) fn inconclusive(axiom: Axiom, reason: impl Into<String>) -> Self {
        AxiomVerdict {
            axiom,
            status: Status::Inconclusive(reason.into()),
            witness: None,
            per_outcome: Vec::new(),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AxiomError {
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("rule cannot run: {0}")]
    RuleCannotRun(#[from] RuleError),
    #[error("election is not shaped like a closed-list election")]
    NotClosedListShaped,
    #[error("committee has {got} members but {expected} seats are filled")]
    SeatsMismatch { expected: usize, got: usize },
}

/// Enumeration limits for the exponential checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCaps {
    /// Most distinct non-empty cast ballot types the lower-quota check scans.
    pub max_ballot_types: usize,
    /// Most candidate subsets the EJR check scans.
    pub ejr_subsets: u64,
    /// Largest cohesion level EJR considers.
    pub max_ell: usize,
}

impl Default for AxiomCaps {
    fn default() -> Self {
        AxiomCaps {
            max_ballot_types: 15,
            ejr_subsets: 1_000_000,
            max_ell: usize::MAX,
        }
    }
}

/// Checks a committee axiom on every tied outcome of `rule`. The rule is
/// judged violating only when every outcome violates.
fn check_rule_committee(
    rule: Rule,
    axiom: Axiom,
    e: &Election,
    cfg: &RuleConfig,
    caps: &AxiomCaps,
) -> Result<AxiomVerdict, AxiomError> {
    let report = rule.run(e, cfg)?;
    let mut per_outcome = Vec::new();
    let mut first_witness = None;
    let mut any_satisfied = false;
    let mut any_open = None;
    for w in report.outcomes(e) {
        let v = match axiom {
            Axiom::Jr => check_jr(e, w)?,
            Axiom::Ejr => check_ejr(e, w, caps)?,
            Axiom::LowerQuota => check_lower_quota(e, w, caps)?,
            _ => unreachable!("committee axioms only"),
        };
        match &v.status {
            Status::Satisfied => any_satisfied = true,
            Status::Violated => {
                if first_witness.is_none() {
                    first_witness = v.witness.clone();
                }
            }
            Status::Inconclusive(r) => any_open = Some(r.clone()),
        }
        per_outcome.push((w, v.status));
    }
    let status = if any_satisfied {
        Status::Satisfied
    } else if let Some(r) = any_open {
        Status::Inconclusive(r)
    } else if report.truncated {
        Status::Inconclusive("tie family truncated".to_string())
    } else {
        Status::Violated
    };
    Ok(AxiomVerdict {
        axiom,
        witness: if status.is_violated() { first_witness } else { None },
        status,
        per_outcome,
    })
}

/// Runs any axiom check for `rule` on `e`.
pub fn check_rule(
    rule: Rule,
    axiom: Axiom,
    e: &Election,
    cfg: &RuleConfig,
    caps: &AxiomCaps,
) -> Result<AxiomVerdict, AxiomError> {
    match axiom {
        Axiom::Jr | Axiom::Ejr | Axiom::LowerQuota => check_rule_committee(rule, axiom, e, cfg, caps),
        Axiom::HouseMonotonicity => check_house_monotonicity(rule, e, cfg),
        Axiom::PopulationMonotonicity => check_population_monotonicity(rule, e, cfg),
        Axiom::ClosedList => check_closed_list_equivalence(rule, e, cfg),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::*;

    #[test]
    fn names_round_trip() {
        for a in Axiom::ALL {
            assert_eq!(a.name().parse::<Axiom>().unwrap(), a);
        }
        assert!("monotone".parse::<Axiom>().is_err());
    }

    #[test]
    fn monroe_rules_violate_lower_quota() {
        let h = sigma_h();
        let cfg = RuleConfig::enumerated();
        for rule in [Rule::Mha, Rule::Mra] {
            let v = check_rule(rule, Axiom::LowerQuota, &h, &cfg, &AxiomCaps::default()).unwrap();
            assert!(v.status.is_violated());
            assert_eq!(v.per_outcome.len(), 4);
            match v.witness.unwrap() {
                Witness::LowerQuota { floor, quota, .. } => {
                    assert_eq!(floor, 4);
                    assert_eq!(quota, crate::rational::ratio(21, 5));
                }
                other => panic!("unexpected witness {other:?}"),
            }
        }
    }

    #[test]
    fn odh_keeps_lower_quota_on_sigma_c() {
        let c = sigma_c();
        let v = check_rule(Rule::Odh, Axiom::LowerQuota, &c, &RuleConfig::enumerated(), &AxiomCaps::default())
            .unwrap();
        assert!(v.status.is_satisfied());
    }
}
