use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::model::{BallotType, CandidateId, CandidateSet, Election};
use crate::rational::Rational;

/// A support distribution function `F` for a target set `A`: how much of each
/// ballot type's weight goes to each member of `A`. Absent entries are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportDistribution {
    target: CandidateSet,
    shares: BTreeMap<(BallotType, CandidateId), Rational>,
}

impl SupportDistribution {
    pub fn new(target: CandidateSet) -> Self {
        SupportDistribution {
            target,
            shares: BTreeMap::new(),
        }
    }

    pub fn target(&self) -> CandidateSet {
        self.target
    }

    pub fn share(&self, ballot: BallotType, c: CandidateId) -> Rational {
        self.shares
            .get(&(ballot, c))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Sets `F(ballot, c)`. Zero removes the entry.
    pub fn set(&mut self, ballot: BallotType, c: CandidateId, value: Rational) {
        if value.is_zero() {
            self.shares.remove(&(ballot, c));
        } else {
            self.shares.insert((ballot, c), value);
        }
    }

    pub fn add(&mut self, ballot: BallotType, c: CandidateId, delta: &Rational) {
        let v = self.share(ballot, c) + delta;
        self.set(ballot, c, v);
    }

    /// Non-zero entries in `(ballot, candidate)` order.
    pub fn entries(&self) -> impl Iterator<Item = (BallotType, CandidateId, &Rational)> {
        self.shares.iter().map(|(&(y, c), v)| (y, c, v))
    }

    /// `Supp_F`: total share routed to each member of the target.
    pub fn support_vector(&self) -> SupportVector {
        let mut totals: BTreeMap<CandidateId, Rational> =
            self.target.iter().map(|c| (c, Rational::zero())).collect();
        for (&(_, c), v) in &self.shares {
            if let Some(t) = totals.get_mut(&c) {
                *t += v;
            }
        }
        SupportVector(totals)
    }
}

/// Support received by each candidate of the target set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportVector(BTreeMap<CandidateId, Rational>);

impl SupportVector {
    pub fn get(&self, c: CandidateId) -> Option<&Rational> {
        self.0.get(&c)
    }

    pub fn iter(&self) -> impl Iterator<Item = (CandidateId, &Rational)> {
        self.0.iter().map(|(&c, v)| (c, v))
    }

    /// Minimum support; `None` for an empty target.
    pub fn min(&self) -> Option<&Rational> {
        self.0.values().min()
    }

    /// The least-supported candidates.
    pub fn least_supported(&self) -> CandidateSet {
        match self.min() {
            Some(m) => self
                .0
                .iter()
                .filter(|(_, v)| *v == m)
                .map(|(&c, _)| c)
                .collect(),
            None => CandidateSet::empty(),
        }
    }
}

/// Outcome of [`validate_distribution`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DistributionVerdict {
    Valid,
    /// A share is negative.
    NegativeShare {
        ballot: BallotType,
        candidate: CandidateId,
    },
    /// A candidate receives weight from a ballot that does not approve them,
    /// or lies outside the target set.
    UnapprovedShare {
        ballot: BallotType,
        candidate: CandidateId,
    },
    /// The shares of a ballot touching the target do not add up to its count.
    NotFullyDistributed {
        ballot: BallotType,
        distributed: Rational,
        expected: u64,
    },
}

impl DistributionVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, DistributionVerdict::Valid)
    }
}

impl fmt::Display for DistributionVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistributionVerdict::Valid => f.write_str("valid"),
            DistributionVerdict::NegativeShare { ballot, candidate } => {
                write!(f, "negative share F({ballot:?}, {candidate})")
            }
            DistributionVerdict::UnapprovedShare { ballot, candidate } => {
                write!(f, "share F({ballot:?}, {candidate}) for a non-approved candidate")
            }
            DistributionVerdict::NotFullyDistributed {
                ballot,
                distributed,
                expected,
            } => write!(
                f,
                "ballot {ballot:?} distributes {distributed} instead of {expected}"
            ),
        }
    }
}

/// Checks the three defining constraints exactly: non-negativity, no share
/// for unapproved candidates, and full distribution of every ballot type
/// meeting the target.
pub fn validate_distribution(e: &Election, f: &SupportDistribution) -> DistributionVerdict {
    let target = f.target();
    for (y, c, v) in f.entries() {
        if v.is_negative() {
            return DistributionVerdict::NegativeShare {
                ballot: y,
                candidate: c,
            };
        }
    }
    for (y, c, _) in f.entries() {
        if !y.contains(c) || !target.contains(c) {
            return DistributionVerdict::UnapprovedShare {
                ballot: y,
                candidate: c,
            };
        }
    }
    let mut sums: BTreeMap<BallotType, Rational> = BTreeMap::new();
    for (y, _, v) in f.entries() {
        *sums.entry(y).or_insert_with(Rational::zero) += v;
    }
    for &(y, _) in e.profile() {
        if y.intersects(target) {
            sums.entry(y).or_insert_with(Rational::zero);
        }
    }
    for (y, distributed) in sums {
        let expected = e.count(y);
        if distributed != Rational::from_integer(expected.into()) {
            return DistributionVerdict::NotFullyDistributed {
                ballot: y,
                distributed,
                expected,
            };
        }
    }
    DistributionVerdict::Valid
}
