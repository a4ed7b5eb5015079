//! Elections, ballots and the counting queries every rule consumes.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

/// Largest roster an [`Election`] can hold. Candidate sets are bitsets.
pub const MAX_CANDIDATES: usize = 64;

/// Dense index of a candidate in the roster (`0..|C|`), in declaration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CandidateId(pub usize);

impl CandidateId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for CandidateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A set of candidates.
///
/// Ordering is lexicographic on the ascending member lists, so
/// `{a,b} < {a,c} < {b,c}` and `{a} < {a,b}`. All "smallest subset"
/// tie-breaking in the crate follows this order.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct CandidateSet(u64);

/// An approval ballot: the set of approved candidates. May be empty.
pub type BallotType = CandidateSet;

impl CandidateSet {
    pub const fn empty() -> Self {
        CandidateSet(0)
    }

    /// `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_CANDIDATES);
        if n == MAX_CANDIDATES {
            CandidateSet(u64::MAX)
        } else {
            CandidateSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(c: CandidateId) -> Self {
        CandidateSet(1u64 << c.0)
    }

    pub const fn from_bits(bits: u64) -> Self {
        CandidateSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, c: CandidateId) -> bool {
        c.0 < MAX_CANDIDATES && self.0 & (1u64 << c.0) != 0
    }

    pub fn insert(&mut self, c: CandidateId) {
        self.0 |= 1u64 << c.0;
    }

    pub fn remove(&mut self, c: CandidateId) {
        self.0 &= !(1u64 << c.0);
    }

    pub fn with(self, c: CandidateId) -> Self {
        CandidateSet(self.0 | (1u64 << c.0))
    }

    pub fn without(self, c: CandidateId) -> Self {
        CandidateSet(self.0 & !(1u64 << c.0))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        CandidateSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        CandidateSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        CandidateSet(self.0 & !other.0)
    }

    pub fn intersects(self, other: Self) -> bool {
        self.0 & other.0 != 0
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Largest member index + 1, or 0 for the empty set.
    pub fn span(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    /// Members in ascending order.
    pub fn iter(self) -> Members {
        Members(self.0)
    }

    /// Smallest member.
    pub fn first(self) -> Option<CandidateId> {
        (self.0 != 0).then(|| CandidateId(self.0.trailing_zeros() as usize))
    }

    /// All subsets of `self` (including the empty set and `self`).
    pub fn subsets(self) -> impl Iterator<Item = CandidateSet> {
        let members: Vec<CandidateId> = self.iter().collect();
        let n = members.len();
        assert!(n < 64, "subset enumeration over 64 members");
        (0u64..(1u64 << n)).map(move |mask| {
            members
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .fold(CandidateSet::empty(), |s, (_, &c)| s.with(c))
        })
    }
}

impl Ord for CandidateSet {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.iter();
        let mut b = other.iter();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some(x), Some(y)) => match x.cmp(&y) {
                    Ordering::Equal => continue,
                    ord => return ord,
                },
            }
        }
    }
}

impl PartialOrd for CandidateSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for CandidateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|c| c.0)).finish()
    }
}

impl FromIterator<CandidateId> for CandidateSet {
    fn from_iter<I: IntoIterator<Item = CandidateId>>(iter: I) -> Self {
        iter.into_iter().fold(CandidateSet::empty(), |s, c| s.with(c))
    }
}

/// Ascending iterator over the members of a [`CandidateSet`].
pub struct Members(u64);

impl Iterator for Members {
    type Item = CandidateId;

    fn next(&mut self) -> Option<CandidateId> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(CandidateId(i))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Members {}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ElectionError {
    #[error("unknown candidate `{0}`")]
    UnknownCandidate(String),
    #[error("duplicate candidate label `{0}`")]
    DuplicateCandidate(String),
    #[error("candidate labels must be non-empty and contain no whitespace, `:` or `#`")]
    InvalidLabel(String),
    #[error("{seats} seats cannot be filled from {candidates} candidates")]
    SeatsOutOfRange { seats: usize, candidates: usize },
    #[error("declared voter count {declared} is smaller than the {counted} ballots cast")]
    VoterCountTooSmall { declared: u64, counted: u64 },
    #[error("an election needs at least one voter")]
    NoVoters,
    #[error("at most {MAX_CANDIDATES} candidates are supported, got {0}")]
    TooManyCandidates(usize),
    #[error("candidate set references index {0} outside the roster")]
    OutsideRoster(usize),
    #[error("lists must be pairwise disjoint")]
    ListsOverlap,
    #[error("list {index} has {len} candidates, fewer than the {seats} seats")]
    ListTooShort {
        index: usize,
        len: usize,
        seats: usize,
    },
    #[error("ballot count underflow for ballot {0:?}")]
    CountUnderflow(BallotType),
}

/// An approval-based multi-winner election `⟨V, C, S, B⟩`.
///
/// The profile maps each distinct ballot type to a positive voter count and
/// is kept sorted by [`CandidateSet`] order. `total_voters` may exceed the
/// number of ballots counted (abstentions).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Election {
    labels: Vec<String>,
    seats: usize,
    profile: Vec<(BallotType, u64)>,
    total_voters: u64,
}

impl Election {
    /// Builds an election from raw candidate sets. Duplicate ballot types are
    /// merged by summing; zero counts are dropped. `total_voters` defaults to
    /// the number of ballots.
    pub fn new<I>(
        labels: Vec<String>,
        seats: usize,
        ballots: I,
        total_voters: Option<u64>,
    ) -> Result<Self, ElectionError>
    where
        I: IntoIterator<Item = (BallotType, u64)>,
    {
        if labels.len() > MAX_CANDIDATES {
            return Err(ElectionError::TooManyCandidates(labels.len()));
        }
        let mut seen = BTreeSet::new();
        for label in &labels {
            if label.is_empty()
                || label
                    .chars()
                    .any(|ch| ch.is_whitespace() || ch == ':' || ch == '#')
            {
                return Err(ElectionError::InvalidLabel(label.clone()));
            }
            if !seen.insert(label.as_str()) {
                return Err(ElectionError::DuplicateCandidate(label.clone()));
            }
        }
        if seats == 0 || seats > labels.len() {
            return Err(ElectionError::SeatsOutOfRange {
                seats,
                candidates: labels.len(),
            });
        }
        let roster = CandidateSet::full(labels.len());
        let mut merged: BTreeMap<BallotType, u64> = BTreeMap::new();
        for (ballot, count) in ballots {
            if !ballot.is_subset(roster) {
                return Err(ElectionError::OutsideRoster(ballot.span() - 1));
            }
            if count > 0 {
                *merged.entry(ballot).or_insert(0) += count;
            }
        }
        let counted: u64 = merged.values().sum();
        let total_voters = total_voters.unwrap_or(counted);
        if total_voters < counted {
            return Err(ElectionError::VoterCountTooSmall {
                declared: total_voters,
                counted,
            });
        }
        if total_voters == 0 {
            return Err(ElectionError::NoVoters);
        }
        Ok(Election {
            labels,
            seats,
            profile: merged.into_iter().collect(),
            total_voters,
        })
    }

    /// Builds an election from labelled ballot lines, e.g.
    /// `[(10000, &["a", "b"][..]), (6000, &["a", "c"])]`.
    pub fn from_labels<L, B, S>(
        labels: L,
        seats: usize,
        ballots: B,
        total_voters: Option<u64>,
    ) -> Result<Self, ElectionError>
    where
        L: IntoIterator,
        L::Item: Into<String>,
        B: IntoIterator<Item = (u64, S)>,
        S: AsRef<[&'static str]>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut lines = Vec::new();
        for (count, names) in ballots {
            let mut set = CandidateSet::empty();
            for name in names.as_ref() {
                let i = labels
                    .iter()
                    .position(|l| l == name)
                    .ok_or_else(|| ElectionError::UnknownCandidate(name.to_string()))?;
                set.insert(CandidateId(i));
            }
            lines.push((set, count));
        }
        Election::new(labels, seats, lines, total_voters)
    }

    pub fn num_candidates(&self) -> usize {
        self.labels.len()
    }

    pub fn roster(&self) -> CandidateSet {
        CandidateSet::full(self.labels.len())
    }

    pub fn candidates(&self) -> impl Iterator<Item = CandidateId> {
        (0..self.labels.len()).map(CandidateId)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, c: CandidateId) -> &str {
        &self.labels[c.0]
    }

    pub fn id_of(&self, label: &str) -> Option<CandidateId> {
        self.labels.iter().position(|l| l == label).map(CandidateId)
    }

    /// Resolves labels into a set.
    pub fn set_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<CandidateSet, ElectionError> {
        labels
            .iter()
            .map(|l| {
                self.id_of(l.as_ref())
                    .ok_or_else(|| ElectionError::UnknownCandidate(l.as_ref().to_string()))
            })
            .collect()
    }

    /// Space-separated labels of a set, in roster order.
    pub fn format_set(&self, set: CandidateSet) -> String {
        set.iter().map(|c| self.label(c)).collect::<Vec<_>>().join(" ")
    }

    pub fn seats(&self) -> usize {
        self.seats
    }

    /// Distinct ballot types with positive counts, sorted.
    pub fn profile(&self) -> &[(BallotType, u64)] {
        &self.profile
    }

    /// `B(y)`; zero for ballot types nobody cast.
    pub fn count(&self, ballot: BallotType) -> u64 {
        self.profile
            .binary_search_by(|(b, _)| b.cmp(&ballot))
            .map(|i| self.profile[i].1)
            .unwrap_or(0)
    }

    pub fn total_voters(&self) -> u64 {
        self.total_voters
    }

    /// `Σ B(y)` over all ballot types, including empty ballots.
    pub fn ballots_cast(&self) -> u64 {
        self.profile.iter().map(|(_, n)| n).sum()
    }

    fn check_roster(&self, set: CandidateSet) -> Result<(), ElectionError> {
        if set.is_subset(self.roster()) {
            Ok(())
        } else {
            Err(ElectionError::OutsideRoster(set.span() - 1))
        }
    }

    /// Number of voters approving at least one member of `k`.
    pub fn supporters(&self, k: CandidateSet) -> Result<u64, ElectionError> {
        self.check_roster(k)?;
        Ok(self.supporters_of(k))
    }

    pub(crate) fn supporters_of(&self, k: CandidateSet) -> u64 {
        self.profile
            .iter()
            .filter(|(y, _)| y.intersects(k))
            .map(|(_, n)| n)
            .sum()
    }

    /// Number of voters approving `c`.
    pub fn approval_score(&self, c: CandidateId) -> u64 {
        self.supporters_of(CandidateSet::singleton(c))
    }

    /// Same profile and voters, different seat count.
    pub fn with_seats(&self, seats: usize) -> Result<Election, ElectionError> {
        Election::new(
            self.labels.clone(),
            seats,
            self.profile.iter().copied(),
            Some(self.total_voters),
        )
    }

    /// Adds `delta` voters of type `ballot` (negative removes) and adjusts the
    /// declared voter count by `voters_delta`.
    pub fn adjusted(
        &self,
        changes: &[(BallotType, i64)],
        voters_delta: i64,
    ) -> Result<Election, ElectionError> {
        let mut counts: BTreeMap<BallotType, i64> =
            self.profile.iter().map(|&(b, n)| (b, n as i64)).collect();
        for &(ballot, delta) in changes {
            self.check_roster(ballot)?;
            let entry = counts.entry(ballot).or_insert(0);
            *entry += delta;
            if *entry < 0 {
                return Err(ElectionError::CountUnderflow(ballot));
            }
        }
        let total = self.total_voters as i64 + voters_delta;
        if total < 0 {
            return Err(ElectionError::NoVoters);
        }
        Election::new(
            self.labels.clone(),
            self.seats,
            counts.into_iter().map(|(b, n)| (b, n as u64)),
            Some(total as u64),
        )
    }

    /// Detects profiles in which voters behave as under closed lists: the
    /// cast ballot types are pairwise disjoint and each holds at least `S`
    /// candidates. Lists follow profile order; candidates within a list
    /// follow roster order.
    pub fn as_closed_list(&self) -> Option<ClosedListElection> {
        if self.profile.is_empty() {
            return None;
        }
        let mut union = CandidateSet::empty();
        for &(ballot, _) in &self.profile {
            if ballot.len() < self.seats || ballot.intersects(union) {
                return None;
            }
            union = union.union(ballot);
        }
        Some(ClosedListElection {
            lists: self
                .profile
                .iter()
                .map(|(b, _)| b.iter().collect())
                .collect(),
            votes: self.profile.iter().map(|&(_, n)| n).collect(),
            seats: self.seats,
            total_voters: self.total_voters,
        })
    }
}

/// A closed-list election `⟨V, C, S, L, B⟩`: disjoint ordered lists, each
/// receiving a vote count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedListElection {
    lists: Vec<Vec<CandidateId>>,
    votes: Vec<u64>,
    seats: usize,
    total_voters: u64,
}

impl ClosedListElection {
    pub fn new(
        lists: Vec<Vec<CandidateId>>,
        votes: Vec<u64>,
        seats: usize,
        total_voters: Option<u64>,
    ) -> Result<Self, ElectionError> {
        assert_eq!(lists.len(), votes.len(), "one vote count per list");
        let mut seen = BTreeSet::new();
        for (index, list) in lists.iter().enumerate() {
            if list.len() < seats {
                return Err(ElectionError::ListTooShort {
                    index,
                    len: list.len(),
                    seats,
                });
            }
            for c in list {
                if !seen.insert(*c) {
                    return Err(ElectionError::ListsOverlap);
                }
            }
        }
        if seats == 0 {
            return Err(ElectionError::SeatsOutOfRange {
                seats,
                candidates: seen.len(),
            });
        }
        let counted: u64 = votes.iter().sum();
        let total_voters = total_voters.unwrap_or(counted);
        if total_voters < counted {
            return Err(ElectionError::VoterCountTooSmall {
                declared: total_voters,
                counted,
            });
        }
        Ok(ClosedListElection {
            lists,
            votes,
            seats,
            total_voters,
        })
    }

    pub fn lists(&self) -> &[Vec<CandidateId>] {
        &self.lists
    }

    pub fn votes(&self) -> &[u64] {
        &self.votes
    }

    pub fn seats(&self) -> usize {
        self.seats
    }

    pub fn total_voters(&self) -> u64 {
        self.total_voters
    }

    /// Index of the list holding `c`.
    pub fn list_of(&self, c: CandidateId) -> Option<usize> {
        self.lists.iter().position(|l| l.contains(&c))
    }

    /// Seats per list for a winner set drawn from an approval election.
    pub fn seats_per_list(&self, winners: CandidateSet) -> Vec<usize> {
        self.lists
            .iter()
            .map(|l| l.iter().filter(|c| winners.contains(**c)).count())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sigma_a() -> Election {
        Election::from_labels(
            ["a", "b", "c", "d", "e", "f", "g"],
            3,
            [
                (10000, &["a", "b"][..]),
                (6000, &["a", "c"]),
                (4000, &["b"]),
                (5500, &["c"]),
                (9500, &["d"]),
                (5000, &["e", "f", "g"]),
                (3000, &["e"]),
            ],
            Some(45000),
        )
        .unwrap()
    }

    #[test]
    fn set_order_is_lexicographic() {
        let s = |v: &[usize]| v.iter().map(|&i| CandidateId(i)).collect::<CandidateSet>();
        assert!(s(&[0, 1]) < s(&[0, 2]));
        assert!(s(&[0, 2]) < s(&[1, 2]));
        assert!(s(&[0]) < s(&[0, 1]));
        assert!(s(&[]) < s(&[0]));
        assert!(s(&[0, 5]) < s(&[1]));
    }

    #[test]
    fn builds_sigma_a() {
        let e = sigma_a();
        assert_eq!(e.profile().len(), 7);
        assert_eq!(e.total_voters(), 45000);
        assert_eq!(e.ballots_cast(), 43000);
    }

    #[test]
    fn minimal_election() {
        let e = Election::from_labels(["a"], 1, [(1, &["a"][..])], None).unwrap();
        assert_eq!(e.total_voters(), 1);
    }

    #[test]
    fn duplicate_lines_merge() {
        let e = Election::from_labels(
            ["a", "b"],
            1,
            [(3, &["a", "b"][..]), (3, &["b", "a"])],
            None,
        )
        .unwrap();
        assert_eq!(e.profile().len(), 1);
        assert_eq!(e.profile()[0].1, 6);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            Election::from_labels(["a"], 1, [(1, &["z"][..])], None),
            Err(ElectionError::UnknownCandidate("z".into()))
        );
        assert!(matches!(
            Election::from_labels(["a"], 2, [(1, &["a"][..])], None),
            Err(ElectionError::SeatsOutOfRange { .. })
        ));
        assert!(matches!(
            Election::from_labels(["a"], 0, [(1, &["a"][..])], None),
            Err(ElectionError::SeatsOutOfRange { .. })
        ));
        assert_eq!(
            Election::from_labels(["a"], 1, [(5, &["a"][..])], Some(4)),
            Err(ElectionError::VoterCountTooSmall {
                declared: 4,
                counted: 5
            })
        );
        assert!(matches!(
            Election::from_labels(["a", "a"], 1, [(1, &["a"][..])], None),
            Err(ElectionError::DuplicateCandidate(_))
        ));
    }

    #[test]
    fn supporter_counts() {
        let e = sigma_a();
        let a = e.set_of(&["a"]).unwrap();
        assert_eq!(e.supporters(a), Ok(16000));
        assert_eq!(e.supporters(CandidateSet::empty()), Ok(0));
        assert_eq!(e.supporters(e.set_of(&["a", "c"]).unwrap()), Ok(21500));
        assert_eq!(e.supporters(e.roster()), Ok(43000));
        assert!(e.supporters(CandidateSet::from_bits(1 << 9)).is_err());
    }

    #[test]
    fn closed_list_detection() {
        let labels: Vec<String> = ["a", "b", "c"]
            .iter()
            .flat_map(|p| (1..=5).map(move |i| format!("{p}{i}")))
            .collect();
        let block = |k: usize| (0..5).map(|i| CandidateId(5 * k + i)).collect::<CandidateSet>();
        let e = Election::new(
            labels,
            5,
            [(block(0), 5100), (block(1), 3150), (block(2), 1750)],
            None,
        )
        .unwrap();
        let cl = e.as_closed_list().unwrap();
        assert_eq!(cl.votes(), &[5100, 3150, 1750]);
        assert_eq!(cl.lists()[0], (0..5).map(CandidateId).collect::<Vec<_>>());

        assert!(sigma_a().as_closed_list().is_none());

        let short = Election::from_labels(
            ["a", "b", "c", "d"],
            3,
            [(1, &["a", "b"][..]), (1, &["c", "d"])],
            None,
        )
        .unwrap();
        assert!(short.as_closed_list().is_none());
    }

    #[test]
    fn closed_list_validation() {
        let ids = |v: &[usize]| v.iter().map(|&i| CandidateId(i)).collect::<Vec<_>>();
        assert_eq!(
            ClosedListElection::new(vec![ids(&[0, 1]), ids(&[1, 2])], vec![1, 1], 2, None),
            Err(ElectionError::ListsOverlap)
        );
        assert!(matches!(
            ClosedListElection::new(vec![ids(&[0])], vec![1], 2, None),
            Err(ElectionError::ListTooShort { .. })
        ));
    }

    #[test]
    fn subsets_enumeration() {
        let s = CandidateSet::from_bits(0b1011);
        let all: Vec<_> = s.subsets().collect();
        assert_eq!(all.len(), 8);
        assert!(all.iter().all(|x| x.is_subset(s)));
    }
}
