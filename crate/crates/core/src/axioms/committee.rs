//! Committee-level axioms: JR, EJR and lower quota.

use crate::model::{BallotType, CandidateSet, Election};
use crate::rational::{int, Rational};
use crate::rules::subsets::{binomial, combinations};

use super::{Axiom, AxiomCaps, AxiomError, AxiomVerdict, Witness};

fn check_size(e: &Election, w: CandidateSet) -> Result<(), AxiomError> {
    if w.len() != e.seats() {
        return Err(AxiomError::SeatsMismatch {
            expected: e.seats(),
            got: w.len(),
        });
    }
    Ok(())
}

/// `mass ≥ ell·|V|/S`, without division.
fn meets_share(e: &Election, mass: u64, ell: usize) -> bool {
    mass as u128 * e.seats() as u128 >= ell as u128 * e.total_voters() as u128
}

/// Justified representation. A violating group must share a candidate, so it
/// is enough to try, per candidate, every ballot approving it and no winner.
pub fn check_jr(e: &Election, w: CandidateSet) -> Result<AxiomVerdict, AxiomError> {
    check_size(e, w)?;
    for c in e.candidates().filter(|c| !w.contains(*c)) {
        let ballots: Vec<BallotType> = e
            .profile()
            .iter()
            .filter(|(y, _)| y.contains(c) && !y.intersects(w))
            .map(|(y, _)| *y)
            .collect();
        let mass = ballots.iter().map(|y| e.count(*y)).sum();
        if !ballots.is_empty() && meets_share(e, mass, 1) {
            return Ok(AxiomVerdict::violated(
                Axiom::Jr,
                Witness::Jr {
                    committee: w,
                    candidate: c,
                    ballots,
                    mass,
                },
            ));
        }
    }
    Ok(AxiomVerdict::satisfied(Axiom::Jr))
}

/// Extended justified representation, scanning every `ell`-subset of
/// candidates as the common core of a group.
pub fn check_ejr(e: &Election, w: CandidateSet, caps: &AxiomCaps) -> Result<AxiomVerdict, AxiomError> {
    check_size(e, w)?;
    let n = e.num_candidates();
    let top = e.seats().min(caps.max_ell);
    let total: u128 = (1..=top).map(|ell| binomial(n, ell)).sum();
    if total > caps.ejr_subsets as u128 {
        return Ok(AxiomVerdict::inconclusive(
            Axiom::Ejr,
            format!("{total} candidate subsets exceed the cap {}", caps.ejr_subsets),
        ));
    }
    for ell in 1..=top {
        for common in combinations(n, ell) {
            let ballots: Vec<BallotType> = e
                .profile()
                .iter()
                .filter(|(y, _)| common.is_subset(*y) && y.intersection(w).len() < ell)
                .map(|(y, _)| *y)
                .collect();
            let mass = ballots.iter().map(|y| e.count(*y)).sum();
            if !ballots.is_empty() && meets_share(e, mass, ell) {
                return Ok(AxiomVerdict::violated(
                    Axiom::Ejr,
                    Witness::Ejr {
                        committee: w,
                        ell,
                        common,
                        ballots,
                        mass,
                    },
                ));
            }
        }
    }
    Ok(AxiomVerdict::satisfied(Axiom::Ejr))
}

/// `q = Σ B(y_j) · S / |V|`.
pub(crate) fn quota(e: &Election, mass: u64) -> Rational {
    int(mass) * int(e.seats() as u64) / int(e.total_voters())
}

/// Lower quota: every family of cast ballot types whose common core holds at
/// least `⌊q⌋` candidates must see `⌊q⌋` winners among the candidates its
/// ballots approve. Taking whole ballot types and the full intersection as
/// the core is enough, since either only enlarges `q` or the core.
pub fn check_lower_quota(e: &Election, w: CandidateSet, caps: &AxiomCaps) -> Result<AxiomVerdict, AxiomError> {
    check_size(e, w)?;
    let types: Vec<(BallotType, u64)> = e
        .profile()
        .iter()
        .filter(|(y, _)| !y.is_empty())
        .copied()
        .collect();
    if types.len() > caps.max_ballot_types {
        return Ok(AxiomVerdict::inconclusive(
            Axiom::LowerQuota,
            format!(
                "{} ballot types exceed the cap {}",
                types.len(),
                caps.max_ballot_types
            ),
        ));
    }
    let s = e.seats() as u128;
    let voters = e.total_voters() as u128;
    for mask in 1u64..(1u64 << types.len()) {
        let mut common = e.roster();
        let mut union = CandidateSet::empty();
        let mut mass = 0u64;
        for (i, &(y, n)) in types.iter().enumerate() {
            if mask & (1 << i) != 0 {
                common = common.intersection(y);
                union = union.union(y);
                mass += n;
            }
        }
        let floor = (mass as u128 * s / voters) as u64;
        if floor == 0 || (common.len() as u64) < floor {
            continue;
        }
        let represented = w.intersection(union).len();
        if (represented as u64) < floor {
            let ballots = types
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, (y, _))| *y)
                .collect();
            return Ok(AxiomVerdict::violated(
                Axiom::LowerQuota,
                Witness::LowerQuota {
                    committee: w,
                    common,
                    ballots,
                    quota: quota(e, mass),
                    floor,
                    represented,
                },
            ));
        }
    }
    Ok(AxiomVerdict::satisfied(Axiom::LowerQuota))
}
