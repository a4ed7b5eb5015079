//! Kernels of least-supported candidates and the support-transfer step that
//! raises the minimum support of a non-optimal distribution.

use std::collections::VecDeque;

use num_traits::{Signed, Zero};

use super::distribution::SupportDistribution;
use super::maxmin::MaxMinResult;
use super::SupportError;
use crate::model::{BallotType, CandidateId, CandidateSet, Election};
use crate::rational::{int, Rational};

/// The closure snapshots: entry 0 is `{ℓ}`, each further entry is the set
/// after one more pass that added something.
pub fn kernel_trace(
    f: &SupportDistribution,
    least: CandidateId,
) -> Result<Vec<CandidateSet>, SupportError> {
    let lsupp = f.support_vector().least_supported();
    if !lsupp.contains(least) {
        return Err(SupportError::NotLeastSupported(least.index()));
    }
    let mut kernel = CandidateSet::singleton(least);
    let mut trace = vec![kernel];
    loop {
        let snapshot = kernel;
        let mut grown = snapshot;
        for cand in lsupp.difference(snapshot).iter() {
            let linked = f.entries().any(|(y, c, v)| {
                c == cand && v.is_positive() && y.intersects(snapshot.without(cand))
            });
            if linked {
                grown.insert(cand);
            }
        }
        if grown == snapshot {
            return Ok(trace);
        }
        kernel = grown;
        trace.push(kernel);
    }
}

/// The kernel `K(ℓ)` of a least-supported candidate.
pub fn kernel_of(f: &SupportDistribution, least: CandidateId) -> Result<CandidateSet, SupportError> {
    Ok(*kernel_trace(f, least)?.last().expect("trace starts with {ℓ}"))
}

/// Whether no ballot touching `kernel` gives support outside the least-supported set.
fn is_tight(f: &SupportDistribution, kernel: CandidateSet, least: CandidateSet) -> bool {
    let outside = f.target().difference(least);
    !f.entries()
        .any(|(y, c, v)| outside.contains(c) && v.is_positive() && y.intersects(kernel))
}

/// A kernel of the witness satisfying both tightness conditions.
pub fn tight_kernel(e: &Election, r: &MaxMinResult) -> Result<CandidateSet, SupportError> {
    let _ = e;
    let supp = r.witness.support_vector();
    if supp.min() != Some(&r.value) {
        return Err(SupportError::NoTightKernel);
    }
    let least = supp.least_supported();
    for l in least.iter() {
        let k = kernel_of(&r.witness, l)?;
        if is_tight(&r.witness, k, least) {
            return Ok(k);
        }
    }
    Err(SupportError::NoTightKernel)
}

/// One least-supported candidate's share of an improvement step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transfer {
    pub least: CandidateId,
    /// The candidate outside the least-supported set that gives up support.
    pub donor: CandidateId,
    pub ballot: BallotType,
    /// `ℓ(1) = least, ..., ℓ(n)`; a single entry for a direct transfer.
    pub path: Vec<CandidateId>,
    /// `y^i` linking `path[i]` to `path[i+1]`.
    pub path_ballots: Vec<BallotType>,
    /// Minimum share along the path; `None` for a direct transfer.
    pub path_min: Option<Rational>,
    pub amount: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Improvement {
    pub distribution: SupportDistribution,
    /// Gap between the smallest support outside the least-supported set and
    /// the minimum support.
    pub gap: Rational,
    pub transfers: Vec<Transfer>,
}

/// Shortest chain from `from` to a member of `goal` inside `kernel`, where a
/// step `u → v` needs a ballot approving both with positive share to `v`.
fn chain(
    f: &SupportDistribution,
    kernel: CandidateSet,
    from: CandidateId,
    goal: CandidateSet,
) -> Option<(Vec<CandidateId>, Vec<BallotType>)> {
    let mut prev: Vec<Option<(CandidateId, BallotType)>> = vec![None; 64];
    let mut seen = CandidateSet::singleton(from);
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        if goal.contains(u) {
            let mut path = vec![u];
            let mut ballots = Vec::new();
            let mut cur = u;
            while let Some((p, y)) = prev[cur.index()] {
                path.push(p);
                ballots.push(y);
                cur = p;
            }
            path.reverse();
            ballots.reverse();
            return Some((path, ballots));
        }
        for v in kernel.difference(seen).iter() {
            let link = f
                .entries()
                .find(|(y, c, s)| *c == v && y.contains(u) && s.is_positive())
                .map(|(y, _, _)| y);
            if let Some(y) = link {
                seen.insert(v);
                prev[v.index()] = Some((u, y));
                queue.push_back(v);
            }
        }
    }
    None
}

/// Applies one round of the support-transfer construction. Returns `None`
/// when some least-supported candidate has a tight kernel, i.e. the
/// distribution is already optimal.
pub fn improve_distribution(e: &Election, f: &SupportDistribution) -> Option<Improvement> {
    let _ = e;
    let target = f.target();
    let supp = f.support_vector();
    let min = supp.min()?.clone();
    let least = supp.least_supported();
    let rest = target.difference(least);
    let next = rest.iter().filter_map(|c| supp.get(c)).min()?.clone();
    let gap = &next - &min;
    let n_least = int(least.len() as u64);
    let cap = &gap / (int(3) * &n_least);

    let mut transfers = Vec::new();
    for l in least.iter() {
        let kernel = kernel_of(f, l).ok()?;
        let candidates: Vec<(BallotType, CandidateId, Rational)> = f
            .entries()
            .filter(|(y, c, v)| rest.contains(*c) && v.is_positive() && y.intersects(kernel))
            .map(|(y, c, v)| (y, c, v.clone()))
            .collect();
        let (ballot, donor, share) = candidates
            .iter()
            .find(|(y, _, _)| y.contains(l))
            .or_else(|| candidates.first())
            .cloned()?;
        let (path, path_ballots) = if ballot.contains(l) {
            (vec![l], Vec::new())
        } else {
            chain(f, kernel, l, ballot.intersection(kernel))?
        };
        let path_min = path_ballots
            .iter()
            .zip(path.iter().skip(1))
            .map(|(y, c)| f.share(*y, *c))
            .min();
        let mut amount = &share / &n_least;
        if let Some(k1) = &path_min {
            amount = amount.min(k1 / &n_least);
        }
        amount = amount.min(cap.clone());
        transfers.push(Transfer {
            least: l,
            donor,
            ballot,
            path,
            path_ballots,
            path_min,
            amount,
        });
    }

    let mut out = f.clone();
    for t in &transfers {
        let neg = -t.amount.clone();
        out.add(t.ballot, t.donor, &neg);
        out.add(t.ballot, *t.path.last().expect("path is non-empty"), &t.amount);
        for (i, y) in t.path_ballots.iter().enumerate() {
            out.add(*y, t.path[i + 1], &neg);
            out.add(*y, t.path[i], &t.amount);
        }
    }
    debug_assert!(out.entries().all(|(_, _, v)| !v.is_negative()));
    debug_assert!(out.support_vector().min().is_some_and(|m| *m > min));
    debug_assert!(!gap.is_zero());
    Some(Improvement {
        distribution: out,
        gap,
        transfers,
    })
}
