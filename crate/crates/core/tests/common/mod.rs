//! Brute-force definitions used as oracles by the integration tests. Nothing
//! here calls the library's solvers or subset enumerator.

#![allow(dead_code)]

use std::collections::BTreeSet;

use approval_dhondt::rational::{int, ratio};
use approval_dhondt::{CandidateId, CandidateSet, Election, Rational};

/// Every `k`-subset of the roster, via bitmask popcount.
pub fn k_subsets(n: usize, k: usize) -> Vec<CandidateSet> {
    (0u64..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(CandidateSet::from_bits)
        .collect()
}

/// The sets attaining the best score, sorted.
pub fn best_by<F>(e: &Election, maximize: bool, score: F) -> Vec<CandidateSet>
where
    F: Fn(CandidateSet) -> Rational,
{
    let mut best: Option<Rational> = None;
    let mut family = Vec::new();
    for w in k_subsets(e.num_candidates(), e.seats()) {
        let s = score(w);
        let better = match &best {
            None => true,
            Some(b) => (maximize && s > *b) || (!maximize && s < *b),
        };
        if better {
            best = Some(s);
            family = vec![w];
        } else if best.as_ref() == Some(&s) {
            family.push(w);
        }
    }
    family.sort();
    family
}

pub fn av_score(e: &Election, w: CandidateSet) -> Rational {
    e.profile()
        .iter()
        .map(|&(y, n)| int(n * y.intersection(w).len() as u64))
        .sum()
}

pub fn sav_score(e: &Election, w: CandidateSet) -> Rational {
    e.profile()
        .iter()
        .filter(|(y, _)| !y.is_empty())
        .map(|&(y, n)| ratio(n * y.intersection(w).len() as u64, y.len() as u64))
        .sum()
}

pub fn mav_score(e: &Election, w: CandidateSet) -> Rational {
    let worst = e
        .profile()
        .iter()
        .map(|&(y, _)| y.difference(w).len() + w.difference(y).len())
        .max()
        .unwrap_or(0);
    int(worst as u64)
}

pub fn pav_score(e: &Election, w: CandidateSet) -> Rational {
    e.profile()
        .iter()
        .map(|&(y, n)| {
            let hits = y.intersection(w).len() as u64;
            (1..=hits).map(|j| ratio(n, j)).sum::<Rational>()
        })
        .sum()
}

pub fn uncovered(e: &Election, w: CandidateSet) -> Rational {
    int(e
        .profile()
        .iter()
        .filter(|(y, _)| !y.intersects(w))
        .map(|&(_, n)| n)
        .sum::<u64>())
}

/// All `k`-subsets when `family` is not an all-zero optimum, mirroring the
/// "every committee tied" reading of the ranking variants.
pub fn zero_or_all(e: &Election, family: Vec<CandidateSet>, optimum: Rational) -> Vec<CandidateSet> {
    if optimum == int(0) {
        family
    } else {
        sorted(k_subsets(e.num_candidates(), e.seats()))
    }
}

/// One entry per voter (blank ballots included).
pub fn voters(e: &Election) -> Vec<CandidateSet> {
    e.profile()
        .iter()
        .flat_map(|&(y, n)| std::iter::repeat_n(y, n as usize))
        .collect()
}

/// Least misrepresentation over every assignment of individual voters to
/// members of `w` with balanced loads. `None` if no balanced assignment
/// exists.
pub fn monroe_brute_force(e: &Election, w: CandidateSet) -> Option<u64> {
    let people = voters(e);
    let members: Vec<CandidateId> = w.iter().collect();
    let s = members.len() as u64;
    let n = people.len() as u64;
    let (lo, hi) = (n / s, n.div_ceil(s));
    let mut best = None;
    let total = (members.len() as u64).pow(people.len() as u32);
    for code in 0..total {
        let mut loads = vec![0u64; members.len()];
        let mut cost = 0;
        let mut rest = code;
        for y in &people {
            let slot = (rest % s) as usize;
            rest /= s;
            loads[slot] += 1;
            if !y.contains(members[slot]) {
                cost += 1;
            }
        }
        if loads.iter().all(|l| (lo..=hi).contains(l)) && best.is_none_or(|b| cost < b) {
            best = Some(cost);
        }
    }
    best
}

pub fn monroe_score(e: &Election, w: CandidateSet) -> Rational {
    int(monroe_brute_force(e, w).expect("balanced assignments exist"))
}

/// Every outcome of sequential proportional approval under every tie-break.
pub fn rav_family(e: &Election) -> Vec<CandidateSet> {
    let mut frontier: BTreeSet<CandidateSet> = BTreeSet::from([CandidateSet::empty()]);
    for _ in 0..e.seats() {
        let mut next = BTreeSet::new();
        for w in frontier {
            let weights: Vec<(CandidateId, Rational)> = e
                .candidates()
                .filter(|c| !w.contains(*c))
                .map(|c| {
                    let aw: Rational = e
                        .profile()
                        .iter()
                        .filter(|(y, _)| y.contains(c))
                        .map(|&(y, n)| ratio(n, 1 + y.intersection(w).len() as u64))
                        .sum();
                    (c, aw)
                })
                .collect();
            let top = weights.iter().map(|(_, v)| v.clone()).max().expect("a candidate is left");
            for (c, v) in weights {
                if v == top {
                    next.insert(w.with(c));
                }
            }
        }
        frontier = next;
    }
    frontier.into_iter().collect()
}

/// `min` over non-empty `K ⊆ target` of `supporters(K)/|K|`, from the
/// profile directly.
pub fn hall_ratio(e: &Election, target: CandidateSet) -> Rational {
    let members: Vec<CandidateId> = target.iter().collect();
    (1u64..1 << members.len())
        .map(|m| {
            let k: CandidateSet = members
                .iter()
                .enumerate()
                .filter(|(i, _)| m >> i & 1 == 1)
                .map(|(_, c)| *c)
                .collect();
            let backers: u64 = e
                .profile()
                .iter()
                .filter(|(y, _)| y.intersects(k))
                .map(|&(_, n)| n)
                .sum();
            ratio(backers, k.len() as u64)
        })
        .min()
        .expect("target is non-empty")
}

/// Sequential max-min rule under every tie-break, scored by the Hall ratio.
pub fn odh_family(e: &Election) -> Vec<CandidateSet> {
    let mut frontier: BTreeSet<CandidateSet> = BTreeSet::from([CandidateSet::empty()]);
    for _ in 0..e.seats() {
        let mut next = BTreeSet::new();
        for w in frontier {
            let values: Vec<(CandidateId, Rational)> = e
                .candidates()
                .filter(|c| !w.contains(*c))
                .map(|c| (c, hall_ratio(e, w.with(c))))
                .collect();
            let top = values.iter().map(|(_, v)| v.clone()).max().expect("a candidate is left");
            for (c, v) in values {
                if v == top {
                    next.insert(w.with(c));
                }
            }
        }
        frontier = next;
    }
    frontier.into_iter().collect()
}

/// Global max-min optimum under every tie-break.
pub fn oodh_family(e: &Election) -> Vec<CandidateSet> {
    best_by(e, true, |w| hall_ratio(e, w))
}

pub fn set(e: &Election, labels: &[&str]) -> CandidateSet {
    e.set_of(labels).expect("labels exist")
}

pub fn sets(e: &Election, family: &[&[&str]]) -> Vec<CandidateSet> {
    let mut v: Vec<CandidateSet> = family.iter().map(|f| set(e, f)).collect();
    v.sort();
    v
}

pub fn sorted(mut v: Vec<CandidateSet>) -> Vec<CandidateSet> {
    v.sort();
    v
}
