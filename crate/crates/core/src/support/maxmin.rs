//! `maxMin(σ, A)`: the largest achievable minimum support over a target set.
//!
//! Two independent solvers are provided. [`SolverPath::Simplex`] solves the
//! linear program over the shares `F(y, c)` directly. [`SolverPath::Flow`]
//! uses the min-ratio characterisation: the optimum equals
//! `min_{∅≠K⊆A} supporters(K)/|K|`, which a Dinkelbach iteration over
//! parametric max-flow finds exactly with integer capacities.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::distribution::SupportDistribution;
use super::flow::Network;
use super::simplex::LinearProgram;
use super::SupportError;
use crate::model::{CandidateId, CandidateSet, Election};
use crate::rational::{int, ratio, Rational};

/// Default candidate cap for [`hall_ratio_maxmin`].
pub const DEFAULT_HALL_CAP: usize = 20;

/// Which algorithm computes the optimum and its witness.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum SolverPath {
    /// Exact rational simplex on the share linear program.
    Simplex,
    /// Parametric max-flow with min-cut refinement.
    #[default]
    Flow,
}

/// The optimum of the max-min support problem plus an optimal witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxMinResult {
    pub value: Rational,
    pub witness: SupportDistribution,
    /// A tight kernel certifying the value, when the solver produced one.
    pub kernel: Option<CandidateSet>,
}

fn check_target(e: &Election, target: CandidateSet) -> Result<(), SupportError> {
    if target.is_empty() {
        return Err(SupportError::EmptyTargetSet);
    }
    if !target.is_subset(e.roster()) {
        return Err(SupportError::UnknownCandidate(target.span() - 1));
    }
    Ok(())
}

/// Computes `maxMin(σ, A)` with the default (flow) solver.
pub fn maxmin_support(e: &Election, target: CandidateSet) -> Result<MaxMinResult, SupportError> {
    maxmin_support_with(e, target, SolverPath::Flow)
}

pub fn maxmin_support_with(
    e: &Election,
    target: CandidateSet,
    path: SolverPath,
) -> Result<MaxMinResult, SupportError> {
    check_target(e, target)?;
    match path {
        SolverPath::Flow => Ok(solve_flow(e, target, true)),
        SolverPath::Simplex => solve_simplex(e, target),
    }
}

/// The optimum value only, skipping witness construction.
pub fn maxmin_value(e: &Election, target: CandidateSet) -> Result<Rational, SupportError> {
    check_target(e, target)?;
    Ok(solve_flow(e, target, false).value)
}

/// `min` over non-empty `K ⊆ A` of `supporters(K)/|K|`, by enumerating every
/// subset. Refuses targets larger than `cap`.
pub fn hall_ratio_maxmin(
    e: &Election,
    target: CandidateSet,
    cap: usize,
) -> Result<Rational, SupportError> {
    check_target(e, target)?;
    if target.len() > cap {
        return Err(SupportError::TargetSetTooLarge {
            size: target.len(),
            cap,
        });
    }
    let members: Vec<CandidateId> = target.iter().collect();
    // per-ballot masks over the target's member positions
    let ballots: Vec<(u64, u64)> = e
        .profile()
        .iter()
        .map(|&(y, n)| {
            let mask = members
                .iter()
                .enumerate()
                .filter(|(_, c)| y.contains(**c))
                .fold(0u64, |m, (i, _)| m | (1 << i));
            (mask, n)
        })
        .filter(|(mask, _)| *mask != 0)
        .collect();
    let mut best: Option<(u64, u64)> = None;
    for k in 1u64..(1u64 << members.len()) {
        let supp: u64 = ballots
            .iter()
            .filter(|(mask, _)| mask & k != 0)
            .map(|(_, n)| n)
            .sum();
        let size = k.count_ones() as u64;
        let better = match best {
            None => true,
            Some((bs, bk)) => (supp as u128) * (bk as u128) < (bs as u128) * (size as u128),
        };
        if better {
            best = Some((supp, size));
        }
    }
    let (supp, size) = best.expect("target is non-empty");
    Ok(ratio(supp, size))
}

fn solve_flow(e: &Election, target: CandidateSet, with_witness: bool) -> MaxMinResult {
    let members: Vec<CandidateId> = target.iter().collect();
    let ballots: Vec<(crate::model::BallotType, u64)> = e
        .profile()
        .iter()
        .filter(|(y, _)| y.intersects(target))
        .copied()
        .collect();
    let total: u128 = ballots.iter().map(|&(_, n)| n as u128).sum();

    let source = 0;
    let sink = 1;
    let ballot_node = |i: usize| 2 + i;
    let cand_node = |j: usize| 2 + ballots.len() + j;

    let mut kernel = target;
    let mut numer = e.supporters_of(target);
    let mut denom = target.len() as u64;
    loop {
        let mut g = Network::new(2 + ballots.len() + members.len());
        let big = total * denom as u128 + 1;
        let mut middle = Vec::new();
        for (i, &(y, n)) in ballots.iter().enumerate() {
            g.add_edge(source, ballot_node(i), n as u128 * denom as u128);
            for (j, &c) in members.iter().enumerate() {
                if y.contains(c) {
                    middle.push((i, j, g.add_edge(ballot_node(i), cand_node(j), big)));
                }
            }
        }
        for j in 0..members.len() {
            g.add_edge(cand_node(j), sink, numer as u128);
        }
        let flow = g.max_flow(source, sink);
        if flow == numer as u128 * members.len() as u128 {
            let value = ratio(numer, denom);
            let witness = if with_witness {
                let mut f = SupportDistribution::new(target);
                let mut given = vec![0u128; ballots.len()];
                for &(i, j, id) in &middle {
                    let x = g.flow(id);
                    if x > 0 {
                        given[i] += x;
                        f.add(
                            ballots[i].0,
                            members[j],
                            &Rational::new(BigInt::from(x), BigInt::from(denom)),
                        );
                    }
                }
                for (i, &(y, n)) in ballots.iter().enumerate() {
                    let left = n as u128 * denom as u128 - given[i];
                    if left > 0 {
                        let c = y.intersection(target).first().expect("ballot meets target");
                        f.add(y, c, &Rational::new(BigInt::from(left), BigInt::from(denom)));
                    }
                }
                f
            } else {
                SupportDistribution::new(target)
            };
            return MaxMinResult {
                value,
                witness,
                kernel: Some(kernel),
            };
        }
        let reach = g.residual_reachable(source);
        let cut: CandidateSet = members
            .iter()
            .enumerate()
            .filter(|(j, _)| !reach[cand_node(*j)])
            .map(|(_, &c)| c)
            .collect();
        debug_assert!(!cut.is_empty());
        kernel = cut;
        numer = e.supporters_of(cut);
        denom = cut.len() as u64;
    }
}

fn solve_simplex(e: &Election, target: CandidateSet) -> Result<MaxMinResult, SupportError> {
    let members: Vec<CandidateId> = target.iter().collect();
    let mut vars: Vec<(crate::model::BallotType, CandidateId)> = Vec::new();
    for &(y, _) in e.profile() {
        for c in y.intersection(target).iter() {
            vars.push((y, c));
        }
    }
    let s_var = vars.len();
    let slack = |j: usize| s_var + 1 + j;
    let mut lp = LinearProgram::new(s_var + 1 + members.len());
    lp.set_objective(s_var, Rational::one());
    for &(y, n) in e.profile() {
        if !y.intersects(target) {
            continue;
        }
        let terms: Vec<(usize, Rational)> = vars
            .iter()
            .enumerate()
            .filter(|(_, (vy, _))| *vy == y)
            .map(|(i, _)| (i, Rational::one()))
            .collect();
        lp.add_equality(&terms, int(n));
    }
    for (j, &c) in members.iter().enumerate() {
        let mut terms: Vec<(usize, Rational)> = vars
            .iter()
            .enumerate()
            .filter(|(_, (_, vc))| *vc == c)
            .map(|(i, _)| (i, Rational::one()))
            .collect();
        terms.push((s_var, -Rational::one()));
        terms.push((slack(j), -Rational::one()));
        lp.add_equality(&terms, Rational::zero());
    }
    let sol = lp.maximize()?;
    let mut witness = SupportDistribution::new(target);
    for (i, &(y, c)) in vars.iter().enumerate() {
        if !sol.x[i].is_zero() {
            witness.set(y, c, sol.x[i].clone());
        }
    }
    Ok(MaxMinResult {
        value: sol.value,
        witness,
        kernel: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::*;
    use crate::support::validate_distribution;

    fn both(e: &Election, labels: &[&str]) -> Rational {
        let a = e.set_of(labels).unwrap();
        let flow = maxmin_support_with(e, a, SolverPath::Flow).unwrap();
        let lp = maxmin_support_with(e, a, SolverPath::Simplex).unwrap();
        assert_eq!(flow.value, lp.value);
        for r in [&flow, &lp] {
            assert!(validate_distribution(e, &r.witness).is_valid());
            assert_eq!(r.witness.support_vector().min(), Some(&r.value));
        }
        let k = flow.kernel.unwrap();
        assert_eq!(ratio(e.supporters_of(k), k.len() as u64), flow.value);
        flow.value
    }

    #[test]
    fn sigma_a_values() {
        let e = sigma_a();
        assert_eq!(both(&e, &["a", "c"]), int(10750));
        assert_eq!(both(&e, &["a", "b"]), int(10000));
        assert_eq!(both(&e, &["a", "b", "c"]), int(8500));
        assert_eq!(both(&e, &["a", "c", "d"]), int(9500));
        assert_eq!(both(&e, &["a"]), int(16000));
    }

    #[test]
    fn sigma_b_value() {
        let e = sigma_b();
        assert_eq!(both(&e, &["a", "b", "c", "d", "f"]), int(8700));
    }

    #[test]
    fn singleton_takes_everything() {
        let e = sigma_a();
        let c = e.set_of(&["e"]).unwrap();
        let r = maxmin_support(&e, c).unwrap();
        assert_eq!(r.value, int(8000));
        let id = e.id_of("e").unwrap();
        assert_eq!(r.witness.support_vector().get(id), Some(&int(8000)));
    }

    #[test]
    fn hall_oracle_examples() {
        let e = sigma_a();
        assert_eq!(
            hall_ratio_maxmin(&e, e.set_of(&["a", "c"]).unwrap(), DEFAULT_HALL_CAP).unwrap(),
            int(10750)
        );
        let d2 = sigma_d2();
        assert_eq!(hall_ratio_maxmin(&d2, d2.set_of(&["a", "c"]).unwrap(), 20).unwrap(), int(6));
        assert_eq!(hall_ratio_maxmin(&d2, d2.set_of(&["a", "b"]).unwrap(), 20).unwrap(), int(5));
        let e2 = sigma_e2();
        assert_eq!(
            hall_ratio_maxmin(&e2, e2.set_of(&["a", "b"]).unwrap(), 20).unwrap(),
            ratio(11, 2)
        );
        assert_eq!(both(&e2, &["a", "b"]), ratio(11, 2));
    }

    #[test]
    fn errors() {
        let e = sigma_a();
        assert_eq!(
            maxmin_support(&e, CandidateSet::empty()),
            Err(SupportError::EmptyTargetSet)
        );
        assert_eq!(
            hall_ratio_maxmin(&e, e.roster(), 3),
            Err(SupportError::TargetSetTooLarge { size: 7, cap: 3 })
        );
    }

    #[test]
    fn untouched_target_is_zero() {
        let e = Election::from_labels(["a", "b", "c"], 2, [(4, &["a"][..])], None).unwrap();
        let t = e.set_of(&["b", "c"]).unwrap();
        for path in [SolverPath::Flow, SolverPath::Simplex] {
            let r = maxmin_support_with(&e, t, path).unwrap();
            assert_eq!(r.value, int(0));
            assert!(r.witness.entries().next().is_none());
        }
    }
}
