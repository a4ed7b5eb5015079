//! Re-verification of violation witnesses by direct substitution into the
//! axiom definitions, independent of the checkers that produced them.

use crate::model::{CandidateSet, Election};
use crate::rational::int;
use crate::rules::{divisor_apportionment, DivisorSequence, Rule, RuleConfig};

use super::{AxiomVerdict, Status, Witness};

/// `true` when the verdict is a violation whose witness holds up. Witnesses
/// that involve rule outputs are recomputed with `rule` when given.
pub fn replay(e: &Election, verdict: &AxiomVerdict, rule: Option<(Rule, &RuleConfig)>) -> bool {
    if verdict.status != Status::Violated {
        return false;
    }
    let Some(witness) = &verdict.witness else {
        return false;
    };
    let voters = int(e.total_voters());
    let seats = int(e.seats() as u64);
    let cast = |ballots: &[CandidateSet]| ballots.iter().all(|y| e.count(*y) > 0);
    let mass = |ballots: &[CandidateSet]| -> u64 { ballots.iter().map(|y| e.count(*y)).sum() };
    let distinct = |ballots: &[CandidateSet]| {
        let mut v = ballots.to_vec();
        v.sort();
        v.dedup();
        v.len() == ballots.len()
    };
    match witness {
        Witness::Jr {
            committee,
            candidate,
            ballots,
            ..
        } => {
            let common = ballots.iter().fold(e.roster(), |acc, y| acc.intersection(*y));
            let union = ballots.iter().fold(CandidateSet::empty(), |acc, y| acc.union(*y));
            !ballots.is_empty()
                && distinct(ballots)
                && cast(ballots)
                && committee.len() == e.seats()
                && common.contains(*candidate)
                && !committee.intersects(union)
                && int(mass(ballots)) >= &voters / &seats
        }
        Witness::Ejr {
            committee,
            ell,
            ballots,
            ..
        } => {
            let common = ballots.iter().fold(e.roster(), |acc, y| acc.intersection(*y));
            *ell >= 1
                && *ell <= e.seats()
                && !ballots.is_empty()
                && distinct(ballots)
                && cast(ballots)
                && committee.len() == e.seats()
                && common.len() >= *ell
                && ballots.iter().all(|y| y.intersection(*committee).len() < *ell)
                && int(mass(ballots)) >= int(*ell as u64) * &voters / &seats
        }
        Witness::LowerQuota {
            committee,
            common,
            ballots,
            ..
        } => {
            let q = int(mass(ballots)) / &voters * &seats;
            let floor = q.floor().to_integer();
            let union = ballots.iter().fold(CandidateSet::empty(), |acc, y| acc.union(*y));
            !ballots.is_empty()
                && distinct(ballots)
                && cast(ballots)
                && committee.len() == e.seats()
                && ballots.iter().all(|y| common.is_subset(*y))
                && num_bigint::BigInt::from(common.len()) >= floor
                && num_bigint::BigInt::from(committee.intersection(union).len()) < floor
        }
        Witness::House { smaller, larger } => {
            if let Some((rule, cfg)) = rule {
                let Ok(bigger) = e.with_seats(e.seats() + 1) else {
                    return false;
                };
                let (Ok(a), Ok(b)) = (rule.run(e, cfg), rule.run(&bigger, cfg)) else {
                    return false;
                };
                if a.outcomes(e) != *smaller || b.outcomes(&bigger) != *larger {
                    return false;
                }
            }
            !smaller.is_empty()
                && !larger.is_empty()
                && smaller
                    .iter()
                    .all(|w| larger.iter().all(|w2| !w.is_subset(*w2)))
        }
        Witness::Population {
            condition,
            group,
            moved,
            modified,
            after,
            ..
        } => {
            let rebuilt = match (condition, moved) {
                (1, Some(y)) if !y.intersects(*group) && e.count(*y) >= 1 => {
                    e.adjusted(&[(*y, -1), (y.union(*group), 1)], 0)
                }
                (2, None) => e.adjusted(&[(*group, 1)], 1),
                _ => return false,
            };
            if rebuilt.as_ref() != Ok(modified.as_ref()) {
                return false;
            }
            if let Some((rule, cfg)) = rule {
                match rule.run(modified, cfg) {
                    Ok(r) if r.outcomes(modified) == *after => {}
                    _ => return false,
                }
            }
            !after.is_empty() && after.iter().all(|w| !w.intersects(*group))
        }
        Witness::ClosedList { expected, observed } => {
            let Some(cle) = e.as_closed_list() else {
                return false;
            };
            if divisor_apportionment(&cle, &DivisorSequence::DHondt).seats != *expected {
                return false;
            }
            if let Some((rule, cfg)) = rule {
                match rule.run(e, cfg) {
                    Ok(r) => {
                        let seen: Vec<Vec<usize>> =
                            r.outcomes(e).into_iter().map(|w| cle.seats_per_list(w)).collect();
                        if seen != *observed {
                            return false;
                        }
                    }
                    Err(_) => return false,
                }
            }
            !observed.contains(expected)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::{check_house_monotonicity, check_lower_quota, AxiomCaps};
    use crate::catalog::*;

    #[test]
    fn replays_catalog_violations() {
        let h = sigma_h();
        let w = h.set_of(&["c1", "c2", "c3", "c5", "c6", "c7", "c8"]).unwrap();
        let v = check_lower_quota(&h, w, &AxiomCaps::default()).unwrap();
        assert!(replay(&h, &v, None));

        let cfg = RuleConfig::enumerated();
        let g1 = sigma_g1();
        let v = check_house_monotonicity(Rule::Ccha, &g1, &cfg).unwrap();
        assert!(replay(&g1, &v, Some((Rule::Ccha, &cfg))));
        assert!(!replay(&g1, &v, Some((Rule::Odh, &cfg))));
    }

    #[test]
    fn rejects_tampered_witness() {
        let h = sigma_h();
        let w = h.set_of(&["c1", "c2", "c3", "c5", "c6", "c7", "c8"]).unwrap();
        let mut v = check_lower_quota(&h, w, &AxiomCaps::default()).unwrap();
        if let Some(Witness::LowerQuota { committee, .. }) = &mut v.witness {
            *committee = h.set_of(&["c1", "c2", "c3", "c4", "c5", "c6", "c7"]).unwrap();
        }
        assert!(!replay(&h, &v, None));
    }
}
