//! Sequential rules: ODH (maximise the max-min support of the growing
//! committee) and RAV (reweighted approval).

use std::collections::{BTreeSet, HashMap};

use crate::model::{CandidateId, CandidateSet, Election};
use crate::rational::{int, Rational};
use crate::support::{maxmin_support_with, maxmin_value, SolverPath};

use super::report::{IterationRecord, WinnerReport};
use super::{Rule, RuleConfig, RuleError, TieMode};

/// Most partial committees tracked per round in enumerated mode.
pub const STATE_CAP: usize = 4096;

fn sequential<F>(e: &Election, cfg: &RuleConfig, rule: Rule, mut score: F) -> Result<WinnerReport, RuleError>
where
    F: FnMut(CandidateSet, CandidateId) -> Result<Rational, RuleError>,
{
    let seats = e.seats();
    let mut round_values = |w: CandidateSet| -> Result<Vec<(CandidateId, Rational)>, RuleError> {
        e.candidates()
            .filter(|c| !w.contains(*c))
            .map(|c| Ok((c, score(w, c)?)))
            .collect()
    };

    let mut trace = Vec::with_capacity(seats);
    let mut elected = CandidateSet::empty();
    for iteration in 1..=seats {
        let values = round_values(elected)?;
        let mut chosen = values[0].0;
        let mut best = &values[0].1;
        for (c, v) in &values[1..] {
            if v > best {
                best = v;
                chosen = *c;
            }
        }
        elected.insert(chosen);
        trace.push(IterationRecord {
            iteration,
            values,
            chosen,
        });
    }

    let mut truncated = false;
    let winner_sets = match cfg.tie_mode {
        TieMode::Deterministic => vec![elected],
        TieMode::Enumerated => {
            let mut states = BTreeSet::from([CandidateSet::empty()]);
            for _ in 0..seats {
                let mut next = BTreeSet::new();
                for &w in &states {
                    let values = round_values(w)?;
                    let top = values.iter().map(|(_, v)| v).max().expect("a candidate remains");
                    for (c, v) in &values {
                        if v == top {
                            next.insert(w.with(*c));
                        }
                    }
                }
                if next.len() > STATE_CAP {
                    truncated = true;
                    next = next.into_iter().take(STATE_CAP).collect();
                }
                states = next;
            }
            let mut family: Vec<CandidateSet> = states.into_iter().collect();
            if family.len() > cfg.tie_cap {
                truncated = true;
                family.truncate(cfg.tie_cap);
            }
            family
        }
    };
    Ok(WinnerReport {
        rule,
        seats,
        winner_sets,
        trace,
        tie_mode: cfg.tie_mode,
        all_tied: false,
        truncated,
        objective: None,
    })
}

/// Elects, one at a time, the candidate whose addition leaves the committee
/// with the largest max-min support.
pub fn odh(e: &Election, cfg: &RuleConfig) -> Result<WinnerReport, RuleError> {
    let mut cache: HashMap<CandidateSet, Rational> = HashMap::new();
    let solver = cfg.solver;
    sequential(e, cfg, Rule::Odh, |w, c| {
        let target = w.with(c);
        if let Some(v) = cache.get(&target) {
            return Ok(v.clone());
        }
        let v = match solver {
            SolverPath::Flow => maxmin_value(e, target)?,
            SolverPath::Simplex => maxmin_support_with(e, target, solver)?.value,
        };
        cache.insert(target, v.clone());
        Ok(v)
    })
}

/// Approval weight of `c` given the already elected `w`.
pub fn approval_weight(e: &Election, w: CandidateSet, c: CandidateId) -> Rational {
    e.profile()
        .iter()
        .filter(|(y, _)| y.contains(c))
        .map(|&(y, n)| int(n) / int(1 + y.intersection(w).len() as u64))
        .sum()
}

/// Reweighted approval voting.
pub fn rav(e: &Election, cfg: &RuleConfig) -> WinnerReport {
    sequential(e, cfg, Rule::Rav, |w, c| Ok(approval_weight(e, w, c)))
        .expect("approval weights never fail")
}
