//! Approval-score rules: AV, SAV, MAV and PAV.

use crate::model::{CandidateId, CandidateSet, Election};
use crate::rational::{harmonic, int, Rational};

use super::report::WinnerReport;
use super::subsets::{binomial, check_cap, combinations, Best};
use super::{Rule, RuleConfig, RuleError, TieMode};

/// Top-`S` by per-candidate weight; ties at the boundary expand into every
/// choice among the boundary group.
fn top_seats(e: &Election, cfg: &RuleConfig, rule: Rule, weights: Vec<Rational>) -> WinnerReport {
    let seats = e.seats();
    let mut order: Vec<CandidateId> = e.candidates().collect();
    order.sort_by(|a, b| weights[b.index()].cmp(&weights[a.index()]).then(a.cmp(b)));
    let threshold = &weights[order[seats - 1].index()];
    let above: CandidateSet = order
        .iter()
        .copied()
        .filter(|c| weights[c.index()] > *threshold)
        .collect();
    let boundary: Vec<CandidateId> = order
        .iter()
        .copied()
        .filter(|c| weights[c.index()] == *threshold)
        .collect();
    let need = seats - above.len();
    let total = binomial(boundary.len(), need);
    let keep = match cfg.tie_mode {
        TieMode::Deterministic => 1,
        TieMode::Enumerated => cfg.tie_cap.max(1),
    };
    let mut winner_sets: Vec<CandidateSet> = combinations(boundary.len(), need)
        .take(keep)
        .map(|pick| pick.iter().fold(above, |w, i| w.with(boundary[i.index()])))
        .collect();
    winner_sets.sort();
    let objective = winner_sets[0].iter().map(|c| weights[c.index()].clone()).sum();
    WinnerReport {
        rule,
        seats,
        truncated: cfg.tie_mode == TieMode::Enumerated && total > winner_sets.len() as u128,
        winner_sets,
        trace: Vec::new(),
        tie_mode: cfg.tie_mode,
        all_tied: false,
        objective: Some(objective),
    }
}

/// Approval voting: the `S` most approved candidates.
pub fn av(e: &Election, cfg: &RuleConfig) -> WinnerReport {
    let weights = e.candidates().map(|c| int(e.approval_score(c))).collect();
    top_seats(e, cfg, Rule::Av, weights)
}

/// Satisfaction approval voting: each ballot splits one unit of weight
/// evenly among its approved candidates. Empty ballots weigh nothing.
pub fn sav(e: &Election, cfg: &RuleConfig) -> WinnerReport {
    let weights = e
        .candidates()
        .map(|c| {
            e.profile()
                .iter()
                .filter(|(y, _)| y.contains(c))
                .map(|&(y, n)| int(n) / int(y.len() as u64))
                .sum()
        })
        .collect();
    top_seats(e, cfg, Rule::Sav, weights)
}

pub(crate) fn scan<F>(e: &Election, cfg: &RuleConfig, rule: Rule, maximize: bool, score: F) -> Result<WinnerReport, RuleError>
where
    F: Fn(CandidateSet) -> Rational,
{
    check_cap(e.num_candidates(), e.seats(), cfg.subset_cap)?;
    let mut best = Best::new(maximize, cfg);
    for w in combinations(e.num_candidates(), e.seats()) {
        best.offer(w, score(w));
    }
    let (winner_sets, truncated) = best.family(cfg.tie_mode);
    Ok(WinnerReport {
        rule,
        seats: e.seats(),
        winner_sets,
        trace: Vec::new(),
        tie_mode: cfg.tie_mode,
        all_tied: false,
        truncated,
        objective: best.value,
    })
}

/// Largest Hamming distance from `w` to any cast ballot.
pub fn max_hamming(e: &Election, w: CandidateSet) -> u64 {
    e.profile()
        .iter()
        .map(|&(y, _)| (y.difference(w).len() + w.difference(y).len()) as u64)
        .max()
        .unwrap_or(0)
}

/// Minimax approval voting.
pub fn mav(e: &Election, cfg: &RuleConfig) -> Result<WinnerReport, RuleError> {
    scan(e, cfg, Rule::Mav, false, |w| int(max_hamming(e, w)))
}

/// `Σ B(y) · (1 + 1/2 + ... + 1/|y ∩ W|)`.
pub fn pav_score(e: &Election, w: CandidateSet) -> Rational {
    e.profile()
        .iter()
        .map(|&(y, n)| int(n) * harmonic(y.intersection(w).len()))
        .sum()
}

/// Proportional approval voting.
pub fn pav(e: &Election, cfg: &RuleConfig) -> Result<WinnerReport, RuleError> {
    scan(e, cfg, Rule::Pav, true, |w| pav_score(e, w))
}
