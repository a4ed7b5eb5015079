//! OODH: the committee of size `S` with the largest max-min support.

use crate::model::Election;
use crate::rational::int;
use crate::support::{maxmin_support_with, maxmin_value, SolverPath};

use super::report::WinnerReport;
use super::subsets::{check_cap, combinations, Best};
use super::{Rule, RuleConfig, RuleError};

pub fn oodh(e: &Election, cfg: &RuleConfig) -> Result<WinnerReport, RuleError> {
    let n = e.num_candidates();
    let seats = e.seats();
    check_cap(n, seats, cfg.subset_cap)?;
    let approvals: Vec<u64> = e.candidates().map(|c| e.approval_score(c)).collect();
    let mut best = Best::new(true, cfg);
    for w in combinations(n, seats) {
        // maxMin(W) never exceeds the weakest member's approval score
        let bound = w.iter().map(|c| approvals[c.index()]).min().unwrap_or(0);
        if !best.admits(&int(bound)) {
            continue;
        }
        let v = match cfg.solver {
            SolverPath::Flow => maxmin_value(e, w)?,
            SolverPath::Simplex => maxmin_support_with(e, w, cfg.solver)?.value,
        };
        best.offer(w, v);
    }
    let (winner_sets, truncated) = best.family(cfg.tie_mode);
    Ok(WinnerReport {
        rule: Rule::Oodh,
        seats,
        winner_sets,
        trace: Vec::new(),
        tie_mode: cfg.tie_mode,
        all_tied: false,
        truncated,
        objective: best.value,
    })
}
