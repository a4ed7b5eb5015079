//! Representation rules: Chamberlin–Courant and Monroe, each in a
//! Harsanyi (utilitarian) and a Rawlsian (zero-misrepresentation) variant.

use crate::model::{CandidateSet, Election};
use crate::rational::int;

use super::approval::scan;
use super::monroe::monroe_assignment;
use super::report::WinnerReport;
use super::subsets::combinations;
use super::{Rule, RuleConfig, RuleError, TieMode};

/// Voters approving no member of `w`.
pub fn uncovered(e: &Election, w: CandidateSet) -> u64 {
    e.profile()
        .iter()
        .filter(|(y, _)| !y.intersects(w))
        .map(|(_, n)| n)
        .sum()
}

pub fn ccha(e: &Election, cfg: &RuleConfig) -> Result<WinnerReport, RuleError> {
    scan(e, cfg, Rule::Ccha, false, |w| int(uncovered(e, w)))
}

fn monroe_cost(e: &Election, w: CandidateSet) -> u64 {
    monroe_assignment(e, w)
        .expect("committees from the scan have S members")
        .misrepresentation
}

pub fn mha(e: &Election, cfg: &RuleConfig) -> Result<WinnerReport, RuleError> {
    scan(e, cfg, Rule::Mha, false, |w| int(monroe_cost(e, w)))
}

/// Keeps the zero-misrepresentation optima; otherwise every committee ties.
fn rawlsian(e: &Election, cfg: &RuleConfig, rule: Rule, mut report: WinnerReport) -> WinnerReport {
    report.rule = rule;
    if report.objective != Some(int(0)) {
        report.all_tied = true;
        report.truncated = false;
        report.winner_sets = match cfg.tie_mode {
            TieMode::Deterministic => combinations(e.num_candidates(), e.seats()).take(1).collect(),
            TieMode::Enumerated => Vec::new(),
        };
    }
    report
}

pub fn ccra(e: &Election, cfg: &RuleConfig) -> Result<WinnerReport, RuleError> {
    Ok(rawlsian(e, cfg, Rule::Ccra, ccha(e, cfg)?))
}

pub fn mra(e: &Election, cfg: &RuleConfig) -> Result<WinnerReport, RuleError> {
    Ok(rawlsian(e, cfg, Rule::Mra, mha(e, cfg)?))
}
