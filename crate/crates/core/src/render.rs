//! Text renderings of winner reports, apportionments and axiom verdicts.
//!
//! The machine format is line-oriented `key: value` with exact `p/q`
//! fractions. The table format is for people: decimals to two places.

use std::fmt::Write;

use crate::axioms::{AxiomVerdict, Status, Witness};
use crate::model::{CandidateSet, ClosedListElection, Election};
use crate::rational::{to_decimal, to_fraction, Rational};
use crate::rules::{Apportionment, TieMode, WinnerReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Table,
    Machine,
}

fn labels(e: &Election, w: CandidateSet) -> String {
    w.iter().map(|c| e.label(c)).collect::<Vec<_>>().join(" ")
}

fn braces(e: &Election, w: CandidateSet) -> String {
    format!("{{{}}}", w.iter().map(|c| e.label(c)).collect::<Vec<_>>().join(", "))
}

fn tie_name(mode: TieMode) -> &'static str {
    match mode {
        TieMode::Deterministic => "det",
        TieMode::Enumerated => "enum",
    }
}

fn dec(r: &Rational) -> String {
    to_decimal(r, 2)
}

pub fn render_report(e: &Election, r: &WinnerReport, format: Format, trace: bool) -> String {
    let mut out = String::new();
    match format {
        Format::Machine => {
            let _ = writeln!(out, "rule: {}", r.rule);
            let _ = writeln!(out, "seats: {}", r.seats);
            let _ = writeln!(out, "ties: {}", tie_name(r.tie_mode));
            let _ = writeln!(out, "all_tied: {}", r.all_tied);
            let _ = writeln!(out, "truncated: {}", r.truncated);
            for w in &r.winner_sets {
                let _ = writeln!(out, "winners: {}", labels(e, *w));
            }
            if let Some(v) = &r.objective {
                let _ = writeln!(out, "objective: {}", to_fraction(v));
            }
            if trace {
                for it in &r.trace {
                    let values: Vec<String> = it
                        .values
                        .iter()
                        .map(|(c, v)| format!("{}={}", e.label(*c), to_fraction(v)))
                        .collect();
                    let _ = writeln!(
                        out,
                        "iteration: {} chosen={} {}",
                        it.iteration,
                        e.label(it.chosen),
                        values.join(" ")
                    );
                }
            }
        }
        Format::Table => {
            let _ = writeln!(
                out,
                "{} with {} seats (ties: {})",
                r.rule.name().to_uppercase(),
                r.seats,
                tie_name(r.tie_mode)
            );
            if r.all_tied && r.winner_sets.is_empty() {
                let _ = writeln!(out, "every committee of {} candidates is tied", r.seats);
            } else if r.all_tied {
                let _ = writeln!(out, "every committee is tied; first: {}", braces(e, r.winner_sets[0]));
            } else if r.winner_sets.len() == 1 {
                let _ = writeln!(out, "winners: {}", braces(e, r.winner_sets[0]));
            } else {
                let _ = writeln!(out, "{} tied winner sets:", r.winner_sets.len());
                for w in &r.winner_sets {
                    let _ = writeln!(out, "  {}", braces(e, *w));
                }
            }
            if r.truncated {
                let _ = writeln!(out, "(tie family truncated)");
            }
            if let Some(v) = &r.objective {
                let _ = writeln!(out, "objective: {}", dec(v));
            }
            if trace && !r.trace.is_empty() {
                let width = e.labels().iter().map(|l| l.len()).max().unwrap_or(1).max(10);
                let _ = write!(out, "{:>5}", "iter");
                for l in e.labels() {
                    let _ = write!(out, " {l:>width$}");
                }
                let _ = writeln!(out, "  chosen");
                for it in &r.trace {
                    let _ = write!(out, "{:>5}", it.iteration);
                    for c in e.candidates() {
                        let cell = it.value_of(c).map(dec).unwrap_or_else(|| "-".to_string());
                        let _ = write!(out, " {cell:>width$}");
                    }
                    let _ = writeln!(out, "  {}", e.label(it.chosen));
                }
            }
        }
    }
    out
}

pub fn render_apportionment(e: &Election, cle: &ClosedListElection, a: &Apportionment, format: Format) -> String {
    let mut out = String::new();
    let list_name = |j: usize| {
        let l = &cle.lists()[j];
        format!("{}..{}", e.label(l[0]), e.label(*l.last().expect("lists are non-empty")))
    };
    match format {
        Format::Machine => {
            let _ = writeln!(out, "rule: dhondt");
            let _ = writeln!(out, "seats: {}", cle.seats());
            for (j, s) in a.seats.iter().enumerate() {
                let _ = writeln!(out, "list: {} votes={} seats={}", list_name(j), cle.votes()[j], s);
            }
            let _ = writeln!(out, "winners: {}", labels(e, a.elected));
            for (i, row) in a.quotients.iter().enumerate() {
                let cells: Vec<String> = row.iter().map(to_fraction).collect();
                let _ = writeln!(out, "quotients: {} {}", i + 1, cells.join(" "));
            }
            for (i, j) in &a.awarded {
                let _ = writeln!(out, "awarded: {} {}", i + 1, list_name(*j));
            }
        }
        Format::Table => {
            let width = 12;
            let _ = write!(out, "{:>8}", "divisor");
            for j in 0..cle.lists().len() {
                let _ = write!(out, " {:>width$}", list_name(j));
            }
            let _ = writeln!(out);
            for (i, row) in a.quotients.iter().enumerate() {
                let _ = write!(out, "{:>8}", i + 1);
                for (j, q) in row.iter().enumerate() {
                    let mark = if a.awarded.contains(&(i, j)) { "*" } else { " " };
                    let _ = write!(out, " {:>w$}{mark}", dec(q), w = width - 1);
                }
                let _ = writeln!(out);
            }
            let _ = write!(out, "{:>8}", "seats");
            for s in &a.seats {
                let _ = write!(out, " {s:>width$}");
            }
            let _ = writeln!(out);
            let _ = writeln!(out, "elected: {}", braces(e, a.elected));
        }
    }
    out
}

fn ballot_list(e: &Election, ballots: &[CandidateSet]) -> String {
    ballots.iter().map(|y| braces(e, *y)).collect::<Vec<_>>().join(" ")
}

pub fn render_verdict(e: &Election, rule: &str, v: &AxiomVerdict) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "rule: {rule}");
    let _ = writeln!(out, "axiom: {}", v.axiom);
    let _ = writeln!(out, "status: {}", v.status.label());
    if let Status::Inconclusive(reason) = &v.status {
        let _ = writeln!(out, "reason: {reason}");
    }
    if let Some(w) = &v.witness {
        match w {
            Witness::Jr {
                committee,
                candidate,
                ballots,
                mass,
            } => {
                let _ = writeln!(out, "committee: {}", labels(e, *committee));
                let _ = writeln!(out, "candidate: {}", e.label(*candidate));
                let _ = writeln!(out, "ballots: {}", ballot_list(e, ballots));
                let _ = writeln!(out, "voters: {mass}");
            }
            Witness::Ejr {
                committee,
                ell,
                common,
                ballots,
                mass,
            } => {
                let _ = writeln!(out, "committee: {}", labels(e, *committee));
                let _ = writeln!(out, "ell: {ell}");
                let _ = writeln!(out, "common: {}", labels(e, *common));
                let _ = writeln!(out, "ballots: {}", ballot_list(e, ballots));
                let _ = writeln!(out, "voters: {mass}");
            }
            Witness::LowerQuota {
                committee,
                common,
                ballots,
                quota,
                floor,
                represented,
            } => {
                let _ = writeln!(out, "committee: {}", labels(e, *committee));
                let _ = writeln!(out, "common: {}", labels(e, *common));
                let _ = writeln!(out, "ballots: {}", ballot_list(e, ballots));
                let _ = writeln!(out, "q: {} ({})", to_fraction(quota), dec(quota));
                let _ = writeln!(out, "floor_q: {floor}");
                let _ = writeln!(out, "represented: {represented}");
            }
            Witness::House { smaller, larger } => {
                for w in smaller {
                    let _ = writeln!(out, "winners_s: {}", labels(e, *w));
                }
                for w in larger {
                    let _ = writeln!(out, "winners_s_plus_1: {}", labels(e, *w));
                }
            }
            Witness::Population {
                condition,
                group,
                moved,
                modified,
                before,
                after,
            } => {
                let _ = writeln!(out, "condition: {condition}");
                let _ = writeln!(out, "group: {}", labels(e, *group));
                if let Some(y) = moved {
                    let _ = writeln!(out, "moved_ballot: {}", braces(e, *y));
                }
                for w in before {
                    let _ = writeln!(out, "winners_before: {}", labels(e, *w));
                }
                for w in after {
                    let _ = writeln!(out, "winners_after: {}", labels(modified, *w));
                }
            }
            Witness::ClosedList { expected, observed } => {
                let fmt = |v: &Vec<usize>| v.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" ");
                let _ = writeln!(out, "dhondt_seats: {}", fmt(expected));
                for o in observed {
                    let _ = writeln!(out, "rule_seats: {}", fmt(o));
                }
            }
        }
    }
    for (w, s) in &v.per_outcome {
        let _ = writeln!(out, "outcome: {} {}", labels(e, *w), s.label());
    }
    out
}
