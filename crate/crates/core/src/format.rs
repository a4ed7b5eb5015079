//! The election text format.
//!
//! ```text
//! # comment
//! candidates: a b c d
//! seats: 2
//! voters: 120          # optional, defaults to the ballots cast
//! ballot 40: a b
//! ballot 25: c
//! ballot 5:            # blank ballot
//! ```

use thiserror::Error;

use crate::model::{CandidateSet, Election, ElectionError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("{line}:{col}: syntax error: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error("{line}:{col}: unknown candidate `{label}`")]
    UnknownCandidate { line: usize, col: usize, label: String },
    #[error("{line}:{col}: duplicate `{header}:` header")]
    DuplicateHeader { line: usize, col: usize, header: String },
    #[error("{line}:{col}: declared {declared} voters but {counted} ballots are cast")]
    VoterCountTooSmall {
        line: usize,
        col: usize,
        declared: u64,
        counted: u64,
    },
    #[error("{line}:{col}: {source}")]
    Invalid {
        line: usize,
        col: usize,
        source: ElectionError,
    },
}

impl ParseError {
    /// `(line, column)`, both 1-based.
    pub fn position(&self) -> (usize, usize) {
        match self {
            ParseError::Syntax { line, col, .. }
            | ParseError::UnknownCandidate { line, col, .. }
            | ParseError::DuplicateHeader { line, col, .. }
            | ParseError::VoterCountTooSmall { line, col, .. }
            | ParseError::Invalid { line, col, .. } => (*line, *col),
        }
    }
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(text: &str, offset: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in text.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s, &text[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &text[s..]));
    }
    out.into_iter()
        .map(|(s, t)| (offset + text[..s].chars().count() + 1, t))
        .collect()
}

struct Header<T> {
    value: Option<(T, usize, usize)>,
}

impl<T> Header<T> {
    fn set(&mut self, name: &str, v: T, line: usize, col: usize) -> Result<(), ParseError> {
        if self.value.is_some() {
            return Err(ParseError::DuplicateHeader {
                line,
                col,
                header: name.to_string(),
            });
        }
        self.value = Some((v, line, col));
        Ok(())
    }
}

fn number(tok: Option<&(usize, &str)>, line: usize, eol: usize, what: &str) -> Result<u64, ParseError> {
    let &(col, text) = tok.ok_or_else(|| ParseError::Syntax {
        line,
        col: eol,
        message: format!("expected {what}"),
    })?;
    if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseError::Syntax {
            line,
            col,
            message: format!("expected {what}, found `{text}`"),
        });
    }
    text.parse().map_err(|_| ParseError::Syntax {
        line,
        col,
        message: format!("{what} `{text}` is out of range"),
    })
}

/// Parses the election text format. Diagnostics carry 1-based line and
/// column numbers.
pub fn parse_election(input: &str) -> Result<Election, ParseError> {
    let mut labels: Header<Vec<String>> = Header { value: None };
    let mut seats: Header<u64> = Header { value: None };
    let mut voters: Header<u64> = Header { value: None };
    let mut ballots: Vec<(CandidateSet, u64)> = Vec::new();
    let mut last_line = 1;

    for (idx, raw) in input.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let eol = content.trim_end().chars().count() + 1;
        let Some(colon) = content.find(':') else {
            let col = content.len() - content.trim_start().len() + 1;
            return Err(ParseError::Syntax {
                line,
                col,
                message: "expected `key: value`".to_string(),
            });
        };
        let head = tokens(&content[..colon], 0);
        let body_offset = content[..colon + 1].chars().count();
        let body = tokens(&content[colon + 1..], body_offset);
        let Some(&(key_col, key)) = head.first() else {
            return Err(ParseError::Syntax {
                line,
                col: 1,
                message: "missing key before `:`".to_string(),
            });
        };
        match key {
            "candidates" | "seats" | "voters" if head.len() > 1 => {
                return Err(ParseError::Syntax {
                    line,
                    col: head[1].0,
                    message: format!("unexpected `{}`", head[1].1),
                });
            }
            "candidates" => {
                if body.is_empty() {
                    return Err(ParseError::Syntax {
                        line,
                        col: eol,
                        message: "expected at least one candidate".to_string(),
                    });
                }
                let list = body.iter().map(|(_, t)| t.to_string()).collect();
                labels.set(key, list, line, key_col)?;
            }
            "seats" | "voters" => {
                let v = number(body.first(), line, eol, key)?;
                if let Some(&(col, extra)) = body.get(1) {
                    return Err(ParseError::Syntax {
                        line,
                        col,
                        message: format!("unexpected `{extra}`"),
                    });
                }
                if key == "seats" {
                    seats.set(key, v, line, key_col)?;
                } else {
                    voters.set(key, v, line, key_col)?;
                }
            }
            "ballot" => {
                let count = number(head.get(1), line, colon + 1, "ballot count")?;
                if let Some(&(col, extra)) = head.get(2) {
                    return Err(ParseError::Syntax {
                        line,
                        col,
                        message: format!("unexpected `{extra}`"),
                    });
                }
                if count == 0 {
                    return Err(ParseError::Syntax {
                        line,
                        col: head[1].0,
                        message: "ballot counts must be positive".to_string(),
                    });
                }
                let Some((names, _, _)) = &labels.value else {
                    return Err(ParseError::Syntax {
                        line,
                        col: key_col,
                        message: "ballot before the `candidates:` header".to_string(),
                    });
                };
                let mut set = CandidateSet::empty();
                for &(col, label) in &body {
                    let pos = names.iter().position(|n| n == label).ok_or_else(|| {
                        ParseError::UnknownCandidate {
                            line,
                            col,
                            label: label.to_string(),
                        }
                    })?;
                    set.insert(crate::model::CandidateId(pos));
                }
                ballots.push((set, count));
            }
            other => {
                return Err(ParseError::Syntax {
                    line,
                    col: key_col,
                    message: format!("unknown key `{other}`"),
                });
            }
        }
    }

    let missing = |what: &str| ParseError::Syntax {
        line: last_line,
        col: 1,
        message: format!("missing `{what}:` header"),
    };
    let (names, cand_line, cand_col) = labels.value.ok_or_else(|| missing("candidates"))?;
    let (seat_count, seat_line, seat_col) = seats.value.ok_or_else(|| missing("seats"))?;
    let counted: u64 = ballots.iter().map(|(_, n)| n).sum();
    if let Some((declared, line, col)) = voters.value {
        if declared < counted {
            return Err(ParseError::VoterCountTooSmall {
                line,
                col,
                declared,
                counted,
            });
        }
    }
    Election::new(names, seat_count as usize, ballots, voters.value.map(|v| v.0)).map_err(|source| {
        let (line, col) = match source {
            ElectionError::SeatsOutOfRange { .. } => (seat_line, seat_col),
            _ => (cand_line, cand_col),
        };
        ParseError::Invalid { line, col, source }
    })
}

/// Writes an election in the text format; `parse_election` reads it back to
/// an equal election.
pub fn emit_election(e: &Election) -> String {
    let mut out = String::new();
    out.push_str("candidates: ");
    out.push_str(&e.labels().join(" "));
    out.push('\n');
    out.push_str(&format!("seats: {}\n", e.seats()));
    out.push_str(&format!("voters: {}\n", e.total_voters()));
    for &(y, n) in e.profile() {
        let names: Vec<&str> = y.iter().map(|c| e.label(c)).collect();
        if names.is_empty() {
            out.push_str(&format!("ballot {n}:\n"));
        } else {
            out.push_str(&format!("ballot {n}: {}\n", names.join(" ")));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    const SIGMA_A: &str = "\
# seven candidates, three seats
candidates: a b c d e f g
seats: 3
voters: 45000
ballot 10000: a b
ballot 6000: a c
ballot 4000: b
ballot 5500: c
ballot 9500: d
ballot 5000: e f g
ballot 3000: e
";

    #[test]
    fn parses_sigma_a() {
        let e = parse_election(SIGMA_A).unwrap();
        assert_eq!(e, catalog::sigma_a());
    }

    #[test]
    fn round_trips_catalog() {
        for name in catalog::NAMES {
            let e = catalog::by_name(name).unwrap();
            assert_eq!(parse_election(&emit_election(&e)).unwrap(), e, "{name}");
        }
    }

    #[test]
    fn blank_ballots_and_comments() {
        let e = parse_election("candidates: a b\nseats: 1\nballot 2:   # nobody\nballot 1: b\n").unwrap();
        assert_eq!(e.ballots_cast(), 3);
        assert_eq!(e.count(CandidateSet::empty()), 2);
        assert_eq!(parse_election(&emit_election(&e)).unwrap(), e);
    }

    #[test]
    fn diagnostics() {
        let zero = parse_election("candidates: a\nseats: 1\nballot 0: a\n").unwrap_err();
        assert!(matches!(zero, ParseError::Syntax { line: 3, col: 8, .. }), "{zero:?}");

        let small = parse_election("candidates: a b\nseats: 1\nvoters: 100\nballot 120: a\n").unwrap_err();
        assert!(matches!(
            small,
            ParseError::VoterCountTooSmall {
                declared: 100,
                counted: 120,
                line: 3,
                ..
            }
        ));

        let unknown = parse_election("candidates: a b\nseats: 1\nballot 3: a  zz\n").unwrap_err();
        assert_eq!(
            unknown,
            ParseError::UnknownCandidate {
                line: 3,
                col: 14,
                label: "zz".to_string()
            }
        );

        let dup = parse_election("candidates: a b\nseats: 1\n  seats: 2\n").unwrap_err();
        assert_eq!(dup.position(), (3, 3));
        assert!(matches!(dup, ParseError::DuplicateHeader { .. }));

        let bad = parse_election("candidates: a b\nseats: 3\nballot 1: a\n").unwrap_err();
        assert!(matches!(bad, ParseError::Invalid { line: 2, .. }));

        assert!(parse_election("seats: 1\n").is_err());
        assert!(parse_election("candidates: a\nseats: x\n").is_err());
        assert!(parse_election("candidates: a\nseats: 1\nvotes 3: a\n").is_err());
        assert!(parse_election("ballot 1: a\ncandidates: a\nseats: 1\n").is_err());
    }
}
