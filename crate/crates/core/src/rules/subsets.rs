//! Size-`k` subset enumeration in lexicographic order, shared by every rule
//! that scans committees.

use crate::model::{CandidateId, CandidateSet};
use crate::rational::Rational;

use super::{RuleConfig, RuleError, TieMode};

/// `n choose k`, saturating.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// All `k`-subsets of `{0..n}` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Combinations {
    Combinations {
        n,
        idx: (0..k).collect(),
        done: k > n,
    }
}

pub struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Iterator for Combinations {
    type Item = CandidateSet;

    fn next(&mut self) -> Option<CandidateSet> {
        if self.done {
            return None;
        }
        let out = self.idx.iter().map(|&i| CandidateId(i)).collect();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

pub(crate) fn check_cap(n: usize, k: usize, cap: u64) -> Result<(), RuleError> {
    let count = binomial(n, k);
    if count > cap as u128 {
        return Err(RuleError::InstanceTooLarge { subsets: count, cap });
    }
    Ok(())
}

/// Keeps the best-scoring sets seen so far, in arrival order.
pub(crate) struct Best {
    maximize: bool,
    pub value: Option<Rational>,
    pub sets: Vec<CandidateSet>,
    pub count: u64,
    keep: usize,
}

impl Best {
    pub fn new(maximize: bool, cfg: &RuleConfig) -> Self {
        Best {
            maximize,
            value: None,
            sets: Vec::new(),
            count: 0,
            keep: match cfg.tie_mode {
                TieMode::Deterministic => 1,
                TieMode::Enumerated => cfg.tie_cap.max(1),
            },
        }
    }

    /// Whether `v` could still tie or beat the incumbent.
    pub fn admits(&self, v: &Rational) -> bool {
        match &self.value {
            None => true,
            Some(b) if self.maximize => v >= b,
            Some(b) => v <= b,
        }
    }

    pub fn offer(&mut self, set: CandidateSet, v: Rational) {
        let better = match &self.value {
            None => true,
            Some(b) if self.maximize => v > *b,
            Some(b) => v < *b,
        };
        if better {
            self.value = Some(v);
            self.sets.clear();
            self.count = 0;
        } else if self.value.as_ref() != Some(&v) {
            return;
        }
        self.count += 1;
        if self.sets.len() < self.keep {
            self.sets.push(set);
        }
    }

    /// `(sets, truncated)`: truncation only counts in enumerated mode.
    pub fn family(&self, mode: TieMode) -> (Vec<CandidateSet>, bool) {
        let mut sets = self.sets.clone();
        sets.sort();
        let truncated = mode == TieMode::Enumerated && self.count as usize > sets.len();
        (sets, truncated)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(64, 32), 1832624140942590534);
    }

    #[test]
    fn lexicographic_enumeration() {
        let all: Vec<CandidateSet> = combinations(4, 2).collect();
        assert_eq!(all.len(), 6);
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
        assert_eq!(combinations(3, 0).count(), 1);
        assert_eq!(combinations(3, 3).count(), 1);
        assert_eq!(combinations(2, 3).count(), 0);
    }
}
