//! Seeded random elections and a counterexample search with greedy
//! shrinking.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{BallotType, CandidateId, CandidateSet, Election};
use crate::rules::{Rule, RuleConfig};

use super::{check_rule, Axiom, AxiomCaps, AxiomVerdict, Status};

/// Size limits for generated elections. All bounds are inclusive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorBounds {
    pub min_candidates: usize,
    pub max_candidates: usize,
    pub max_seats: usize,
    pub max_ballot_types: usize,
    pub max_count: u64,
}

impl Default for GeneratorBounds {
    fn default() -> Self {
        GeneratorBounds {
            min_candidates: 2,
            max_candidates: 6,
            max_seats: 4,
            max_ballot_types: 8,
            max_count: 50,
        }
    }
}

/// A deterministic stream of random elections.
#[derive(Clone, Debug)]
pub struct ElectionGenerator {
    seed: u64,
    bounds: GeneratorBounds,
    rng: ChaCha8Rng,
}

/// `a, b, c, ...` then `c27, c28, ...`.
pub fn default_labels(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| {
            if i < 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("c{}", i + 1)
            }
        })
        .collect()
}

impl ElectionGenerator {
    pub fn new(seed: u64, bounds: GeneratorBounds) -> Self {
        assert!(bounds.min_candidates >= 1 && bounds.min_candidates <= bounds.max_candidates);
        assert!(bounds.max_seats >= 1 && bounds.max_ballot_types >= 1 && bounds.max_count >= 1);
        ElectionGenerator {
            seed,
            bounds,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn bounds(&self) -> &GeneratorBounds {
        &self.bounds
    }

    /// The next approval election: random non-empty ballot types with
    /// positive counts; the voter count equals the ballots cast.
    pub fn next_election(&mut self) -> Election {
        let b = &self.bounds;
        let n = self.rng.gen_range(b.min_candidates..=b.max_candidates);
        let seats = self.rng.gen_range(1..=b.max_seats.min(n));
        let types = self.rng.gen_range(1..=b.max_ballot_types);
        let mut ballots = Vec::with_capacity(types);
        for _ in 0..types {
            let mut y = CandidateSet::empty();
            while y.is_empty() {
                for c in 0..n {
                    if self.rng.gen_bool(0.4) {
                        y.insert(CandidateId(c));
                    }
                }
            }
            ballots.push((y, self.rng.gen_range(1..=b.max_count)));
        }
        Election::new(default_labels(n), seats, ballots, None).expect("generated election is valid")
    }

    /// The next closed-list-shaped election: up to `max_lists` disjoint lists
    /// of `S` or `S + 1` candidates each.
    pub fn next_closed_list(&mut self, max_lists: usize) -> Election {
        let b = &self.bounds;
        let seats = self.rng.gen_range(1..=b.max_seats);
        let lists = self.rng.gen_range(1..=max_lists);
        let mut next = 0;
        let mut ballots = Vec::with_capacity(lists);
        for _ in 0..lists {
            let len = seats + self.rng.gen_range(0..=1);
            let list: CandidateSet = (next..next + len).map(CandidateId).collect();
            next += len;
            ballots.push((list, self.rng.gen_range(1..=b.max_count)));
        }
        Election::new(default_labels(next), seats, ballots, None).expect("generated election is valid")
    }
}

impl Iterator for ElectionGenerator {
    type Item = Election;

    fn next(&mut self) -> Option<Election> {
        Some(self.next_election())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    /// 0-based index of the violating trial.
    pub trial: usize,
    pub original: Election,
    /// The shrunk election, still violating.
    pub election: Election,
    pub verdict: AxiomVerdict,
}

fn violation(
    rule: Rule,
    axiom: Axiom,
    e: &Election,
    cfg: &RuleConfig,
    caps: &AxiomCaps,
) -> Option<AxiomVerdict> {
    match check_rule(rule, axiom, e, cfg, caps) {
        Ok(v) if v.status == Status::Violated => Some(v),
        // unmet preconditions and caps simply skip the trial
        _ => None,
    }
}

/// Drops candidate `c` from the roster and from every ballot.
fn without_candidate(e: &Election, c: CandidateId) -> Option<Election> {
    if e.num_candidates() <= e.seats() {
        return None;
    }
    let labels: Vec<String> = e
        .labels()
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != c.index())
        .map(|(_, l)| l.clone())
        .collect();
    let remap = |y: BallotType| -> BallotType {
        y.iter()
            .filter(|x| *x != c)
            .map(|x| CandidateId(if x.index() > c.index() { x.index() - 1 } else { x.index() }))
            .collect()
    };
    let ballots = e.profile().iter().map(|&(y, n)| (remap(y), n));
    Election::new(labels, e.seats(), ballots, Some(e.total_voters())).ok()
}

fn with_count(e: &Election, y: BallotType, count: u64) -> Option<Election> {
    let delta = count as i64 - e.count(y) as i64;
    let e2 = e.adjusted(&[(y, delta)], delta).ok()?;
    (e2.ballots_cast() > 0).then_some(e2)
}

/// Candidate simplifications of `e`, most aggressive first.
fn shrink_steps(e: &Election) -> Vec<Election> {
    let mut out = Vec::new();
    for &(y, _) in e.profile() {
        out.extend(with_count(e, y, 0));
    }
    for c in e.candidates().collect::<Vec<_>>().into_iter().rev() {
        out.extend(without_candidate(e, c));
    }
    for &(y, n) in e.profile() {
        if n > 1 {
            out.extend(with_count(e, y, n / 2));
            out.extend(with_count(e, y, n - 1));
        }
    }
    out
}

/// Greedily applies simplifications that keep the violation.
fn shrink(
    rule: Rule,
    axiom: Axiom,
    mut e: Election,
    mut verdict: AxiomVerdict,
    cfg: &RuleConfig,
    caps: &AxiomCaps,
) -> (Election, AxiomVerdict) {
    'outer: loop {
        for candidate in shrink_steps(&e) {
            if let Some(v) = violation(rule, axiom, &candidate, cfg, caps) {
                e = candidate;
                verdict = v;
                continue 'outer;
            }
        }
        return (e, verdict);
    }
}

/// Checks `trials` generated elections in order and returns the first
/// violation, shrunk. Elections failing the axiom's preconditions are
/// skipped; the result depends only on the seed and bounds.
pub fn search_counterexample(
    rule: Rule,
    axiom: Axiom,
    generator: &mut ElectionGenerator,
    trials: usize,
    cfg: &RuleConfig,
    caps: &AxiomCaps,
) -> Option<Counterexample> {
    for trial in 0..trials {
        let e = if axiom == Axiom::ClosedList {
            generator.next_closed_list(4)
        } else {
            generator.next_election()
        };
        if let Some(v) = violation(rule, axiom, &e, cfg, caps) {
            let (election, verdict) = shrink(rule, axiom, e.clone(), v, cfg, caps);
            return Some(Counterexample {
                trial,
                original: e,
                election,
                verdict,
            });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::replay;

    #[test]
    fn generator_is_deterministic() {
        let a: Vec<Election> = ElectionGenerator::new(9, GeneratorBounds::default()).take(20).collect();
        let b: Vec<Election> = ElectionGenerator::new(9, GeneratorBounds::default()).take(20).collect();
        assert_eq!(a, b);
        for e in &a {
            assert!(e.num_candidates() <= 6 && e.seats() <= 4 && e.profile().len() <= 8);
        }
        let mut g = ElectionGenerator::new(3, GeneratorBounds::default());
        for _ in 0..20 {
            assert!(g.next_closed_list(4).as_closed_list().is_some());
        }
    }

    #[test]
    fn finds_av_jr_failure() {
        let cfg = RuleConfig::enumerated();
        let caps = AxiomCaps::default();
        let mut g = ElectionGenerator::new(1, GeneratorBounds::default());
        let found = search_counterexample(Rule::Av, Axiom::Jr, &mut g, 2000, &cfg, &caps).unwrap();
        assert!(replay(&found.election, &found.verdict, None));
        assert!(found.election.ballots_cast() <= found.original.ballots_cast());
    }

    #[test]
    fn shrinking_drops_candidates() {
        let e = crate::catalog::sigma_a();
        let smaller = without_candidate(&e, e.id_of("b").unwrap()).unwrap();
        assert_eq!(smaller.num_candidates(), 6);
        assert_eq!(smaller.total_voters(), 45000);
        assert_eq!(smaller.approval_score(smaller.id_of("a").unwrap()), 16000);
    }
}
