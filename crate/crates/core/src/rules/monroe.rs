//! Monroe's balanced assignment of voters to winners, solved as a min-cost
//! transportation problem.

use std::collections::BTreeMap;

use crate::model::{BallotType, CandidateId, CandidateSet, Election};

use super::RuleError;

/// An optimal Monroe assignment for a fixed committee.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonroeAssignment {
    /// Voters of each ballot type represented by each winner.
    pub shares: BTreeMap<(BallotType, CandidateId), u64>,
    /// Voters assigned to a winner they do not approve.
    pub misrepresentation: u64,
    pub loads: Vec<(CandidateId, u64)>,
}

#[derive(Clone, Debug)]
struct Arc {
    to: usize,
    cap: u64,
    cost: i64,
}

/// Successive shortest paths with Bellman-Ford, so negative arc costs are fine
/// as long as the initial network has no negative cycle.
struct CostNetwork {
    arcs: Vec<Arc>,
    adj: Vec<Vec<usize>>,
}

impl CostNetwork {
    fn new(nodes: usize) -> Self {
        CostNetwork {
            arcs: Vec::new(),
            adj: vec![Vec::new(); nodes],
        }
    }

    fn add(&mut self, from: usize, to: usize, cap: u64, cost: i64) -> usize {
        let id = self.arcs.len();
        self.arcs.push(Arc { to, cap, cost });
        self.adj[from].push(id);
        self.arcs.push(Arc {
            to: from,
            cap: 0,
            cost: -cost,
        });
        self.adj[to].push(id + 1);
        id
    }

    fn flow(&self, id: usize) -> u64 {
        self.arcs[id ^ 1].cap
    }

    /// Sends up to `want` units from `s` to `t` at minimum cost; returns the
    /// amount sent.
    fn min_cost_flow(&mut self, s: usize, t: usize, want: u64) -> u64 {
        let n = self.adj.len();
        let mut sent = 0;
        while sent < want {
            let mut dist = vec![i64::MAX; n];
            let mut via = vec![usize::MAX; n];
            dist[s] = 0;
            for _ in 0..n {
                let mut changed = false;
                for u in 0..n {
                    if dist[u] == i64::MAX {
                        continue;
                    }
                    for &id in &self.adj[u] {
                        let a = &self.arcs[id];
                        if a.cap > 0 && dist[u] + a.cost < dist[a.to] {
                            dist[a.to] = dist[u] + a.cost;
                            via[a.to] = id;
                            changed = true;
                        }
                    }
                }
                if !changed {
                    break;
                }
            }
            if dist[t] == i64::MAX {
                break;
            }
            let mut push = want - sent;
            let mut v = t;
            while v != s {
                let id = via[v];
                push = push.min(self.arcs[id].cap);
                v = self.arcs[id ^ 1].to;
            }
            let mut v = t;
            while v != s {
                let id = via[v];
                self.arcs[id].cap -= push;
                self.arcs[id ^ 1].cap += push;
                v = self.arcs[id ^ 1].to;
            }
            sent += push;
        }
        sent
    }
}

/// Load bounds `(⌊n/S⌋, ⌈n/S⌉)` for `n` cast ballots.
pub fn load_bounds(e: &Election) -> (u64, u64) {
    let n = e.ballots_cast();
    let s = e.seats() as u64;
    (n / s, n.div_ceil(s))
}

/// A misrepresentation-minimising assignment of every cast ballot to a member
/// of `winners`, each winner representing between `⌊n/S⌋` and `⌈n/S⌉` voters.
pub fn monroe_assignment(e: &Election, winners: CandidateSet) -> Result<MonroeAssignment, RuleError> {
    if winners.len() != e.seats() {
        return Err(RuleError::SeatsMismatch {
            expected: e.seats(),
            got: winners.len(),
        });
    }
    let members: Vec<CandidateId> = winners.iter().collect();
    let profile = e.profile();
    let n = e.ballots_cast();
    let (lo, hi) = load_bounds(e);
    // forces every lower bound to fill before any misrepresentation is weighed
    let big = n as i64 + 1;

    let source = 0;
    let sink = 1;
    let ballot = |i: usize| 2 + i;
    let winner = |j: usize| 2 + profile.len() + j;
    let mut g = CostNetwork::new(2 + profile.len() + members.len());
    let mut links = Vec::new();
    for (i, &(y, count)) in profile.iter().enumerate() {
        g.add(source, ballot(i), count, 0);
        for (j, &c) in members.iter().enumerate() {
            let cost = if y.contains(c) { 0 } else { 1 };
            links.push((i, j, g.add(ballot(i), winner(j), count, cost)));
        }
    }
    for j in 0..members.len() {
        if lo > 0 {
            g.add(winner(j), sink, lo, -big);
        }
        if hi > lo {
            g.add(winner(j), sink, hi - lo, 0);
        }
    }
    let sent = g.min_cost_flow(source, sink, n);
    debug_assert_eq!(sent, n);

    let mut shares = BTreeMap::new();
    let mut loads = vec![0u64; members.len()];
    let mut misrepresentation = 0;
    for (i, j, id) in links {
        let x = g.flow(id);
        if x == 0 {
            continue;
        }
        let y = profile[i].0;
        shares.insert((y, members[j]), x);
        loads[j] += x;
        if !y.contains(members[j]) {
            misrepresentation += x;
        }
    }
    debug_assert!(loads.iter().all(|l| (lo..=hi).contains(l)));
    Ok(MonroeAssignment {
        shares,
        misrepresentation,
        loads: members.into_iter().zip(loads).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::*;

    #[test]
    fn sigma_h_assignments() {
        let e = sigma_h();
        let good = e.set_of(&["c1", "c2", "c3", "c5", "c6", "c7", "c8"]).unwrap();
        let m = monroe_assignment(&e, good).unwrap();
        assert_eq!(m.misrepresentation, 0);
        let loads: Vec<u64> = m.loads.iter().map(|(_, l)| *l).collect();
        assert_eq!(loads, vec![2, 2, 2, 1, 1, 1, 1]);
        let bad = e.set_of(&["c1", "c2", "c3", "c4", "c5", "c6", "c7"]).unwrap();
        assert!(monroe_assignment(&e, bad).unwrap().misrepresentation > 0);
    }

    #[test]
    fn uniform_block() {
        let e = Election::from_labels(["a", "b", "c"], 2, [(6, &["a", "b"][..])], None).unwrap();
        let m = monroe_assignment(&e, e.set_of(&["a", "b"]).unwrap()).unwrap();
        assert_eq!(m.misrepresentation, 0);
        assert!(m.loads.iter().all(|(_, l)| *l == 3));
        assert_eq!(
            monroe_assignment(&e, e.set_of(&["a"]).unwrap()),
            Err(RuleError::SeatsMismatch { expected: 2, got: 1 })
        );
    }

    #[test]
    fn shares_cover_every_ballot() {
        let e = sigma_g2();
        let m = monroe_assignment(&e, e.set_of(&["b", "c"]).unwrap()).unwrap();
        assert_eq!(m.misrepresentation, 0);
        for &(y, n) in e.profile() {
            let given: u64 = m.shares.iter().filter(|((b, _), _)| *b == y).map(|(_, v)| v).sum();
            assert_eq!(given, n);
        }
    }
}
