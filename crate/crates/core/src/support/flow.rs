//! Integer max-flow (Dinic) used by the combinatorial max-min solver.

use std::collections::VecDeque;

#[derive(Clone, Debug)]
struct Edge {
    to: usize,
    cap: u128,
}

/// A directed network with integer capacities.
#[derive(Clone, Debug)]
pub(crate) struct Network {
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
    level: Vec<i32>,
    cursor: Vec<usize>,
}

impl Network {
    pub fn new(nodes: usize) -> Self {
        Network {
            edges: Vec::new(),
            adj: vec![Vec::new(); nodes],
            level: vec![0; nodes],
            cursor: vec![0; nodes],
        }
    }

    /// Adds an edge and returns its id; the reverse residual edge is `id ^ 1`.
    pub fn add_edge(&mut self, from: usize, to: usize, cap: u128) -> usize {
        let id = self.edges.len();
        self.edges.push(Edge { to, cap });
        self.adj[from].push(id);
        self.edges.push(Edge { to: from, cap: 0 });
        self.adj[to].push(id + 1);
        id
    }

    /// Flow currently pushed through edge `id`.
    pub fn flow(&self, id: usize) -> u128 {
        self.edges[id ^ 1].cap
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = -1);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &id in &self.adj[u] {
                let e = &self.edges[id];
                if e.cap > 0 && self.level[e.to] < 0 {
                    self.level[e.to] = self.level[u] + 1;
                    queue.push_back(e.to);
                }
            }
        }
        self.level[t] >= 0
    }

    fn dfs(&mut self, u: usize, t: usize, pushed: u128) -> u128 {
        if u == t {
            return pushed;
        }
        while self.cursor[u] < self.adj[u].len() {
            let id = self.adj[u][self.cursor[u]];
            let (to, cap) = (self.edges[id].to, self.edges[id].cap);
            if cap > 0 && self.level[to] == self.level[u] + 1 {
                let got = self.dfs(to, t, pushed.min(cap));
                if got > 0 {
                    self.edges[id].cap -= got;
                    self.edges[id ^ 1].cap += got;
                    return got;
                }
            }
            self.cursor[u] += 1;
        }
        0
    }

    pub fn max_flow(&mut self, s: usize, t: usize) -> u128 {
        let mut total = 0;
        while self.bfs(s, t) {
            self.cursor.iter_mut().for_each(|c| *c = 0);
            loop {
                let f = self.dfs(s, t, u128::MAX);
                if f == 0 {
                    break;
                }
                total += f;
            }
        }
        total
    }

    /// Nodes reachable from `s` in the residual network.
    pub fn residual_reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &id in &self.adj[u] {
                let e = &self.edges[id];
                if e.cap > 0 && !seen[e.to] {
                    seen[e.to] = true;
                    stack.push(e.to);
                }
            }
        }
        seen
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classic_network() {
        // CLRS example, max flow 23
        let mut g = Network::new(6);
        for (u, v, c) in [
            (0, 1, 16),
            (0, 2, 13),
            (1, 3, 12),
            (2, 1, 4),
            (2, 4, 14),
            (3, 2, 9),
            (3, 5, 20),
            (4, 3, 7),
            (4, 5, 4),
        ] {
            g.add_edge(u, v, c);
        }
        assert_eq!(g.max_flow(0, 5), 23);
        let reach = g.residual_reachable(0);
        assert!(reach[0] && !reach[5]);
    }
}
