//! Integral max-flow on a dense residual matrix (Edmonds-Karp).

use std::collections::VecDeque;

#[derive(Clone)]
pub(crate) struct Network {
    size: usize,
    residual: Vec<u64>,
}

impl Network {
    pub const INFINITE: u64 = u64::MAX / 4;

    pub fn new(size: usize) -> Self {
        Network {
            size,
            residual: vec![0; size * size],
        }
    }

    pub fn add_arc(&mut self, u: usize, v: usize, cap: u64) {
        let cell = &mut self.residual[u * self.size + v];
        *cell = cell.saturating_add(cap).min(Self::INFINITE);
    }

    pub fn add_undirected(&mut self, u: usize, v: usize, cap: u64) {
        self.add_arc(u, v, cap);
        self.add_arc(v, u, cap);
    }

    /// Pushes a maximum flow from `s` to `t`, leaving the residual network in
    /// place for [`Network::source_side`].
    pub fn max_flow(&mut self, s: usize, t: usize) -> u64 {
        let n = self.size;
        let mut total = 0u64;
        let mut parent = vec![usize::MAX; n];
        loop {
            parent.fill(usize::MAX);
            parent[s] = s;
            let mut queue = VecDeque::from([s]);
            'bfs: while let Some(u) = queue.pop_front() {
                for (v, &cap) in self.residual[u * n..(u + 1) * n].iter().enumerate() {
                    if parent[v] == usize::MAX && cap > 0 {
                        parent[v] = u;
                        if v == t {
                            break 'bfs;
                        }
                        queue.push_back(v);
                    }
                }
            }
            if parent[t] == usize::MAX {
                return total;
            }
            let mut bottleneck = u64::MAX;
            let mut v = t;
            while v != s {
                let u = parent[v];
                bottleneck = bottleneck.min(self.residual[u * n + v]);
                v = u;
            }
            let mut v = t;
            while v != s {
                let u = parent[v];
                self.residual[u * n + v] -= bottleneck;
                self.residual[v * n + u] += bottleneck;
                v = u;
            }
            total += bottleneck;
        }
    }

    /// Vertices reachable from `s` in the residual network.
    pub fn source_side(&self, s: usize) -> Vec<bool> {
        let n = self.size;
        let mut seen = vec![false; n];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for (v, &cap) in self.residual[u * n..(u + 1) * n].iter().enumerate() {
                if !seen[v] && cap > 0 {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }
}
