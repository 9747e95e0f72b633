use serde::{Deserialize, Serialize};

/// Simple undirected graph on `0..n`, stored as a symmetric adjacency matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<bool>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            adj: vec![vec![false; n]; n],
        }
    }

    pub fn n_nodes(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "graphs here are irreflexive");
        self.adj[u][v] = true;
        self.adj[v][u] = true;
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u][v]
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[u]
            .iter()
            .enumerate()
            .filter_map(|(v, &b)| b.then_some(v))
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].iter().filter(|&&b| b).count()
    }

    pub fn n_edges(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).sum::<usize>() / 2
    }

    /// BFS distances from `from`; `None` marks unreachable nodes.
    pub fn bfs(&self, from: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        let mut queue = std::collections::VecDeque::new();
        dist[from] = Some(0);
        queue.push_back(from);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for v in self.neighbors(u) {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn distance(&self, u: usize, v: usize) -> Option<usize> {
        self.bfs(u)[v]
    }

    /// Maximum distance over all node pairs, with the lexicographically least
    /// witness pair. `None` when the graph is disconnected (infinite) .
    pub fn diameter(&self) -> (Option<usize>, Option<(usize, usize)>) {
        if self.n == 0 {
            return (Some(0), None);
        }
        let mut best = 0usize;
        let mut witness = None;
        for u in 0..self.n {
            let dist = self.bfs(u);
            for v in 0..self.n {
                match dist[v] {
                    None => return (None, Some((u.min(v), u.max(v)))),
                    Some(d) => {
                        if d > best || (witness.is_none() && d == best) {
                            best = d;
                            witness = Some((u.min(v), u.max(v)));
                        }
                    }
                }
            }
        }
        (Some(best), witness)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        self.bfs(0).iter().all(Option::is_some)
    }

    /// Component id per node, numbered in discovery order from node 0.
    pub fn components(&self) -> Vec<usize> {
        let mut comp = vec![usize::MAX; self.n];
        let mut next = 0;
        for start in 0..self.n {
            if comp[start] != usize::MAX {
                continue;
            }
            for (v, d) in self.bfs(start).iter().enumerate() {
                if d.is_some() {
                    comp[v] = next;
                }
            }
            next += 1;
        }
        comp
    }

    pub fn n_components(&self) -> usize {
        self.components().iter().max().map_or(0, |m| m + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for i in 0..n {
            g.add_edge(i, (i + 1) % n);
        }
        g
    }

    #[test]
    fn cycle_diameter() {
        let (d, w) = cycle(6).diameter();
        assert_eq!(d, Some(3));
        assert_eq!(w, Some((0, 3)));
    }

    #[test]
    fn disconnected_is_infinite() {
        let mut g = Graph::new(4);
        g.add_edge(0, 1);
        g.add_edge(2, 3);
        assert_eq!(g.distance(0, 2), None);
        assert_eq!(g.diameter().0, None);
        assert_eq!(g.n_components(), 2);
    }
}
