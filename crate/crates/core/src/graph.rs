//! Level-synchronous BFS over implicitly defined graphs, plus export helpers.

use std::collections::{BTreeSet, HashMap};
use std::hash::Hash;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Result of a bounded exploration.
#[derive(Debug, Clone)]
pub struct Exploration<S> {
    pub states: Vec<S>,
    /// One entry per explored move `(from, to)`, in exploration order.
    pub moves: Vec<(usize, usize)>,
    /// Number of moves out of each state.
    pub out_degree: Vec<usize>,
    pub truncated: bool,
}

/// Breadth-first search with deduplication by `key`.
///
/// Every state that is admitted is also expanded; a neighbor that would
/// exceed `max_nodes` is dropped and marks the result truncated. Frontier
/// expansion runs in parallel, insertion is sequential, so the output does
/// not depend on the thread count.
pub fn bfs<S, K, FK, FN>(start: S, max_nodes: usize, key: FK, neighbors: FN) -> Exploration<S>
where
    S: Send + Sync,
    K: Eq + Hash + Send,
    FK: Fn(&S) -> K + Sync,
    FN: Fn(&S) -> Vec<S> + Sync,
{
    let max_nodes = max_nodes.max(1);
    let mut index: HashMap<K, usize> = HashMap::new();
    index.insert(key(&start), 0);
    let mut states = vec![start];
    let mut moves = Vec::new();
    let mut out_degree = vec![0];
    let mut truncated = false;
    let mut level = 0..1;

    while !level.is_empty() {
        let expanded: Vec<Vec<(K, S)>> = states[level.clone()]
            .par_iter()
            .map(|s| neighbors(s).into_iter().map(|t| (key(&t), t)).collect())
            .collect();
        let next_start = states.len();
        for (offset, nbrs) in expanded.into_iter().enumerate() {
            let from = level.start + offset;
            out_degree[from] = nbrs.len();
            for (k, t) in nbrs {
                let to = match index.get(&k) {
                    Some(&i) => i,
                    None if states.len() < max_nodes => {
                        let i = states.len();
                        index.insert(k, i);
                        states.push(t);
                        out_degree.push(0);
                        i
                    }
                    None => {
                        truncated = true;
                        continue;
                    }
                };
                moves.push((from, to));
            }
        }
        level = next_start..states.len();
    }
    Exploration { states, moves, out_degree, truncated }
}

/// Exported exchange/flip graph: `{"vertices": [...], "edges": [[i, j], ...], "truncated": bool}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlipGraph {
    pub vertices: Vec<String>,
    pub edges: Vec<[usize; 2]>,
    pub truncated: bool,
}

impl FlipGraph {
    pub fn from_exploration<S>(ex: &Exploration<S>, label: impl Fn(&S) -> String) -> Self {
        let edges: BTreeSet<[usize; 2]> = ex.moves.iter().map(|&(a, b)| [a.min(b), a.max(b)]).collect();
        FlipGraph {
            vertices: ex.states.iter().map(label).collect(),
            edges: edges.into_iter().collect(),
            truncated: ex.truncated,
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Number of distinct neighbors of each vertex (loops count once).
    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertices.len()];
        for &[a, b] in &self.edges {
            d[a] += 1;
            if a != b {
                d[b] += 1;
            }
        }
        d
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return true;
        }
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for &[a, b] in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; self.vertices.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// True if the graph is a single cycle through all vertices.
    pub fn is_cycle(&self) -> bool {
        self.len() >= 3 && self.edges.len() == self.len() && self.degrees().iter().all(|&d| d == 2) && self.is_connected()
    }

    /// True if the graph is a simple path through all vertices.
    pub fn is_path(&self) -> bool {
        let n = self.len();
        if n == 1 {
            return self.edges.is_empty();
        }
        let d = self.degrees();
        self.edges.len() + 1 == n
            && d.iter().filter(|&&x| x == 1).count() == 2
            && d.iter().all(|&x| x == 1 || x == 2)
            && self.is_connected()
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph exchange {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            out.push_str(&format!("  {i} [label=\"{v}\"];\n"));
        }
        for [a, b] in &self.edges {
            out.push_str(&format!("  {a} -- {b};\n"));
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bfs_on_a_cycle() {
        let ex = bfs(0usize, 100, |&s| s, |&s| vec![(s + 1) % 7, (s + 6) % 7]);
        assert_eq!(ex.states.len(), 7);
        assert!(!ex.truncated);
        let g = FlipGraph::from_exploration(&ex, |s| s.to_string());
        assert!(g.is_cycle());
        assert!(!g.is_path());
    }

    #[test]
    fn bfs_truncates() {
        let ex = bfs(0i64, 5, |&s| s, |&s| vec![s - 1, s + 1]);
        assert_eq!(ex.states.len(), 5);
        assert!(ex.truncated);
        assert!(ex.out_degree.iter().all(|&d| d == 2));
    }

    #[test]
    fn dot_output() {
        let g = FlipGraph { vertices: vec!["a".into(), "b".into()], edges: vec![[0, 1]], truncated: false };
        assert!(g.is_path());
        assert!(g.to_dot().contains("0 -- 1;"));
    }
}
