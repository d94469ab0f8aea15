//! Concrete quartic graphs.
//!
//! Vertex `i` is `x_i` and vertex `m + i` is `y_i` for `0 <= i < m`.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::spec::BicirculantSpec;

/// A simple 4-regular graph stored as sorted neighbor lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuartGraph {
    adjacency: Vec<[usize; 4]>,
}

impl QuartGraph {
    /// Builds a graph from neighbor lists, checking that it is simple and 4-regular.
    pub fn from_neighbor_lists(lists: Vec<Vec<usize>>) -> Result<Self> {
        let n = lists.len();
        let mut adjacency = Vec::with_capacity(n);
        for (v, mut list) in lists.into_iter().enumerate() {
            list.sort_unstable();
            list.dedup();
            if list.len() != 4 {
                return Err(Error::InvalidGraph(format!(
                    "vertex {v} has {} distinct neighbors, expected 4",
                    list.len()
                )));
            }
            if list.contains(&v) {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {v}")));
            }
            if let Some(&w) = list.iter().find(|&&w| w >= n) {
                return Err(Error::InvalidGraph(format!("neighbor {w} out of range")));
            }
            adjacency.push([list[0], list[1], list[2], list[3]]);
        }
        let graph = QuartGraph { adjacency };
        for v in 0..n {
            for &w in graph.neighbors(v) {
                if !graph.has_edge(w, v) {
                    return Err(Error::InvalidGraph(format!("edge {v}-{w} is not symmetric")));
                }
            }
        }
        Ok(graph)
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut lists = vec![Vec::with_capacity(4); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!("edge {u}-{v} out of range")));
            }
            lists[u].push(v);
            lists[v].push(u);
        }
        for (v, list) in lists.iter().enumerate() {
            if list.len() != 4 {
                return Err(Error::InvalidGraph(format!(
                    "vertex {v} has degree {}, expected 4",
                    list.len()
                )));
            }
        }
        Self::from_neighbor_lists(lists)
    }

    /// The circulant `Circ(n, {s, t})`.
    pub fn circulant(n: usize, s: usize, t: usize) -> Result<Self> {
        let lists = (0..n)
            .map(|i| vec![(i + s) % n, (i + n - s) % n, (i + t) % n, (i + n - t) % n])
            .collect();
        Self::from_neighbor_lists(lists)
    }

    pub fn order(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.len() * 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize; 4] {
        &self.adjacency[v]
    }

    pub fn adjacency(&self) -> &[[usize; 4]] {
        &self.adjacency
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// The graph with vertex `v` renamed to `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let n = self.order();
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidGraph("not a permutation".into()));
            }
        }
        if perm.len() != n {
            return Err(Error::InvalidGraph("permutation has wrong length".into()));
        }
        let mut lists = vec![Vec::new(); n];
        for v in 0..n {
            lists[perm[v]] = self.adjacency[v].iter().map(|&w| perm[w]).collect();
        }
        Self::from_neighbor_lists(lists)
    }
}

/// Materializes `Bicirc(m; S, T, R)` for a spec.
pub fn build_graph(spec: &BicirculantSpec) -> QuartGraph {
    let m = spec.m() as usize;
    let sets = spec.connection_sets();
    let mut lists = vec![Vec::with_capacity(4); 2 * m];
    for i in 0..m {
        for &s in &sets.s {
            lists[i].push((i + s as usize) % m);
        }
        for &t in &sets.t {
            lists[m + i].push(m + (i + t as usize) % m);
        }
        for &r in &sets.r {
            let j = (i + r as usize) % m;
            lists[i].push(m + j);
            lists[m + j].push(i);
        }
    }
    for (v, list) in lists.iter().enumerate() {
        let mut sorted = list.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), 4, "{spec}: vertex {v} has neighbors {list:?}");
    }
    QuartGraph::from_neighbor_lists(lists).expect("validated specs give simple quartic graphs")
}

/// Connected component label per vertex, components numbered in order of discovery.
pub fn components(g: &QuartGraph) -> Vec<usize> {
    let n = g.order();
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        label[start] = next;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if label[w] == usize::MAX {
                    label[w] = next;
                    queue.push_back(w);
                }
            }
        }
        next += 1;
    }
    label
}

pub fn is_connected(g: &QuartGraph) -> bool {
    components(g).iter().all(|&c| c == 0)
}

pub fn is_bipartite(g: &QuartGraph) -> bool {
    let n = g.order();
    let mut color = vec![u8::MAX; n];
    for start in 0..n {
        if color[start] != u8::MAX {
            continue;
        }
        color[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if color[w] == u8::MAX {
                    color[w] = 1 - color[v];
                    queue.push_back(w);
                } else if color[w] == color[v] {
                    return false;
                }
            }
        }
    }
    true
}
