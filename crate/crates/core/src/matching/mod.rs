//! Exact matchings in general graphs.
//!
//! [`max_cardinality_matching`] is Edmonds' blossom search for augmenting
//! paths. [`max_weight_matching`] is the primal-dual weighted blossom method
//! with integer duals. [`brute_force_matching`] enumerates every matching and
//! exists to check the other two.

mod brute;
mod cardinality;
mod weighted;

pub use brute::{brute_force_matching, BRUTE_FORCE_EDGE_LIMIT};
pub use cardinality::max_cardinality_matching;
pub use weighted::max_weight_matching;

use std::collections::HashSet;

use crate::error::{Error, Result};

/// Simple undirected graph with non-negative integer edge weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize, u64)>,
}

impl Graph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize, u64)>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(edges.len());
        for &(u, v, _) in &edges {
            if u == v || u >= vertex_count || v >= vertex_count {
                return Err(Error::InvalidEdge(u, v));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::DuplicateEdge(u, v));
            }
        }
        Ok(Graph {
            vertex_count,
            edges,
        })
    }

    /// Unit-weight graph.
    pub fn unweighted(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Graph::new(
            vertex_count,
            edges.iter().map(|&(u, v)| (u, v, 1)).collect(),
        )
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, usize, u64)] {
        &self.edges
    }

    pub fn with_edge(&self, u: usize, v: usize, w: u64) -> Result<Graph> {
        let mut edges = self.edges.clone();
        edges.push((u, v, w));
        Graph::new(self.vertex_count, edges)
    }

    pub(crate) fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for (k, &(u, v, _)) in self.edges.iter().enumerate() {
            adj[u].push((v, k));
            adj[v].push((u, k));
        }
        adj
    }

    /// Edge index for an unordered vertex pair.
    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        self.edges
            .iter()
            .position(|&(u, v, _)| (u, v) == (a, b) || (u, v) == (b, a))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    Cardinality,
    Weight,
}

/// Set of edge indices into a [`Graph`], kept sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Matching {
    edges: Vec<usize>,
}

impl Matching {
    pub fn from_edges(mut edges: Vec<usize>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        Matching { edges }
    }

    /// Builds a matching from a mate array, `mate[v] = Some((partner, edge))`.
    pub(crate) fn from_mates(mates: &[Option<(usize, usize)>]) -> Self {
        let edges = mates
            .iter()
            .enumerate()
            .filter_map(|(v, m)| m.filter(|&(w, _)| v < w).map(|(_, k)| k))
            .collect();
        Matching::from_edges(edges)
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn weight(&self, g: &Graph) -> u64 {
        self.edges.iter().map(|&k| g.edges[k].2).sum()
    }

    pub fn value(&self, g: &Graph, objective: Objective) -> u64 {
        match objective {
            Objective::Cardinality => self.len() as u64,
            Objective::Weight => self.weight(g),
        }
    }

    /// Every index refers to an edge of `g` and no two edges share a vertex.
    pub fn is_valid(&self, g: &Graph) -> bool {
        let mut used = vec![false; g.vertex_count];
        for &k in &self.edges {
            let Some(&(u, v, _)) = g.edges.get(k) else {
                return false;
            };
            if used[u] || used[v] {
                return false;
            }
            used[u] = true;
            used[v] = true;
        }
        true
    }

    /// Vertex pairs of the selected edges.
    pub fn pairs(&self, g: &Graph) -> Vec<(usize, usize)> {
        self.edges
            .iter()
            .map(|&k| (g.edges[k].0, g.edges[k].1))
            .collect()
    }
}
