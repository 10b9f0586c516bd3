//! Unions between (possibly merged) charts and the graph of feasible unions.
//!
//! A union overlaps the last `t` cells of a left chart with the first `t`
//! cells of a right chart, `t` being 1 or 2. Two input charts in a 1-union
//! span three cells, in a 2-union two cells.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::model::{BarChart, Instance};

/// A chart built from one or more input charts laid out contiguously.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chart {
    cells: Vec<u64>,
    /// `(original id, offset of its first bar in this chart)`.
    provenance: Vec<(usize, usize)>,
}

impl Chart {
    pub fn from_bar_chart(c: &BarChart) -> Self {
        Chart {
            cells: vec![c.a.0, c.b.0],
            provenance: vec![(c.id, 0)],
        }
    }

    /// One chart per input chart, in id order.
    pub fn singletons(inst: &Instance) -> Vec<Chart> {
        inst.charts().iter().map(Chart::from_bar_chart).collect()
    }

    pub fn cells(&self) -> &[u64] {
        &self.cells
    }

    pub fn provenance(&self) -> &[(usize, usize)] {
        &self.provenance
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn first_id(&self) -> usize {
        self.provenance[0].0
    }

    /// Smallest original id contained in this chart.
    pub fn min_id(&self) -> usize {
        self.provenance.iter().map(|&(id, _)| id).min().unwrap_or(0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// `u` on the left, `v` on the right.
    UBeforeV,
    VBeforeU,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnionEdge {
    pub u: usize,
    pub v: usize,
    pub orientation: Orientation,
    /// Number of shared cells, 1 or 2.
    pub overlap: usize,
    /// Matching weight: `overlap` in a weighted graph, 1 otherwise.
    pub weight: u64,
}

impl UnionEdge {
    /// `(left, right)` chart indices as the union lays them out.
    pub fn ordered(&self) -> (usize, usize) {
        match self.orientation {
            Orientation::UBeforeV => (self.u, self.v),
            Orientation::VBeforeU => (self.v, self.u),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnionGraph {
    vertex_count: usize,
    edges: Vec<UnionEdge>,
}

impl UnionGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Edges sorted by `(u, v)` with `u < v`.
    pub fn edges(&self) -> &[UnionEdge] {
        &self.edges
    }

    pub fn find(&self, a: usize, b: usize) -> Option<&UnionEdge> {
        let (u, v) = (a.min(b), a.max(b));
        self.edges
            .binary_search_by(|e| (e.u, e.v).cmp(&(u, v)))
            .ok()
            .map(|i| &self.edges[i])
    }

    /// Edges realizable as 2-unions, regardless of the matching weight.
    pub fn two_union_count(&self) -> usize {
        self.edges.iter().filter(|e| e.overlap == 2).count()
    }

    /// `u v weight` per line.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for e in &self.edges {
            let _ = writeln!(out, "{} {} {}", e.u, e.v, e.weight);
        }
        out
    }
}

pub fn union_feasible(left: &Chart, right: &Chart, t: usize, capacity: u64) -> Result<bool> {
    if !(1..=2).contains(&t) || t > left.len().min(right.len()) {
        return Err(Error::OverlapTooLarge {
            t,
            left: left.len(),
            right: right.len(),
        });
    }
    let tail = &left.cells[left.len() - t..];
    Ok(tail
        .iter()
        .zip(&right.cells[..t])
        .all(|(l, r)| l + r <= capacity))
}

/// Feasible union with the largest overlap; ties prefer `x` on the left.
pub fn best_union(x: &Chart, y: &Chart, capacity: u64) -> Option<(Orientation, usize)> {
    let max_t = x.len().min(y.len()).min(2);
    (1..=max_t).rev().find_map(|t| {
        if union_feasible(x, y, t, capacity).unwrap_or(false) {
            Some((Orientation::UBeforeV, t))
        } else if union_feasible(y, x, t, capacity).unwrap_or(false) {
            Some((Orientation::VBeforeU, t))
        } else {
            None
        }
    })
}

pub fn merge(left: &Chart, right: &Chart, t: usize, capacity: u64) -> Result<Chart> {
    if !union_feasible(left, right, t, capacity)? {
        return Err(Error::InfeasibleMerge(t));
    }
    let shift = left.len() - t;
    let mut cells = left.cells.clone();
    for (i, &h) in right.cells.iter().enumerate() {
        match cells.get_mut(shift + i) {
            Some(c) => *c += h,
            None => cells.push(h),
        }
    }
    let provenance = left
        .provenance
        .iter()
        .copied()
        .chain(right.provenance.iter().map(|&(id, off)| (id, off + shift)))
        .collect();
    Ok(Chart { cells, provenance })
}

pub fn build_graph(charts: &[Chart], weighted: bool, capacity: u64) -> UnionGraph {
    let mut edges = Vec::new();
    for u in 0..charts.len() {
        for v in u + 1..charts.len() {
            if let Some((orientation, overlap)) = best_union(&charts[u], &charts[v], capacity) {
                edges.push(UnionEdge {
                    u,
                    v,
                    orientation,
                    overlap,
                    weight: if weighted { overlap as u64 } else { 1 },
                });
            }
        }
    }
    UnionGraph {
        vertex_count: charts.len(),
        edges,
    }
}
