//! Iterated-matching packers and a first-fit baseline.
//!
//! Each round builds the union graph over the current charts, matches it,
//! and merges every matched pair with its best union. Rounds stop when the
//! graph has no edge. The surviving charts are laid out side by side.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matching::{max_cardinality_matching, max_weight_matching, Graph};
use crate::model::{compact, is_feasible, length, Instance, Packing};
use crate::union::{build_graph, merge, Chart, UnionGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    /// Maximum-cardinality matching each round.
    M,
    /// Maximum-weight matching each round.
    Mw,
    FirstFit,
    Exact,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::M => "m",
            Algorithm::Mw => "mw",
            Algorithm::FirstFit => "ff",
            Algorithm::Exact => "exact",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "m" => Ok(Algorithm::M),
            "mw" => Ok(Algorithm::Mw),
            "ff" => Ok(Algorithm::FirstFit),
            "exact" => Ok(Algorithm::Exact),
            other => Err(Error::Parse(format!("unknown algorithm {other:?}"))),
        }
    }
}

/// One matching round.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Round {
    /// Matching cardinality `m_k`.
    pub matched: usize,
    /// Matching weight `w_k` in the graph the round matched on.
    pub weight: u64,
    /// Cells saved by the unions actually realized.
    pub savings: usize,
    /// Edge count of the round's union graph.
    pub edges: usize,
    /// Edges of the round's union graph that admit a 2-union.
    pub two_union_edges: usize,
    /// Charts left after the round's merges.
    pub remaining: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunTrace {
    pub initial: usize,
    pub rounds: Vec<Round>,
    pub final_charts: usize,
}

impl RunTrace {
    pub fn total_savings(&self) -> usize {
        self.rounds.iter().map(|r| r.savings).sum()
    }

    pub fn first_matched(&self) -> usize {
        self.rounds.first().map_or(0, |r| r.matched)
    }

    pub fn first_weight(&self) -> u64 {
        self.rounds.first().map_or(0, |r| r.weight)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PackResult {
    pub packing: Packing,
    pub trace: RunTrace,
    pub length: usize,
}

pub fn pack_m(inst: &Instance) -> Result<PackResult> {
    let charts = Chart::singletons(inst);
    let (charts, rounds) = run_rounds(inst, charts, Vec::new(), false)?;
    finish(inst, charts, rounds)
}

pub fn pack_mw(inst: &Instance) -> Result<PackResult> {
    let charts = Chart::singletons(inst);
    let (charts, rounds) = run_rounds(inst, charts, Vec::new(), true)?;
    finish(inst, charts, rounds)
}

/// Runs `M_w` with `first` (pairs of chart ids) imposed as the round-1
/// matching. The pairs must form a maximum-weight matching of the round-1
/// union graph.
pub fn pack_with_forced_first_matching(
    inst: &Instance,
    first: &[(usize, usize)],
) -> Result<PackResult> {
    let capacity = inst.denominator();
    let charts = Chart::singletons(inst);
    let graph = build_graph(&charts, true, capacity);

    let mut used = vec![false; charts.len()];
    let mut chosen = Vec::with_capacity(first.len());
    for &(a, b) in first {
        if a >= charts.len() || b >= charts.len() || a == b {
            return Err(Error::NotAMatching(format!(
                "({a}, {b}) is not a chart pair"
            )));
        }
        if used[a] || used[b] {
            return Err(Error::NotAMatching(format!(
                "chart in ({a}, {b}) is matched twice"
            )));
        }
        let idx = graph
            .edges()
            .iter()
            .position(|e| (e.u, e.v) == (a.min(b), a.max(b)))
            .ok_or_else(|| Error::NotAMatching(format!("({a}, {b}) admits no union")))?;
        used[a] = true;
        used[b] = true;
        chosen.push(idx);
    }

    let matching_graph = to_matching_graph(&graph);
    let max = max_weight_matching(&matching_graph).weight(&matching_graph);
    let got: u64 = chosen.iter().map(|&k| graph.edges()[k].weight).sum();
    if got < max {
        return Err(Error::NotMaxWeight { got, max });
    }

    let (charts, round) = realize_round(&charts, &graph, &chosen, capacity)?;
    let (charts, rounds) = run_rounds(inst, charts, vec![round], true)?;
    finish(inst, charts, rounds)
}

/// Places each chart, in `order`, at the lowest feasible start cell.
pub fn pack_first_fit(inst: &Instance, order: &[usize]) -> Result<PackResult> {
    let n = inst.len();
    let mut seen = vec![false; n];
    if order.len() != n
        || order
            .iter()
            .any(|&i| i >= n || std::mem::replace(&mut seen[i], true))
    {
        return Err(Error::NotAPermutation);
    }
    let capacity = inst.denominator();
    let mut loads: Vec<u64> = Vec::new();
    let mut starts = vec![0; n];
    for &id in order {
        let c = &inst.charts()[id];
        let load = |loads: &[u64], cell: usize| loads.get(cell).copied().unwrap_or(0);
        let cell = (0..)
            .find(|&s| {
                load(&loads, s) + c.a.0 <= capacity && load(&loads, s + 1) + c.b.0 <= capacity
            })
            .expect("an empty cell pair always fits");
        if loads.len() < cell + 2 {
            loads.resize(cell + 2, 0);
        }
        loads[cell] += c.a.0;
        loads[cell + 1] += c.b.0;
        starts[id] = cell + 1;
    }
    let packing = compact(inst, &Packing::new(starts))?;
    let length = length(inst, &packing)?;
    Ok(PackResult {
        packing,
        trace: RunTrace {
            initial: n,
            rounds: Vec::new(),
            final_charts: n,
        },
        length,
    })
}

/// Lays charts out consecutively from cell 1, in the given order, and reads
/// off every original chart's start from the provenance offsets.
pub fn realize(inst: &Instance, charts: &[Chart]) -> Result<Packing> {
    let mut starts = vec![0usize; inst.len()];
    let mut next = 1;
    for chart in charts {
        for &(id, offset) in chart.provenance() {
            if id >= starts.len() || starts[id] != 0 {
                return Err(Error::ProvenanceGap);
            }
            starts[id] = next + offset;
        }
        next += chart.len();
    }
    if starts.contains(&0) {
        return Err(Error::ProvenanceGap);
    }
    compact(inst, &Packing::new(starts))
}

fn to_matching_graph(graph: &UnionGraph) -> Graph {
    Graph::new(
        graph.vertex_count(),
        graph.edges().iter().map(|e| (e.u, e.v, e.weight)).collect(),
    )
    .expect("union graphs are simple")
}

fn realize_round(
    charts: &[Chart],
    graph: &UnionGraph,
    matched: &[usize],
    capacity: u64,
) -> Result<(Vec<Chart>, Round)> {
    let mut consumed = vec![false; charts.len()];
    let mut next = Vec::with_capacity(charts.len() - matched.len());
    let mut weight = 0;
    let mut savings = 0;
    for &k in matched {
        let e = &graph.edges()[k];
        let (l, r) = e.ordered();
        next.push(merge(&charts[l], &charts[r], e.overlap, capacity)?);
        consumed[e.u] = true;
        consumed[e.v] = true;
        weight += e.weight;
        savings += e.overlap;
    }
    next.extend(
        charts
            .iter()
            .zip(&consumed)
            .filter(|(_, &c)| !c)
            .map(|(c, _)| c.clone()),
    );
    next.sort_by_key(Chart::min_id);
    let round = Round {
        matched: matched.len(),
        weight,
        savings,
        edges: graph.edges().len(),
        two_union_edges: graph.two_union_count(),
        remaining: next.len(),
    };
    Ok((next, round))
}

fn run_rounds(
    inst: &Instance,
    mut charts: Vec<Chart>,
    mut rounds: Vec<Round>,
    weighted: bool,
) -> Result<(Vec<Chart>, Vec<Round>)> {
    let capacity = inst.denominator();
    loop {
        let graph = build_graph(&charts, weighted, capacity);
        if graph.edges().is_empty() {
            break;
        }
        let matching_graph = to_matching_graph(&graph);
        let matching = if weighted {
            max_weight_matching(&matching_graph)
        } else {
            max_cardinality_matching(&matching_graph)
        };
        if matching.is_empty() {
            break;
        }
        let (next, round) = realize_round(&charts, &graph, matching.edges(), capacity)?;
        charts = next;
        rounds.push(round);
    }
    Ok((charts, rounds))
}

fn finish(inst: &Instance, mut charts: Vec<Chart>, rounds: Vec<Round>) -> Result<PackResult> {
    charts.sort_by_key(Chart::first_id);
    let packing = realize(inst, &charts)?;
    let n = inst.len();
    let trace = RunTrace {
        initial: n,
        rounds,
        final_charts: charts.len(),
    };
    if !is_feasible(inst, &packing)? {
        return Err(Error::Invariant(
            "packer produced an infeasible packing".into(),
        ));
    }
    let length = length(inst, &packing)?;
    if length != 2 * n - trace.total_savings() {
        return Err(Error::Invariant(format!(
            "length {length} differs from 2n - savings = {}",
            2 * n - trace.total_savings()
        )));
    }
    let mut count = n;
    for r in &trace.rounds {
        if r.savings < r.matched {
            return Err(Error::Invariant(
                "a round saved fewer cells than it matched".into(),
            ));
        }
        count -= r.matched;
        if r.remaining != count {
            return Err(Error::Invariant(
                "chart count does not follow matchings".into(),
            ));
        }
    }
    if count != trace.final_charts {
        return Err(Error::Invariant(
            "chart count does not follow matchings".into(),
        ));
    }
    Ok(PackResult {
        packing,
        trace,
        length,
    })
}
