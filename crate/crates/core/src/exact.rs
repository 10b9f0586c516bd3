//! Exact minimum-length packing for small instances, lower bounds, LP
//! export of the 0/1 model, and disassembly of a packing into matchings.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::model::{length, Instance, Packing};
use crate::packers::pack_mw;

pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactResult {
    pub opt_length: usize,
    pub packing: Packing,
    pub nodes_explored: u64,
    /// The search finished; `opt_length` is the optimum rather than an
    /// upper bound.
    pub proven: bool,
}

/// `max(ceil(total height), n if every chart is big, 2)`.
pub fn lower_bound(inst: &Instance) -> usize {
    let d = inst.denominator();
    let area = inst.total_height().div_ceil(d) as usize;
    let big = if inst.all_big() { inst.len() } else { 0 };
    area.max(big).max(2)
}

/// Exact search seeded with the `M_w` length as upper bound.
pub fn solve(inst: &Instance, budget: u64) -> Result<ExactResult> {
    let upper = pack_mw(inst)?.length;
    Ok(solve_exact(inst, upper, budget))
}

/// Minimum packing length of `inst`, searching only below `upper + 1`.
///
/// Packings are enumerated in a canonical form: charts are placed in
/// non-decreasing start order (ties by id), each start at most one past the
/// last occupied cell, so only gap-free packings are visited. Identical
/// charts are placed in id order. When `budget` nodes are exhausted the best
/// packing found so far is returned with `proven == false`.
pub fn solve_exact(inst: &Instance, upper: usize, budget: u64) -> ExactResult {
    let trivial = 2 * inst.len();
    let mut search = Search::new(inst, upper.min(trivial), budget);
    search.run();
    if search.best_starts.is_none() && !search.exhausted {
        // Nothing at or below `upper`: the bound was below the optimum.
        search = Search::new(inst, trivial, budget);
        search.run();
    }
    let proven = !search.exhausted;
    let nodes = search.nodes;
    let (opt_length, starts) = match search.best_starts {
        Some(starts) => (search.best, starts),
        None => (trivial, (0..inst.len()).map(|i| 2 * i + 1).collect()),
    };
    ExactResult {
        opt_length,
        packing: Packing::new(starts),
        nodes_explored: nodes,
        proven,
    }
}

struct Search<'a> {
    inst: &'a Instance,
    capacity: u64,
    /// Strict upper bound on lengths still worth finding.
    best: usize,
    best_starts: Option<Vec<usize>>,
    target: usize,
    budget: u64,
    nodes: u64,
    exhausted: bool,
    /// Index of the previous chart of identical heights, if any.
    twin_before: Vec<Option<usize>>,
    starts: Vec<usize>,
    loads: Vec<u64>,
    remaining_area: u64,
    remaining_big: usize,
}

impl<'a> Search<'a> {
    fn new(inst: &'a Instance, upper: usize, budget: u64) -> Self {
        let n = inst.len();
        let charts = inst.charts();
        let twin_before = (0..n)
            .map(|i| {
                (0..i)
                    .rev()
                    .find(|&j| (charts[j].a, charts[j].b) == (charts[i].a, charts[i].b))
            })
            .collect();
        let capacity = inst.denominator();
        let remaining_big = charts
            .iter()
            .map(|c| usize::from(c.a.is_big(capacity)) + usize::from(c.b.is_big(capacity)))
            .sum();
        Search {
            inst,
            capacity,
            best: upper + 1,
            best_starts: None,
            target: lower_bound(inst),
            budget,
            nodes: 0,
            exhausted: false,
            twin_before,
            starts: vec![0; n],
            loads: vec![0; 2 * n + 2],
            remaining_area: inst.total_height(),
            remaining_big,
        }
    }

    fn run(&mut self) {
        self.visit(0, 0, 1, None);
    }

    fn done(&self) -> bool {
        self.exhausted || self.best <= self.target
    }

    /// `max_cell`: last occupied cell; `min_start`: start of the last placed
    /// chart; `last_id`: its id.
    #[allow(clippy::needless_range_loop)]
    fn visit(&mut self, placed: usize, max_cell: usize, min_start: usize, last_id: Option<usize>) {
        if self.done() {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        let n = self.inst.len();
        if placed == n {
            if max_cell < self.best {
                self.best = max_cell;
                self.best_starts = Some(self.starts.clone());
            }
            return;
        }
        if self.bound(max_cell, min_start) >= self.best {
            return;
        }

        let charts = self.inst.charts();
        for s in min_start..=max_cell + 1 {
            if s + 1 >= self.best {
                break;
            }
            for id in 0..n {
                if self.starts[id] != 0 {
                    continue;
                }
                if s == min_start && last_id.is_some_and(|l| id < l) {
                    continue;
                }
                if self.twin_before[id].is_some_and(|t| self.starts[t] == 0) {
                    continue;
                }
                let (a, b) = (charts[id].a.0, charts[id].b.0);
                if self.loads[s - 1] + a > self.capacity || self.loads[s] + b > self.capacity {
                    continue;
                }
                let big = usize::from(2 * a > self.capacity) + usize::from(2 * b > self.capacity);
                self.loads[s - 1] += a;
                self.loads[s] += b;
                self.starts[id] = s;
                self.remaining_area -= a + b;
                self.remaining_big -= big;
                self.visit(placed + 1, max_cell.max(s + 1), s, Some(id));
                self.remaining_big += big;
                self.remaining_area += a + b;
                self.starts[id] = 0;
                self.loads[s] -= b;
                self.loads[s - 1] -= a;
                if self.done() {
                    return;
                }
            }
        }
    }

    /// Lower bound on the final length given that every unplaced chart
    /// starts at or after `min_start`.
    fn bound(&self, max_cell: usize, min_start: usize) -> usize {
        let d = self.capacity;
        let open = min_start.max(1)..=max_cell;
        let free_area: u64 = open.clone().map(|c| d - self.loads[c - 1]).sum();
        let free_big = open.clone().filter(|&c| 2 * self.loads[c - 1] < d).count();
        let area_extra = self.remaining_area.saturating_sub(free_area).div_ceil(d) as usize;
        let big_extra = self.remaining_big.saturating_sub(free_big);
        max_cell + area_extra.max(big_extra)
    }
}

/// Writes the 0/1 program minimizing occupied cells in LP text format.
///
/// `x_i_j` places chart `i` (1-based) with its first bar in cell `j`, for
/// `j < jmax`; `y_j` marks cell `j` as used. Coefficients are exact
/// decimals when the denominator divides a power of ten; otherwise every
/// capacity row is scaled by the denominator to integer coefficients.
pub fn export_blp(inst: &Instance, jmax: usize) -> Result<String> {
    if jmax < 2 {
        return Err(Error::JmaxTooSmall(jmax));
    }
    let d = inst.denominator();
    let digits = decimal_digits(d);
    let coef = |numer: u64| match digits {
        Some(k) => decimal(numer, d, k),
        None => numer.to_string(),
    };
    let cell_coef = match digits {
        Some(_) => String::new(),
        None => format!("{d} "),
    };
    let n = inst.len();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "\\ barpack {} two-bar chart packing model",
        env!("CARGO_PKG_VERSION")
    );
    let _ = writeln!(out, "\\ charts = {n}, jmax = {jmax}, denominator = {d}");
    out.push_str("Minimize\n");
    write_row(&mut out, "obj", (1..=jmax).map(|j| format!("y_{j}")), "");
    out.push_str("Subject To\n");
    for i in 1..=n {
        write_row(
            &mut out,
            &format!("assign_{i}"),
            (1..jmax).map(|j| format!("x_{i}_{j}")),
            " = 1",
        );
    }
    for j in 1..=jmax {
        let mut terms = Vec::new();
        if j < jmax {
            for (i, c) in inst.charts().iter().enumerate() {
                terms.push(format!("{} x_{}_{j}", coef(c.a.0), i + 1));
            }
        }
        if j > 1 {
            for (k, c) in inst.charts().iter().enumerate() {
                terms.push(format!("{} x_{}_{}", coef(c.b.0), k + 1, j - 1));
            }
        }
        terms.push(format!("- {cell_coef}y_{j}"));
        write_row(&mut out, &format!("cap_{j}"), terms.into_iter(), " <= 0");
    }
    out.push_str("Binary\n");
    for i in 1..=n {
        for j in 1..jmax {
            let _ = writeln!(out, " x_{i}_{j}");
        }
    }
    for j in 1..=jmax {
        let _ = writeln!(out, " y_{j}");
    }
    out.push_str("End\n");
    Ok(out)
}

const TERMS_PER_LINE: usize = 8;

fn write_row(out: &mut String, name: &str, terms: impl Iterator<Item = String>, tail: &str) {
    let _ = write!(out, " {name}:");
    for (i, term) in terms.enumerate() {
        if i > 0 && i % TERMS_PER_LINE == 0 {
            out.push_str("\n   ");
        }
        if i > 0 && !term.starts_with('-') {
            out.push_str(" +");
        }
        let _ = write!(out, " {term}");
    }
    out.push_str(tail);
    out.push('\n');
}

/// Number of decimal places that represent every multiple of `1/d` exactly.
fn decimal_digits(d: u64) -> Option<u32> {
    let (mut rest, mut twos, mut fives) = (d, 0, 0);
    while rest % 2 == 0 {
        rest /= 2;
        twos += 1;
    }
    while rest % 5 == 0 {
        rest /= 5;
        fives += 1;
    }
    (rest == 1).then_some(twos.max(fives))
}

fn decimal(numer: u64, d: u64, digits: u32) -> String {
    let scale = 10u128.pow(digits);
    let scaled = numer as u128 * scale / d as u128;
    if digits == 0 {
        return scaled.to_string();
    }
    format!(
        "{}.{:0width$}",
        scaled / scale,
        scaled % scale,
        width = digits as usize
    )
}

/// Two pieces joined in one disassembly round.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MergedPair {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    /// Cells saved by joining them.
    pub savings: usize,
}

pub type MatchingRound = Vec<MergedPair>;

/// Splits a packing of big charts into the sequence of matchings that
/// rebuilds it.
///
/// Charts are grouped into maximal runs of overlapping charts. Inside each
/// run, consecutive pieces (ordered by start, then id) are paired left to
/// right, a trailing odd piece staying alone; this repeats until every run
/// is one piece. Savings over all rounds sum to `2n - L(p)`.
pub fn disassemble(inst: &Instance, p: &Packing) -> Result<Vec<MatchingRound>> {
    let d = inst.denominator();
    if let Some(c) = inst.charts().iter().find(|c| !c.is_big(d)) {
        return Err(Error::NotBigInstance(c.id));
    }
    length(inst, p)?;

    let mut order: Vec<usize> = (0..inst.len()).collect();
    order.sort_by_key(|&i| (p.starts()[i], i));

    struct Piece {
        ids: Vec<usize>,
        first: usize,
        last: usize,
    }
    let mut runs: Vec<Vec<Piece>> = Vec::new();
    let mut run_end = 0;
    for id in order {
        let s = p.starts()[id];
        let piece = Piece {
            ids: vec![id],
            first: s,
            last: s + 1,
        };
        match runs.last_mut() {
            Some(run) if s <= run_end => run.push(piece),
            _ => runs.push(vec![piece]),
        }
        run_end = run_end.max(s + 1);
    }

    let mut rounds = Vec::new();
    while runs.iter().any(|r| r.len() > 1) {
        let mut round = Vec::new();
        for run in &mut runs {
            let mut merged = Vec::with_capacity(run.len().div_ceil(2));
            let mut pieces = std::mem::take(run).into_iter();
            while let Some(left) = pieces.next() {
                match pieces.next() {
                    Some(right) => {
                        let first = left.first.min(right.first);
                        let last = left.last.max(right.last);
                        let span = |p: &Piece| p.last - p.first + 1;
                        round.push(MergedPair {
                            left: left.ids.clone(),
                            right: right.ids.clone(),
                            savings: span(&left) + span(&right) - (last - first + 1),
                        });
                        let mut ids = left.ids;
                        ids.extend(right.ids);
                        merged.push(Piece { ids, first, last });
                    }
                    None => merged.push(left),
                }
            }
            *run = merged;
        }
        rounds.push(round);
    }
    Ok(rounds)
}

/// Cardinality of each disassembly round.
pub fn round_cardinalities(rounds: &[MatchingRound]) -> Vec<usize> {
    rounds.iter().map(Vec::len).collect()
}

/// Cells saved in each disassembly round.
pub fn round_savings(rounds: &[MatchingRound]) -> Vec<usize> {
    rounds
        .iter()
        .map(|r| r.iter().map(|p| p.savings).sum())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{is_feasible, occupancy};

    fn inst(d: u64, h: &[(u64, u64)]) -> Instance {
        Instance::from_numerators(d, h).unwrap()
    }

    fn tight(k: usize) -> Instance {
        let mut h = vec![(70, 30); 2 * k];
        h.extend(vec![(35, 65); 2 * k]);
        inst(100, &h)
    }

    #[test]
    fn exact_small_examples() {
        let r = solve(&inst(10, &[(5, 5)]), DEFAULT_BUDGET).unwrap();
        assert_eq!((r.opt_length, r.proven), (2, true));

        let r = solve(&inst(10, &[(4, 6), (6, 4)]), DEFAULT_BUDGET).unwrap();
        assert_eq!(r.opt_length, 2);

        let i = tight(1);
        let r = solve(&i, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.opt_length, 5);
        assert!(r.proven);
        assert!(is_feasible(&i, &r.packing).unwrap());
        assert_eq!(length(&i, &r.packing).unwrap(), 5);
    }

    #[test]
    fn exact_needs_a_non_first_chart_at_cell_one() {
        // Optimum 3 requires chart 1 to start before chart 0.
        let i = inst(10, &[(5, 9), (9, 5)]);
        let r = solve_exact(&i, 4, DEFAULT_BUDGET);
        assert_eq!(r.opt_length, 3);
        assert_eq!(r.packing.starts(), &[2, 1]);
    }

    #[test]
    fn exact_recovers_from_low_upper_bound() {
        let i = tight(1);
        let r = solve_exact(&i, 3, DEFAULT_BUDGET);
        assert_eq!(r.opt_length, 5);
        assert!(r.proven);
    }

    #[test]
    fn exact_budget_exhaustion_is_flagged() {
        let i = tight(2);
        let r = solve_exact(&i, 16, 5);
        assert!(!r.proven);
        assert!(is_feasible(&i, &r.packing).unwrap());
        assert_eq!(
            occupancy(&i, &r.packing).unwrap().occupied_count(),
            r.opt_length
        );
    }

    #[test]
    fn lower_bound_examples() {
        // Five big charts, total height 4.2.
        let big = inst(10, &[(6, 2), (6, 2), (6, 2), (6, 2), (7, 3)]);
        assert_eq!(big.total_height(), 42);
        assert_eq!(lower_bound(&big), 5);
        // Non-big, total 7.3.
        let small = inst(
            10,
            &[
                (5, 5),
                (5, 5),
                (5, 5),
                (5, 5),
                (5, 5),
                (5, 5),
                (5, 5),
                (1, 2),
            ],
        );
        assert_eq!(small.total_height(), 73);
        assert_eq!(lower_bound(&small), 8);
        assert_eq!(lower_bound(&inst(10, &[(1, 1)])), 2);
    }

    #[test]
    fn blp_single_chart() {
        let lp = export_blp(&inst(10, &[(7, 3)]), 2).unwrap();
        let body: Vec<&str> = lp.lines().filter(|l| !l.starts_with('\\')).collect();
        assert_eq!(
            body,
            vec![
                "Minimize",
                " obj: y_1 + y_2",
                "Subject To",
                " assign_1: x_1_1 = 1",
                " cap_1: 0.7 x_1_1 - y_1 <= 0",
                " cap_2: 0.3 x_1_1 - y_2 <= 0",
                "Binary",
                " x_1_1",
                " y_1",
                " y_2",
                "End",
            ]
        );
    }

    #[test]
    fn blp_rejects_short_horizon() {
        assert_eq!(
            export_blp(&inst(10, &[(7, 3)]), 1),
            Err(Error::JmaxTooSmall(1))
        );
    }

    #[test]
    fn blp_coefficients() {
        assert_eq!(decimal_digits(1_000_000), Some(6));
        assert_eq!(decimal_digits(8), Some(3));
        assert_eq!(decimal_digits(1), Some(0));
        assert_eq!(decimal_digits(3), None);
        assert_eq!(decimal(700_000, 1_000_000, 6), "0.700000");
        assert_eq!(decimal(3, 8, 3), "0.375");
        assert_eq!(decimal(1, 1, 0), "1");
        let lp = export_blp(&inst(3, &[(2, 1)]), 2).unwrap();
        assert!(lp.contains(" cap_1: 2 x_1_1 - 3 y_1 <= 0"));
    }

    #[test]
    fn disassemble_chain_of_three() {
        let i = inst(10, &[(6, 2), (7, 3), (6, 1)]);
        let p = Packing::new(vec![1, 2, 3]);
        let rounds = disassemble(&i, &p).unwrap();
        assert_eq!(rounds.len(), 2);
        assert_eq!(rounds[0].len(), 1);
        assert_eq!(
            (rounds[0][0].left.clone(), rounds[0][0].right.clone()),
            (vec![0], vec![1])
        );
        assert_eq!(rounds[1][0].right, vec![2]);
    }

    #[test]
    fn disassemble_disjoint() {
        let i = inst(10, &[(6, 2), (7, 3)]);
        let rounds = disassemble(&i, &Packing::new(vec![1, 3])).unwrap();
        assert!(rounds.is_empty());
    }

    #[test]
    fn disassemble_tight_optimum() {
        let i = tight(1);
        let p = Packing::new(vec![1, 2, 3, 4]);
        let rounds = disassemble(&i, &p).unwrap();
        assert_eq!(round_cardinalities(&rounds), vec![2, 1]);
        assert_eq!(8 - round_savings(&rounds).iter().sum::<usize>(), 5);
    }

    #[test]
    fn disassemble_rejects_small_charts() {
        let i = inst(10, &[(5, 5)]);
        assert_eq!(
            disassemble(&i, &Packing::new(vec![1])),
            Err(Error::NotBigInstance(0))
        );
    }
}
