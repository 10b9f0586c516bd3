//! Instances, packings and their exact feasibility arithmetic.
//!
//! Every height is stored as an integer numerator over a denominator shared by
//! the whole instance, so cell loads are compared against capacity without any
//! rounding. Cells are numbered from 1.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub const DEFAULT_DENOMINATOR: u64 = 1_000_000;

/// A bar height, as a numerator over the owning instance's denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Height(pub u64);

impl Height {
    pub fn numer(self) -> u64 {
        self.0
    }

    /// Strictly above one half of `denominator`.
    pub fn is_big(self, denominator: u64) -> bool {
        2 * self.0 > denominator
    }
}

/// A signed rational used only at the input boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fraction {
    pub numer: i64,
    pub denom: u64,
}

impl Fraction {
    pub fn new(numer: i64, denom: u64) -> Self {
        Fraction { numer, denom }
    }

    /// Numerator over `target` when exactly representable.
    fn over(self, target: u64) -> Option<i128> {
        if self.denom == 0 {
            return None;
        }
        let scaled = self.numer as i128 * target as i128;
        (scaled % self.denom as i128 == 0).then(|| scaled / self.denom as i128)
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer, self.denom)
    }
}

impl FromStr for Fraction {
    type Err = Error;

    /// Accepts `p/q`, integers and plain decimals such as `0.35`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a rational number: {s:?}"));
        if let Some((p, q)) = s.split_once('/') {
            let numer = p.trim().parse().map_err(|_| bad())?;
            let denom = q.trim().parse().map_err(|_| bad())?;
            return Ok(Fraction { numer, denom });
        }
        let (negative, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let (int, frac) = body.split_once('.').unwrap_or((body, ""));
        if int.is_empty() && frac.is_empty() {
            return Err(bad());
        }
        if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) || frac.len() > 18 {
            return Err(bad());
        }
        let denom = 10u64.pow(frac.len() as u32);
        let digits = format!("{int}{frac}");
        let magnitude: i64 = if digits.is_empty() {
            0
        } else {
            digits.parse().map_err(|_| bad())?
        };
        Ok(Fraction {
            numer: if negative { -magnitude } else { magnitude },
            denom,
        })
    }
}

/// An input item: two adjacent unit-width bars of heights `a` then `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BarChart {
    pub id: usize,
    pub a: Height,
    pub b: Height,
}

impl BarChart {
    pub fn is_non_increasing(&self) -> bool {
        self.a >= self.b
    }

    pub fn is_non_decreasing(&self) -> bool {
        self.a <= self.b
    }

    pub fn is_big(&self, denominator: u64) -> bool {
        self.a.max(self.b).is_big(denominator)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    denominator: u64,
    charts: Vec<BarChart>,
}

impl Instance {
    /// Builds an instance from numerators over `denominator`; ids follow input order.
    pub fn from_numerators(denominator: u64, heights: &[(u64, u64)]) -> Result<Self> {
        if denominator == 0 {
            return Err(Error::ZeroDenominator);
        }
        if heights.is_empty() {
            return Err(Error::EmptyInstance);
        }
        let mut charts = Vec::with_capacity(heights.len());
        for (id, &(a, b)) in heights.iter().enumerate() {
            for h in [a, b] {
                if h == 0 || h > denominator {
                    return Err(Error::HeightOutOfRange {
                        chart: id,
                        value: format!("{h}/{denominator}"),
                    });
                }
            }
            charts.push(BarChart {
                id,
                a: Height(a),
                b: Height(b),
            });
        }
        Ok(Instance {
            denominator,
            charts,
        })
    }

    pub fn denominator(&self) -> u64 {
        self.denominator
    }

    pub fn charts(&self) -> &[BarChart] {
        &self.charts
    }

    pub fn len(&self) -> usize {
        self.charts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.charts.is_empty()
    }

    pub fn all_big(&self) -> bool {
        self.charts.iter().all(|c| c.is_big(self.denominator))
    }

    pub fn all_non_increasing(&self) -> bool {
        self.charts.iter().all(BarChart::is_non_increasing)
    }

    /// Sum of all bar numerators.
    pub fn total_height(&self) -> u64 {
        self.charts.iter().map(|c| c.a.0 + c.b.0).sum()
    }

    pub fn as_numerators(&self) -> Vec<(u64, u64)> {
        self.charts.iter().map(|c| (c.a.0, c.b.0)).collect()
    }
}

/// Validates raw rational heights against `denominator`.
pub fn validate_instance(raw: &[(Fraction, Fraction)], denominator: u64) -> Result<Instance> {
    if denominator == 0 {
        return Err(Error::ZeroDenominator);
    }
    if raw.is_empty() {
        return Err(Error::EmptyInstance);
    }
    let mut numerators = Vec::with_capacity(raw.len());
    for (id, &(a, b)) in raw.iter().enumerate() {
        let mut pair = [0u64; 2];
        for (slot, h) in pair.iter_mut().zip([a, b]) {
            let out_of_range = h.denom == 0 || h.numer <= 0 || h.numer as i128 > h.denom as i128;
            if out_of_range {
                return Err(Error::HeightOutOfRange {
                    chart: id,
                    value: h.to_string(),
                });
            }
            *slot = h.over(denominator).ok_or(Error::NonRepresentable {
                chart: id,
                value: h.to_string(),
                denominator,
            })? as u64;
        }
        numerators.push((pair[0], pair[1]));
    }
    Instance::from_numerators(denominator, &numerators)
}

/// Start cell (1-based) of every chart, indexed by chart id.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Packing {
    starts: Vec<usize>,
}

impl Packing {
    pub fn new(starts: Vec<usize>) -> Self {
        Packing { starts }
    }

    pub fn starts(&self) -> &[usize] {
        &self.starts
    }

    pub fn start(&self, id: usize) -> Option<usize> {
        self.starts.get(id).copied()
    }

    pub fn into_starts(self) -> Vec<usize> {
        self.starts
    }

    fn check_against(&self, inst: &Instance) -> Result<()> {
        if self.starts.len() < inst.len() {
            return Err(Error::UnassignedChart(self.starts.len()));
        }
        if self.starts.len() > inst.len() {
            return Err(Error::PackingSizeMismatch {
                expected: inst.len(),
                got: self.starts.len(),
            });
        }
        if let Some(id) = self.starts.iter().position(|&s| s == 0) {
            return Err(Error::InvalidStart(id));
        }
        Ok(())
    }
}

/// Per-cell loads; `cells()[0]` is cell 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Occupancy {
    denominator: u64,
    cells: Vec<u64>,
}

impl Occupancy {
    pub fn cells(&self) -> &[u64] {
        &self.cells
    }

    pub fn denominator(&self) -> u64 {
        self.denominator
    }

    /// Load of 1-based `cell`, zero past the end.
    pub fn load(&self, cell: usize) -> u64 {
        cell.checked_sub(1)
            .and_then(|i| self.cells.get(i))
            .copied()
            .unwrap_or(0)
    }

    /// First overloaded cell (1-based).
    pub fn first_overload(&self) -> Option<usize> {
        self.cells
            .iter()
            .position(|&l| l > self.denominator)
            .map(|i| i + 1)
    }

    pub fn occupied_count(&self) -> usize {
        self.cells.iter().filter(|&&l| l > 0).count()
    }

    pub fn total(&self) -> u64 {
        self.cells.iter().sum()
    }
}

pub fn occupancy(inst: &Instance, p: &Packing) -> Result<Occupancy> {
    p.check_against(inst)?;
    let last = p.starts.iter().max().map_or(0, |s| s + 1);
    let mut cells = vec![0u64; last];
    for (chart, &start) in inst.charts.iter().zip(&p.starts) {
        cells[start - 1] += chart.a.0;
        cells[start] += chart.b.0;
    }
    Ok(Occupancy {
        denominator: inst.denominator,
        cells,
    })
}

pub fn is_feasible(inst: &Instance, p: &Packing) -> Result<bool> {
    Ok(occupancy(inst, p)?.first_overload().is_none())
}

fn feasible_occupancy(inst: &Instance, p: &Packing) -> Result<Occupancy> {
    let occ = occupancy(inst, p)?;
    match occ.first_overload() {
        Some(cell) => Err(Error::InfeasiblePacking {
            cell,
            load: occ.load(cell),
            denominator: occ.denominator,
        }),
        None => Ok(occ),
    }
}

/// Number of cells holding at least one bar.
pub fn length(inst: &Instance, p: &Packing) -> Result<usize> {
    Ok(feasible_occupancy(inst, p)?.occupied_count())
}

/// Shifts charts left until no empty cell precedes the last occupied one.
pub fn compact(inst: &Instance, p: &Packing) -> Result<Packing> {
    let occ = feasible_occupancy(inst, p)?;
    // Shift of a chart = number of empty cells before its start. No chart
    // spans an empty cell, so removing them keeps every cell's contents.
    let mut empty_before = Vec::with_capacity(occ.cells.len() + 1);
    let mut empties = 0;
    empty_before.push(0);
    for &load in &occ.cells {
        if load == 0 {
            empties += 1;
        }
        empty_before.push(empties);
    }
    let starts = p.starts.iter().map(|&s| s - empty_before[s - 1]).collect();
    Ok(Packing { starts })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frac(s: &str) -> Fraction {
        s.parse().unwrap()
    }

    fn inst(d: u64, h: &[(u64, u64)]) -> Instance {
        Instance::from_numerators(d, h).unwrap()
    }

    #[test]
    fn validate_direct_representation() {
        let i = validate_instance(&[(frac("0.7"), frac("0.3"))], 10).unwrap();
        assert_eq!(i.as_numerators(), vec![(7, 3)]);
        assert_eq!(i.charts()[0].id, 0);
    }

    #[test]
    fn validate_rejects_zero_height() {
        let err = validate_instance(&[(frac("0.0"), frac("0.5"))], 10).unwrap_err();
        assert!(matches!(err, Error::HeightOutOfRange { chart: 0, .. }));
    }

    #[test]
    fn validate_accepts_upper_boundary() {
        let i = validate_instance(&[(frac("1.0"), frac("1"))], 2).unwrap();
        assert_eq!(i.as_numerators(), vec![(2, 2)]);
    }

    #[test]
    fn validate_errors() {
        assert!(matches!(
            validate_instance(&[(frac("1.01"), frac("0.5"))], 100),
            Err(Error::HeightOutOfRange { .. })
        ));
        assert!(matches!(
            validate_instance(&[(frac("1/3"), frac("0.5"))], 10),
            Err(Error::NonRepresentable { .. })
        ));
        assert_eq!(validate_instance(&[], 10), Err(Error::EmptyInstance));
        assert_eq!(
            validate_instance(&[(frac("-0.5"), frac("0.5"))], 10).unwrap_err(),
            Error::HeightOutOfRange {
                chart: 0,
                value: "-5/10".into()
            }
        );
    }

    #[test]
    fn fraction_parsing() {
        assert_eq!(frac("0.35"), Fraction::new(35, 100));
        assert_eq!(frac("3/8"), Fraction::new(3, 8));
        assert_eq!(frac("1"), Fraction::new(1, 1));
        assert_eq!(frac(".5"), Fraction::new(5, 10));
        assert!("abc".parse::<Fraction>().is_err());
        assert!(".".parse::<Fraction>().is_err());
    }

    #[test]
    fn big_is_strict() {
        let i = inst(10, &[(5, 5), (6, 1), (1, 6)]);
        let big: Vec<_> = i.charts().iter().map(|c| c.is_big(10)).collect();
        assert_eq!(big, vec![false, true, true]);
    }

    #[test]
    fn occupancy_examples() {
        let i = inst(100, &[(70, 30)]);
        let occ = occupancy(&i, &Packing::new(vec![1])).unwrap();
        assert_eq!(occ.cells(), &[70, 30]);

        let i = inst(100, &[(70, 30), (35, 65)]);
        let occ = occupancy(&i, &Packing::new(vec![1, 2])).unwrap();
        assert_eq!(occ.cells(), &[70, 65, 65]);
        let occ = occupancy(&i, &Packing::new(vec![1, 1])).unwrap();
        assert_eq!(occ.cells(), &[105, 95]);

        assert_eq!(
            occupancy(&i, &Packing::new(vec![1])),
            Err(Error::UnassignedChart(1))
        );
    }

    #[test]
    fn feasibility_examples() {
        let i = inst(100, &[(70, 30), (35, 65)]);
        assert!(is_feasible(&i, &Packing::new(vec![1, 2])).unwrap());
        assert!(!is_feasible(&i, &Packing::new(vec![1, 1])).unwrap());
        let i = inst(10, &[(4, 6), (6, 4)]);
        assert!(is_feasible(&i, &Packing::new(vec![1, 1])).unwrap());
    }

    #[test]
    fn length_examples() {
        let i = inst(10, &[(5, 5)]);
        assert_eq!(length(&i, &Packing::new(vec![1])).unwrap(), 2);
        let i = inst(10, &[(4, 6), (6, 4)]);
        assert_eq!(length(&i, &Packing::new(vec![1, 1])).unwrap(), 2);
        let i = inst(100, &[(70, 30), (35, 65)]);
        assert!(matches!(
            length(&i, &Packing::new(vec![1, 1])),
            Err(Error::InfeasiblePacking {
                cell: 1,
                load: 105,
                ..
            })
        ));
    }

    #[test]
    fn compact_examples() {
        let i = inst(10, &[(5, 5)]);
        let c = compact(&i, &Packing::new(vec![3])).unwrap();
        assert_eq!(c.starts(), &[1]);
        assert_eq!(length(&i, &c).unwrap(), 2);

        let i = inst(100, &[(70, 30), (35, 65)]);
        let p = Packing::new(vec![1, 2]);
        assert_eq!(compact(&i, &p).unwrap(), p);

        let i = inst(10, &[(5, 5), (5, 5)]);
        let c = compact(&i, &Packing::new(vec![1, 4])).unwrap();
        assert_eq!(c.starts(), &[1, 3]);
    }
}
