//! Comparison harness: runs packers over a set of instances and tabulates
//! lengths against the exact optimum or the lower bound.

use std::collections::BTreeMap;
use std::io::Write;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{lower_bound, solve_exact, ExactResult};
use crate::model::{is_feasible, length, Instance};
use crate::packers::{pack_first_fit, pack_m, pack_mw, Algorithm, PackResult};

/// Environment variable capping the harness worker count.
pub const THREADS_ENV: &str = "BARPACK_THREADS";

pub const CSV_HEADER: [&str; 17] = [
    "instance",
    "n",
    "algorithm",
    "status",
    "length",
    "m1",
    "w1",
    "opt",
    "proven",
    "lower_bound",
    "basis",
    "ratio",
    "ratio_exact",
    "x",
    "f",
    "g",
    "envelope_ok",
];

/// A ratio `num/den`, kept exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ratio {
    pub num: u64,
    pub den: u64,
}

impl Ratio {
    pub fn value(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `self <= other`, compared by cross-multiplication.
    pub fn le(self, other: Ratio) -> bool {
        self.num as u128 * other.den as u128 <= other.num as u128 * self.den as u128
    }
}

/// `f(x) = 1 + 1/(3 - 2x)` at `x = w1/n`, as `(4n - 2w1)/(3n - 2w1)`.
pub fn envelope_f(w1: u64, n: u64) -> Ratio {
    Ratio {
        num: 4 * n - 2 * w1,
        den: 3 * n - 2 * w1,
    }
}

/// `g(x) = 2 - x` at `x = w1/n`.
pub fn envelope_g(w1: u64, n: u64) -> Ratio {
    Ratio {
        num: 2 * n - w1,
        den: n,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportRow {
    pub instance: String,
    pub n: usize,
    pub algorithm: Algorithm,
    /// `ok`, or the error that stopped this row.
    pub status: String,
    pub length: Option<usize>,
    pub m1: Option<usize>,
    pub w1: Option<u64>,
    pub opt: Option<usize>,
    pub proven: Option<bool>,
    pub lower_bound: usize,
    /// `L/OPT` when the oracle proved `OPT`, otherwise `L/LB`.
    pub ratio: Option<Ratio>,
    pub ratio_against_opt: bool,
    /// `f(x)` and `g(x)` for `M_w` rows.
    pub envelope: Option<(Ratio, Ratio)>,
    /// `L/OPT <= min(f, g)`, for `M_w` rows on big instances with proven `OPT`.
    pub envelope_ok: Option<bool>,
}

impl ReportRow {
    pub fn is_ok(&self) -> bool {
        self.status == "ok"
    }

    fn csv_record(&self) -> Vec<String> {
        let opt = |v: Option<String>| v.unwrap_or_default();
        let (x, f, g) = match (self.envelope, self.w1) {
            (Some((f, g)), Some(w1)) => (
                format!("{:.4}", w1 as f64 / self.n as f64),
                format!("{:.4}", f.value()),
                format!("{:.4}", g.value()),
            ),
            _ => Default::default(),
        };
        vec![
            self.instance.clone(),
            self.n.to_string(),
            self.algorithm.to_string(),
            self.status.clone(),
            opt(self.length.map(|v| v.to_string())),
            opt(self.m1.map(|v| v.to_string())),
            opt(self.w1.map(|v| v.to_string())),
            opt(self.opt.map(|v| v.to_string())),
            opt(self.proven.map(|v| v.to_string())),
            self.lower_bound.to_string(),
            match self.ratio {
                Some(_) if self.ratio_against_opt => "opt".into(),
                Some(_) => "lb".into(),
                None => String::new(),
            },
            opt(self.ratio.map(|r| format!("{:.3}", r.value()))),
            opt(self.ratio.map(|r| format!("{}/{}", r.num, r.den))),
            x,
            f,
            g,
            opt(self.envelope_ok.map(|v| v.to_string())),
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompareOptions {
    /// Solve each instance exactly to get `OPT`.
    pub oracle: bool,
    pub budget: u64,
}

/// Reads the worker cap from the environment; unset, zero or unparsable
/// means no cap.
pub fn threads_from_env() -> Option<usize> {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&t| t > 0)
}

/// Runs every algorithm on every instance. Rows come back in instance order,
/// then algorithm order, whatever the worker count.
pub fn compare(
    instances: &[(String, Instance)],
    algorithms: &[Algorithm],
    options: CompareOptions,
    threads: Option<usize>,
) -> Vec<ReportRow> {
    let work = || -> Vec<ReportRow> {
        instances
            .par_iter()
            .flat_map_iter(|(name, inst)| compare_one(name, inst, algorithms, options))
            .collect()
    };
    match threads {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(work),
            Err(_) => work(),
        },
        None => work(),
    }
}

fn compare_one(
    name: &str,
    inst: &Instance,
    algorithms: &[Algorithm],
    options: CompareOptions,
) -> Vec<ReportRow> {
    let lb = lower_bound(inst);
    let needs_exact = options.oracle || algorithms.contains(&Algorithm::Exact);
    let exact: Option<Result<ExactResult>> = needs_exact.then(|| {
        let upper = pack_mw(inst)?.length;
        Ok(solve_exact(inst, upper, options.budget))
    });
    let proven_opt = match &exact {
        Some(Ok(r)) if options.oracle && r.proven => Some(r.opt_length),
        _ => None,
    };

    algorithms
        .iter()
        .map(|&algorithm| {
            let mut row = ReportRow {
                instance: name.to_string(),
                n: inst.len(),
                algorithm,
                status: "ok".into(),
                length: None,
                m1: None,
                w1: None,
                opt: proven_opt,
                proven: match &exact {
                    Some(Ok(r)) if options.oracle => Some(r.proven),
                    _ => None,
                },
                lower_bound: lb,
                ratio: None,
                ratio_against_opt: false,
                envelope: None,
                envelope_ok: None,
            };
            let outcome = match algorithm {
                Algorithm::Exact => match &exact {
                    Some(Ok(r)) => Ok((r.opt_length, r.packing.clone(), None)),
                    Some(Err(e)) => Err(e.clone()),
                    None => unreachable!("exact rows always run the search"),
                },
                _ => run_packer(inst, algorithm).map(|r| (r.length, r.packing.clone(), Some(r))),
            };
            let checked = outcome.and_then(|(l, packing, run)| {
                if !is_feasible(inst, &packing)? || length(inst, &packing)? != l {
                    return Err(Error::Invariant(format!(
                        "{algorithm} produced a bad packing"
                    )));
                }
                Ok((l, run))
            });
            match checked {
                Ok((l, run)) => fill(&mut row, inst, l, run.as_ref()),
                Err(e) => row.status = format!("error: {e}"),
            }
            row
        })
        .collect()
}

fn run_packer(inst: &Instance, algorithm: Algorithm) -> Result<PackResult> {
    match algorithm {
        Algorithm::M => pack_m(inst),
        Algorithm::Mw => pack_mw(inst),
        Algorithm::FirstFit => pack_first_fit(inst, &(0..inst.len()).collect::<Vec<_>>()),
        Algorithm::Exact => unreachable!("exact rows do not run a packer"),
    }
}

fn fill(row: &mut ReportRow, inst: &Instance, l: usize, run: Option<&PackResult>) {
    row.length = Some(l);
    if let Some(run) = run {
        row.m1 = Some(run.trace.first_matched());
        row.w1 = Some(run.trace.first_weight());
    }
    let (den, against_opt) = match row.opt {
        Some(opt) => (opt, true),
        None => (row.lower_bound, false),
    };
    row.ratio = Some(Ratio {
        num: l as u64,
        den: den as u64,
    });
    row.ratio_against_opt = against_opt;
    if row.algorithm == Algorithm::Mw {
        let (w1, n) = (row.w1.unwrap_or(0), inst.len() as u64);
        let (f, g) = (envelope_f(w1, n), envelope_g(w1, n));
        row.envelope = Some((f, g));
        if against_opt && inst.all_big() {
            let r = row.ratio.expect("ratio set above");
            row.envelope_ok = Some(r.le(f) && r.le(g));
        }
    }
}

pub fn write_csv<W: Write>(rows: &[ReportRow], out: W, header: bool) -> Result<()> {
    let mut w = csv::WriterBuilder::new().from_writer(out);
    let io = |e: csv::Error| Error::Io(format!("writing CSV: {e}"));
    if header {
        w.write_record(CSV_HEADER).map_err(io)?;
    }
    for row in rows {
        w.write_record(row.csv_record()).map_err(io)?;
    }
    Ok(w.flush()?)
}

/// Largest ratio per algorithm over the rows that have one.
pub fn max_ratios(rows: &[ReportRow]) -> BTreeMap<Algorithm, Ratio> {
    let mut best: BTreeMap<Algorithm, Ratio> = BTreeMap::new();
    for row in rows {
        if let Some(r) = row.ratio {
            best.entry(row.algorithm)
                .and_modify(|b| {
                    if !r.le(*b) {
                        *b = r;
                    }
                })
                .or_insert(r);
        }
    }
    best
}

/// One line per algorithm, e.g. `max_ratio algo=mw 1.333 (4/3)`.
pub fn summary(rows: &[ReportRow]) -> String {
    max_ratios(rows)
        .iter()
        .map(|(a, r)| {
            format!(
                "max_ratio algo={a} {:.3} ({}/{})\n",
                r.value(),
                r.num,
                r.den
            )
        })
        .collect()
}
