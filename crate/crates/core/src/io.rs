//! JSON file formats.
//!
//! Instance: `{"version":1,"denominator":D,"charts":[[a,b],...]}` with
//! numerators over `D`. Packing: `{"starts":[...]}`. Result:
//! `{"length":L,"starts":[...],"trace":[{"m":..,"w":..,"s":..},...]}`, with
//! a trailing `"proven"` flag for exact runs. Writers emit compact JSON with
//! fixed key order, so canonical files round-trip byte for byte.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::ExactResult;
use crate::generate::tight_green_red_pairs;
use crate::model::{is_feasible, length, Instance, Packing};
use crate::packers::PackResult;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct InstanceFile {
    version: u32,
    denominator: u64,
    charts: Vec<[u64; 2]>,
}

pub fn instance_to_json(inst: &Instance) -> String {
    let file = InstanceFile {
        version: FORMAT_VERSION,
        denominator: inst.denominator(),
        charts: inst.charts().iter().map(|c| [c.a.0, c.b.0]).collect(),
    };
    serde_json::to_string(&file).expect("instance serializes")
}

pub fn instance_from_json(text: &str) -> Result<Instance> {
    let file: InstanceFile = serde_json::from_str(text)?;
    if file.version != FORMAT_VERSION {
        return Err(Error::UnsupportedVersion(file.version));
    }
    let heights: Vec<(u64, u64)> = file.charts.iter().map(|&[a, b]| (a, b)).collect();
    Instance::from_numerators(file.denominator, &heights)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct PackingFile {
    starts: Vec<usize>,
}

pub fn packing_to_json(p: &Packing) -> String {
    serde_json::to_string(&PackingFile {
        starts: p.starts().to_vec(),
    })
    .expect("packing serializes")
}

/// Reads the `starts` array of a packing or result file.
pub fn packing_from_json(text: &str) -> Result<Packing> {
    let file: PackingFile = serde_json::from_str(text)?;
    Ok(Packing::new(file.starts))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub m: usize,
    pub w: u64,
    pub s: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultFile {
    pub length: usize,
    pub starts: Vec<usize>,
    pub trace: Vec<TraceEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub proven: Option<bool>,
}

impl ResultFile {
    pub fn from_pack(r: &PackResult) -> Self {
        ResultFile {
            length: r.length,
            starts: r.packing.starts().to_vec(),
            trace: r
                .trace
                .rounds
                .iter()
                .map(|round| TraceEntry {
                    m: round.matched,
                    w: round.weight,
                    s: round.savings,
                })
                .collect(),
            proven: None,
        }
    }

    pub fn from_exact(r: &ExactResult) -> Self {
        ResultFile {
            length: r.opt_length,
            starts: r.packing.starts().to_vec(),
            trace: Vec::new(),
            proven: Some(r.proven),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("result serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn packing(&self) -> Packing {
        Packing::new(self.starts.clone())
    }

    /// Re-checks feasibility, the recorded length, and, for matching runs,
    /// that the recorded savings account for the length.
    pub fn verify(&self, inst: &Instance) -> Result<()> {
        let p = self.packing();
        if !is_feasible(inst, &p)? {
            return Err(Error::Invariant("result packing is infeasible".into()));
        }
        let actual = length(inst, &p)?;
        if actual != self.length {
            return Err(Error::Invariant(format!(
                "result records length {} but the packing has length {actual}",
                self.length
            )));
        }
        if !self.trace.is_empty() {
            let saved: usize = self.trace.iter().map(|t| t.s).sum();
            if 2 * inst.len() != actual + saved {
                return Err(Error::Invariant(
                    "trace savings do not match the length".into(),
                ));
            }
        }
        Ok(())
    }
}

/// Parses forced round-1 pairs: `g-r` pairs green `i` with red `i` in the
/// tight family layout; otherwise a comma list such as `0-2,1-3`.
pub fn parse_pairs(spec: &str, inst: &Instance) -> Result<Vec<(usize, usize)>> {
    if spec == "g-r" {
        return Ok(tight_green_red_pairs(inst));
    }
    spec.split(',')
        .map(|item| {
            let (a, b) = item
                .split_once('-')
                .ok_or_else(|| Error::Parse(format!("pair {item:?} is not of the form i-j")))?;
            let parse = |s: &str| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad chart id in {item:?}")))
            };
            Ok((parse(a)?, parse(b)?))
        })
        .collect()
}
