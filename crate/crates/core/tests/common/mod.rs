#![allow(dead_code)]

use barpack::model::{is_feasible, length, Instance, Packing};
use barpack::packers::PackResult;

/// Rechecks a matching-packer run from the outside: feasible, compact,
/// `L = 2n - sum of savings`, and chart counts dropping by `m_k` per round.
pub fn check_run(inst: &Instance, run: &PackResult) -> Result<(), String> {
    let n = inst.len();
    if !is_feasible(inst, &run.packing).map_err(|e| e.to_string())? {
        return Err("infeasible".into());
    }
    let l = length(inst, &run.packing).map_err(|e| e.to_string())?;
    if l != run.length {
        return Err(format!("reported {} but length is {l}", run.length));
    }
    let last = run.packing.starts().iter().max().unwrap() + 1;
    if last != l {
        return Err(format!("not compact: last cell {last}, length {l}"));
    }
    let saved: usize = run.trace.rounds.iter().map(|r| r.savings).sum();
    if l + saved != 2 * n {
        return Err(format!("L = {l}, savings = {saved}, n = {n}"));
    }
    let mut count = n;
    for (k, r) in run.trace.rounds.iter().enumerate() {
        count -= r.matched;
        if r.remaining != count {
            return Err(format!(
                "round {}: {} charts left, expected {count}",
                k + 1,
                r.remaining
            ));
        }
    }
    if run.trace.final_charts != count {
        return Err("final chart count".into());
    }
    Ok(())
}

/// Minimum length over every start vector in `[1, 2n - 1]^n`.
pub fn brute_force_opt(inst: &Instance) -> usize {
    let n = inst.len();
    let mut starts = vec![1usize; n];
    let mut best = 2 * n;
    loop {
        let p = Packing::new(starts.clone());
        if is_feasible(inst, &p).unwrap() {
            best = best.min(length(inst, &p).unwrap());
        }
        let mut i = 0;
        loop {
            if i == n {
                return best;
            }
            starts[i] += 1;
            if starts[i] < 2 * n {
                break;
            }
            starts[i] = 1;
            i += 1;
        }
    }
}
