//! Maximum-cardinality rounds on big non-increasing charts, where every
//! union is a 1-union and `L = 2n - m_1 - ... - m_p`.

use barpack::exact::{solve, DEFAULT_BUDGET};
use barpack::generate::gen_big_nonincreasing;
use barpack::packers::pack_m;

fn main() -> barpack::Result<()> {
    let inst = gen_big_nonincreasing(8, 42, 100)?;
    println!("charts (over 100): {:?}", inst.as_numerators());

    let run = pack_m(&inst)?;
    for (k, r) in run.trace.rounds.iter().enumerate() {
        println!(
            "round {}: {} edges, matched {}, saved {}, {} charts left",
            k + 1,
            r.edges,
            r.matched,
            r.savings,
            r.remaining
        );
    }
    let opt = solve(&inst, DEFAULT_BUDGET)?.opt_length;
    println!("starts {:?}", run.packing.starts());
    println!(
        "L = {} = 2*{} - {}, OPT = {opt}",
        run.length,
        inst.len(),
        run.trace.total_savings()
    );
    Ok(())
}
