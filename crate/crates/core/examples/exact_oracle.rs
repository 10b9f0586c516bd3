//! Exact optimum, lower bound, and the matchings hidden in an optimal
//! packing.

use barpack::exact::{disassemble, lower_bound, round_cardinalities, solve, DEFAULT_BUDGET};
use barpack::generate::gen_big_nonincreasing;
use barpack::model::Instance;

fn main() -> barpack::Result<()> {
    // Chart 1 has to come first here.
    let small = Instance::from_numerators(10, &[(5, 9), (9, 5)])?;
    let r = solve(&small, DEFAULT_BUDGET)?;
    println!(
        "(0.5,0.9),(0.9,0.5): OPT={} starts {:?}",
        r.opt_length,
        r.packing.starts()
    );

    let inst = gen_big_nonincreasing(8, 11, 1000)?;
    let r = solve(&inst, DEFAULT_BUDGET)?;
    println!(
        "n=8: lower bound {}, OPT {} after {} nodes (proven {})",
        lower_bound(&inst),
        r.opt_length,
        r.nodes_explored,
        r.proven
    );
    let rounds = disassemble(&inst, &r.packing)?;
    println!(
        "optimal packing as matchings: m* = {:?}",
        round_cardinalities(&rounds)
    );
    for (k, round) in rounds.iter().enumerate() {
        let pairs: Vec<_> = round
            .iter()
            .map(|p| (p.left.clone(), p.right.clone()))
            .collect();
        println!("  round {}: {pairs:?}", k + 1);
    }

    let limited = solve(&gen_big_nonincreasing(14, 5, 1000)?, 1_000)?;
    println!(
        "n=14 with 1000 nodes: L={} proven={}",
        limited.opt_length, limited.proven
    );
    Ok(())
}
