//! Maximum-weight rounds on big charts of either orientation. Edge weight
//! is the overlap, so 2-unions are taken first.

use barpack::exact::{solve, DEFAULT_BUDGET};
use barpack::generate::gen_big;
use barpack::packers::{pack_m, pack_mw};
use barpack::report::{envelope_f, envelope_g};
use barpack::union::{build_graph, Chart};

fn main() -> barpack::Result<()> {
    let inst = gen_big(8, 3, 100)?;
    println!("charts (over 100): {:?}", inst.as_numerators());
    let graph = build_graph(&Chart::singletons(&inst), true, inst.denominator());
    print!(
        "round-1 union graph (u v weight):\n{}",
        graph.to_edge_list()
    );

    let mw = pack_mw(&inst)?;
    let m = pack_m(&inst)?;
    let opt = solve(&inst, DEFAULT_BUDGET)?.opt_length;
    let (w1, n) = (mw.trace.first_weight(), inst.len() as u64);
    println!("M_w: L={} w1={w1}  M: L={}  OPT={opt}", mw.length, m.length);
    println!(
        "bound at x = w1/n: min(f, g) = {:.3}, observed L/OPT = {:.3}",
        envelope_f(w1, n).value().min(envelope_g(w1, n).value()),
        mw.length as f64 / opt as f64
    );
    Ok(())
}
