//! The green/red family on which a bad round-1 matching costs almost half
//! again the optimum: `6k` cells against `4k + 1`.

use barpack::exact::{solve, DEFAULT_BUDGET};
use barpack::generate::{gen_tight_family, tight_green_red_pairs};
use barpack::packers::{pack_mw, pack_with_forced_first_matching};

fn main() -> barpack::Result<()> {
    for k in 1..=3 {
        let inst = gen_tight_family(k, 100)?;
        let opt = solve(&inst, DEFAULT_BUDGET)?;
        let forced = pack_with_forced_first_matching(&inst, &tight_green_red_pairs(&inst))?;
        let free = pack_mw(&inst)?;
        println!(
            "k={k}: OPT={} (proven {}), forced green-red L={} ratio {:.3}, unforced M_w L={}",
            opt.opt_length,
            opt.proven,
            forced.length,
            forced.length as f64 / opt.opt_length as f64,
            free.length,
        );
    }
    Ok(())
}
