//! Renders the optimal and the forced green-red packings of the tight
//! family side by side as SVG files.

use std::fs;

use barpack::exact::{solve, DEFAULT_BUDGET};
use barpack::generate::{gen_tight_family, tight_green_red_pairs};
use barpack::packers::pack_with_forced_first_matching;
use barpack::render::render_svg;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args().nth(1).unwrap_or_else(|| ".".into());
    let inst = gen_tight_family(1, 100)?;
    let opt = solve(&inst, DEFAULT_BUDGET)?.packing;
    let forced = pack_with_forced_first_matching(&inst, &tight_green_red_pairs(&inst))?.packing;
    for (name, p) in [("tight-opt.svg", opt), ("tight-forced.svg", forced)] {
        let path = format!("{dir}/{name}");
        fs::write(&path, render_svg(&inst, &p)?)?;
        println!("wrote {path}");
    }
    Ok(())
}
