//! Writes the 0/1 model of an instance in CPLEX LP format.

use barpack::exact::export_blp;
use barpack::generate::gen_tight_family;
use barpack::model::Instance;

fn main() -> barpack::Result<()> {
    print!("{}", export_blp(&gen_tight_family(1, 100)?, 5)?);
    println!();
    // Thirds have no decimal form, so capacity rows are scaled to integers.
    print!(
        "{}",
        export_blp(&Instance::from_numerators(3, &[(2, 1), (1, 2)])?, 3)?
    );
    Ok(())
}
