//! A seeded sweep of M and M_w against the exact optimum, as CSV on stdout
//! with the per-algorithm maximum ratio on stderr.

use barpack::exact::DEFAULT_BUDGET;
use barpack::generate::gen_big;
use barpack::packers::Algorithm;
use barpack::report::{compare, summary, threads_from_env, write_csv, CompareOptions};

fn main() -> barpack::Result<()> {
    let mut set = Vec::new();
    for n in [4, 6, 8] {
        for seed in 0..10 {
            set.push((format!("big-n{n}-s{seed}"), gen_big(n, seed, 1_000_000)?));
        }
    }
    let options = CompareOptions {
        oracle: true,
        budget: DEFAULT_BUDGET,
    };
    let rows = compare(
        &set,
        &[Algorithm::M, Algorithm::Mw],
        options,
        threads_from_env(),
    );
    write_csv(&rows, std::io::stdout().lock(), true)?;
    eprint!("{}", summary(&rows));
    Ok(())
}
