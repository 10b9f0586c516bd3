use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use barpack::exact::{export_blp, solve_exact, DEFAULT_BUDGET};
use barpack::generate::{Family, GenSpec};
use barpack::io::{
    instance_from_json, instance_to_json, packing_from_json, parse_pairs, ResultFile,
};
use barpack::model::{Instance, DEFAULT_DENOMINATOR};
use barpack::packers::{
    pack_first_fit, pack_m, pack_mw, pack_with_forced_first_matching, Algorithm,
};
use barpack::render::render_svg;
use barpack::report::{compare, summary, threads_from_env, write_csv, CompareOptions};
use barpack::Error;

/// Two-bar chart packing: generate instances, pack them, compare packers.
#[derive(Parser)]
#[command(name = "barpack", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a seeded instance.
    Gen(GenArgs),
    /// Pack one instance.
    Solve(SolveArgs),
    /// Tabulate packers over instance files or a generated sweep (CSV).
    Compare(CompareArgs),
    /// Draw a packing as SVG.
    Render(RenderArgs),
    /// Write the 0/1 model in CPLEX LP format.
    ExportBlp(ExportArgs),
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    family: Family,
    /// Chart count (random families).
    #[arg(long)]
    n: Option<usize>,
    /// Family parameter (tight family, 4k charts).
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_DENOMINATOR)]
    denominator: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    instance: PathBuf,
    #[arg(long, default_value = "mw")]
    algo: Algorithm,
    /// Impose the round-1 matching of `mw`: `g-r` or a list like `0-2,1-3`.
    #[arg(long)]
    force_first: Option<String>,
    /// Node budget of the exact search.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Result file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CompareArgs {
    /// Instance files.
    instances: Vec<PathBuf>,
    /// Generate a sweep instead of reading files.
    #[arg(long)]
    family: Option<Family>,
    #[arg(long, value_delimiter = ',')]
    n: Vec<usize>,
    #[arg(long, value_delimiter = ',')]
    k: Vec<usize>,
    /// First seed of the sweep.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Seeds per size.
    #[arg(long, default_value_t = 1)]
    count: u64,
    #[arg(long, default_value_t = DEFAULT_DENOMINATOR)]
    denominator: u64,
    #[arg(long, value_delimiter = ',', default_value = "m,mw")]
    algo: Vec<Algorithm>,
    /// Solve each instance exactly for the ratio denominator.
    #[arg(long)]
    oracle: bool,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// CSV file; appended to without a header when it already has rows.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RenderArgs {
    instance: PathBuf,
    /// Packing or result file.
    packing: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExportArgs {
    instance: PathBuf,
    /// Cell count of the model; defaults to the `mw` packing length.
    #[arg(long)]
    jmax: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type CliResult<T = ()> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let outcome = match cli.command {
        Command::Gen(a) => gen(a),
        Command::Solve(a) => solve(a),
        Command::Compare(a) => run_compare(a),
        Command::Render(a) => render(a),
        Command::ExportBlp(a) => export(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if matches!(e, Error::Invariant(_)) {
                3
            } else {
                2
            })
        }
    }
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path)
        .map_err(|e| Failure::Lib(Error::Io(format!("{}: {e}", path.display()))))
}

fn read_instance(path: &Path) -> CliResult<Instance> {
    Ok(instance_from_json(&read(path)?)?)
}

fn emit(out: Option<&Path>, text: &str) -> CliResult {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Lib(Error::Io(format!("{}: {e}", path.display())))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn size_for(family: Family, n: Option<usize>, k: Option<usize>) -> CliResult<usize> {
    match (family, n, k) {
        (Family::Tight, _, Some(k)) => Ok(k),
        (Family::Tight, _, None) => Err(Failure::Usage("--family tight needs --k".into())),
        (_, Some(n), _) => Ok(n),
        (_, None, _) => Err(Failure::Usage(format!("--family {family} needs --n"))),
    }
}

fn gen(a: GenArgs) -> CliResult {
    let spec = GenSpec {
        family: a.family,
        size: size_for(a.family, a.n, a.k)?,
        seed: a.seed,
        denominator: a.denominator,
    };
    let inst = spec.generate()?;
    emit(a.out.as_deref(), &(instance_to_json(&inst) + "\n"))
}

fn solve(a: SolveArgs) -> CliResult {
    let inst = read_instance(&a.instance)?;
    if a.force_first.is_some() && a.algo != Algorithm::Mw {
        return Err(Failure::Usage(
            "--force-first applies to --algo mw only".into(),
        ));
    }
    let (file, rounds) = match a.algo {
        Algorithm::Exact => {
            let upper = pack_mw(&inst)?.length;
            (
                ResultFile::from_exact(&solve_exact(&inst, upper, a.budget)),
                0,
            )
        }
        algo => {
            let run = match (algo, &a.force_first) {
                (Algorithm::Mw, Some(spec)) => {
                    pack_with_forced_first_matching(&inst, &parse_pairs(spec, &inst)?)?
                }
                (Algorithm::Mw, None) => pack_mw(&inst)?,
                (Algorithm::M, _) => pack_m(&inst)?,
                _ => pack_first_fit(&inst, &(0..inst.len()).collect::<Vec<_>>())?,
            };
            (ResultFile::from_pack(&run), run.trace.rounds.len())
        }
    };
    file.verify(&inst)?;
    let mut line = format!(
        "algo={} n={} L={} rounds={rounds}",
        a.algo,
        inst.len(),
        file.length
    );
    if let Some(proven) = file.proven {
        line += &format!(" proven={proven}");
    }
    println!("{line}");
    if let Some(path) = a.out.as_deref() {
        emit(Some(path), &(file.to_json() + "\n"))?;
    }
    Ok(())
}

fn run_compare(a: CompareArgs) -> CliResult {
    let mut set = Vec::new();
    for path in &a.instances {
        set.push((path.display().to_string(), read_instance(path)?));
    }
    if let Some(family) = a.family {
        let (sizes, count) = if family == Family::Tight {
            (&a.k, 1)
        } else {
            (&a.n, a.count)
        };
        if sizes.is_empty() {
            size_for(family, None, None)?;
        }
        for &size in sizes {
            for seed in a.seed..a.seed + count {
                let spec = GenSpec {
                    family,
                    size,
                    seed,
                    denominator: a.denominator,
                };
                let name = match family {
                    Family::Tight => format!("tight-k{size}"),
                    _ => format!("{family}-n{size}-s{seed}"),
                };
                set.push((name, spec.generate()?));
            }
        }
    }
    let options = CompareOptions {
        oracle: a.oracle,
        budget: a.budget,
    };
    let rows = compare(&set, &a.algo, options, threads_from_env());
    match a.out.as_deref() {
        Some(path) => {
            let has_rows = fs::metadata(path).map(|m| m.len() > 0).unwrap_or(false);
            let file = fs::OpenOptions::new()
                .create(true)
                .append(true)
                .open(path)
                .map_err(|e| Failure::Lib(Error::Io(format!("{}: {e}", path.display()))))?;
            write_csv(&rows, file, !has_rows)?;
            print!("{}", summary(&rows));
        }
        None => {
            write_csv(&rows, std::io::stdout().lock(), true)?;
            eprint!("{}", summary(&rows));
        }
    }
    std::io::stdout()
        .flush()
        .map_err(|e| Failure::Lib(e.into()))
}

fn render(a: RenderArgs) -> CliResult {
    let inst = read_instance(&a.instance)?;
    let packing = packing_from_json(&read(&a.packing)?)?;
    let svg = render_svg(&inst, &packing)?;
    emit(a.out.as_deref(), &svg)
}

fn export(a: ExportArgs) -> CliResult {
    let inst = read_instance(&a.instance)?;
    let jmax = match a.jmax {
        Some(j) => j,
        None => pack_mw(&inst)?.length,
    };
    emit(a.out.as_deref(), &export_blp(&inst, jmax)?)
}
