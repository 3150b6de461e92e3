use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use frame_equiv::corpus::ConjectureSearch;
use frame_equiv::{frame_potential, random_transform, random_unit_frame, DEFAULT_TOL};
use frame_equiv_cli::bench::{self, parse_list, BenchConfig, BenchMethod};
use frame_equiv_cli::{
    check, exit, read_frame, write_disagreements, write_frame, write_witness, CliError, Method,
    ReportSummary,
};

/// Decide whether unit-norm frames are equivalent under orthogonal maps,
/// relabeling and sign changes.
///
/// Exit codes: 0 equivalent, 1 not equivalent, 2 likely equivalent,
/// 64 usage error, 65 parse or validation error, 70 internal error.
#[derive(Debug, Parser)]
#[command(name = "frameq", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compare two frame files.
    Check {
        f: PathBuf,
        g: PathBuf,
        /// auto, angle, innerprod or oracle
        #[arg(long, default_value = "auto")]
        method: Method,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Write a random unit-norm frame.
    Gen {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write a random equivalent copy of a frame.
    Transform {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// Also write the applied transform here.
        #[arg(long)]
        witness: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Print p-frame potentials.
    Potential {
        /// Exponent; repeat for several.
        #[arg(long = "p", required = true)]
        p: Vec<f64>,
        f: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Time the deciders over a grid and write CSV.
    Bench {
        /// Comma list or start:end[:step]
        #[arg(long, default_value = "2")]
        dims: String,
        #[arg(long, default_value = "3:90:3")]
        counts: String,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// Per-(method, dim, count) means and medians; defaults to OUT with a .summary.csv suffix.
        #[arg(long)]
        summary: Option<PathBuf>,
        /// Gnuplot data blocks of the summary.
        #[arg(long)]
        gnuplot: Option<PathBuf>,
        #[arg(long, default_value = "angle,innerprod,oracle")]
        methods: String,
        #[arg(long, default_value_t = 3)]
        repeats: usize,
        /// Calls per timed batch.
        #[arg(long, default_value_t = 1)]
        inner: usize,
    },
    /// Look for pairs whose absolute Gram multisets match but which the
    /// oracle finds inequivalent. Exits 1 if any turns up.
    Search {
        #[arg(long, default_value_t = 100_000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Shapes as dim x count, e.g. 3x4,3x5
        #[arg(long, default_value = "3x4,3x5")]
        shapes: String,
        /// Directory for frames of any disagreeing pair.
        #[arg(long, default_value = "counterexamples")]
        out: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
}

fn parse_shapes(s: &str) -> Result<Vec<(usize, usize)>, CliError> {
    s.split(',')
        .map(|item| {
            let (n, k) = item
                .split_once('x')
                .ok_or_else(|| CliError::Usage(format!("bad shape {item:?}, expected DIMxCOUNT")))?;
            let num = |t: &str| t.trim().parse::<usize>().map_err(|e| CliError::Usage(format!("{t:?}: {e}")));
            Ok((num(n)?, num(k)?))
        })
        .collect()
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Check { f, g, method, tol } => {
            let f = read_frame(&f, tol)?;
            let g = read_frame(&g, tol)?;
            let report = check(&f, &g, method, tol)?;
            println!("{report}");
            Ok(report.exit_code())
        }
        Command::Gen { dim, count, seed, out } => {
            write_frame(&random_unit_frame(dim, count, seed)?, &out)?;
            Ok(0)
        }
        Command::Transform {
            input,
            seed,
            out,
            witness,
            tol,
        } => {
            let f = read_frame(&input, tol)?;
            let t = random_transform(f.dim(), f.count(), seed);
            write_frame(&t.apply(&f)?, &out)?;
            if let Some(path) = witness {
                write_witness(&t, &path)?;
            }
            Ok(0)
        }
        Command::Potential { p, f, tol } => {
            let frame = read_frame(&f, tol)?;
            for p in p {
                if !(p > 0.0 && p.is_finite()) {
                    return Err(CliError::Usage(format!("p must be positive, got {p}")));
                }
                println!("p={p} potential={:.16e}", frame_potential(&frame, p));
            }
            Ok(0)
        }
        Command::Bench {
            dims,
            counts,
            trials,
            seed,
            out,
            summary,
            gnuplot,
            methods,
            repeats,
            inner,
        } => {
            let methods = methods
                .split(',')
                .map(str::parse::<BenchMethod>)
                .collect::<Result<Vec<_>, _>>()
                .map_err(CliError::Usage)?;
            let cfg = BenchConfig {
                dims: parse_list(&dims).map_err(CliError::Usage)?,
                counts: parse_list(&counts).map_err(CliError::Usage)?,
                trials,
                seed,
                methods,
                repeats,
                inner,
                ..BenchConfig::default()
            };
            let report = bench::run_bench(&cfg)?;
            bench::write_records(&out, &report.records)?;
            let summary = summary.unwrap_or_else(|| {
                let mut name = out.clone().into_os_string();
                name.push(".summary.csv");
                name.into()
            });
            bench::write_summary(&summary, &report.summary)?;
            if let Some(path) = gnuplot {
                bench::write_gnuplot(&path, &report.summary)?;
            }
            for row in &report.summary {
                println!(
                    "{:<9} n={:<3} k={:<4} mean={:>10.3}us median={:>10.3}us",
                    row.method.as_str(),
                    row.dim,
                    row.count,
                    row.mean_micros,
                    row.median_micros
                );
            }
            Ok(0)
        }
        Command::Search {
            trials,
            seed,
            shapes,
            out,
            tol,
        } => {
            let search = ConjectureSearch {
                shapes: parse_shapes(&shapes)?,
                trials,
                seed,
                tol,
            };
            if search.trials == 0 {
                return Err(CliError::Usage("trials must be positive".into()));
            }
            let report = search.run()?;
            println!("{}", ReportSummary(&report));
            let mut bad = report.counterexamples.clone();
            bad.extend(report.rejection_violations.iter().cloned());
            for path in write_disagreements(&out, &bad)? {
                println!("wrote {}", path.display());
            }
            Ok(if report.is_clean() { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(exit::USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("frameq: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
