use std::io;
use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use zenger::cli::{
    cmd_asymptotics, cmd_numrange, cmd_solve, parse_n_range, AsymptoticsOptions, NumrangeOptions,
    SolveOptions,
};
use zenger::numrange::DEFAULT_GRID;

/// Weighted log-utility maximization over polyhedral norm balls, with
/// dual-pair certificates.
#[derive(Parser)]
#[command(name = "zenger", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a problem file and certify the dual pair (w, phi).
    Solve {
        problem: PathBuf,
        /// Frank-Wolfe stopping gap.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long = "max-iter")]
        max_iter: Option<usize>,
        #[arg(long)]
        csv_out: Option<PathBuf>,
        /// Reject truncated geometric weights instead of renormalizing them.
        #[arg(long)]
        no_renormalize: bool,
    },
    /// Tabulate ||P_N|| for the norm family of a problem file.
    Asymptotics {
        problem: PathBuf,
        /// Inclusive range of N, written a..b.
        #[arg(long, default_value = "1..12", value_parser = parse_n_range)]
        n_range: RangeInclusive<usize>,
        #[arg(long)]
        csv_out: Option<PathBuf>,
    },
    /// Check that the diagonal of an upper-triangular matrix lies in its
    /// numerical range.
    Numrange {
        matrix: PathBuf,
        /// Number of support angles.
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
        #[arg(long)]
        csv_out: Option<PathBuf>,
    },
}

fn main() {
    let cli = Cli::parse();
    let (mut out, mut err) = (io::stdout().lock(), io::stderr().lock());
    let code = match cli.command {
        Command::Solve {
            problem,
            tol,
            max_iter,
            csv_out,
            no_renormalize,
        } => {
            let opts = SolveOptions {
                tol,
                max_iter,
                csv_out,
                renormalize: !no_renormalize,
            };
            cmd_solve(&problem, &opts, &mut out, &mut err)
        }
        Command::Asymptotics {
            problem,
            n_range,
            csv_out,
        } => cmd_asymptotics(
            &problem,
            &AsymptoticsOptions { n_range, csv_out },
            &mut out,
            &mut err,
        ),
        Command::Numrange {
            matrix,
            grid,
            csv_out,
        } => cmd_numrange(
            &matrix,
            &NumrangeOptions { grid, csv_out },
            &mut out,
            &mut err,
        ),
    };
    std::process::exit(code);
}
