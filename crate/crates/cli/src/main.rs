//! `g2calc`: exact verification of G2 identities, torus cohomology tables,
//! Massey products and obstruction checks.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 on usage or
//! input errors.

mod commands;
mod report;

use clap::{Args, Parser, Subcommand, ValueEnum};
use commands::Outcome;
use g2calc::suites::Suite;
use g2calc::torus_spectral::truncation::with_thread_cap;
use g2calc::torus_spectral::Mode;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "g2calc", version, about = "Exact calculus for the standard G2-structure")]
struct Cli {
    /// Seed for every random input.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Also write the JSON report to this path.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Print the JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Algebra,
    Figures,
    Relations,
    Commutation,
    Kernels,
    Symbol,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Algebra => Suite::Algebra,
            SuiteArg::Figures => Suite::Figures,
            SuiteArg::Relations => Suite::Relations,
            SuiteArg::Commutation => Suite::Commutation,
            SuiteArg::Kernels => Suite::Kernels,
            SuiteArg::Symbol => Suite::Symbol,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a verification suite.
    Verify {
        suite: SuiteArg,
        /// Number of random modes (random vectors for `algebra`, covectors for `symbol`).
        #[arg(long)]
        modes: Option<usize>,
    },
    /// Per-mode or truncated cohomology of the torus complexes.
    Cohomology(CohomologyArgs),
    /// Triple Massey products in a Chevalley–Eilenberg model.
    Massey {
        #[arg(long, conflicts_with = "example", required_unless_present = "example")]
        ce_file: Option<PathBuf>,
        /// Built-in model: iwasawa, torus3, iwasawa-product.
        #[arg(long)]
        example: Option<String>,
        /// Three classes `a;b;c`; defaults to the example's classes or all degree-one triples.
        #[arg(long)]
        classes: Option<String>,
        /// Random primitive re-choices used to test verdict stability.
        #[arg(long, default_value_t = 20)]
        resolves: usize,
    },
    /// Known obstructions to torsion-free G2-structures.
    Obstruct {
        #[arg(long, conflicts_with = "example", required_unless_present = "example")]
        input: Option<PathBuf>,
        /// Built-in input: k3-connect-sum, t7.
        #[arg(long)]
        example: Option<String>,
    },
    /// Component constants of d, iota_B, iota_K, L_B, L_K probed at one mode.
    Tables {
        /// Mode to probe at; a seeded random nonzero mode by default.
        #[arg(long, value_parser = parse_mode, allow_hyphen_values = true)]
        mode: Option<Mode>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct CohomologyArgs {
    /// Sum over modes with max-norm at most N, reported for 1..=N.
    #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
    truncation: Option<i64>,
    /// A single mode `k1,...,k7`.
    #[arg(long, value_parser = parse_mode, allow_hyphen_values = true)]
    mode: Option<Mode>,
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    let v: Vec<i64> = s.split(',').map(|x| x.trim().parse::<i64>().map_err(|e| format!("`{x}`: {e}"))).collect::<Result<_, _>>()?;
    v.try_into().map_err(|v: Vec<i64>| format!("a mode has 7 entries, got {}", v.len()))
}

fn dispatch(cli: &Cli) -> Result<Outcome, String> {
    let seed = cli.seed;
    Ok(match &cli.cmd {
        Cmd::Verify { suite, modes } => commands::verify((*suite).into(), seed, *modes),
        Cmd::Cohomology(a) => match (a.truncation, a.mode) {
            (Some(n), _) => commands::cohomology_truncation(seed, n),
            (None, Some(k)) => commands::cohomology_mode(seed, k),
            (None, None) => unreachable!("clap requires one of the group"),
        },
        Cmd::Massey { ce_file, example, classes, resolves } => {
            commands::massey(seed, ce_file.as_deref(), example.as_deref(), classes.as_deref(), *resolves)?
        }
        Cmd::Obstruct { input, example } => commands::obstruct(seed, input.as_deref(), example.as_deref())?,
        Cmd::Tables { mode, format } => commands::tables(seed, *mode, matches!(format, Format::Csv) && !cli.json),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match with_thread_cap(|| dispatch(&cli)) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let doc = &outcome.doc;
    if let Some(p) = &cli.out {
        if let Err(e) = std::fs::write(p, doc.to_json()) {
            eprintln!("error: cannot write {}: {e}", p.display());
            return ExitCode::from(2);
        }
    }
    let text = if cli.json {
        doc.to_json()
    } else if outcome.raw {
        outcome.preamble
    } else {
        format!("{}{}", outcome.preamble, doc.to_text())
    };
    // a closed pipe (`| head`) is not an error worth reporting
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
    if doc.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
