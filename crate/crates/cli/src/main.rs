//! `hyperoval-lab`: command-line front end for the monomial hyperoval
//! experiments.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use hyperoval_core::hyperoval::Method;
use hyperoval_core::verify::VerifyConfig;
use output::{Format, Report};

#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

#[derive(Parser, Debug)]
#[command(name = "hyperoval-lab", version, about = "Monomial hyperovals in PG(2, 2^e) and the curves g_k")]
#[command(after_help = "Exit status: 0 on success, 1 when a checked assertion fails, 2 on usage errors.")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Seed for the randomized steps of univariate factorization.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Worker threads (0 picks one per core).
    #[arg(long, global = true, env = "HYPEROVAL_LAB_THREADS", default_value_t = 0)]
    threads: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Modulus table of GF(2^e), or every element of one field with its log.
    ///
    /// CSV columns: e, modulus, primitive. With --dump: element, log.
    Fields {
        #[arg(long, default_value_t = 32)]
        e_max: u32,
        /// Dump the elements of GF(2^e) (e <= 12).
        #[arg(long, requires = "e")]
        dump: bool,
        #[arg(long)]
        e: Option<u32>,
    },
    /// Decide whether D(x^k) is a hyperoval in PG(2, 2^e).
    ///
    /// CSV columns: k, e, method, hyperoval, witness.
    Hyperoval {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        e: u32,
        /// det (exhaustive determinant) or perm (permutation test).
        #[arg(long, default_value = "perm")]
        method: Method,
    },
    /// Hyperoval verdicts for every even k <= k-max and e <= e-max.
    ///
    /// CSV columns: k, e, hyperoval, note.
    Scan {
        #[arg(long, default_value_t = 20)]
        k_max: u64,
        #[arg(long, default_value_t = 14)]
        e_max: u32,
    },
    /// Singular points of f_k and g_k with their types, multiplicities and tangents.
    ///
    /// CSV columns: alpha, beta, type, m_f, m_g, sigma, tau, repeated_line, next_form,
    /// tangent_squarefree, tangent_lines.
    CurveReport {
        #[arg(long)]
        k: u64,
    },
    /// Point counts of g_k against the Weil bound, and the threshold e0.
    ///
    /// CSV columns: e, n_e, n_factor, bound_ok.
    Weil {
        #[arg(long)]
        k: u64,
        #[arg(long, default_value_t = 12)]
        e_max: u32,
    },
    /// Intersection numbers between the absolute factors of g_k.
    ///
    /// CSV columns: u, v, point, value.
    Bezout {
        #[arg(long)]
        k: u64,
    },
    /// Factor g_k over GF(2^ext), or over GF(2) with the absolute splitting.
    ///
    /// CSV columns: factor, multiplicity, degree; without --ext also r, absolute_factors.
    Factor {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        ext: Option<u32>,
    },
    /// Check the closed-form factorization of g_k for k = 6 or a power of two.
    ///
    /// CSV columns: factor.
    VerifySegre {
        #[arg(long)]
        k: u64,
    },
    /// Evaluate the counting inequalities over i <= i-max and odd ell <= ell-max.
    ///
    /// CSV columns: i, ell, k, equal_degree_x4, equal_degree_positive, bezout,
    /// bezout_simplified, ell_one_branch.
    InequalityScan {
        #[arg(long, default_value_t = 10)]
        i_max: u32,
        #[arg(long, default_value_t = 99)]
        ell_max: u64,
    },
    /// Run every numbered check; the caps shrink the k and e ranges.
    ///
    /// CSV columns: criterion, name, passed, detail.
    VerifyPaper {
        #[arg(long, default_value_t = 40)]
        k_max: u64,
        #[arg(long, default_value_t = 12)]
        e_max: u32,
    },
}

fn run(cli: &Cli) -> anyhow::Result<Report> {
    match &cli.command {
        Command::Fields { e_max, dump, e } => commands::fields(*e_max, if *dump { *e } else { None }),
        Command::Hyperoval { k, e, method } => commands::hyperoval(*k, *e, *method),
        Command::Scan { k_max, e_max } => commands::scan_grid(*k_max, *e_max),
        Command::CurveReport { k } => commands::curve_report(*k),
        Command::Weil { k, e_max } => commands::weil(*k, *e_max),
        Command::Bezout { k } => commands::bezout(*k),
        Command::Factor { k, ext } => commands::factor(*k, *ext),
        Command::VerifySegre { k } => commands::verify_segre(*k),
        Command::InequalityScan { i_max, ell_max } => commands::inequalities(*i_max, *ell_max),
        Command::VerifyPaper { k_max, e_max } => {
            commands::verify_paper(&VerifyConfig { k_max: *k_max, e_max: *e_max, seed: cli.seed })
        }
    }
}

/// Bad parameters exit with 2; anything else that stops a computation is a
/// failed check.
fn is_usage(err: &anyhow::Error) -> bool {
    use hyperoval_core::Error as E;
    if err.downcast_ref::<UsageError>().is_some() {
        return true;
    }
    matches!(
        err.downcast_ref::<E>(),
        Some(
            E::DegreeOutOfRange(_)
                | E::OddK(_)
                | E::InvalidParameter(_)
                | E::NotHyperovalCandidate { .. }
                | E::NotSpecialShape(_)
                | E::SplittingFieldTooLarge { .. }
        )
    )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    hyperoval_core::poly::ufactor::set_seed(cli.seed);
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global() {
        eprintln!("hyperoval-lab: {e}");
        return ExitCode::from(2);
    }
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("hyperoval-lab: {e:#}");
            return ExitCode::from(if is_usage(&e) { 2 } else { 1 });
        }
    };
    if let Err(e) = report.emit(cli.format, cli.out.as_deref()) {
        eprintln!("hyperoval-lab: {e:#}");
        return ExitCode::from(1);
    }
    match &report.failure {
        Some(f) => {
            eprintln!("hyperoval-lab: {f}");
            ExitCode::from(1)
        }
        None => ExitCode::SUCCESS,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn flags_parse() {
        let cli =
            Cli::try_parse_from(["hyperoval-lab", "hyperoval", "--k", "6", "--e", "3", "--method", "det"]).unwrap();
        assert!(matches!(cli.command, Command::Hyperoval { k: 6, e: 3, method: Method::Determinant }));
        assert_eq!(cli.format, Format::Json);
        let cli = Cli::try_parse_from(["hyperoval-lab", "scan", "--format", "csv", "--threads", "2"]).unwrap();
        assert_eq!((cli.format, cli.threads), (Format::Csv, 2));
    }
}
