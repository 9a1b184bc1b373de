use std::path::PathBuf;

use clap::Subcommand;
use num_bigint::BigInt;
use serde_json::json;

use super::output::Report;
use super::EXIT_OK;
use crate::padic::PadicNumber;
use crate::series::{
    binomial_precision_loss, excluded_line, implicit_solve, line_series, mu_lambda, specialize_line, BivariateSeries,
    UnivariateSeries,
};

#[derive(Debug, Subcommand)]
pub enum SeriesCommand {
    /// (1+X)^a (1+Y)^b - 1
    Line {
        #[arg(long, allow_negative_numbers = true)]
        a: BigInt,
        #[arg(long, allow_negative_numbers = true)]
        b: BigInt,
        #[arg(long, default_value_t = 3)]
        p: u64,
    },
    /// g(Y) with f_{a,b}(g(Y), Y) = 0
    Solve {
        #[arg(long, allow_negative_numbers = true)]
        a: BigInt,
        #[arg(long, allow_negative_numbers = true)]
        b: BigInt,
        #[arg(long, default_value_t = 3)]
        p: u64,
    },
    /// Restriction of F to the line (a : b)
    Specialize {
        #[arg(long = "F")]
        f: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        a: BigInt,
        #[arg(long, allow_negative_numbers = true)]
        b: BigInt,
    },
    /// mu and lambda of a one-variable series, or of F along (a : b)
    Invariants {
        /// One-variable series file
        #[arg(long, conflicts_with = "f")]
        h: Option<PathBuf>,
        #[arg(long = "F", requires_all = ["a", "b"])]
        f: Option<PathBuf>,
        #[arg(long, allow_negative_numbers = true)]
        a: Option<BigInt>,
        #[arg(long, allow_negative_numbers = true)]
        b: Option<BigInt>,
    },
    /// The excluded line of F in P^1(F_p)
    Excluded {
        #[arg(long = "F")]
        f: PathBuf,
    },
}

fn read_json(path: &PathBuf) -> Result<serde_json::Value, String> {
    let s = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&s).map_err(|e| format!("{}: {e}", path.display()))
}

fn bivariate(path: &PathBuf) -> Result<BivariateSeries, String> {
    BivariateSeries::from_json(&read_json(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn padic(p: u64, n: u32, x: &BigInt) -> Result<PadicNumber, String> {
    PadicNumber::from_integer(p, n, x).map_err(|e| e.to_string())
}

fn loss_warning(p: u64, n: u32, cap: usize) -> Vec<String> {
    let loss = binomial_precision_loss(p, cap);
    if loss == 0 {
        Vec::new()
    } else {
        vec![format!(
            "binomial coefficients up to degree {cap} are exact only to {} of {n} digits mod {p}",
            n.saturating_sub(loss)
        )]
    }
}

fn univariate_report(h: &UnivariateSeries, var: &str, warnings: Vec<String>) -> Report {
    let poly = h.to_poly_string(var);
    let mut r = Report::new(format!("{poly}\n"), json!({ "poly": poly, "series": h.to_json() }));
    r.warnings = warnings;
    r
}

pub fn run(cmd: &SeriesCommand, precision: u32, cap: usize) -> Result<(Report, i32), String> {
    let e = |x: crate::series::SeriesError| x.to_string();
    match cmd {
        SeriesCommand::Line { a, b, p } => {
            let f = line_series(&padic(*p, precision, a)?, &padic(*p, precision, b)?, cap).map_err(e)?;
            let poly = f.to_poly_string();
            let mut r = Report::new(format!("{poly}\n"), json!({ "poly": poly, "series": f.to_json() }));
            r.warnings = loss_warning(*p, precision, cap);
            Ok((r, EXIT_OK))
        }
        SeriesCommand::Solve { a, b, p } => {
            let g = implicit_solve(&padic(*p, precision, a)?, &padic(*p, precision, b)?, cap).map_err(e)?;
            Ok((univariate_report(&g, "Y", loss_warning(*p, precision, cap)), EXIT_OK))
        }
        SeriesCommand::Specialize { f, a, b } => {
            let f = bivariate(f)?;
            let (p, n) = (f.prime(), f.precision());
            let a = padic(p, n, a)?;
            let b = padic(p, n, b)?;
            let var = if a.is_unit() { "Y" } else { "X" };
            let h = specialize_line(&f, &a, &b).map_err(e)?;
            Ok((univariate_report(&h, var, loss_warning(p, n, f.cap())), EXIT_OK))
        }
        SeriesCommand::Invariants { h, f, a, b } => {
            let (series, warnings) = match (h, f, a, b) {
                (Some(h), None, _, _) => {
                    let v = read_json(h)?;
                    (UnivariateSeries::from_json(&v).map_err(|x| format!("{}: {x}", h.display()))?, Vec::new())
                }
                (None, Some(f), Some(a), Some(b)) => {
                    let f = bivariate(f)?;
                    let (p, n) = (f.prime(), f.precision());
                    let h = specialize_line(&f, &padic(p, n, a)?, &padic(p, n, b)?).map_err(e)?;
                    (h, loss_warning(p, n, f.cap()))
                }
                _ => return Err("give --h, or --F with --a and --b".into()),
            };
            let inv = mu_lambda(&series).map_err(e)?;
            let mut table = format!("mu = {}  lambda = {}\n", inv.mu, inv.lambda);
            if !inv.certified {
                table.push_str("not certified: the witness sits at the precision or degree cap\n");
            }
            let mut r = Report::new(table, json!(inv));
            r.warnings = warnings;
            Ok((r, EXIT_OK))
        }
        SeriesCommand::Excluded { f } => {
            let f = bivariate(f)?;
            let line = excluded_line(&f).map_err(e)?;
            Ok((
                Report::new(format!("{line}\n"), json!({ "p": f.prime(), "excluded_line": line.to_string() })),
                EXIT_OK,
            ))
        }
    }
}
