//! `invsemi`: numerical semigroup invariants, inverse polynomials and
//! structure certificates from the command line.
//!
//! Exit codes: 0 success, 1 input outside a command's domain, 2 usage error,
//! 3 a computed object contradicts a proven statement.

mod commands;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "invsemi",
    version,
    about = "Numerical semigroups and their inverse polynomials"
)]
pub struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Cap on enumerated objects (factorizations listed, random samples).
    #[arg(long, global = true, default_value_t = 10_000)]
    pub bound: usize,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Frobenius number, genus, pseudo-Frobenius numbers, type, symmetry.
    Info { gens: String },
    /// Apéry set with respect to an element (default: the multiplicity).
    Apery { gens: String, modulus: Option<i64> },
    /// Factorizations of n.
    Factorize { gens: String, n: i64 },
    /// The inverse polynomial J_{H,h}.
    Invpoly { gens: String, h: i64 },
    /// Generators and colength of Ann(J_{H,m}).
    Ann { gens: String, m: i64 },
    /// The almost-symmetry inequality at h, or the report over all tested h.
    CheckAs { gens: String, h: Option<i64> },
    /// I_H + (x^a) as an intersection of annihilators, for x^a given as a
    /// comma-separated exponent vector (default: every variable).
    VerifyIntersection {
        gens: String,
        exponent: Option<String>,
        /// Also compute the right-hand colength by elimination.
        #[arg(long)]
        eliminate: bool,
        /// Check this many random exponent vectors instead.
        #[arg(long)]
        random: Option<usize>,
    },
    /// The gluing <d1 H1, d2 H2>.
    Glue {
        #[arg(long)]
        h1: String,
        #[arg(long)]
        d1: i64,
        #[arg(long)]
        h2: String,
        #[arg(long)]
        d2: i64,
        /// Check the product formula for J at d1*m1 + d2*m2.
        #[arg(long, num_args = 2, value_names = ["M1", "M2"])]
        invpoly: Option<Vec<i64>>,
    },
    /// Free (telescopic) ordering and, for symmetric input, the monomial
    /// criterion.
    Free { gens: String },
    /// The symmetric semigroup H_{e,c}.
    Hec { e: usize, c: usize },
    /// Shape of J_{H,Fr+n_1} for symmetric H with multiplicity e+1..e+3.
    Classify { gens: String },
    /// Complete intersection with every alpha_i n_i equal.
    Ci { gens: String },
    /// Pfaffian structure of a symmetric non-complete-intersection H with
    /// four generators.
    Bresinsky { gens: String },
    /// Every check on the Pfaffian structure.
    #[command(name = "verify-4gor")]
    Verify4Gor { gens: String },
    /// Minimal generators of I_H, optionally modulo x_i (1-based index in
    /// the given order).
    Mu {
        gens: String,
        #[arg(long)]
        modulo: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&out.json).expect("serializable")
                );
            } else {
                println!("{}", out.text);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("invsemi: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
