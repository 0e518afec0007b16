//! Command-line front end. `run` never prints; it returns the exit status together with
//! what belongs on standard output and standard error.

mod commands;
mod input;

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value as Json;

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "lambdaforge", version, about = "Exact algebra for lambda-rings, Witt vectors and their relatives")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Universal polynomials and Adams operations.
    #[command(subcommand)]
    Lambda(LambdaOp),
    /// p-typical Witt vectors.
    #[command(subcommand)]
    Witt(WittOp),
    /// Truncated big Witt vectors 1 + a1 t + ... + aN t^N.
    #[command(subcommand)]
    Bigwitt(BigWittOp),
    /// Perfections of F_p-algebras.
    #[command(subcommand)]
    Perf(PerfOp),
    /// Finite p-Boolean rings.
    #[command(subcommand)]
    Boolean(BooleanOp),
    /// Integer-valued polynomials.
    #[command(subcommand)]
    Binomial(BinomialOp),
    /// Frobenius lifts and delta-structures.
    #[command(subcommand)]
    Delta(DeltaOp),
    /// Fracture squares and spherical lifts of perfect rings.
    #[command(subcommand)]
    Fracture(FractureOp),
    /// Evaluate an expression.
    Eval { expr: String },
}

#[derive(Debug, Clone, Copy, Args)]
pub struct LambdaLimitArgs {
    /// Largest j for products.
    #[arg(long, default_value_t = 6)]
    pub max_j: usize,
    /// Largest i*j for composites.
    #[arg(long, default_value_t = 9)]
    pub max_ij: usize,
}

#[derive(Debug, Subcommand)]
pub enum LambdaOp {
    /// P_j in e1..ej, f1..fj.
    Mult {
        #[arg(short = 'j')]
        j: usize,
        #[command(flatten)]
        limits: LambdaLimitArgs,
    },
    /// P_{j,i} in e1..e_{ij}.
    Comp {
        #[arg(short = 'j')]
        j: usize,
        #[arg(short = 'i')]
        i: usize,
        #[command(flatten)]
        limits: LambdaLimitArgs,
    },
    /// psi^n in lam1..lamn.
    Adams {
        #[arg(short = 'n')]
        n: usize,
    },
    /// Monomials in the lambda-operations of m generators with weight at most w.
    Basis {
        #[arg(short = 'm')]
        m: usize,
        #[arg(short = 'w')]
        w: u32,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WittBase {
    /// The integers.
    Z,
    /// The prime field F_p.
    Fp,
}

#[derive(Debug, Clone, Args)]
pub struct WittArgs {
    #[arg(short = 'p')]
    pub p: u64,
    #[arg(short = 'n')]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = WittBase::Z)]
    pub base: WittBase,
}

#[derive(Debug, Subcommand)]
pub enum WittOp {
    /// Sum of two vectors.
    Add {
        #[command(flatten)]
        args: WittArgs,
        u: String,
        v: String,
    },
    /// Product of two vectors.
    Mul {
        #[command(flatten)]
        args: WittArgs,
        u: String,
        v: String,
    },
    /// Frobenius (over Z the result is one coordinate shorter).
    Frob {
        #[command(flatten)]
        args: WittArgs,
        u: String,
    },
    /// Verschiebung.
    Versch {
        #[command(flatten)]
        args: WittArgs,
        u: String,
    },
    /// Teichmüller representative of a base-ring element.
    Teich {
        #[command(flatten)]
        args: WittArgs,
        #[arg(allow_hyphen_values = true)]
        a: String,
    },
    /// Ghost components (torsion-free base only).
    Ghost {
        #[command(flatten)]
        args: WittArgs,
        u: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum BigWittOp {
    /// Sum: the product of the two series.
    Add {
        #[arg(short = 'N')]
        n: usize,
        u: String,
        v: String,
    },
    /// Product, from the universal polynomials P_n.
    Mul {
        #[arg(short = 'N')]
        n: usize,
        u: String,
        v: String,
    },
    /// lambda^k; the output has N/k coefficients unless --out is given.
    Lambda {
        #[arg(short = 'N')]
        n: usize,
        #[arg(short = 'k')]
        k: usize,
        #[arg(long)]
        out: Option<usize>,
        u: String,
    },
    /// Ghost components: power sums of the formal roots.
    Ghost {
        #[arg(short = 'N')]
        n: usize,
        u: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ColimOp {
    Show,
    Add,
    Mul,
    Frob,
    FrobInv,
}

#[derive(Debug, Subcommand)]
pub enum PerfOp {
    /// Arithmetic in the colimit perfection of F_p[vars]; elements are `EXPR` or `EXPR@k`
    /// for the p^k-th root.
    Colim {
        #[arg(short = 'p')]
        p: u64,
        #[arg(long, value_delimiter = ',', default_value = "t")]
        vars: Vec<String>,
        #[arg(long, value_enum, default_value_t = ColimOp::Show)]
        op: ColimOp,
        a: String,
        b: Option<String>,
    },
    /// Inverse-limit perfection of a finite F_p-algebra.
    Lim {
        #[arg(short = 'p')]
        p: Option<u64>,
        /// Monic polynomial f in one variable: the algebra F_p[t]/(f).
        #[arg(long, allow_hyphen_values = true)]
        modulus: Option<String>,
        /// JSON file with {"p", "basis", "table", "unit"}.
        #[arg(long)]
        algebra: Option<std::path::PathBuf>,
        /// The product F_p^n.
        #[arg(long)]
        product: Option<usize>,
        #[arg(long)]
        stage: Option<usize>,
    },
}

#[derive(Debug, Clone, Args)]
pub struct PresentationArgs {
    #[arg(short = 'p')]
    pub p: u64,
    /// Generator names.
    #[arg(long, value_delimiter = ',')]
    pub gens: Vec<String>,
    /// Relations (repeatable); the relations x^p = x are always imposed.
    #[arg(long = "rel", allow_hyphen_values = true)]
    pub relations: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum BooleanOp {
    /// The free p-Boolean ring on n generators.
    Free {
        #[arg(short = 'p')]
        p: u64,
        #[arg(short = 'n')]
        n: usize,
    },
    /// Points of the spectrum of a presented ring or of an algebra file.
    Spec {
        #[command(flatten)]
        pres: PresentationArgs,
        #[arg(long)]
        algebra: Option<std::path::PathBuf>,
    },
    /// Transport C(S, F_p) to C(S, F_l).
    Transport {
        #[arg(short = 'p')]
        p: u64,
        #[arg(long)]
        to: u64,
        #[arg(long, value_delimiter = ',')]
        points: Vec<String>,
    },
    /// Solve a presentation: the ring as functions on its solution set.
    Solve {
        #[command(flatten)]
        pres: PresentationArgs,
    },
    /// Compare the group algebra of (Z/p)^n and the function algebra on it with the free ring.
    Group {
        #[arg(short = 'p')]
        p: u64,
        #[arg(short = 'n')]
        n: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum BinomialOp {
    /// Coordinates in the basis binom(x, n).
    Convert {
        #[arg(allow_hyphen_values = true)]
        f: String,
    },
    /// Product of two integer-valued polynomials.
    Mul {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
    /// lambda^n(f) = binom(f, n).
    Lambda {
        #[arg(short = 'n')]
        n: usize,
        #[arg(allow_hyphen_values = true)]
        f: String,
    },
    /// Check psi^k(f) = f.
    AdamsCheck {
        #[arg(short = 'k')]
        k: usize,
        #[arg(allow_hyphen_values = true)]
        f: String,
    },
    /// f(x + y) in the basis binom(x, a)*binom(y, b).
    Comul {
        #[arg(allow_hyphen_values = true)]
        f: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum DeltaOp {
    /// delta(x), phi(x) and psi(x); binomial input uses phi = id, polynomials x -> x^p.
    Eval {
        #[arg(short = 'p')]
        p: u64,
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Sum law, product law and psi = phi on a pair of elements.
    Laws {
        #[arg(short = 'p')]
        p: u64,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Whether delta_p and delta_l commute on binom(x, n) for n up to the degree.
    Commute {
        #[arg(short = 'p')]
        p: u64,
        #[arg(short = 'l')]
        l: u64,
        #[arg(long, default_value_t = 3)]
        degree: usize,
    },
    /// Monomials of the free delta-ring on x.
    Basis {
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        degree: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RingKind {
    Integers,
    Binomial,
    Polynomial,
    Monoid,
    Finite,
}

#[derive(Debug, Clone, Args)]
pub struct RingArgs {
    #[arg(long, value_enum, default_value_t = RingKind::Binomial)]
    pub ring: RingKind,
    /// Degree of the window (binomial, polynomial) or depth k of exponents a/q^k (monoid).
    #[arg(long, default_value_t = 3)]
    pub window: usize,
    /// The prime q of Z[t^(1/q^inf)].
    #[arg(long, default_value_t = 2)]
    pub monoid_prime: u64,
    /// Algebra file for --ring finite.
    #[arg(long)]
    pub algebra: Option<std::path::PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct PrimeArgs {
    /// Explicit primes.
    #[arg(long, value_delimiter = ',')]
    pub primes: Vec<u64>,
    /// All primes up to this bound (used when --primes is absent).
    #[arg(long, default_value_t = 13)]
    pub max_prime: u64,
}

#[derive(Debug, Subcommand)]
pub enum FractureOp {
    /// Glue rational and p-adic data into an integral element.
    Reconstruct {
        #[command(flatten)]
        ring: RingArgs,
        /// Rational part: an expression in x, or coordinates `[c0,c1,...]`.
        #[arg(long, allow_hyphen_values = true)]
        rational: String,
        /// p-adic part `p=ELEMENT` (repeatable), ELEMENT as for --rational but in the window basis.
        #[arg(long, allow_hyphen_values = true)]
        padic: Vec<String>,
        #[arg(long, default_value_t = 8)]
        precision: u32,
    },
    /// Check the fracture square on the window and print a certificate.
    Check {
        #[command(flatten)]
        ring: RingArgs,
        #[command(flatten)]
        primes: PrimeArgs,
        #[arg(long, default_value_t = 8)]
        precision: u32,
    },
    /// Check that R/p is perfect on the window.
    Perfect {
        #[command(flatten)]
        ring: RingArgs,
        #[command(flatten)]
        primes: PrimeArgs,
    },
    /// pi_i of the spherical lift as (pi_i S) tensor R.
    Homotopy {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(short = 'i')]
        degree: usize,
        /// Stems table; the bundled table is used by default.
        #[arg(long)]
        stems: Option<std::path::PathBuf>,
    },
}

/// What a command produced: a machine form, a human form, and whether it is a success.
pub struct Report {
    pub json: Json,
    pub text: String,
    pub ok: bool,
}

impl Report {
    pub fn ok(json: Json, text: impl Into<String>) -> Self {
        Report { json, text: text.into(), ok: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parse `args` (including the program name) and run the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match commands::dispatch(&cli.command) {
        Ok(report) => {
            let mut stdout = match cli.format {
                Format::Json => serde_json::to_string_pretty(&report.json).expect("JSON values serialize"),
                Format::Text => report.text.trim_end().to_string(),
            };
            stdout.push('\n');
            let (code, stderr) = if report.ok { (0, String::new()) } else { (1, "check failed\n".to_string()) };
            Outcome { code, stdout, stderr }
        }
        Err(e) => error_outcome(&e),
    }
}

fn error_outcome(e: &Error) -> Outcome {
    Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") }
}
