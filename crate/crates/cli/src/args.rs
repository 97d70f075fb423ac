use apform_core::normform::{parse_vectors, NumberFieldDescription};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;

#[derive(Debug, Parser)]
#[command(
    name = "apform",
    version,
    about = "Arithmetic progressions in values of quadratic forms and norm forms"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutFormat::Json, global = true)]
    pub out: OutFormat,

    /// Worker threads for parallel scans (default: all cores).
    #[arg(long, env = "APFORM_THREADS", global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Group,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Group {
    /// Binary quadratic forms ax² + bxy + cy².
    #[command(subcommand)]
    Form(FormCmd),
    /// Norm forms of modules in a number field.
    #[command(subcommand)]
    Nf(NfCmd),
    /// Prime sums and represented-prime densities.
    #[command(subcommand)]
    Density(DensityCmd),
}

/// Coefficients `a,b,c` of a binary quadratic form.
#[derive(Debug, Clone)]
pub struct FormCoeffs(pub BigInt, pub BigInt, pub BigInt);

fn parse_form(s: &str) -> Result<FormCoeffs, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [a, b, c] = parts[..] else {
        return Err(format!("expected a,b,c but got {s:?}"));
    };
    let p = |t: &str| t.parse::<BigInt>().map_err(|_| format!("bad coefficient {t:?}"));
    Ok(FormCoeffs(p(a)?, p(b)?, p(c)?))
}

/// Minimal polynomial coefficients, constant term first.
#[derive(Debug, Clone)]
pub struct Poly(pub Vec<BigInt>);

/// Rational vectors in power-basis coordinates.
#[derive(Debug, Clone)]
pub struct Vectors(pub Vec<Vec<BigRational>>);

fn parse_minpoly(s: &str) -> Result<Poly, String> {
    NumberFieldDescription::parse_minpoly(s)
        .map(Poly)
        .map_err(|e| e.to_string())
}

fn parse_vecs(s: &str) -> Result<Vectors, String> {
    parse_vectors(s).map(Vectors).map_err(|e| e.to_string())
}

fn parse_bigint(s: &str) -> Result<BigInt, String> {
    s.trim().parse().map_err(|_| format!("bad integer {s:?}"))
}

#[derive(Debug, Clone, Args)]
pub struct FormArg {
    /// Form coefficients, e.g. `1,0,1` for x² + y².
    #[arg(long, value_parser = parse_form, allow_hyphen_values = true)]
    pub form: FormCoeffs,
}

#[derive(Debug, Clone, Args)]
pub struct FieldArgs {
    /// Monic minimal polynomial, constant term first, e.g. `-2,0,0,1`.
    #[arg(long, value_parser = parse_minpoly, allow_hyphen_values = true)]
    pub minpoly: Poly,
    /// Integral basis as `;`-separated power-basis vectors (default: power basis).
    #[arg(long, value_parser = parse_vecs, allow_hyphen_values = true)]
    pub intbasis: Option<Vectors>,
    /// Module generators as `;`-separated power-basis vectors (default: the ring of integers).
    #[arg(long, value_parser = parse_vecs, allow_hyphen_values = true)]
    pub module: Option<Vectors>,
}

#[derive(Debug, Clone, Args)]
pub struct OptionalFieldArgs {
    /// Monic minimal polynomial, constant term first.
    #[arg(long, value_parser = parse_minpoly, allow_hyphen_values = true)]
    pub minpoly: Option<Poly>,
    /// Integral basis (default: power basis).
    #[arg(long, value_parser = parse_vecs, allow_hyphen_values = true, requires = "minpoly")]
    pub intbasis: Option<Vectors>,
    /// Module generators (default: the ring of integers).
    #[arg(long, value_parser = parse_vecs, allow_hyphen_values = true, requires = "minpoly")]
    pub module: Option<Vectors>,
}

/// Either a quadratic form or a number field (with an optional module).
#[derive(Debug, Clone, Args)]
pub struct Subject {
    /// Form coefficients `a,b,c`.
    #[arg(long, value_parser = parse_form, allow_hyphen_values = true, conflicts_with = "minpoly", required_unless_present = "minpoly")]
    pub form: Option<FormCoeffs>,
    #[command(flatten)]
    pub field: OptionalFieldArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ApSearch {
    /// Single common difference.
    #[arg(long, conflicts_with = "gmax", required_unless_present = "gmax")]
    pub g: Option<u64>,
    /// Search every difference up to this bound.
    #[arg(long)]
    pub gmax: Option<u64>,
}

#[derive(Debug, Clone, Args)]
pub struct LogG {
    /// Common difference g.
    #[arg(long, value_parser = parse_bigint, required_unless_present = "ln_g", conflicts_with = "ln_g")]
    pub g: Option<BigInt>,
    /// Evaluate at a given natural logarithm of g instead.
    #[arg(long)]
    pub ln_g: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum FormCmd {
    /// Discriminant, fundamental discriminant, conductor and shape.
    Analyze(FormArg),
    /// Primitive, non-negative-definite representative.
    Normalize(FormArg),
    /// Fast certificate for one prime.
    Ps {
        #[command(flatten)]
        form: FormArg,
        #[arg(long)]
        p: u64,
        /// Settle primes the fast test leaves open with the exact scan.
        #[arg(long)]
        oracle_fallback: bool,
    },
    /// Exact mod-p² scan.
    OraclePs {
        #[command(flatten)]
        form: FormArg,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = apform_core::quadform::ORACLE_MAX_POINTS)]
        max_points: u64,
    },
    /// Represented values up to X (indefinite forms need --box).
    Values {
        #[command(flatten)]
        form: FormArg,
        #[arg(long)]
        x: u64,
        #[arg(long = "box")]
        boxed: Option<u64>,
    },
    /// Is m a value of the form?
    Represents {
        #[command(flatten)]
        form: FormArg,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long = "box")]
        boxed: Option<u64>,
    },
    /// Longest progression among the values up to X.
    FindAp {
        #[command(flatten)]
        form: FormArg,
        #[arg(long)]
        x: u64,
        #[arg(long = "box")]
        boxed: Option<u64>,
        #[command(flatten)]
        search: ApSearch,
    },
    /// Check (g, k) against certified primes p with 2p ≤ k.
    CertifyAp {
        #[command(flatten)]
        form: FormArg,
        #[arg(long)]
        g: u64,
        #[arg(long)]
        k: u64,
        /// Largest prime to scan (default k/2).
        #[arg(long)]
        pbudget: Option<u64>,
        #[arg(long)]
        oracle_fallback: bool,
    },
    /// Length bound C(√|Δ| ln g + |Δ|^L), optionally with the density bound.
    Bound {
        #[command(flatten)]
        form: FormArg,
        #[arg(long)]
        c: f64,
        #[arg(long, default_value_t = apform_core::apfinder::L_QF)]
        l: f64,
        #[arg(long)]
        log_improved: bool,
        #[command(flatten)]
        g: LogG,
        /// Also report 2·max(C1 ln g, C2).
        #[arg(long, requires = "c2")]
        c1: Option<f64>,
        #[arg(long, requires = "c1")]
        c2: Option<f64>,
    },
}

#[derive(Debug, Subcommand)]
pub enum NfCmd {
    /// Field data, module HNF, O_K·M and its norm, multiplier ring, invertibility and the norm form.
    Build(FieldArgs),
    /// Root-free certificate for one prime.
    Ps {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        p: u64,
    },
    /// Exact scan of the norm form modulo p².
    OraclePs {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = apform_core::normform::ORACLE_NF_MAX_POINTS)]
        max_points: u64,
    },
    /// Norm-form values |F| ≤ X in a box.
    Values {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        x: u64,
        #[arg(long = "box")]
        boxed: u64,
    },
    /// Longest progression among box-enumerated norm-form values.
    FindAp {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        x: u64,
        #[arg(long = "box")]
        boxed: u64,
        #[command(flatten)]
        search: ApSearch,
    },
    /// Length bound Cn(Δ̃⁵ ln g + Δ̃^L).
    Bound {
        #[arg(long)]
        cn: f64,
        #[arg(long, default_value_t = apform_core::apfinder::L_NF)]
        l: f64,
        /// |Δ| of the normal closure.
        #[arg(long)]
        delta_tilde: u64,
        #[command(flatten)]
        g: LogG,
    },
}

#[derive(Debug, Subcommand)]
pub enum DensityCmd {
    /// Σ ln p over certified primes p ≤ X.
    ThetaPs {
        #[command(flatten)]
        subject: Subject,
        /// One or more bounds X (comma separated).
        #[arg(long, value_delimiter = ',', required = true)]
        x: Vec<u64>,
    },
    /// Σ ln p over primes p ≤ X with p ≡ c mod q.
    ThetaAp {
        #[arg(long)]
        modulus: u64,
        #[arg(long, allow_hyphen_values = true)]
        c: i64,
        #[arg(long, value_delimiter = ',', required = true)]
        x: Vec<u64>,
    },
    /// Represented primes p ≤ X against π(X).
    Primes {
        #[command(flatten)]
        subject: Subject,
        #[arg(long, value_delimiter = ',', required = true)]
        x: Vec<u64>,
        /// Coordinate box (required for norm forms and indefinite forms).
        #[arg(long = "box")]
        boxed: Option<u64>,
    },
    /// X / Σ ln p over certified primes p ≤ X.
    EmpiricalC1 {
        #[command(flatten)]
        subject: Subject,
        #[arg(long, value_delimiter = ',', required = true)]
        x: Vec<u64>,
    },
}
