mod cache;
mod record;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lieperm::excep::{
    brute_force_with_cap, fixed_points_in, frobenius_check_map_with_cap, search_exceptional, CriterionReport,
    DEFAULT_POINT_CAP,
};
use lieperm::exppoly::{functional_equation_error, sample_torus_points};
use lieperm::ffield::FieldSpec;
use lieperm::{arith, Error, LieType, WeylGroup};

use record::{emit, Format, Record};

/// Generalized Chebyshev maps of Weyl groups over finite fields.
#[derive(Parser, Debug)]
#[command(name = "lieperm", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct Common {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Cache directory (overrides the LIEPERM_CACHE_DIR environment variable).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Largest point count enumerated exhaustively.
    #[arg(long, global = true, default_value_t = DEFAULT_POINT_CAP, value_parser = clap::value_parser!(u64).range(1..))]
    max_points: u64,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate P^k and write it in the canonical file format.
    Generate {
        lie_type: String,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether P^k permutes F_q^n.
    Check {
        lie_type: String,
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        k: u64,
        #[arg(long, value_parser = parse_q)]
        q: u64,
        /// Also evaluate the reduced map at every point.
        #[arg(long)]
        brute_force: bool,
    },
    /// Find k and a residue class of primes on which P^k permutes.
    Search { lie_type: String },
    /// Run property suites.
    Verify {
        lie_type: String,
        /// Suites to run; all when omitted.
        #[arg(long, value_enum, value_delimiter = ',')]
        suite: Vec<Suite>,
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        k: Option<u64>,
        #[arg(long, value_parser = parse_q)]
        q: Option<u64>,
    },
    /// Print the group order and the set of element orders.
    Orders { lie_type: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    FixedPoints,
    Frobenius,
    Denominators,
    FunctionalEquation,
    Semigroup,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::FixedPoints => "fixed-points",
            Suite::Frobenius => "frobenius",
            Suite::Denominators => "denominators",
            Suite::FunctionalEquation => "functional-equation",
            Suite::Semigroup => "semigroup",
        }
    }
}

const FUNCTIONAL_EQUATION_POINTS: usize = 100;
const FUNCTIONAL_EQUATION_TOLERANCE: f64 = 1e-9;

mod exit {
    pub const OK: u8 = 0;
    pub const USAGE: u8 = 1;
    pub const BUDGET: u8 = 2;
    pub const NOT_PERMUTATION: u8 = 3;
    pub const SUITE_FAILED: u8 = 4;
}

/// Accepts `p^e` or a plain prime power.
fn parse_q(s: &str) -> Result<u64, String> {
    let q = match s.split_once('^') {
        Some((p, e)) => {
            let p: u64 = p.trim().parse().map_err(|_| format!("bad prime in '{s}'"))?;
            let e: u32 = e.trim().parse().map_err(|_| format!("bad exponent in '{s}'"))?;
            if !arith::is_prime(p) || e == 0 {
                return Err(format!("'{s}' is not of the form p^e with p prime and e >= 1"));
            }
            p.checked_pow(e).ok_or_else(|| format!("'{s}' overflows"))?
        }
        None => s.trim().parse().map_err(|_| format!("bad field order '{s}'"))?,
    };
    if arith::prime_power(q).is_none() {
        return Err(format!("{q} is not a prime power"));
    }
    Ok(q)
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded { .. } | Error::EnumerationCap { .. } | Error::GroupTooLarge { .. } => exit::BUDGET,
        Error::Consistency(_) | Error::DedupAmbiguity { .. } | Error::FixedPointCount { .. } => exit::SUITE_FAILED,
        _ => exit::USAGE,
    }
}

type Outcome = Result<u8, Error>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::USAGE } else { exit::OK });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    let common = &cli.common;
    match &cli.command {
        Command::Generate { lie_type, k, out } => generate(common, lie_type.parse()?, *k, out.as_deref()),
        Command::Check { lie_type, k, q, brute_force } => check(common, lie_type.parse()?, *k, *q, *brute_force),
        Command::Search { lie_type } => search(common, lie_type.parse()?),
        Command::Verify { lie_type, suite, k, q } => verify(common, lie_type.parse()?, suite, *k, *q),
        Command::Orders { lie_type } => orders(common, lie_type.parse()?),
    }
}

fn cache_root(common: &Common) -> Option<PathBuf> {
    cache::cache_root(common.cache_dir.as_deref())
}

fn generate(common: &Common, t: LieType, k: u64, out: Option<&std::path::Path>) -> Outcome {
    let root = cache_root(common);
    let loaded = cache::load_or_generate(root.as_deref(), t, k)?;
    let path = match out {
        Some(p) => {
            cache::write_atomic(p, &loaded.bytes)
                .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", p.display())))?;
            p.display().to_string()
        }
        None => root.map(|r| cache::entry_path(&r, t, k).display().to_string()).unwrap_or_default(),
    };
    let rec = Record::new()
        .field("type", t.to_string())
        .field("k", k)
        .list("terms", loaded.map.term_counts().into_iter().map(|c| c as u64))
        .field("cached", loaded.cache_hit)
        .field("path", path);
    emit(&[rec], common.format);
    Ok(exit::OK)
}

fn check(common: &Common, t: LieType, k: u64, q: u64, brute_force: bool) -> Outcome {
    let g = WeylGroup::generate(t)?;
    let exhaustive = if brute_force {
        let field = FieldSpec::from_order(q)?;
        let map = cache::load_or_generate(cache_root(common).as_deref(), t, k)?.map;
        Some(brute_force_with_cap(&map, &field, common.max_points)?)
    } else {
        None
    };
    let report = CriterionReport::build(&g, q, k, exhaustive.map(|o| o.is_permutation()))?;
    let rec = Record::new()
        .field("type", t.to_string())
        .field("k", k)
        .field("q", q)
        .field("permutation", report.is_permutation())
        .field("theorem_criterion", report.theorem_holds)
        .field("order_criterion", report.order_holds)
        .field("brute_force", report.brute_force)
        .field("points", exhaustive.map(|o| o.points))
        .field("images", exhaustive.map(|o| o.popcount))
        .field("failing_witness", report.failing_witness.map(|w| w as u64))
        .list("charpoly_values", report.charpoly_values.iter().map(|r| r.value.to_string()))
        .list("charpoly_gcds", report.charpoly_values.iter().map(|r| r.gcd.to_string()));
    emit(&[rec], common.format);
    Ok(if report.is_permutation() { exit::OK } else { exit::NOT_PERMUTATION })
}

fn search(common: &Common, t: LieType) -> Outcome {
    let c = search_exceptional(t)?;
    let rec = Record::new()
        .field("type", t.to_string())
        .field("k", c.k)
        .field("modulus", c.modulus)
        .field("residue", c.residue)
        .list("order_set", c.order_set.iter().map(|&s| s as u64))
        .list("verified_primes", c.verified_primes.iter().copied());
    emit(&[rec], common.format);
    Ok(exit::OK)
}

fn orders(common: &Common, t: LieType) -> Outcome {
    let g = WeylGroup::generate(t)?;
    let rec = Record::new()
        .field("type", t.to_string())
        .field("weyl_order", g.len() as u64)
        .list("orders", g.order_set().iter().map(|&s| s as u64));
    emit(&[rec], common.format);
    Ok(exit::OK)
}

struct SuiteResult {
    passed: bool,
    k: Option<u64>,
    q: Option<u64>,
    detail: String,
}

/// Suite failures surface as FAIL rows; budget problems abort the run.
fn as_failure(e: Error) -> Result<(bool, String), Error> {
    match exit_code(&e) {
        exit::SUITE_FAILED => Ok((false, e.to_string())),
        _ => Err(e),
    }
}

fn run_suite(common: &Common, g: &WeylGroup, suite: Suite, k: Option<u64>, q: Option<u64>) -> Result<SuiteResult, Error> {
    let t = g.lie_type();
    let n = g.rank() as u32;
    let root = cache_root(common);
    let (passed, detail, k, q) = match suite {
        Suite::FixedPoints | Suite::Denominators => {
            let k = k.unwrap_or(2);
            let (passed, detail) = match fixed_points_in(g, k) {
                Ok(set) if suite == Suite::FixedPoints => {
                    let count = set.points.len() as u128;
                    (count == (k as u128).pow(n), format!("count {count}"))
                }
                Ok(set) => (set.denominators_divide(), format!("max denominator {}", set.max_denominator())),
                Err(e) => as_failure(e)?,
            };
            (passed, detail, Some(k), None)
        }
        Suite::Frobenius => {
            let q = q.unwrap_or(2);
            let field = FieldSpec::from_order(q)?;
            let map = cache::load_or_generate(root.as_deref(), t, q)?.map;
            let passed = frobenius_check_map_with_cap(&map, &field, common.max_points)?;
            (passed, format!("points {}", (q as u128).pow(n)), None, Some(q))
        }
        Suite::FunctionalEquation => {
            let k = k.unwrap_or(2);
            let map = cache::load_or_generate(root.as_deref(), t, k)?.map;
            let points = sample_torus_points(g.rank(), FUNCTIONAL_EQUATION_POINTS, common.seed);
            let err = functional_equation_error(&map, &points);
            (err < FUNCTIONAL_EQUATION_TOLERANCE, format!("max error {err:.3e}"), Some(k), None)
        }
        Suite::Semigroup => {
            let k = k.unwrap_or(3);
            let p2 = cache::load_or_generate(root.as_deref(), t, 2)?.map;
            let pk = cache::load_or_generate(root.as_deref(), t, k)?.map;
            let p2k = cache::load_or_generate(root.as_deref(), t, 2 * k)?.map;
            let passed = p2.compose(&pk)? == p2k;
            (passed, format!("P^2 o P^{k} = P^{}", 2 * k), Some(k), None)
        }
    };
    Ok(SuiteResult { passed, k, q, detail })
}

fn verify(common: &Common, t: LieType, suites: &[Suite], k: Option<u64>, q: Option<u64>) -> Outcome {
    let g = WeylGroup::generate(t)?;
    let selected: Vec<Suite> = if suites.is_empty() { Suite::value_variants().to_vec() } else { suites.to_vec() };
    let mut records = Vec::new();
    let mut all = true;
    for suite in selected {
        let r = run_suite(common, &g, suite, k, q)?;
        all &= r.passed;
        records.push(
            Record::new()
                .field("type", t.to_string())
                .field("suite", suite.name())
                .field("status", if r.passed { "PASS" } else { "FAIL" })
                .field("k", r.k)
                .field("q", r.q)
                .field("detail", r.detail),
        );
    }
    emit(&records, common.format);
    Ok(if all { exit::OK } else { exit::SUITE_FAILED })
}
