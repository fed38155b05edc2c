//! Argument parsing and the subcommand drivers.
//!
//! Exit codes: 0 success, 2 bad configuration or input, 3 a theorem-backed
//! invariant failed, 4 a cap or search budget was exceeded.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use sumroots_core::arith::{is_prime, primes_between};
use sumroots_core::charsum::{
    char_sum_double, char_sum_triple, scan_set_size, scan_trial, summarize_scan, vinogradov_check,
};
use sumroots_core::clique::{build_cayley, check_clique_bounds, clique_number, CliqueResult};
use sumroots_core::decomp::divisors::SIEVE_CAP;
use sumroots_core::decomp::{
    divisor_range_counts, search_difference_decompositions, search_sum_decompositions, sqrt_slice_counts,
    DIFFERENCE_SEARCH_CAP, SUM_SEARCH_CAP,
};
use sumroots_core::stepanov::{audit_certificate, certify, max_compatible_b, StepanovInstance};
use sumroots_core::{CharacterTable, FieldElement, PrimeField};

use crate::error::{exit, CliError, CliResult};
use crate::report::{self, Table};
use crate::store::ResultStore;
use crate::wire::{CertificateWire, CharSumWire, CliqueWire, DecompositionWire, DivisorsWire, Record, ScanWire};

/// Default largest prime for `clique`.
pub const CLIQUE_CAP: u64 = 3000;
/// Default largest trial count for `charsum` scans.
pub const TRIALS_CAP: u64 = 1_000_000;

/// Decimal residues separated by commas, no spaces. The empty string is the
/// empty list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Residues(pub Vec<u64>);

impl FromStr for Residues {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() {
            return Ok(Residues(Vec::new()));
        }
        s.split(',')
            .map(|t| t.parse::<u64>().map_err(|_| format!("`{t}` is not a decimal residue")))
            .collect::<Result<_, _>>()
            .map(Residues)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DPolicy {
    /// Every admissible proper divisor of p - 1.
    All,
    /// Only d = (p - 1)/2.
    Quadratic,
}

#[derive(Debug, Parser, Serialize)]
#[command(
    name = "sumroots",
    version,
    about = "Certificates, clique numbers and decomposition searches for roots of unity mod p"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalArgs,
}

#[derive(Clone, Debug, Args, Serialize)]
pub struct GlobalArgs {
    /// Append the run's records to this JSON-lines store.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Standard output format; `certify` defaults to json, everything else to text.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (defaults to one per core).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Largest prime a search may visit.
    #[arg(long = "cap-p", global = true)]
    pub cap_p: Option<u64>,
    /// Largest x for the divisor sieve.
    #[arg(long = "cap-x", global = true, default_value_t = SIEVE_CAP)]
    pub cap_x: u64,
    /// Largest number of scan trials.
    #[arg(long = "cap-trials", global = true, default_value_t = TRIALS_CAP)]
    pub cap_trials: u64,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Build and audit a certificate for |A||B| <= d + |B ∩ (-A)|.
    Certify(CertifyArgs),
    /// Clique numbers of Cay(F_p, Z_d).
    Clique(CliqueArgs),
    /// Exhaustive decomposition searches.
    Decomp {
        #[command(subcommand)]
        mode: DecompMode,
    },
    /// Character sums over sumsets and nontriviality scans.
    Charsum(CharsumArgs),
    /// Integers and shifted primes with a divisor in (y, z].
    Divisors(DivisorArgs),
    /// Aggregate a store into CSV tables.
    Report(ReportArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct CertifyArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub d: u64,
    #[arg(long = "A")]
    pub a: Residues,
    /// Defaults to the largest B with A + B inside Z_d ∪ {0}.
    #[arg(long = "B")]
    pub b: Option<Residues>,
}

#[derive(Debug, Args, Serialize)]
pub struct PrimeSelection {
    #[arg(long, conflicts_with_all = ["min_p", "max_p"])]
    pub p: Option<u64>,
    #[arg(long = "min-p")]
    pub min_p: Option<u64>,
    #[arg(long = "max-p")]
    pub max_p: Option<u64>,
    #[arg(long, conflicts_with = "d_policy")]
    pub d: Option<u64>,
    #[arg(long = "d-policy", value_enum)]
    pub d_policy: Option<DPolicy>,
}

#[derive(Debug, Args, Serialize)]
pub struct CliqueArgs {
    #[command(flatten)]
    pub primes: PrimeSelection,
    /// Paley graphs only: d = (p - 1)/2 with p ≡ 1 mod 4.
    #[arg(long)]
    pub paley: bool,
    /// Node budget per graph; exhausting it reports a lower bound and exits 4.
    #[arg(long)]
    pub budget: Option<u64>,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DecompMode {
    /// A + B = Z_d (or Z_d ∪ {0}).
    Sum {
        #[command(flatten)]
        primes: PrimeSelection,
        #[arg(long = "with-zero")]
        with_zero: bool,
    },
    /// Sets whose nonzero differences are exactly Z_d.
    Diff {
        #[command(flatten)]
        primes: PrimeSelection,
    },
}

#[derive(Debug, Args, Serialize)]
pub struct CharsumArgs {
    #[arg(long)]
    pub p: u64,
    /// Order of the character; 2 is the Legendre symbol.
    #[arg(long, default_value_t = 2)]
    pub order: u64,
    #[arg(long = "A")]
    pub a: Option<Residues>,
    #[arg(long = "B")]
    pub b: Option<Residues>,
    #[arg(long = "C")]
    pub c: Option<Residues>,
    /// Scan set size is ceil(p^epsilon).
    #[arg(long, default_value_t = 0.5)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
}

#[derive(Debug, Args, Serialize)]
pub struct DivisorArgs {
    #[arg(long)]
    pub x: u64,
    #[arg(long, required_unless_present = "sqrt_slice")]
    pub y: Option<f64>,
    #[arg(long, required_unless_present = "sqrt_slice")]
    pub z: Option<f64>,
    /// y = sqrt(x)/100, z = sqrt(x).
    #[arg(long = "sqrt-slice", conflicts_with_all = ["y", "z"])]
    pub sqrt_slice: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct ReportArgs {
    #[arg(long)]
    pub store: PathBuf,
    /// Write one CSV per table here instead of printing them.
    #[arg(long = "out-dir")]
    pub out_dir: Option<PathBuf>,
}

/// What a driver produced: records (with their timings), renderings for each
/// output format, and the first fatal problem, if any. Records are written
/// even when the run fails.
#[derive(Default)]
struct Outcome {
    records: Vec<(Record, Option<u64>)>,
    text: String,
    table: Option<Table>,
    failure: Option<CliError>,
}

impl Outcome {
    fn fail(&mut self, e: CliError) {
        // invariant violations outrank everything else
        let replace = match &self.failure {
            None => true,
            Some(old) => old.exit_code() != exit::INVARIANT && e.exit_code() == exit::INVARIANT,
        };
        if replace {
            self.failure = Some(e);
        }
    }
}

fn elapsed_ms(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

fn residues_in(field: PrimeField, xs: &Residues) -> CliResult<Vec<FieldElement>> {
    xs.0.iter()
        .map(|&x| {
            if x < field.modulus() as u64 {
                Ok(field.element(x))
            } else {
                Err(CliError::Config(format!("{x} is not a residue mod {}", field.modulus())))
            }
        })
        .collect()
}

fn braces(xs: &[FieldElement]) -> String {
    let inner: Vec<String> = xs.iter().map(|x| x.value().to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

/// The `(p, d)` pairs a range command visits. A single `--p` keeps every
/// requested `d` so that bad combinations are reported; ranges silently skip
/// primes where the requested `d` does not apply.
fn select_jobs(sel: &PrimeSelection, policy: DPolicy, even_only: bool, cap: u64) -> CliResult<Vec<(PrimeField, u64)>> {
    let (primes, single) = match (sel.p, sel.max_p) {
        (Some(p), _) => {
            if p > cap {
                return Err(CliError::Limit(format!("p = {p} is above the cap {cap}")));
            }
            (vec![p], true)
        }
        (None, Some(max)) => {
            let min = sel.min_p.unwrap_or(3);
            if min > max {
                return Err(CliError::Config(format!("--min-p {min} exceeds --max-p {max}")));
            }
            if max > cap {
                return Err(CliError::Limit(format!("--max-p {max} is above the cap {cap}")));
            }
            (primes_between(min.max(3), max), false)
        }
        (None, None) => return Err(CliError::Config("give --p or --max-p".into())),
    };
    let mut jobs = Vec::new();
    for p in primes {
        let field = PrimeField::new(p)?;
        let ds: Vec<u64> = match (sel.d, policy) {
            (Some(d), _) => vec![d],
            (None, DPolicy::Quadratic) => vec![(p - 1) / 2],
            (None, DPolicy::All) => field.proper_divisors(),
        };
        for d in ds {
            let admissible = d > 0 && (p - 1) % d == 0 && d < p - 1 && (!even_only || d % 2 == 0);
            if single || admissible {
                jobs.push((field, d));
            }
        }
    }
    Ok(jobs)
}

fn run_certify(args: &CertifyArgs) -> CliResult<Outcome> {
    let start = Instant::now();
    let field = PrimeField::new(args.p)?;
    let a = residues_in(field, &args.a)?;
    let b = match &args.b {
        Some(b) => residues_in(field, b)?,
        None => max_compatible_b(field, args.d, &a)?,
    };
    let cert = certify(StepanovInstance::new(field, args.d, &a, &b)?)?;
    let audit = audit_certificate(&cert);
    let wire = CertificateWire::from(&cert);

    let mut out = Outcome::default();
    let inst = &cert.instance;
    let mut t = String::new();
    writeln!(t, "p = {}, d = {}", args.p, args.d).unwrap();
    writeln!(t, "A = {}", braces(inst.a())).unwrap();
    writeln!(t, "B = {}", braces(inst.b())).unwrap();
    writeln!(t, "r = |B ∩ (-A)| = {}", cert.r).unwrap();
    writeln!(t, "|A||B| = {} <= {} = d + r", wire.lhs, wire.rhs).unwrap();
    match &cert.auxiliary {
        Some(aux) => {
            writeln!(t, "F = {}", aux.polynomial).unwrap();
            let orders: Vec<String> = cert.multiplicities.iter().map(|(b, m)| format!("{}:{m}", b.value())).collect();
            writeln!(t, "root orders: {}", orders.join(" ")).unwrap();
        }
        None => writeln!(t, "F: not needed, the bound is immediate").unwrap(),
    }
    match audit {
        Ok(()) => writeln!(t, "audit: ok").unwrap(),
        Err(f) => {
            writeln!(t, "audit: FAILED ({})", f.invariant).unwrap();
            out.fail(CliError::Invariant(f.to_string()));
        }
    }
    let mut table = Table::new("certificate", &report::CERTIFICATE_COLUMNS);
    table.push(report::certificate_row(&wire));
    out.text = t;
    out.table = Some(table);
    out.records.push((Record::Certificate(wire), Some(elapsed_ms(start))));
    Ok(out)
}

fn run_clique(args: &CliqueArgs, global: &GlobalArgs) -> CliResult<Outcome> {
    let policy = if args.paley { DPolicy::Quadratic } else { args.primes.d_policy.unwrap_or(DPolicy::All) };
    if args.paley && args.primes.d.is_some() {
        return Err(CliError::Config("--paley fixes d; drop --d".into()));
    }
    let jobs = select_jobs(&args.primes, policy, true, global.cap_p.unwrap_or(CLIQUE_CAP))?;
    let runs: Vec<CliResult<(CliqueResult, PrimeField, u64, u64)>> = jobs
        .par_iter()
        .map(|&(field, d)| {
            let start = Instant::now();
            let graph = build_cayley(field, d)?;
            let result = clique_number(&graph, args.budget);
            Ok((result, field, d, elapsed_ms(start)))
        })
        .collect();

    let mut out = Outcome::default();
    let mut table = Table::new("clique", &report::CLIQUE_RUN_COLUMNS);
    for run in runs {
        let (result, field, d, ms) = run?;
        let p = field.modulus() as u64;
        // a lower bound that already breaks the bound is still a violation
        let as_exact = CliqueResult { exact: true, ..result.clone() };
        let bounds = match check_clique_bounds(p, d, &as_exact) {
            Ok(b) => b,
            Err(e) => {
                out.fail(e.into());
                continue;
            }
        };
        if !result.exact {
            out.fail(CliError::Limit(format!("node budget exhausted at p = {p}, d = {d}; omega >= {}", result.omega)));
        }
        let wire = CliqueWire::new(&result, &bounds);
        table.push(report::clique_run_row(&wire, ms));
        out.records.push((Record::Clique(wire), Some(ms)));
    }
    out.text = table.to_csv()?;
    out.table = Some(table);
    Ok(out)
}

fn run_decomp(mode: &DecompMode, global: &GlobalArgs) -> CliResult<Outcome> {
    let (primes, with_zero, diff) = match mode {
        DecompMode::Sum { primes, with_zero } => (primes, *with_zero, false),
        DecompMode::Diff { primes } => (primes, false, true),
    };
    let cap = global.cap_p.unwrap_or(if diff { DIFFERENCE_SEARCH_CAP } else { SUM_SEARCH_CAP });
    let jobs = select_jobs(primes, primes.d_policy.unwrap_or(DPolicy::All), diff, cap)?;
    let runs: Vec<CliResult<_>> = jobs
        .par_iter()
        .map(|&(field, d)| {
            let start = Instant::now();
            let found = if diff {
                search_difference_decompositions(field, d, cap)?
            } else {
                search_sum_decompositions(field, d, with_zero, cap)?
            };
            Ok((found, d, elapsed_ms(start)))
        })
        .collect();

    let mut out = Outcome::default();
    let mut table = Table::new("decomposition", &report::DECOMPOSITION_COLUMNS);
    let mut text = String::new();
    let mut total = 0;
    for run in runs {
        let (found, d, ms) = run?;
        if !diff && !with_zero && is_prime(d) && !found.is_empty() {
            out.fail(CliError::Invariant(format!("decomposition of Z_{d} with d prime")));
        }
        for r in &found {
            if !(r.unique_sums && r.product_check) {
                out.fail(CliError::Invariant(format!("decomposition at p = {}, d = {d} fails its checks", r.p)));
            }
            let wire = DecompositionWire::from(r);
            let b = r.b.as_deref().map(|b| format!(" B = {}", braces(b))).unwrap_or_default();
            writeln!(text, "{} p = {} d = {} A = {}{b} class {}", wire.kind, r.p, d, braces(&r.a), r.symmetry_class)
                .unwrap();
            table.push(report::decomposition_row(&wire));
            out.records.push((Record::Decomposition(wire), Some(ms)));
            total += 1;
        }
    }
    writeln!(text, "{total} decompositions").unwrap();
    out.text = text;
    out.table = Some(table);
    Ok(out)
}

fn run_charsum(args: &CharsumArgs, global: &GlobalArgs) -> CliResult<Outcome> {
    let start = Instant::now();
    let field = PrimeField::new(args.p)?;
    let chi = CharacterTable::new(field, args.order)?;
    let mut out = Outcome::default();
    let mut t = String::new();
    match (&args.a, &args.b) {
        (Some(a), Some(b)) => {
            let (a, b) = (residues_in(field, a)?, residues_in(field, b)?);
            let c = args.c.as_ref().map(|c| residues_in(field, c)).transpose()?;
            let (s, ok) = match &c {
                Some(c) => (char_sum_triple(&chi, &a, &b, c)?, None),
                None => (char_sum_double(&chi, &a, &b)?, Some(vinogradov_check(&chi, &a, &b)?)),
            };
            let wire = CharSumWire::new(args.p, args.order, &a, &b, c.as_deref(), &s, ok);
            match s.exact {
                Some(v) => writeln!(t, "S = {v}").unwrap(),
                None => writeln!(t, "S = {} + {}i", s.value.re, s.value.im).unwrap(),
            }
            writeln!(t, "|S| = {}, trivial bound {}", s.modulus(), s.trivial_bound).unwrap();
            if let (Some(bound), Some(ok)) = (s.vinogradov_bound, ok) {
                writeln!(t, "sqrt(p|A||B|) = {bound}: {}", if ok { "ok" } else { "VIOLATED" }).unwrap();
                if !ok {
                    out.fail(CliError::Invariant("|S(A, B)| <= sqrt(p|A||B|)".into()));
                }
            }
            let mut table = Table::new("charsum", &report::CHARSUM_COLUMNS);
            table.push(report::charsum_row(&wire));
            out.table = Some(table);
            out.records.push((Record::CharSum(wire), Some(elapsed_ms(start))));
        }
        (None, None) => {
            if args.c.is_some() {
                return Err(CliError::Config("--C needs --A and --B".into()));
            }
            if !(args.epsilon > 0.0 && args.epsilon < 1.0) {
                return Err(CliError::Config(format!("epsilon {} is not in (0, 1)", args.epsilon)));
            }
            if args.trials > global.cap_trials {
                return Err(CliError::Limit(format!("{} trials is above the cap {}", args.trials, global.cap_trials)));
            }
            let k = scan_set_size(args.p, args.epsilon);
            let results = (0..args.trials)
                .into_par_iter()
                .map(|trial| scan_trial(&chi, k, global.seed, trial))
                .collect::<Result<Vec<_>, _>>()?;
            let summary = summarize_scan(&chi, args.epsilon, global.seed, k, &results);
            let wire = ScanWire::from(&summary);
            writeln!(
                t,
                "p = {}, order {}, |A| = |B| = {k}, {} trials, seed {}",
                args.p, args.order, args.trials, global.seed
            )
            .unwrap();
            writeln!(t, "nontrivial: {}/{}", summary.nontrivial_count, summary.trials).unwrap();
            if let (Some(lo), Some(mean), Some(hi)) = (summary.min_ratio(), summary.mean_ratio(), summary.max_ratio()) {
                writeln!(t, "|S|/(|A||B|): min {lo:.6}, mean {mean:.6}, max {hi:.6}").unwrap();
            }
            let mut table = Table::new("charsum_histogram", &report::HISTOGRAM_COLUMNS);
            table.rows = report::histogram_rows(&wire);
            for row in &table.rows {
                writeln!(t, "[{}, {}): {}", row[5], row[6], row[7]).unwrap();
            }
            out.table = Some(table);
            out.records.push((Record::Scan(wire), Some(elapsed_ms(start))));
        }
        _ => return Err(CliError::Config("give both --A and --B, or neither for a scan".into())),
    }
    out.text = t;
    Ok(out)
}

fn run_divisors(args: &DivisorArgs, global: &GlobalArgs) -> CliResult<Outcome> {
    let start = Instant::now();
    let r = if args.sqrt_slice {
        sqrt_slice_counts(args.x, global.cap_x)?
    } else {
        match (args.y, args.z) {
            (Some(y), Some(z)) => divisor_range_counts(args.x, y, z, global.cap_x)?,
            _ => return Err(CliError::Config("give --y and --z, or --sqrt-slice".into())),
        }
    };
    let wire = DivisorsWire::from(&r);
    let text = format!(
        "x = {}, y = {}, z = {}\nP = {}, H = {}, pi = {}, P/pi = {:.6}\n",
        r.x,
        r.y,
        r.z,
        r.shifted_primes,
        r.integers,
        r.pi_x,
        r.prime_fraction()
    );
    let mut table = Table::new("divisors", &report::DIVISOR_COLUMNS);
    table.push(report::divisors_row(&wire));
    Ok(Outcome {
        records: vec![(Record::Divisors(wire), Some(elapsed_ms(start)))],
        text,
        table: Some(table),
        failure: None,
    })
}

fn run_report(args: &ReportArgs) -> CliResult<()> {
    if !args.store.is_file() {
        return Err(CliError::Config(format!("no store at {}", args.store.display())));
    }
    let records = crate::store::read_records(&args.store)?;
    let tables = report::build_tables(&records);
    match &args.out_dir {
        Some(dir) => report::write_tables(&tables, dir)?,
        None => {
            for t in &tables {
                print!("# {}\n{}", t.name, t.to_csv()?);
            }
        }
    }
    Ok(())
}

fn emit(cli: &Cli, out: Outcome, default: Format) -> CliResult<()> {
    if let Some(path) = &cli.global.out {
        let mut store = ResultStore::open(path, cli)?;
        for (record, ms) in &out.records {
            store.append(record, *ms)?;
        }
        store.finish()?;
    }
    match cli.global.format.unwrap_or(default) {
        Format::Text => print!("{}", out.text),
        Format::Csv => {
            if let Some(t) = &out.table {
                print!("{}", t.to_csv()?);
            }
        }
        Format::Json => {
            for (record, _) in &out.records {
                println!("{}", json!({ "kind": record.kind(), "body": record.body()? }));
            }
        }
    }
    match out.failure {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

/// Runs a parsed command line and returns its exit code.
pub fn run(cli: &Cli) -> u8 {
    let result = match &cli.command {
        Command::Report(args) => run_report(args),
        command => {
            let outcome = match command {
                Command::Certify(a) => run_certify(a).map(|o| (o, Format::Json)),
                Command::Clique(a) => run_clique(a, &cli.global).map(|o| (o, Format::Text)),
                Command::Decomp { mode } => run_decomp(mode, &cli.global).map(|o| (o, Format::Text)),
                Command::Charsum(a) => run_charsum(a, &cli.global).map(|o| (o, Format::Text)),
                Command::Divisors(a) => run_divisors(a, &cli.global).map(|o| (o, Format::Text)),
                Command::Report(_) => unreachable!(),
            };
            outcome.and_then(|(o, default)| emit(cli, o, default))
        }
    };
    match result {
        Ok(()) => exit::OK,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Parses `args` (program name first), sets up the thread pool and runs.
pub fn main_with_args<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return if code == 0 { exit::OK } else { exit::CONFIG };
        }
    };
    if let Some(n) = cli.global.threads {
        if n == 0 {
            eprintln!("error: --threads must be positive");
            return exit::CONFIG;
        }
        // fails only if a pool already exists, which is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    run(&cli)
}
