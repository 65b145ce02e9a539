//! Command-line front end: `construct`, `enumerate`, `verify`, `shift`, `sierksma`.
//!
//! Every command writes its report to `out` and diagnostics to `err`, and
//! returns the process exit code:
//!
//! | code | meaning                              |
//! |------|--------------------------------------|
//! | 0    | success / every check passed         |
//! | 1    | a verification clause failed         |
//! | 2    | input validation failed              |
//! | 3    | I/O or parse failure                 |
//! | 4    | brute force and closed form disagree |
//! | 5    | enumeration cap exceeded             |

pub mod format;

use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tverberg_core::hull::Membership;
use tverberg_core::rational::parse_rational;
use tverberg_core::sierksma::random_general_position;
use tverberg_core::tverberg::TverbergCertificate;
use tverberg_core::{
    build_multiset_point_set, build_point_set, caratheodory_shift, closed_form_partitions, hull_membership,
    is_tverberg, perturb, sierksma_report, tverberg_number, verify_point_set, ConstructionSpec, Error, Execution,
    Partition, Point, PointSet, Rational, ShiftOutcome, DEFAULT_CAP,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION_FAILED: i32 = 1;
pub const EXIT_INVALID_INPUT: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_ORACLE_MISMATCH: i32 = 4;
pub const EXIT_CAP: i32 = 5;

/// Seed used by `sierksma --random` and `construct --perturb` when none is given.
pub const DEFAULT_SEED: u64 = 0;

#[derive(Debug, Parser)]
#[command(name = "tverberg", version, about = "Construct, enumerate and verify Tverberg partitions exactly")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a point set whose Tverberg partitions all have the given block sizes.
    Construct(ConstructArgs),
    /// List the Tverberg partitions of a point set.
    Enumerate(EnumerateArgs),
    /// Check a constructed set against the brute-force oracle.
    Verify(VerifyArgs),
    /// Move a redundant point out of an oversized block of a Tverberg partition.
    Shift(ShiftArgs),
    /// Compare Tverberg partition counts with [(r-1)!]^d.
    Sierksma(SierksmaArgs),
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(short = 'd')]
    pub d: usize,
    #[arg(short = 'r')]
    pub r: usize,
    /// Block sizes a_1,...,a_r.
    #[arg(long, value_delimiter = ',', required = true)]
    pub parts: Vec<usize>,
    /// Explicit color map i(1),...,i(d) instead of the canonical one.
    #[arg(long, value_delimiter = ',')]
    pub colors: Option<Vec<usize>>,
    /// Use r-1 copies of e^j for every A_j.
    #[arg(long)]
    pub multiset: bool,
    /// Shift every coordinate by a seeded offset in [-EPS, EPS].
    #[arg(long, value_name = "EPS", value_parser = rational_arg)]
    pub perturb: Option<Rational>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(short = 'o', long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Brute,
    Closed,
    Both,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Number of blocks; defaults to the construction's r when present.
    #[arg(short = 'r')]
    pub r: Option<usize>,
    #[arg(long, value_enum, default_value_t = Mode::Brute)]
    pub mode: Mode,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub cap: usize,
    #[arg(short = 'o', long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, conflicts_with_all = ["d", "r", "parts"])]
    pub input: Option<PathBuf>,
    #[arg(short = 'd', requires_all = ["r", "parts"])]
    pub d: Option<usize>,
    #[arg(short = 'r')]
    pub r: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    pub parts: Option<Vec<usize>>,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub cap: usize,
}

#[derive(Debug, Args)]
pub struct ShiftArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Partition as `0,1,2|3`.
    #[arg(long)]
    pub partition: String,
    /// Tverberg point as `p1,...,pd`; solved for when omitted.
    #[arg(long)]
    pub witness: Option<String>,
}

#[derive(Debug, Args)]
pub struct SierksmaArgs {
    #[arg(long, conflicts_with = "random")]
    pub input: Option<PathBuf>,
    /// Draw random general-position sets instead of reading one.
    #[arg(long)]
    pub random: bool,
    #[arg(short = 'd')]
    pub d: Option<usize>,
    #[arg(short = 'r')]
    pub r: Option<usize>,
    #[arg(long, default_value_t = 10)]
    pub samples: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Random coordinates are integers in [-RANGE, RANGE].
    #[arg(long, default_value_t = 50)]
    pub range: i64,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub cap: usize,
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// A failure that ends a command with a specific exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Self { code, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CapExceeded { .. } => EXIT_CAP,
            _ => EXIT_INVALID_INPUT,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::new(EXIT_IO, e.to_string())
    }
}

type CmdResult = Result<i32, Failure>;

/// Runs a parsed command line, returning the exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match &cli.command {
        Command::Construct(a) => cmd_construct(a, out),
        Command::Enumerate(a) => cmd_enumerate(a, out, err),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Shift(a) => cmd_shift(a, out),
        Command::Sierksma(a) => cmd_sierksma(a, out, err),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

/// Parses `args` (including the program name) and runs them. Argument errors
/// are printed to `err` and map to exit code 2.
pub fn run_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, out, err),
        Err(e) if e.use_stderr() => {
            let _ = write!(err, "{e}");
            EXIT_INVALID_INPUT
        }
        // --help and --version
        Err(e) => {
            let _ = write!(out, "{e}");
            EXIT_OK
        }
    }
}

fn read_point_set(path: &Path) -> Result<PointSet, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::new(EXIT_IO, format!("{}: {e}", path.display())))?;
    format::parse_point_set(&text).map_err(|e| Failure::new(EXIT_IO, format!("{}: {e}", path.display())))
}

fn emit(output: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| Failure::new(EXIT_IO, format!("{}: {e}", path.display()))),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

fn cmd_construct(a: &ConstructArgs, out: &mut dyn Write) -> CmdResult {
    let spec = match &a.colors {
        Some(c) => ConstructionSpec::with_color_map(a.d, a.r, a.parts.clone(), c.clone()),
        None => ConstructionSpec::new(a.d, a.r, a.parts.clone()),
    }
    .map_err(|v| Failure::new(EXIT_INVALID_INPUT, v.to_string()))?;
    let mut x = if a.multiset { build_multiset_point_set(&spec) } else { build_point_set(&spec) };
    if let Some(eps) = &a.perturb {
        x = perturb(&x, eps, a.seed)?;
    }
    emit(a.output.as_deref(), &format::write_point_set(&x), out)?;
    Ok(EXIT_OK)
}

fn blocks_for(x: &PointSet, r: Option<usize>) -> Result<usize, Failure> {
    match (r, x.spec()) {
        (Some(r), Some(spec)) if r != spec.r() => Err(Failure::new(
            EXIT_INVALID_INPUT,
            format!("-r {r} disagrees with the construction's r = {}", spec.r()),
        )),
        (Some(r), _) => Ok(r),
        (None, Some(spec)) => Ok(spec.r()),
        (None, None) => Err(Failure::new(EXIT_INVALID_INPUT, "-r is required for sets without construction metadata")),
    }
}

fn cmd_enumerate(a: &EnumerateArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let x = read_point_set(&a.input)?;
    let r = blocks_for(&x, a.r)?;
    if a.mode != Mode::Brute && x.spec().is_none() {
        return Err(Failure::new(EXIT_INVALID_INPUT, "closed-form mode needs a labeled construction"));
    }
    if x.len() > a.cap {
        return Err(Error::CapExceeded { n: x.len(), cap: a.cap }.into());
    }

    let brute: Option<BTreeSet<Partition>> = match a.mode {
        Mode::Brute | Mode::Both => Some(
            tverberg_core::tverberg::brute_force_tverberg_partitions_with(&x, r, a.cap, Execution::default())?
                .into_iter()
                .map(|c| c.partition)
                .collect(),
        ),
        Mode::Closed => None,
    };
    let closed: Option<BTreeSet<Partition>> = match a.mode {
        Mode::Closed | Mode::Both => Some(closed_form_partitions(&x)?.collect()),
        Mode::Brute => None,
    };
    let listed = brute.as_ref().or(closed.as_ref()).expect("at least one mode runs");
    emit(a.output.as_deref(), &format::write_partitions(listed), out)?;

    let count = listed.len();
    match x.spec() {
        Some(spec) => {
            let expected = spec.expected_partition_count();
            let matched = count_matches(count, &expected);
            writeln!(out, "count={count} expected={expected} match={}", if matched { "yes" } else { "no" })?;
        }
        None => writeln!(out, "count={count}")?,
    }

    if let (Some(b), Some(c)) = (&brute, &closed) {
        if b != c {
            for p in b.difference(c) {
                writeln!(err, "brute force only: {p}")?;
            }
            for p in c.difference(b) {
                writeln!(err, "closed form only: {p}")?;
            }
            writeln!(out, "oracle=mismatch")?;
            return Ok(EXIT_ORACLE_MISMATCH);
        }
        writeln!(out, "oracle=agree")?;
    }
    Ok(EXIT_OK)
}

fn count_matches(count: usize, expected: &BigUint) -> bool {
    BigUint::from(count) == *expected
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> CmdResult {
    let x = match (&a.input, a.d, a.r, &a.parts) {
        (Some(path), ..) => read_point_set(path)?,
        (None, Some(d), Some(r), Some(parts)) => {
            let spec = ConstructionSpec::new(d, r, parts.clone())
                .map_err(|v| Failure::new(EXIT_INVALID_INPUT, v.to_string()))?;
            build_point_set(&spec)
        }
        _ => return Err(Failure::new(EXIT_INVALID_INPUT, "give either --input or all of -d, -r, --parts")),
    };
    if x.construction().is_none() {
        return Err(Failure::new(EXIT_INVALID_INPUT, "verify needs a labeled construction"));
    }
    let report = verify_point_set(&x, a.cap, Execution::default())?;
    for c in &report.clauses {
        writeln!(out, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.clause, c.detail)?;
    }
    let matched = count_matches(report.count, &report.expected);
    writeln!(
        out,
        "count={} expected={} match={}",
        report.count,
        report.expected,
        if matched { "yes" } else { "no" }
    )?;
    Ok(if report.passed() { EXIT_OK } else { EXIT_VERIFICATION_FAILED })
}

fn parse_point(s: &str, dim: usize) -> Result<Point, Failure> {
    let coords = s
        .split(',')
        .map(|t| parse_rational(t).map_err(|e| Failure::new(EXIT_INVALID_INPUT, e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    if coords.len() != dim {
        return Err(Failure::new(EXIT_INVALID_INPUT, format!("witness has {} coordinates, expected {dim}", coords.len())));
    }
    Ok(Point::new(coords))
}

fn certificate_at(x: &PointSet, partition: &Partition, witness: Point) -> Result<TverbergCertificate, Failure> {
    let mut coefficients = Vec::with_capacity(partition.num_blocks());
    for block in partition.blocks() {
        let points: Vec<&Point> = block.iter().map(|&k| x.point(k)).collect();
        match hull_membership(&witness, &points)? {
            Membership::Member(c) => coefficients.push(c),
            Membership::NotMember => {
                return Err(Failure::new(
                    EXIT_INVALID_INPUT,
                    format!("witness ({witness}) is not in the hull of block {}", join_indices(block)),
                ))
            }
        }
    }
    Ok(TverbergCertificate { partition: partition.clone(), witness, coefficients })
}

fn join_indices(block: &[usize]) -> String {
    block.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn write_certificate(out: &mut dyn Write, cert: &TverbergCertificate) -> std::io::Result<()> {
    writeln!(out, "{}", cert.partition)?;
    writeln!(out, "witness={}", cert.witness)?;
    for (block, coeffs) in cert.partition.blocks().iter().zip(&cert.coefficients) {
        let c: Vec<String> = coeffs.iter().map(ToString::to_string).collect();
        writeln!(out, "block={} coefficients={}", join_indices(block), c.join(","))?;
    }
    Ok(())
}

fn cmd_shift(a: &ShiftArgs, out: &mut dyn Write) -> CmdResult {
    let x = read_point_set(&a.input)?;
    let partition: Partition = a.partition.parse()?;
    partition.check_covers(x.len())?;
    let cert = match &a.witness {
        Some(w) => certificate_at(&x, &partition, parse_point(w, x.dim())?)?,
        None => is_tverberg(&x, &partition)?
            .ok_or_else(|| Failure::new(EXIT_INVALID_INPUT, format!("{partition} is not a Tverberg partition")))?,
    };
    match caratheodory_shift(&x, &cert)? {
        ShiftOutcome::Shifted { certificate, moved } => {
            write_certificate(out, &certificate)?;
            writeln!(out, "moved={moved}")?;
        }
        ShiftOutcome::NotApplicable => writeln!(out, "not applicable: all blocks ≤ d+1")?,
    }
    Ok(EXIT_OK)
}

fn cmd_sierksma(a: &SierksmaArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let sets: Vec<(PointSet, usize)> = if a.random {
        let (Some(d), Some(r)) = (a.d, a.r) else {
            return Err(Failure::new(EXIT_INVALID_INPUT, "--random needs -d and -r"));
        };
        if d < 1 || r < 2 {
            return Err(Failure::new(EXIT_INVALID_INPUT, "need d >= 1 and r >= 2"));
        }
        let n = tverberg_number(d, r);
        if n > a.cap {
            return Err(Error::CapExceeded { n, cap: a.cap }.into());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
        (0..a.samples).map(|_| (random_general_position(d, n, a.range, &mut rng), r)).collect()
    } else {
        let path = a.input.as_ref().ok_or_else(|| Failure::new(EXIT_INVALID_INPUT, "give --input or --random"))?;
        let x = read_point_set(path)?;
        let r = blocks_for(&x, a.r)?;
        vec![(x, r)]
    };

    writeln!(out, "sample count bound ratio")?;
    let mut min_ratio: Option<Rational> = None;
    let mut below = Vec::new();
    for (i, (x, r)) in sets.iter().enumerate() {
        let rep = sierksma_report(x, *r, a.cap)?;
        writeln!(out, "{i} {} {} {}", rep.count, rep.bound, rep.ratio)?;
        if !rep.meets_bound() {
            below.push((i, rep.count, rep.bound.clone()));
        }
        if min_ratio.as_ref().is_none_or(|m| rep.ratio < *m) {
            min_ratio = Some(rep.ratio);
        }
    }
    match &min_ratio {
        Some(m) => writeln!(out, "samples={} min_ratio={m} below_bound={}", sets.len(), below.len())?,
        None => writeln!(out, "samples=0 min_ratio=none below_bound=0")?,
    }
    for (i, count, bound) in below {
        let line = format!("FINDING: sample {i} has {count} Tverberg partitions, below [(r-1)!]^d = {bound}");
        writeln!(out, "{line}")?;
        writeln!(err, "{line}")?;
    }
    Ok(EXIT_OK)
}
