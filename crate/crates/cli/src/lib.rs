//! Command-line front end for `etapoly`.
//!
//! Every subcommand renders into a buffer that is written once at the end,
//! so output order is deterministic. Exit codes: 0 when every executed check
//! passed, 1 on a check failure, 2 on usage or input errors.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use etapoly::cache::{CacheError, PolyCache};
use etapoly::eta::{first_divergence, hno_oracle, multiset_expansion_oracle, Budget, EtaSequence, ORACLE_CAP};
use etapoly::grouping::{grouping_coefficients_for_residue, Predictor};
use etapoly::lemmas::{binomsum_bruteforce, binomsum_closed, shiftbinom_check};
use etapoly::modular::{is_prime, reduce_mod};
use etapoly::partitions::partition_count;
use etapoly::theorems::{population_divisibility, progression_census, triangle_row, Style};
use etapoly::IntPoly;

pub mod verify;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Largest index the CLI computes exactly when a command can fall back to
/// the predictor.
pub const EXACT_LIMIT: usize = 200;

#[derive(Debug, Parser)]
#[command(name = "etapoly", version, about = "Coefficient polynomials of the eta power prod (1 - q^k)^(b-1)")]
pub struct Cli {
    /// Polynomial cache shared by all subcommands.
    #[arg(long, global = true, default_value = "etapoly.cache")]
    pub cache: PathBuf,
    /// Lift the default size caps on brute-force routes.
    #[arg(long, global = true)]
    pub allow_expensive: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StyleArg {
    Paper,
    Csv,
}

impl From<StyleArg> for Style {
    fn from(s: StyleArg) -> Self {
        match s {
            StyleArg::Paper => Style::Paper,
            StyleArg::Csv => Style::Csv,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print p_n(b) with exact coefficients.
    Compute {
        #[arg(long)]
        n: usize,
    },
    /// Check recurrence, hooklength sum and multiset expansion agree for 0..=max-n.
    Oracles {
        #[arg(long)]
        max_n: usize,
        /// Test hook: add one to coefficient T of the recurrence result at N.
        #[arg(long, value_name = "N:T", hide = true)]
        inject_fault: Option<String>,
    },
    /// Print the mod-5 triangle rows n = 4, 9, ..., max-n.
    Triangle {
        #[arg(long, default_value_t = 134)]
        max_n: usize,
        #[arg(long, value_enum, default_value_t = StyleArg::Paper)]
        style: StyleArg,
    },
    /// Residue populations of p_n mod p for n ≡ p-1 mod p, as TSV.
    Census {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        max_n: usize,
    },
    /// Predicted residues of p_n mod p for n ≡ p-1 mod p.
    Predict {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u64,
        /// Only this degree.
        #[arg(long)]
        t: Option<u64>,
        /// Compare against the exact reduction.
        #[arg(long)]
        check: bool,
    },
    /// Closed form against brute force for the binomial-sum lemma.
    Binomsum {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u64,
        /// Only this total; default is every total in 0..=(p-1)k.
        #[arg(long)]
        total: Option<u64>,
    },
    /// Both sides of the shifted-binomial congruence for every valid s.
    Shiftbinom {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        j: u64,
    },
    /// Grouping coefficients a_0..a_r for residue r (default p-1).
    Acoeffs {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        r: Option<u64>,
    },
    /// Population divisibility in the progression -1-p-...-p^(q-1) mod p^q.
    Divpop {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u32,
    },
    /// Run every verification suite.
    Verify {
        /// Run only the named suite.
        #[arg(long)]
        suite: Option<String>,
    },
}

/// Error from a subcommand, mapped onto an exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Cache(CacheError),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Cache(e) => write!(f, "{e}"),
        }
    }
}

impl From<etapoly::Error> for CliError {
    fn from(e: etapoly::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<CacheError> for CliError {
    fn from(e: CacheError) -> Self {
        CliError::Cache(e)
    }
}

/// Result of running a command: what to print and the exit status.
#[derive(Debug, Default)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let rendered = e.render().to_string();
            return if code == EXIT_PASS {
                Outcome { stdout: rendered, ..Outcome::default() }
            } else {
                Outcome { stderr: rendered, code, ..Outcome::default() }
            };
        }
    };
    let mut out = String::new();
    match execute(&cli, &mut out) {
        Ok(passed) => Outcome { stdout: out, code: if passed { EXIT_PASS } else { EXIT_FAIL }, ..Outcome::default() },
        Err(e) => Outcome { stdout: out, stderr: format!("error: {e}\n"), code: EXIT_USAGE },
    }
}

fn execute(cli: &Cli, out: &mut String) -> Result<bool, CliError> {
    let budget = Budget::from_override(cli.allow_expensive);
    match &cli.command {
        Command::Compute { n } => {
            let polys = exact_polys(&cli.cache, *n)?;
            writeln!(out, "{}", render_poly(*n, &polys[*n])).unwrap();
            Ok(true)
        }
        Command::Oracles { max_n, inject_fault } => cmd_oracles(*max_n, inject_fault.as_deref(), budget, out),
        Command::Triangle { max_n, style } => {
            if *max_n < 4 {
                return Ok(true);
            }
            let top = max_n - (max_n + 1) % 5;
            let polys = exact_polys(&cli.cache, top)?;
            for n in (4..=top).step_by(5) {
                let row = triangle_row(&reduce_mod(&polys[n], 5)?, n)?;
                writeln!(out, "{}", row.render((*style).into())).unwrap();
            }
            Ok(true)
        }
        Command::Census { p, max_n } => cmd_census(&cli.cache, *p, *max_n, out),
        Command::Predict { p, n, t, check } => cmd_predict(&cli.cache, *p, *n, *t, *check, out),
        Command::Binomsum { p, k, total } => {
            let totals: Vec<u64> = match total {
                Some(t) => vec![*t],
                None => (0..=p.saturating_sub(1) * k).collect(),
            };
            let mut ok = true;
            writeln!(out, "total\tclosed\tbrute\tagree").unwrap();
            for total in totals {
                let closed = binomsum_closed(*p, *k, total)?;
                let brute = binomsum_bruteforce(*p, *k, total, budget)?;
                ok &= closed == brute;
                writeln!(out, "{total}\t{closed}\t{brute}\t{}", closed == brute).unwrap();
            }
            Ok(ok)
        }
        Command::Shiftbinom { p, j } => {
            if !is_prime(*p) {
                return Err(etapoly::Error::NotPrime(*p).into());
            }
            let mut ok = true;
            writeln!(out, "s\tlhs\trhs\tagree").unwrap();
            for s in 0..=p * j + p - 2 {
                let (lhs, rhs) = shiftbinom_check(*p, *j, s)?;
                ok &= lhs == rhs;
                writeln!(out, "{s}\t{lhs}\t{rhs}\t{}", lhs == rhs).unwrap();
            }
            Ok(ok)
        }
        Command::Acoeffs { p, r } => cmd_acoeffs(*p, *r, out),
        Command::Divpop { p, q } => {
            let n = etapoly::theorems::divisibility_index(*p, *q)? as usize;
            let cache = (n <= EXACT_LIMIT).then(|| exact_polys(&cli.cache, n)).transpose()?.map(|ps| PolyCache::from_polys(&ps));
            let report = population_divisibility(*p, *q, cache.as_ref())?;
            writeln!(out, "p={} q={} n={} source={} exceptional={}", report.p, report.q, report.n, report.source, report.exceptional).unwrap();
            writeln!(out, "populations\t{}", join(report.census.nonzero_counts(), "\t")).unwrap();
            writeln!(out, "divisor\t{}", report.divisor).unwrap();
            writeln!(out, "divisible\t{}", report.divisible).unwrap();
            Ok(report.divisible)
        }
        Command::Verify { suite } => verify::run_suites(&cli.cache, suite.as_deref(), out),
    }
}

/// Exact `p_0, ..., p_n`, reusing the cache at `path` and extending it when
/// it is shorter than `n`.
pub fn exact_polys(path: &Path, n: usize) -> Result<Vec<IntPoly>, CliError> {
    let mut cache = if path.exists() { PolyCache::load(path)? } else { PolyCache::new() };
    let prefix = cache.contiguous_prefix();
    if prefix.len() > n {
        return Ok(prefix[..=n].to_vec());
    }
    let mut seq = EtaSequence::from_prefix(prefix);
    seq.extend_to(n);
    let polys = seq.into_polys();
    for (i, p) in polys.iter().enumerate() {
        cache.insert(i, p.clone());
    }
    cache.save(path)?;
    Ok(polys)
}

/// `p_n(b) = c0 + c1 b + c2 b^2 ...`, zero terms omitted.
pub fn render_poly(n: usize, poly: &IntPoly) -> String {
    let mut out = format!("p_{n}(b) = ");
    let mut first = true;
    for (t, c) in poly.coeffs().iter().enumerate() {
        if c == &BigInt::from(0) {
            continue;
        }
        let negative = c < &BigInt::from(0);
        let abs = if negative { -c } else { c.clone() };
        match (first, negative) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        first = false;
        match t {
            0 => write!(out, "{abs}"),
            1 => write!(out, "{abs} b"),
            _ => write!(out, "{abs} b^{t}"),
        }
        .unwrap();
    }
    if first {
        out.push('0');
    }
    out
}

fn join<T: std::fmt::Display>(items: &[T], sep: &str) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

fn parse_fault(spec: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::Usage(format!("--inject-fault expects N:T, got `{spec}`"));
    let (n, t) = spec.split_once(':').ok_or_else(bad)?;
    Ok((n.parse().map_err(|_| bad())?, t.parse().map_err(|_| bad())?))
}

fn cmd_oracles(max_n: usize, fault: Option<&str>, budget: Budget, out: &mut String) -> Result<bool, CliError> {
    if budget == Budget::Capped && max_n > ORACLE_CAP {
        return Err(etapoly::Error::CapExceeded { what: "max-n", value: max_n as u64, cap: ORACLE_CAP as u64 }.into());
    }
    let fault = fault.map(parse_fault).transpose()?;
    let mut seq = EtaSequence::new();
    seq.extend_to(max_n);
    for n in 0..=max_n {
        let mut rec = seq.polys()[n].clone();
        if let Some((fn_, ft)) = fault {
            if fn_ == n {
                let mut coeffs = rec.into_coeffs();
                if coeffs.len() <= ft {
                    coeffs.resize(ft + 1, BigInt::from(0));
                }
                coeffs[ft] += 1;
                rec = IntPoly::new(coeffs);
            }
        }
        let hno = hno_oracle(n, budget)?;
        let multi = multiset_expansion_oracle(n, budget)?;
        let diverged = first_divergence(&rec, &hno).or_else(|| first_divergence(&rec, &multi));
        if let Some((t, _, _)) = diverged {
            writeln!(
                out,
                "divergence at n={n}, t={t}: recurrence={} hooklength={} multiset={}",
                rec.coeff(t),
                hno.coeff(t),
                multi.coeff(t)
            )
            .unwrap();
            return Ok(false);
        }
    }
    writeln!(out, "recurrence, hooklength and multiset engines agree for n = 0..={max_n}").unwrap();
    Ok(true)
}

fn cmd_census(cache: &Path, p: u64, max_n: usize, out: &mut String) -> Result<bool, CliError> {
    if !is_prime(p) {
        return Err(etapoly::Error::NotPrime(p).into());
    }
    let predictor = Predictor::for_residue(p, p - 1)?;
    let mut header = String::from("n");
    for c in 0..p {
        write!(header, "\tcount_{c}").unwrap();
    }
    header.push_str("\tequidistributed\tzero_prefix");
    if p == 5 {
        header.push_str("\trotation");
    }
    writeln!(out, "{header}").unwrap();
    let first = (p - 1) as usize;
    if max_n < first {
        return Ok(true);
    }
    let polys = exact_polys(cache, max_n)?;
    for n in (first..=max_n).step_by(p as usize) {
        let report = progression_census(&reduce_mod(&polys[n], p)?, &predictor)?;
        let v = &report.verdicts;
        let mut line = format!("{n}\t{}\t{}\t{}", join(&report.counts, "\t"), v.equidistributed, v.zero_prefix.unwrap_or(false));
        if let Some(rot) = v.rotation {
            write!(line, "\t{rot}").unwrap();
        }
        writeln!(out, "{line}").unwrap();
    }
    Ok(true)
}

fn cmd_predict(cache: &Path, p: u64, n: u64, t: Option<u64>, check: bool, out: &mut String) -> Result<bool, CliError> {
    if !is_prime(p) {
        return Err(etapoly::Error::NotPrime(p).into());
    }
    if n % p != p - 1 {
        return Err(etapoly::Error::WrongProgression { n: n as usize, p, r: p - 1 }.into());
    }
    let k = n / p;
    let predictor = Predictor::for_residue(p, p - 1)?;
    let predicted = match t {
        Some(t) => vec![predictor.coefficient(k, t)?],
        None => predictor.residues(k).residues,
    };
    writeln!(out, "p={p} n={n} k={k}").unwrap();
    writeln!(out, "{}", join(&predicted, ",")).unwrap();
    if !check {
        return Ok(true);
    }
    if n as usize > EXACT_LIMIT {
        return Err(CliError::Usage(format!("--check needs n <= {EXACT_LIMIT}")));
    }
    let polys = exact_polys(cache, n as usize)?;
    let exact = reduce_mod(&polys[n as usize], p)?.residues;
    let exact = match t {
        Some(t) => vec![exact[t as usize]],
        None => exact,
    };
    let agree = exact == predicted;
    writeln!(out, "exact {}", if agree { "agrees" } else { "DISAGREES" }).unwrap();
    if !agree {
        writeln!(out, "{}", join(&exact, ",")).unwrap();
    }
    Ok(agree)
}

fn cmd_acoeffs(p: u64, r: Option<u64>, out: &mut String) -> Result<bool, CliError> {
    if !is_prime(p) {
        return Err(etapoly::Error::NotPrime(p).into());
    }
    let r = r.unwrap_or(p - 1);
    let table = grouping_coefficients_for_residue(p, r)?;
    writeln!(out, "p={p} r={r}").unwrap();
    writeln!(out, "a\t{}", join(&table.a, "\t")).unwrap();
    let count = partition_count(r as usize);
    let count_mod = &count % BigInt::from(p);
    let a0_ok = BigInt::from(table.a[0]) == count_mod;
    writeln!(out, "a_0 ≡ p({r}) = {count}: {a0_ok}").unwrap();
    let mut ok = a0_ok;
    if r == p - 1 {
        let last_ok = table.a[r as usize] == p - 1;
        writeln!(out, "a_{r} ≡ -1: {last_ok}").unwrap();
        ok &= last_ok;
    }
    Ok(ok)
}
