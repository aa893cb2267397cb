//! Command-line front end. [`run`] takes the argument list and output
//! streams and returns the process exit code: 0 when everything verified,
//! 1 when something did not (a counterexample, or a skip without
//! `--allow-skip`), 2 on usage or evaluation errors.

use std::io::Write;
use std::ops::RangeInclusive;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use crate::congruence::{
    expand_suite, mine, parse_claim, run_suite, verify_claims, FamilyParams, MineParams, MineSource,
    MinedClaimJson, SuiteOptions, DEFAULT_MIN_HITS,
};
use crate::eta::{eval_expr, parse_expr};
use crate::identities::{recurrence_table, registry, resolve_identities, verify_spec, RecurrenceRowJson};
use crate::partitions::{tuple_counts_gf, tuple_counts_oracle};
use crate::report::{Kind, Status, SuiteReport, VerificationReport};
use crate::series::CoefficientRing;

pub const DEFAULT_ORDER: usize = 2000;
pub const ORDER_ENV: &str = "QCORE_ORDER";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "qcore", version, about = "Truncated q-series engine and congruence verifier")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print coefficients of an eta-quotient expression.
    Coeff(CoeffArgs),
    /// Verify an identity, a claim, or a suite of claims.
    Verify {
        #[command(subcommand)]
        target: VerifyTarget,
    },
    /// Search for residue classes whose coefficients all vanish.
    Mine(MineArgs),
    /// Print the A/B/C/D recurrence table with 5-adic valuations.
    Recurrence(RecurrenceArgs),
    /// Compare brute-force t-core tuple counts with the generating function.
    OracleCheck(OracleArgs),
}

#[derive(Debug, Args)]
struct CoeffArgs {
    expr: String,
    /// Truncation order (default: max + 1, or 21).
    #[arg(long)]
    order: Option<usize>,
    #[arg(long)]
    min: Option<usize>,
    #[arg(long)]
    max: Option<usize>,
    /// Work mod this integer instead of over Z.
    #[arg(long)]
    modulus: Option<u64>,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args, Clone)]
struct RunFlags {
    /// Truncation order (default 2000, or $QCORE_ORDER).
    #[arg(long, global = true)]
    order: Option<usize>,
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Exit 0 even if some items were skipped.
    #[arg(long, global = true)]
    allow_skip: bool,
    /// Seed for the exact-arithmetic spot check.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, short, global = true)]
    verbose: bool,
}

#[derive(Debug, Subcommand)]
enum VerifyTarget {
    /// An identity id, an id prefix naming a group, or `all`.
    Identity {
        id: String,
        #[command(flatten)]
        flags: RunFlags,
    },
    /// A claim such as `A(5,4; 25n+21) % 5^5 == 0`.
    Claim {
        claim: String,
        #[command(flatten)]
        flags: RunFlags,
    },
    /// A suite (paper-proved, paper-conjectures, general-theorems,
    /// paper-all) or a single family id.
    Suite {
        id: String,
        #[command(flatten)]
        flags: RunFlags,
        #[command(flatten)]
        grid: GridArgs,
    },
}

#[derive(Debug, Args, Clone)]
struct GridArgs {
    /// Alpha range for ladder families, e.g. `0..2`.
    #[arg(long, value_parser = parse_range::<u32>)]
    alpha: Option<RangeInclusive<u32>>,
    /// Primes for the residue-criterion families, e.g. `5,7`.
    #[arg(long, value_delimiter = ',')]
    primes: Option<Vec<u64>>,
    /// Exponent range N for the residue-criterion families.
    #[arg(long, value_parser = parse_range::<u32>)]
    powers: Option<RangeInclusive<u32>>,
    /// Range of the family parameter i.
    #[arg(long = "i", value_parser = parse_range::<u64>)]
    i: Option<RangeInclusive<u64>>,
}

impl From<&GridArgs> for FamilyParams {
    fn from(g: &GridArgs) -> Self {
        FamilyParams {
            alpha: g.alpha.clone(),
            primes: g.primes.clone(),
            powers: g.powers.clone(),
            i: g.i.clone(),
        }
    }
}

#[derive(Debug, Args)]
struct MineArgs {
    #[arg(long, default_value_t = 5)]
    t: u64,
    /// Range of k, e.g. `1..7`.
    #[arg(long, value_parser = parse_range::<u64>, default_value = "1..4")]
    k: RangeInclusive<u64>,
    /// Mine the partition function 1/f1 instead of tuple counts.
    #[arg(long)]
    partitions: bool,
    #[arg(long, value_delimiter = ',', num_args = 0.., default_value = "5,25")]
    periods: Vec<u64>,
    #[arg(long, value_delimiter = ',', num_args = 0.., default_value = "5,25,125")]
    moduli: Vec<u64>,
    #[arg(long, default_value_t = DEFAULT_MIN_HITS)]
    min_hits: u64,
    #[command(flatten)]
    flags: RunFlags,
}

#[derive(Debug, Args)]
struct RecurrenceArgs {
    #[arg(long, default_value_t = 12)]
    alpha_max: u32,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct OracleArgs {
    #[arg(long, value_delimiter = ',', default_value = "2,3,5,7")]
    t: Vec<usize>,
    #[arg(long, value_parser = parse_range::<usize>, default_value = "1..4")]
    k: RangeInclusive<usize>,
    #[arg(long, default_value_t = 15)]
    max_n: usize,
    /// Largest n the brute-force enumeration accepts.
    #[arg(long, default_value_t = crate::partitions::DEFAULT_CAP)]
    cap: usize,
    #[arg(long)]
    json: bool,
}

/// `a..b` (inclusive) or a single value.
fn parse_range<T: FromStr + PartialOrd + Copy>(s: &str) -> Result<RangeInclusive<T>, String> {
    let parse = |x: &str| x.trim().parse::<T>().map_err(|_| format!("bad number '{x}'"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
        None => {
            let v = parse(s)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(format!("empty range '{s}'"));
    }
    Ok(lo..=hi)
}

struct Failed(String);

type Outcome = Result<i32, Failed>;

impl<E: std::fmt::Display> From<E> for Failed {
    fn from(e: E) -> Self {
        Failed(e.to_string())
    }
}

fn default_order() -> Result<usize, Failed> {
    match std::env::var(ORDER_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&t| t >= 1)
            .ok_or_else(|| Failed(format!("{ORDER_ENV}='{v}' is not a positive integer"))),
        Err(_) => Ok(DEFAULT_ORDER),
    }
}

fn order_of(flags: &RunFlags) -> Result<usize, Failed> {
    match flags.order {
        Some(0) => Err(Failed("--order must be at least 1".into())),
        Some(t) => Ok(t),
        None => default_order(),
    }
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match cli.command {
        Command::Coeff(a) => cmd_coeff(&a, out),
        Command::Verify { target } => cmd_verify(&target, out),
        Command::Mine(a) => cmd_mine(&a, out),
        Command::Recurrence(a) => cmd_recurrence(&a, out),
        Command::OracleCheck(a) => cmd_oracle(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(Failed(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

#[derive(Serialize)]
struct CoeffJson {
    expr: String,
    ring: String,
    order: usize,
    coefficients: Vec<CoeffEntry>,
}

#[derive(Serialize)]
struct CoeffEntry {
    n: usize,
    value: String,
}

fn cmd_coeff(a: &CoeffArgs, out: &mut dyn Write) -> Outcome {
    let order = match (a.order, a.max) {
        (Some(0), _) => return Err(Failed("--order must be at least 1".into())),
        (Some(t), _) => t,
        (None, Some(m)) => m + 1,
        (None, None) => 21,
    };
    let hi = a.max.unwrap_or(order - 1);
    if hi >= order {
        return Err(Failed(format!("--max {hi} is not below the order {order}")));
    }
    let lo = a.min.unwrap_or(0);
    let ring = match a.modulus {
        Some(m) => CoefficientRing::modulo(m)?,
        None => CoefficientRing::Exact,
    };
    let e = parse_expr(&a.expr)?;
    let s = eval_expr(&e, ring, order)?;
    let entries: Vec<CoeffEntry> = (lo..=hi)
        .map(|n| CoeffEntry {
            n,
            value: s.coeff(n).to_string(),
        })
        .collect();
    if a.json {
        let j = CoeffJson {
            expr: e.to_string(),
            ring: ring.to_string(),
            order,
            coefficients: entries,
        };
        writeln!(out, "{}", serde_json::to_string_pretty(&j)?)?;
    } else {
        for c in entries {
            writeln!(out, "{}\t{}", c.n, c.value)?;
        }
    }
    Ok(EXIT_OK)
}

fn exit_code(report: &SuiteReport, allow_skip: bool) -> i32 {
    let bad = report.results.iter().any(|r| match r.status {
        Status::Verified => false,
        Status::Counterexample => true,
        Status::Skipped => !allow_skip,
    });
    if bad {
        EXIT_FAILED
    } else {
        EXIT_OK
    }
}

fn progression_n(r: &VerificationReport, index: u64) -> Option<u64> {
    let c = parse_claim(&r.id).ok()?;
    Some(index / c.period)
}

fn write_report(report: &SuiteReport, flags: &RunFlags, out: &mut dyn Write) -> Result<(), Failed> {
    if flags.json {
        writeln!(out, "{}", report.to_json())?;
        return Ok(());
    }
    if let Some(s) = &report.suite {
        writeln!(out, "suite {s} at order {}", report.order)?;
    }
    for r in &report.results {
        let mut line = format!("{:<15} {}  checked={}", r.status.to_string(), r.id, r.checked);
        if let Some(f) = &r.failure {
            line.push_str(&format!("  index={}", f.index));
            if r.kind == Kind::Claim {
                if let Some(n) = progression_n(r, f.index) {
                    line.push_str(&format!(" (n={n})"));
                }
            }
            line.push_str(&format!(" value={}", f.value));
        }
        if let Some(why) = &r.reason {
            line.push_str(&format!("  reason: {why}"));
        }
        line.push_str(&format!("  [{}, {}]", r.source, r.proof_status));
        writeln!(out, "{line}")?;
        if flags.verbose && r.kind == Kind::Claim {
            if let Ok(c) = parse_claim(&r.id) {
                let first: Vec<String> = c
                    .indices(report.order.saturating_sub(1))
                    .iter()
                    .take(5)
                    .map(u64::to_string)
                    .collect();
                writeln!(
                    out,
                    "    progression {}n + {:?}, first indices {}  ({:.3}s)",
                    c.period,
                    c.residues,
                    first.join(", "),
                    r.elapsed.as_secs_f64()
                )?;
            }
        }
    }
    if let Some(s) = &report.spot_check {
        writeln!(
            out,
            "spot check over Z: {} at order {}: {}",
            s.id,
            s.order,
            if s.agrees { "agrees" } else { "DISAGREES" }
        )?;
    }
    let verified = report.results.len() - report.counterexamples() - report.skipped();
    writeln!(
        out,
        "summary: {verified} verified, {} counterexamples, {} skipped",
        report.counterexamples(),
        report.skipped()
    )?;
    Ok(())
}

fn in_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, Failed> {
    match jobs {
        Some(0) => Err(Failed("--jobs must be at least 1".into())),
        Some(n) => Ok(rayon::ThreadPoolBuilder::new().num_threads(n).build()?.install(f)),
        None => Ok(f()),
    }
}

fn cmd_verify(target: &VerifyTarget, out: &mut dyn Write) -> Outcome {
    let (report, flags) = match target {
        VerifyTarget::Identity { id, flags } => {
            let specs = if id == "all" { registry() } else { resolve_identities(id)? };
            if flags.order == Some(0) {
                return Err(Failed("--order must be at least 1".into()));
            }
            let results = in_pool(flags.jobs, || {
                specs
                    .par_iter()
                    .map(|s| verify_spec(s, flags.order.unwrap_or(s.default_order)))
                    .collect::<Result<Vec<_>, _>>()
            })??;
            let order = flags.order.unwrap_or_else(|| specs.iter().map(|s| s.default_order).max().unwrap_or(0));
            let suite = (specs.len() > 1).then(|| id.clone());
            (
                SuiteReport {
                    suite,
                    order: order as u64,
                    results,
                    spot_check: None,
                },
                flags,
            )
        }
        VerifyTarget::Claim { claim, flags } => {
            let order = order_of(flags)?;
            let c = parse_claim(claim)?;
            let results = verify_claims(&[c], order, flags.jobs)?;
            (
                SuiteReport {
                    suite: None,
                    order: order as u64,
                    results,
                    spot_check: None,
                },
                flags,
            )
        }
        VerifyTarget::Suite { id, flags, grid } => {
            let order = order_of(flags)?;
            if flags.jobs == Some(0) {
                return Err(Failed("--jobs must be at least 1".into()));
            }
            let opts = SuiteOptions {
                params: grid.into(),
                seed: flags.seed,
                jobs: flags.jobs,
                spot_check: true,
            };
            if flags.verbose && !flags.json {
                let n = expand_suite(id, &opts.params)?.len();
                writeln!(out, "expanding {id}: {n} claims")?;
            }
            (run_suite(id, order, &opts)?, flags)
        }
    };
    write_report(&report, flags, out)?;
    let mut code = exit_code(&report, flags.allow_skip);
    if report.spot_check.as_ref().is_some_and(|s| !s.agrees) {
        code = EXIT_FAILED;
    }
    Ok(code)
}

fn cmd_mine(a: &MineArgs, out: &mut dyn Write) -> Outcome {
    let order = order_of(&a.flags)?;
    let source = if a.partitions {
        MineSource::Partitions
    } else {
        MineSource::TupleCores {
            t: a.t,
            ks: a.k.clone().collect(),
        }
    };
    let params = MineParams {
        source,
        periods: a.periods.clone(),
        moduli: a.moduli.clone(),
        order,
        min_hits: a.min_hits,
    };
    let found = in_pool(a.flags.jobs, || mine(&params))??;
    if a.flags.json {
        let j: Vec<MinedClaimJson> = found.iter().map(Into::into).collect();
        writeln!(out, "{}", serde_json::to_string_pretty(&j)?)?;
    } else {
        for m in &found {
            writeln!(out, "{}  hits={}", m.claim, m.hits)?;
        }
        writeln!(out, "mined {} claims at order {order}", found.len())?;
    }
    Ok(EXIT_OK)
}

fn cmd_recurrence(a: &RecurrenceArgs, out: &mut dyn Write) -> Outcome {
    let rows = recurrence_table(a.alpha_max)?;
    if a.json {
        let j: Vec<RecurrenceRowJson> = rows.iter().map(Into::into).collect();
        writeln!(out, "{}", serde_json::to_string_pretty(&j)?)?;
        return Ok(EXIT_OK);
    }
    let flag = |f: Option<bool>| f.map_or("-".to_string(), |b| b.to_string());
    writeln!(out, "alpha\tA\tB\tC\tD\tnu5(A)\tnu5(B)\tnu5(C)\tnu5(D)\ttheorem_bound_ok\tstrict_bound_ok")?;
    for r in &rows {
        let s = &r.state;
        let v = r.valuations;
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            s.alpha,
            s.a,
            s.b,
            s.c,
            s.d,
            v[0],
            v[1],
            v[2],
            v[3],
            flag(r.theorem_bound_ok),
            flag(r.strict_bound_ok)
        )?;
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct OracleRow {
    t: usize,
    k: usize,
    max_n: usize,
    agrees: bool,
    first_mismatch: Option<usize>,
}

fn cmd_oracle(a: &OracleArgs, out: &mut dyn Write) -> Outcome {
    let mut rows = Vec::new();
    for &t in &a.t {
        for k in a.k.clone() {
            let brute = tuple_counts_oracle(t, k, a.max_n, a.cap)?;
            let gf = tuple_counts_gf(t, k, a.max_n)?;
            let first_mismatch = (0..=a.max_n).find(|&n| brute.counts[n] != gf.counts[n]);
            rows.push(OracleRow {
                t,
                k,
                max_n: a.max_n,
                agrees: first_mismatch.is_none(),
                first_mismatch,
            });
        }
    }
    if a.json {
        writeln!(out, "{}", serde_json::to_string_pretty(&rows)?)?;
    } else {
        for r in &rows {
            match r.first_mismatch {
                None => writeln!(out, "t={} k={} n<={}: agree", r.t, r.k, r.max_n)?,
                Some(n) => writeln!(out, "t={} k={} n<={}: MISMATCH at n={n}", r.t, r.k, r.max_n)?,
            }
        }
    }
    Ok(if rows.iter().all(|r| r.agrees) { EXIT_OK } else { EXIT_FAILED })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut argv = vec!["qcore"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range::<u32>("1..4").unwrap(), 1..=4);
        assert_eq!(parse_range::<u32>("1..=4").unwrap(), 1..=4);
        assert_eq!(parse_range::<u32>("3").unwrap(), 3..=3);
        assert!(parse_range::<u32>("4..1").is_err());
        assert!(parse_range::<u32>("x").is_err());
    }

    #[test]
    fn coeff_output() {
        let (code, out, _) = run_str(&["coeff", "f5^20/f1^4", "--max", "4"]);
        assert_eq!(code, 0);
        let vals: Vec<&str> = out.lines().map(|l| l.split('\t').nth(1).unwrap()).collect();
        assert_eq!(vals, vec!["1", "4", "14", "40", "105"]);
        let (_, out, _) = run_str(&["coeff", "q", "--max", "2"]);
        assert_eq!(out, "0\t0\n1\t1\n2\t0\n");
        let (code, _, err) = run_str(&["coeff", "f1^^2"]);
        assert_eq!(code, 2);
        assert!(err.contains("error"));
    }

    #[test]
    fn claim_exit_codes() {
        let (code, out, _) = run_str(&["verify", "claim", "A(5,2; 5n+1) % 5 == 0", "--order", "100"]);
        assert_eq!(code, 1);
        assert!(out.contains("index=1 (n=0) value=2"), "{out}");
        let (code, _, _) = run_str(&["verify", "claim", "A(5,2; 5n+3) % 5 == 0", "--order", "300"]);
        assert_eq!(code, 0);
        let (code, _, _) = run_str(&["verify", "claim", "A(5,2; 5n+3) % 6 == 0"]);
        assert_eq!(code, 2);
        let (code, _, _) = run_str(&["verify", "claim", "A(5,4; 125n+121) % 5^6 == 0", "--order", "50"]);
        assert_eq!(code, 1);
        let (code, _, _) = run_str(&["verify", "claim", "A(5,4; 125n+121) % 5^6 == 0", "--order", "50", "--allow-skip"]);
        assert_eq!(code, 0);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_str(&[]).0, 2);
        assert_eq!(run_str(&["verify", "identity", "no-such-id"]).0, 2);
        assert_eq!(run_str(&["verify", "suite", "no-such-suite"]).0, 2);
        assert_eq!(run_str(&["verify", "claim", "A(5,2; 5n+3) % 5 == 0", "--order", "0"]).0, 2);
        assert_eq!(run_str(&["--help"]).0, 0);
    }

    #[test]
    fn recurrence_rows() {
        let (code, out, _) = run_str(&["recurrence", "--alpha-max", "2"]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().collect();
        assert!(lines[1].starts_with("0\t4\t550\t12500\t78125\t"));
        assert!(lines[2].contains("\t5\t5\t6\t14\ttrue\tfalse"), "{}", lines[2]);
        assert!(lines[3].contains("\t476837158203125\t"));
    }
}
