//! The `powered` command line. [`run`] is the whole program minus process
//! plumbing, so tests can drive it in-process.
//!
//! Exit codes: 0 success, 2 usage/parameter/domain error, 3 capacity error,
//! 1 lemma violation.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::abc_ap::{self, ApPredicate, BoundForm, RkMethod};
use crate::arith::{self, FactorConfig, PoweredThreshold, Rational};
use crate::error::{capacity, param, Error, Result};
use crate::lab::{self, CountReport, PoweredConstants};
use crate::sieve::{self, Interval, SieveConfig};

/// Environment variable read for the default worker count.
pub const THREADS_ENV: &str = "POWERED_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "powered",
    version,
    about = "Powered and powerful numbers in short intervals"
)]
struct Cli {
    /// Worker threads for interval scans.
    #[arg(long, global = true, env = THREADS_ENV, default_value_t = 1,
          value_parser = clap::value_parser!(u64).range(1..=1024))]
    threads: u64,
    /// Seed for randomized factoring.
    #[arg(long, global = true, default_value_t = 0x5eed)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    output: Output,
    /// Bound constant as NAME=VALUE (repeatable).
    #[arg(long = "constant", global = true, value_parser = parse_constant)]
    constants: Vec<(String, f64)>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone, Copy)]
struct IntervalArgs {
    #[arg(long)]
    x: u128,
    #[arg(long)]
    y: u128,
}

impl IntervalArgs {
    fn interval(&self) -> Result<Interval> {
        Interval::new(self.x, self.y)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Factor one integer.
    Factor {
        #[arg(long)]
        n: u128,
    },
    /// List the powerful (or, with --k, k-powered) numbers of (x, x+y].
    Powerful {
        #[command(flatten)]
        iv: IntervalArgs,
        #[arg(long)]
        k: Option<PoweredThreshold>,
    },
    /// Count integers with no prime factor p <= sqrt(y).
    Rough {
        #[command(flatten)]
        iv: IntervalArgs,
    },
    #[command(name = "count-t1")]
    CountT1 {
        #[command(flatten)]
        iv: IntervalArgs,
        #[arg(long)]
        k: PoweredThreshold,
        #[arg(long, value_parser = parse_rational)]
        delta: Rational,
    },
    #[command(name = "count-t2")]
    CountT2 {
        #[command(flatten)]
        iv: IntervalArgs,
        #[arg(long)]
        k: PoweredThreshold,
        #[arg(long)]
        w: u128,
    },
    /// Count k-powered numbers; constants C and c via --constant.
    #[command(name = "count-powered")]
    CountPowered {
        #[command(flatten)]
        iv: IntervalArgs,
        #[arg(long)]
        k: PoweredThreshold,
    },
    /// Powerful n with p+(n)^2 <= y.
    #[command(name = "count-eq1")]
    CountEq1 {
        #[command(flatten)]
        iv: IntervalArgs,
    },
    /// n with p+(q(n)) <= log(y+1) log log(y+2).
    #[command(name = "count-eq3")]
    CountEq3 {
        #[command(flatten)]
        iv: IntervalArgs,
    },
    /// n with a w-smooth divisor exceeding y^alpha.
    Sdivisor {
        #[command(flatten)]
        iv: IntervalArgs,
        #[arg(long, value_parser = parse_rational)]
        alpha: Rational,
        #[arg(long)]
        w: u128,
    },
    /// Case labels of the k-powered numbers.
    Cases {
        #[command(flatten)]
        iv: IntervalArgs,
        #[arg(long)]
        k: PoweredThreshold,
        /// Defaults to floor(y^((k-1)/k)).
        #[arg(long)]
        z: Option<u128>,
        /// Include every decomposition, not just the tally.
        #[arg(long)]
        list: bool,
    },
    #[command(name = "verify-b2")]
    VerifyB2 {
        #[command(flatten)]
        iv: IntervalArgs,
        #[arg(long)]
        k: PoweredThreshold,
        #[arg(long)]
        z: Option<u128>,
    },
    #[command(name = "abc-triple")]
    AbcTriple {
        #[arg(long)]
        n: u128,
        #[arg(long)]
        d: u128,
    },
    /// Check the D structure for every coprime 2d' < n' <= max-n.
    #[command(name = "abc-scan")]
    AbcScan {
        #[arg(long, default_value_t = 1500, value_parser = clap::value_parser!(u64).range(3..=1_000_000))]
        max_n: u64,
    },
    /// Progressions of powerful (or, with --k, k-powered) numbers.
    #[command(name = "ap-search")]
    ApSearch {
        #[command(flatten)]
        iv: IntervalArgs,
        #[arg(long)]
        k: Option<PoweredThreshold>,
        #[arg(long = "length", short = 'L', default_value_t = 3)]
        length: usize,
    },
    /// Largest subset of {1..N} without a k-term progression.
    Rk {
        #[arg(long = "N")]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum, default_value_t = MethodArg::Exact)]
        method: MethodArg,
        /// Override the exact-search cap (at most 64).
        #[arg(long)]
        cap: Option<u32>,
    },
    /// Evaluate an r_k(N) bound shape; c or c_k via --constant.
    Bound {
        #[arg(long = "N")]
        n: f64,
        #[arg(long, value_enum)]
        form: FormArg,
        /// Progression length, for the gowers form.
        #[arg(long, default_value_t = 3)]
        k: u32,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Exact,
    Greedy,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FormArg {
    Gowers,
    #[value(name = "r3_exp")]
    R3Exp,
    Gt4,
    Lss,
}

fn parse_rational(s: &str) -> Result<Rational> {
    arith::parse_rational(s)
}

fn parse_constant(s: &str) -> Result<(String, f64)> {
    let (name, value) = s
        .split_once('=')
        .ok_or_else(|| param(format!("constant `{s}` is not NAME=VALUE")))?;
    let v: f64 = value
        .parse()
        .map_err(|_| param(format!("constant {name}: `{value}` is not a number")))?;
    if !v.is_finite() {
        return Err(param(format!("constant {name} must be finite")));
    }
    Ok((name.to_string(), v))
}

/// Look up constants, rejecting names the command does not use.
fn constants(given: &[(String, f64)], allowed: &[(&str, f64)]) -> Result<BTreeMap<String, f64>> {
    let mut out: BTreeMap<String, f64> = allowed.iter().map(|&(n, v)| (n.to_string(), v)).collect();
    for (name, v) in given {
        match out.get_mut(name) {
            Some(slot) => *slot = *v,
            None => {
                let names: Vec<&str> = allowed.iter().map(|a| a.0).collect();
                return Err(param(format!(
                    "unknown constant `{name}`; this command takes {names:?}"
                )));
            }
        }
    }
    Ok(out)
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Domain(_) | Error::Parameter(_) => 2,
        Error::Capacity(_) => 3,
        Error::LemmaViolation(_) => 1,
    }
}

/// Parse `argv` (program name first), run the command, write the report.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "powered: {e}");
            exit_code(&e)
        }
    }
}

#[derive(Serialize)]
struct FactorReport {
    #[serde(with = "crate::dec")]
    n: u128,
    factors: Vec<(String, u32)>,
    #[serde(with = "crate::dec")]
    kernel: u128,
    #[serde(with = "crate::dec")]
    squarefree_part: u128,
    #[serde(with = "crate::dec")]
    powerful_part: u128,
    is_powerful: bool,
}

#[derive(Serialize)]
struct MemberList {
    interval: Interval,
    predicate: String,
    count: usize,
    #[serde(with = "crate::dec::vec")]
    members: Vec<u128>,
}

#[derive(Serialize)]
struct B2Report {
    interval: Interval,
    k: String,
    #[serde(with = "crate::dec")]
    z: u128,
    #[serde(with = "crate::dec::vec")]
    counterexamples: Vec<u128>,
}

#[derive(Serialize)]
struct ApReport {
    interval: Interval,
    predicate: String,
    length: usize,
    witnesses: Vec<abc_ap::ApWitness>,
}

#[derive(Serialize)]
struct BoundReport {
    form: String,
    #[serde(rename = "N")]
    n: f64,
    constants: BTreeMap<String, f64>,
    value: f64,
}

fn json<T: Serialize>(out: &mut dyn Write, v: &T) -> Result<()> {
    let s = serde_json::to_string(v).map_err(|e| capacity(format!("json output failed: {e}")))?;
    writeln!(out, "{s}").map_err(|e| capacity(format!("write failed: {e}")))
}

fn table(out: &mut dyn Write, header: &[&str], rows: Vec<Vec<String>>) -> Result<()> {
    let io = |e: csv::Error| capacity(format!("csv output failed: {e}"));
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(r).map_err(io)?;
    }
    w.flush()
        .map_err(|e| capacity(format!("csv output failed: {e}")))
}

fn joined<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(";")
}

fn report(out: &mut dyn Write, fmt: Output, r: &CountReport) -> Result<()> {
    match fmt {
        Output::Json => json(out, r),
        Output::Csv => lab::write_csv(out, std::slice::from_ref(r)),
    }
}

fn check_no_constants(cli: &Cli) -> Result<()> {
    constants(&cli.constants, &[]).map(|_| ())
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    let cfg = SieveConfig {
        rng_seed: cli.seed,
        ..SieveConfig::default()
    }
    .with_threads(cli.threads as usize);
    let fmt = cli.output;
    if !matches!(
        cli.command,
        Command::CountPowered { .. } | Command::Bound { .. }
    ) {
        check_no_constants(cli)?;
    }
    match &cli.command {
        Command::Factor { n } => {
            let f = arith::factor_with(
                *n,
                &FactorConfig {
                    rng_seed: cli.seed,
                    ..FactorConfig::default()
                },
            )?;
            let r = FactorReport {
                n: *n,
                factors: f
                    .entries()
                    .iter()
                    .map(|&(p, e)| (p.to_string(), e))
                    .collect(),
                kernel: f.kernel(),
                squarefree_part: f.squarefree_part(),
                powerful_part: f.powerful_part(),
                is_powerful: f.is_powerful(),
            };
            match fmt {
                Output::Json => json(out, &r),
                Output::Csv => {
                    let factors = r
                        .factors
                        .iter()
                        .map(|(p, e)| format!("{p}^{e}"))
                        .collect::<Vec<_>>()
                        .join("*");
                    table(
                        out,
                        &[
                            "n",
                            "factors",
                            "kernel",
                            "squarefree_part",
                            "powerful_part",
                            "is_powerful",
                        ],
                        vec![vec![
                            r.n.to_string(),
                            factors,
                            r.kernel.to_string(),
                            r.squarefree_part.to_string(),
                            r.powerful_part.to_string(),
                            r.is_powerful.to_string(),
                        ]],
                    )
                }
            }
        }
        Command::Powerful { iv, k } => {
            let interval = iv.interval()?;
            let (predicate, members) = match k {
                None => ("powerful".to_string(), sieve::enumerate_powerful(&interval)),
                Some(k) => (
                    format!("k-powered({k})"),
                    sieve::enumerate_k_powered(&interval, *k, &cfg)?,
                ),
            };
            match fmt {
                Output::Json => json(
                    out,
                    &MemberList {
                        interval,
                        predicate,
                        count: members.len(),
                        members,
                    },
                ),
                Output::Csv => table(
                    out,
                    &["n"],
                    members.iter().map(|n| vec![n.to_string()]).collect(),
                ),
            }
        }
        Command::Rough { iv } => report(out, fmt, &lab::count_rough_report(&iv.interval()?, &cfg)?),
        Command::CountT1 { iv, k, delta } => report(
            out,
            fmt,
            &lab::count_theorem1(&iv.interval()?, *k, *delta, &cfg)?,
        ),
        Command::CountT2 { iv, k, w } => report(
            out,
            fmt,
            &lab::count_theorem2(&iv.interval()?, *k, *w, &cfg)?,
        ),
        Command::CountPowered { iv, k } => {
            let c = constants(&cli.constants, &[("C", 1.0), ("c", 1.0)])?;
            let constants = PoweredConstants {
                big_c: c["C"],
                small_c: c["c"],
            };
            report(
                out,
                fmt,
                &lab::count_powered(&iv.interval()?, *k, constants, &cfg)?,
            )
        }
        Command::CountEq1 { iv } => report(out, fmt, &lab::count_smooth_powerful(&iv.interval()?)?),
        Command::CountEq3 { iv } => {
            report(out, fmt, &lab::count_verysmooth(&iv.interval()?, &cfg)?)
        }
        Command::Sdivisor { iv, alpha, w } => report(
            out,
            fmt,
            &lab::count_smooth_divisor(&iv.interval()?, *alpha, *w, &cfg)?,
        ),
        Command::Cases { iv, k, z, list } => {
            let interval = iv.interval()?;
            let z = z.unwrap_or_else(|| lab::default_z(interval.y(), *k));
            let t = lab::case_tally(&interval, *k, z, *list, &cfg)?;
            match fmt {
                Output::Json => json(out, &t),
                Output::Csv => table(
                    out,
                    &["case", "count"],
                    t.counts
                        .iter()
                        .map(|(c, n)| vec![c.clone(), n.to_string()])
                        .collect(),
                ),
            }
        }
        Command::VerifyB2 { iv, k, z } => {
            let interval = iv.interval()?;
            let z = z.unwrap_or_else(|| lab::default_z(interval.y(), *k));
            let bad = lab::verify_b2_claim(&interval, *k, z, &cfg)?;
            match fmt {
                Output::Json => json(
                    out,
                    &B2Report {
                        interval,
                        k: k.to_string(),
                        z,
                        counterexamples: bad,
                    },
                ),
                Output::Csv => table(
                    out,
                    &["n"],
                    bad.iter().map(|n| vec![n.to_string()]).collect(),
                ),
            }
        }
        Command::AbcTriple { n, d } => {
            let t = abc_ap::build_abc_triple(*n, *d)?;
            match fmt {
                Output::Json => json(out, &t),
                Output::Csv => table(
                    out,
                    &[
                        "n", "d", "t", "n_red", "d_red", "D", "e2", "e3", "a", "b", "c", "radical",
                        "quality",
                    ],
                    vec![vec![
                        t.n.to_string(),
                        t.d.to_string(),
                        t.t.to_string(),
                        t.n_red.to_string(),
                        t.d_red.to_string(),
                        t.big_d.to_string(),
                        t.e2.to_string(),
                        t.e3.to_string(),
                        t.a.to_string(),
                        t.b.to_string(),
                        t.c.to_string(),
                        t.radical.to_string(),
                        t.quality.to_string(),
                    ]],
                ),
            }
        }
        Command::AbcScan { max_n } => {
            let s = abc_ap::scan_d_structure(*max_n, cli.threads as usize)?;
            match fmt {
                Output::Json => json(out, &s)?,
                Output::Csv => table(
                    out,
                    &["D", "pairs"],
                    s.d_histogram
                        .iter()
                        .map(|(d, n)| vec![d.to_string(), n.to_string()])
                        .collect(),
                )?,
            }
            match s.violations.first() {
                Some(v) => Err(Error::LemmaViolation(format!(
                    "{} violations, first: {v}",
                    s.violations.len()
                ))),
                None => Ok(()),
            }
        }
        Command::ApSearch { iv, k, length } => {
            let interval = iv.interval()?;
            let pred = k.map_or(ApPredicate::Powerful, ApPredicate::KPowered);
            let witnesses = abc_ap::find_ap_powered(&interval, pred, *length, &cfg)?;
            match fmt {
                Output::Json => json(
                    out,
                    &ApReport {
                        interval,
                        predicate: pred.to_string(),
                        length: *length,
                        witnesses,
                    },
                ),
                Output::Csv => table(
                    out,
                    &["start", "d", "length", "terms"],
                    witnesses
                        .iter()
                        .map(|w| {
                            vec![
                                w.start.to_string(),
                                w.d.to_string(),
                                w.length.to_string(),
                                joined(&w.terms),
                            ]
                        })
                        .collect(),
                ),
            }
        }
        Command::Rk { n, k, method, cap } => {
            let r = match (method, cap) {
                (MethodArg::Greedy, _) => abc_ap::rk_greedy(*n, *k)?,
                (MethodArg::Exact, Some(cap)) => abc_ap::rk_exact_capped(*n, *k, *cap)?,
                (MethodArg::Exact, None) => abc_ap::rk_exact(*n, *k)?,
            };
            debug_assert_eq!(r.method == RkMethod::Exact, *method == MethodArg::Exact);
            match fmt {
                Output::Json => json(out, &r),
                Output::Csv => abc_ap::write_rk_csv(out, &[r]),
            }
        }
        Command::Bound { n, form, k } => {
            let (form, c) = match form {
                FormArg::Gowers => (BoundForm::Gowers { k: *k }, constants(&cli.constants, &[])?),
                FormArg::R3Exp => {
                    let c = constants(&cli.constants, &[("c", 1.0)])?;
                    (BoundForm::R3Exp { c: c["c"] }, c)
                }
                FormArg::Gt4 => {
                    let c = constants(&cli.constants, &[("c", 1.0)])?;
                    (BoundForm::Gt4 { c: c["c"] }, c)
                }
                FormArg::Lss => {
                    let c = constants(&cli.constants, &[("c_k", 1.0)])?;
                    (BoundForm::Lss { c_k: c["c_k"] }, c)
                }
            };
            let mut constants = c;
            if let BoundForm::Gowers { k } = form {
                constants.insert("log2_c_k".into(), abc_ap::gowers_exponent_log2(k));
            }
            let r = BoundReport {
                form: form.name().to_string(),
                n: *n,
                constants,
                value: abc_ap::bound_eval(*n, form)?,
            };
            match fmt {
                Output::Json => json(out, &r),
                Output::Csv => table(
                    out,
                    &["form", "N", "constants", "value"],
                    vec![vec![
                        r.form.clone(),
                        r.n.to_string(),
                        r.constants
                            .iter()
                            .map(|(k, v)| format!("{k}={v}"))
                            .collect::<Vec<_>>()
                            .join(";"),
                        r.value.to_string(),
                    ]],
                ),
            }
        }
    }
}
