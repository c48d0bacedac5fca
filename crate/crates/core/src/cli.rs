//! Command-line front end. Data goes to `out`, diagnostics to `err`.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 usage or validation error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::analytics::{check_bounds, count_by_dim2, hull_type_set};
use crate::arith::{b_n, cyclotomic_cosets, divisor_profiles, is_in_n2, n2_factorization, ord};
use crate::code::CyclicCode;
use crate::error::{require_odd, Error, Result};
use crate::factor::FactorTable;
use crate::poly::PolyZ4;
use crate::verify::{self, Level};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const FACTOR_MAX_N: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Debug, Parser)]
#[command(
    name = "z4hull",
    version,
    about = "Hulls of cyclic codes of odd length over Z4"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Factor x^n - 1 into basic irreducibles over Z4.
    Factor { n: u64 },
    /// Achievable hull types 4^k1 2^k2, grouped by k1.
    Types { lengths: String },
    /// B_n and the average hull 2-dimension E(n) with its bounds.
    Etable {
        lengths: String,
        /// Add a decimal column next to the exact fraction.
        #[arg(long)]
        float: bool,
    },
    /// Number of codes per hull 2-dimension.
    Counts { lengths: String },
    /// Dual and hull of the code <fg, 2f>.
    Hull(HullArgs),
    /// Run the self-check suite.
    Verify {
        #[arg(long, default_value = "all", value_parser = ["codeword", "structure", "tables", "bounds", "all"])]
        level: String,
        /// Largest length swept; defaults depend on the level.
        #[arg(long)]
        max: Option<u64>,
    },
    /// Number-theory helpers.
    Arith {
        #[command(subcommand)]
        op: ArithOp,
    },
}

#[derive(Debug, Args)]
struct HullArgs {
    #[arg(long)]
    n: u64,
    /// Product of distinct factors of x^n - 1 forming f.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    f: String,
    /// Product of distinct factors of x^n - 1 forming g.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    g: String,
}

#[derive(Debug, Subcommand)]
enum ArithOp {
    /// Multiplicative order of 2 modulo j.
    Ord { j: u64 },
    /// Whether l divides 2^i + 1 for some i >= 1.
    InN2 { l: u64 },
    /// Per-divisor profile of x^n - 1.
    Profiles { n: u64 },
    /// B_n.
    Bn { n: u64 },
    /// The N2-factorization of n.
    N2fact { n: u64 },
    /// Cyclotomic cosets of 2 modulo n.
    Cosets { n: u64 },
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) => Failure::Check(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type CmdResult = std::result::Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    let mut buf = String::new();
    let result = dispatch(&cli, &mut buf, err);
    let _ = out.write_all(buf.as_bytes());
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Check(msg)) => {
            let _ = writeln!(err, "check failed: {msg}");
            EXIT_FAIL
        }
    }
}

fn dispatch(cli: &Cli, out: &mut String, err: &mut dyn Write) -> CmdResult {
    let fmt = cli.format;
    match &cli.command {
        Command::Factor { n } => cmd_factor(*n, fmt, out),
        Command::Types { lengths } => {
            let ns = parse_lengths(lengths, err)?;
            cmd_types(&ns, fmt, out)
        }
        Command::Etable { lengths, float } => {
            let ns = parse_lengths(lengths, err)?;
            cmd_etable(&ns, *float, fmt, out)
        }
        Command::Counts { lengths } => {
            let ns = parse_lengths(lengths, err)?;
            cmd_counts(&ns, fmt, out)
        }
        Command::Hull(args) => cmd_hull(args, fmt, out),
        Command::Verify { level, max } => {
            let level: Level = level.parse()?;
            cmd_verify(level, *max, fmt, out)
        }
        Command::Arith { op } => cmd_arith(op, fmt, out),
    }
}

/// `n`, or an inclusive range `a..b` of odd lengths. Even endpoints move
/// inward to the nearest odd value.
fn parse_lengths(spec: &str, err: &mut dyn Write) -> std::result::Result<Vec<u64>, Failure> {
    let bad = || Failure::Usage(Error::Range(spec.to_string()).to_string());
    let Some((a, b)) = spec.split_once("..") else {
        let n: u64 = spec.trim().parse().map_err(|_| bad())?;
        require_odd(n)?;
        return Ok(vec![n]);
    };
    let b = b.strip_prefix('=').unwrap_or(b);
    let (mut a, mut b): (u64, u64) = (
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    );
    if a % 2 == 0 {
        let _ = writeln!(err, "warning: range start {a} is even, using {}", a + 1);
        a += 1;
    }
    if b % 2 == 0 {
        if b == 0 {
            return Err(bad());
        }
        let _ = writeln!(err, "warning: range end {b} is even, using {}", b - 1);
        b -= 1;
    }
    if a > b {
        return Err(bad());
    }
    Ok((a..=b).step_by(2).collect())
}

/// Computes one row per length in parallel, keeping ascending order.
fn per_length<T: Send>(
    ns: &[u64],
    f: impl Fn(u64) -> Result<T> + Sync,
) -> std::result::Result<Vec<T>, Failure> {
    let rows: Vec<Result<T>> = ns.par_iter().map(|&n| f(n)).collect();
    rows.into_iter()
        .collect::<Result<Vec<T>>>()
        .map_err(Failure::from)
}

fn json_line(out: &mut String, v: &Value) {
    out.push_str(&v.to_string());
    out.push('\n');
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>, sep: &str) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

fn cmd_factor(n: u64, fmt: Format, out: &mut String) -> CmdResult {
    require_odd(n)?;
    if n > FACTOR_MAX_N {
        return Err(Error::SizeGuard {
            what: "factor",
            n,
            max: FACTOR_MAX_N,
        }
        .into());
    }
    let t = FactorTable::new(n)?;
    let selfrec: Vec<_> = t.selfrec_ids().into_iter().map(|i| t.factor(i)).collect();
    let pairs: Vec<_> = t
        .pair_ids()
        .into_iter()
        .map(|(i, s)| (t.factor(i), t.factor(s)))
        .collect();
    match fmt {
        Format::Json => {
            let v = json!({
                "n": n,
                "selfrec": selfrec.iter().map(|f| json!({"j": f.j, "poly": f.poly.to_string()})).collect::<Vec<_>>(),
                "pairs": pairs.iter().map(|(f, s)| json!({"j": f.j, "f": f.poly.to_string(), "fstar": s.poly.to_string()})).collect::<Vec<_>>(),
            });
            json_line(out, &v);
        }
        Format::Csv => {
            out.push_str("n,kind,j,poly,reciprocal\n");
            for f in &selfrec {
                let _ = writeln!(out, "{n},selfrec,{},{},{}", f.j, f.poly, f.poly);
            }
            for (f, s) in &pairs {
                let _ = writeln!(out, "{n},pair,{},{},{}", f.j, f.poly, s.poly);
            }
        }
        Format::Plain => {
            let _ = writeln!(
                out,
                "x^{n}-1: {} self-reciprocal factors, {} reciprocal pairs",
                selfrec.len(),
                pairs.len()
            );
            for f in &selfrec {
                let _ = writeln!(out, "  j={:<6} {}", f.j, f.poly);
            }
            for (f, s) in &pairs {
                let _ = writeln!(out, "  j={:<6} {}  |  {}", f.j, f.poly, s.poly);
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_types(ns: &[u64], fmt: Format, out: &mut String) -> CmdResult {
    let rows = per_length(ns, |n| hull_type_set(n).map(|t| (n, t)))?;
    if fmt == Format::Csv {
        out.push_str("n,k1,k2\n");
    }
    for (n, types) in rows {
        match fmt {
            Format::Json => {
                let groups: Vec<Value> = types
                    .iter()
                    .map(|(k1, k2s)| json!({"k1": k1, "k2": k2s}))
                    .collect();
                json_line(out, &json!({"n": n, "types": groups}));
            }
            Format::Csv => {
                for (k1, k2s) in &types {
                    let _ = writeln!(out, "{n},{k1},{}", join(k2s, " "));
                }
            }
            Format::Plain => {
                for (i, (k1, k2s)) in types.iter().enumerate() {
                    let label = if i == 0 { n.to_string() } else { String::new() };
                    let _ = writeln!(out, "{label:>5}  k1={k1:<4} k2: {}", join(k2s, ", "));
                }
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_etable(ns: &[u64], float: bool, fmt: Format, out: &mut String) -> CmdResult {
    let rows = per_length(ns, check_bounds)?;
    if fmt == Format::Csv {
        out.push_str("n,B_n,E_num,E_den,in_N2");
        out.push_str(if float { ",E_float\n" } else { "\n" });
    }
    for r in rows {
        match fmt {
            Format::Json => {
                let mut m = Map::new();
                m.insert("n".into(), json!(r.n));
                m.insert("B_n".into(), json!(r.b_n));
                m.insert("E".into(), json!(r.e.to_string()));
                if float {
                    m.insert("E_float".into(), json!(r.e.to_f64()));
                }
                m.insert("in_N2".into(), json!(r.in_n2));
                m.insert("lower".into(), json!(r.lower.to_string()));
                m.insert("upper".into(), json!(r.upper.to_string()));
                m.insert("bounds".into(), json!("ok"));
                json_line(out, &Value::Object(m));
            }
            Format::Csv => {
                let _ = write!(
                    out,
                    "{},{},{},{},{}",
                    r.n,
                    r.b_n,
                    r.e.numer(),
                    r.e.denom(),
                    r.in_n2
                );
                if float {
                    let _ = write!(out, ",{:.6}", r.e.to_f64());
                }
                out.push('\n');
            }
            Format::Plain => {
                let _ = write!(
                    out,
                    "n={:<6} B_n={:<6} E={:<10} {}",
                    r.n,
                    r.b_n,
                    r.e.to_string(),
                    if r.in_n2 { "in N2" } else { "not in N2" }
                );
                if float {
                    let _ = write!(out, "  ({:.6})", r.e.to_f64());
                }
                out.push('\n');
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_counts(ns: &[u64], fmt: Format, out: &mut String) -> CmdResult {
    let rows = per_length(ns, count_by_dim2)?;
    if fmt == Format::Csv {
        out.push_str("n,dim2,count\n");
    }
    for t in rows {
        match fmt {
            Format::Json => {
                let counts: Map<String, Value> = t
                    .counts
                    .iter()
                    .map(|(l, c)| (l.to_string(), json!(c.to_string())))
                    .collect();
                json_line(
                    out,
                    &json!({
                        "n": t.n,
                        "total": t.total().to_string(),
                        "mean": t.mean().to_string(),
                        "counts": counts,
                    }),
                );
            }
            Format::Csv => {
                for (l, c) in &t.counts {
                    let _ = writeln!(out, "{},{l},{c}", t.n);
                }
            }
            Format::Plain => {
                let _ = writeln!(out, "n={} total={} mean={}", t.n, t.total(), t.mean());
                for (l, c) in &t.counts {
                    let _ = writeln!(out, "  {l:>5}  {c}");
                }
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_hull(args: &HullArgs, fmt: Format, out: &mut String) -> CmdResult {
    require_odd(args.n)?;
    let f: PolyZ4 = args.f.parse()?;
    let g: PolyZ4 = args.g.parse()?;
    let t = Arc::new(FactorTable::new(args.n)?);
    let code = CyclicCode::from_fg(t.clone(), &f, &g)?;
    let dual = code.dual();
    let hull = code.hull();
    let ty = hull.type_of();
    let gens = |c: &CyclicCode| c.generators().factored(&t);
    match fmt {
        Format::Json => {
            let v = json!({
                "n": args.n,
                "code": gens(&code),
                "dual": gens(&dual),
                "hull": gens(&hull),
                "type": {"k1": ty.k1, "k2": ty.k2},
                "dim2": ty.dim2(),
            });
            json_line(out, &v);
        }
        Format::Csv => {
            out.push_str("n,code,dual,hull,k1,k2,dim2\n");
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                args.n,
                join(gens(&code), " "),
                join(gens(&dual), " "),
                join(gens(&hull), " "),
                ty.k1,
                ty.k2,
                ty.dim2()
            );
        }
        Format::Plain => {
            let _ = writeln!(out, "code: {}", code.generators().render(&t));
            let _ = writeln!(out, "dual: {}", dual.generators().render(&t));
            let _ = writeln!(out, "hull: {}", hull.generators().render(&t));
            let _ = writeln!(out, "type: {ty}");
            let _ = writeln!(out, "dim2: {}", ty.dim2());
        }
    }
    Ok(EXIT_OK)
}

fn cmd_verify(level: Level, max: Option<u64>, fmt: Format, out: &mut String) -> CmdResult {
    let report = verify::run(level, max)?;
    match fmt {
        Format::Json => {
            for c in &report.checks {
                json_line(
                    out,
                    &json!({
                        "level": c.level.to_string(),
                        "check": c.name,
                        "passed": c.passed,
                        "detail": c.detail,
                    }),
                );
            }
        }
        Format::Csv => {
            out.push_str("level,check,passed\n");
            for c in &report.checks {
                let _ = writeln!(out, "{},{},{}", c.level, c.name, c.passed);
            }
        }
        Format::Plain => {
            for c in &report.checks {
                let tag = if c.passed { "PASS" } else { "FAIL" };
                let _ = writeln!(out, "{tag} [{}] {}: {}", c.level, c.name, c.detail);
            }
        }
    }
    if report.passed() {
        Ok(EXIT_OK)
    } else {
        let names = join(report.failures().map(|c| c.name.clone()), ", ");
        Err(Failure::Check(names))
    }
}

fn cmd_arith(op: &ArithOp, fmt: Format, out: &mut String) -> CmdResult {
    let v = match *op {
        ArithOp::Ord { j } => json!({"j": j, "ord": ord(j)?}),
        ArithOp::InN2 { l } => json!({"l": l, "in_N2": is_in_n2(l)?}),
        ArithOp::Profiles { n } => {
            let p = divisor_profiles(n)?;
            json!({
                "n": n,
                "s": p.s,
                "t": p.t,
                "codes_log3": p.code_count_exponent(),
                "divisors": p.profiles.iter().map(|d| json!({
                    "j": d.j, "in_N2": d.in_n2, "ord": d.ord2, "phi": d.phi,
                    "gamma": d.gamma, "beta": d.beta,
                })).collect::<Vec<_>>(),
            })
        }
        ArithOp::Bn { n } => json!({"n": n, "B_n": b_n(n)?}),
        ArithOp::N2fact { n } => {
            let f = n2_factorization(n)?;
            let d: Map<String, Value> = f
                .d_alpha
                .iter()
                .map(|(a, d)| (a.to_string(), json!(d)))
                .collect();
            json!({"n": n, "d_prime": f.d_prime, "d_alpha": d})
        }
        ArithOp::Cosets { n } => json!({"n": n, "cosets": cyclotomic_cosets(n)?}),
    };
    match fmt {
        Format::Json => json_line(out, &v),
        Format::Csv | Format::Plain => render_flat(&v, fmt, out),
    }
    Ok(EXIT_OK)
}

/// Key/value rendering of a flat-ish JSON object for the non-JSON formats.
fn render_flat(v: &Value, fmt: Format, out: &mut String) {
    let Value::Object(m) = v else { return };
    let cell = |x: &Value| match x {
        Value::String(s) => s.clone(),
        other => other.to_string().replace(',', ";"),
    };
    match fmt {
        Format::Csv => {
            let _ = writeln!(out, "{}", join(m.keys(), ","));
            let _ = writeln!(out, "{}", join(m.values().map(cell), ","));
        }
        _ => {
            for (k, x) in m {
                let _ = writeln!(out, "{k}: {}", cell(x));
            }
        }
    }
}
