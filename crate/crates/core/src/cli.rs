//! Command-line frontend.
//!
//! Exit codes: 0 on success, 1 when a computed result contradicts the
//! predicted one (or the self-test fails), 2 on usage or input errors.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::boolfn::TruthTable;
use crate::error::Error;
use crate::family::{
    b_m, closed_form, construct_f, coset_weight_distribution, predicted_values_at_zero,
    predicted_weight, s_closed, s_sum, weight_form, ResidueClassPair,
};
use crate::maiorana::split_verdicts;
use crate::quadratic::QuadraticForm;
use crate::report::Report;
use crate::selftest;
use crate::walsh::{self, DualityClass};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Largest `m` for which `table` cross-checks closed forms against
/// constructed truth tables.
const TABLE_CHECK_VARS: u32 = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "bentfam",
    version,
    about = "Quadratic bent functions defined by input weight modulo 4"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Source {
    /// Number of variables.
    #[arg(long)]
    m: Option<u32>,
    /// Residue pair `i1,i2`.
    #[arg(long)]
    pair: Option<ResidueClassPair>,
    /// Truth-table file to read instead of constructing a family member.
    #[arg(long = "in", conflicts_with_all = ["m", "pair"])]
    input: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write the truth table of f_{i1,i2}.
    Construct {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        pair: ResidueClassPair,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Full analysis report.
    Analyze {
        #[command(flatten)]
        src: Source,
    },
    /// Walsh-Hadamard spectrum as JSON.
    Spectrum {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Matrix criterion next to the spectral duality class.
    Classify {
        #[command(flatten)]
        src: Source,
    },
    /// Maiorana-McFarland check over every coordinate split.
    MmCheck {
        #[command(flatten)]
        src: Source,
    },
    /// Weight distribution of the Hadamard-code coset of v_{i1,i2}.
    CosetWeights {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        pair: ResidueClassPair,
    },
    /// Binomial-sum, weight and value-at-zero tables over a range of m.
    Table {
        #[arg(long, default_value_t = 2)]
        from: u32,
        #[arg(long, default_value_t = 16)]
        to: u32,
    },
    /// Consistency suite for small m.
    Selftest {
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        max_m: u32,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Violation,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = std::result::Result<(), Failure>;

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(()) => EXIT_OK,
        Err(Failure::Violation) => EXIT_VIOLATION,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn load(src: &Source) -> std::result::Result<TruthTable, Failure> {
    if let Some(path) = &src.input {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        return Ok(text.parse()?);
    }
    match (src.m, src.pair) {
        (Some(m), Some(p)) => Ok(construct_f(p, m)?),
        _ => Err(Failure::Usage(
            "either --in FILE or both --m and --pair are required".into(),
        )),
    }
}

fn emit(out: &mut dyn Write, path: Option<&PathBuf>, text: &str) -> CmdResult {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json value serializes") + "\n"
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> CmdResult {
    let fmt = cli.format;
    match cli.command {
        Command::Construct { m, pair, out: path } => {
            let t = construct_f(pair, m)?;
            emit(out, path.as_ref(), &t.to_file_string())
        }
        Command::Analyze { src } => {
            let report = Report::analyze(&load(&src)?);
            match fmt {
                Format::Json => writeln!(out, "{}", report.to_json())?,
                Format::Text => write!(out, "{}", report.to_text())?,
            }
            if report.is_consistent() {
                Ok(())
            } else {
                Err(Failure::Violation)
            }
        }
        Command::Spectrum { src, out: path } => {
            let s = walsh::wht(&load(&src)?);
            let text = match fmt {
                Format::Json => s.to_json() + "\n",
                Format::Text => s
                    .values()
                    .iter()
                    .enumerate()
                    .map(|(a, v)| format!("{a}\t{v}\n"))
                    .collect(),
            };
            emit(out, path.as_ref(), &text)
        }
        Command::Classify { src } => classify(&load(&src)?, fmt, out),
        Command::MmCheck { src } => mm_check(&load(&src)?, fmt, out),
        Command::CosetWeights { m, pair } => {
            let d = coset_weight_distribution(pair, m)?;
            match fmt {
                Format::Json => {
                    let counts: serde_json::Map<String, serde_json::Value> = d
                        .counts()
                        .iter()
                        .map(|(w, c)| (w.to_string(), json!(c)))
                        .collect();
                    let v = json!({
                        "version": 1,
                        "m": m,
                        "pair": pair.to_string(),
                        "counts": counts,
                        "support": d.support(),
                    });
                    write!(out, "{}", pretty(&v))?;
                }
                Format::Text => {
                    writeln!(out, "coset H_{m} + v_{{{pair}}} ({} codewords)", d.total())?;
                    for (w, c) in d.counts() {
                        writeln!(out, "{w:>8}: {c}")?;
                    }
                    let support: Vec<String> = d.support().iter().map(u64::to_string).collect();
                    writeln!(out, "support: {{{}}}", support.join(", "))?;
                }
            }
            Ok(())
        }
        Command::Table { from, to } => table(from, to, fmt, out),
        Command::Selftest { seed, max_m } => {
            let results = selftest::run(max_m, seed);
            match fmt {
                Format::Json => write!(out, "{}", pretty(&json!(results)))?,
                Format::Text => {
                    for r in &results {
                        let tag = if r.passed { "PASS" } else { "FAIL" };
                        writeln!(out, "[{tag}] {}: {}", r.name, r.detail)?;
                    }
                }
            }
            if results.iter().all(|r| r.passed) {
                Ok(())
            } else {
                Err(Failure::Violation)
            }
        }
    }
}

fn classify(t: &TruthTable, fmt: Format, out: &mut dyn Write) -> CmdResult {
    let class = walsh::duality_class(t);
    let form = QuadraticForm::from_truth_table(t);
    let verdict = form.as_ref().ok().map(QuadraticForm::hou_verdict);
    let consistent = match (verdict, class) {
        (Some(v), c) if c != DualityClass::NotBent => {
            v.holds() == matches!(c, DualityClass::SelfDual | DualityClass::AntiSelfDual)
        }
        _ => true,
    };
    match fmt {
        Format::Json => {
            let v = json!({
                "version": 1,
                "m": t.vars(),
                "quadratic": verdict.is_some(),
                "involution": verdict.map(|v| v.involution),
                "alternating": verdict.map(|v| v.alternating),
                "criterion": verdict.map(|v| v.holds()),
                "duality": class,
                "consistent": consistent,
            });
            write!(out, "{}", pretty(&v))?;
        }
        Format::Text => {
            match (&form, verdict) {
                (_, Some(v)) => {
                    writeln!(out, "(Q+Q^T)^2 = I:                    {}", v.involution)?;
                    writeln!(out, "(Q+Q^T)Q(Q+Q^T)+Q^T alternating:  {}", v.alternating)?;
                    let verdict = if v.holds() {
                        "self-dual or anti-self-dual"
                    } else {
                        "neither self-dual nor anti-self-dual"
                    };
                    writeln!(out, "criterion:                        {verdict}")?;
                }
                (Err(e), None) => {
                    writeln!(out, "criterion:                        n/a ({e})")?;
                }
                (Ok(_), None) => unreachable!("a parsed form always has a verdict"),
            }
            writeln!(out, "spectral class:                   {class}")?;
        }
    }
    if consistent {
        Ok(())
    } else {
        Err(Failure::Violation)
    }
}

fn mm_check(t: &TruthTable, fmt: Format, out: &mut dyn Write) -> CmdResult {
    let verdicts = split_verdicts(t)?;
    match fmt {
        Format::Json => {
            let rows: Vec<serde_json::Value> = verdicts
                .iter()
                .map(|(v, w)| {
                    json!({
                        "xset": v.xset,
                        "yset": v.yset,
                        "affine_restrictions": v.affine_restrictions,
                        "maiorana_mcfarland": v.maiorana_mcfarland,
                        "phi": w.as_ref().map(|w| w.phi.clone()),
                        "g": w.as_ref().map(|w| w.g.to_hex()),
                    })
                })
                .collect();
            let any = verdicts.iter().any(|(v, _)| v.maiorana_mcfarland);
            let v =
                json!({ "version": 1, "m": t.vars(), "splits": rows, "maiorana_mcfarland": any });
            write!(out, "{}", pretty(&v))?;
        }
        Format::Text => {
            for (v, w) in &verdicts {
                let show = |s: &[u32]| s.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
                writeln!(
                    out,
                    "{{{}}}/{{{}}}: affine restrictions={} MM={}",
                    show(&v.xset),
                    show(&v.yset),
                    yes_no(v.affine_restrictions),
                    yes_no(v.maiorana_mcfarland)
                )?;
                if let Some(w) = w {
                    let phi: Vec<String> = w.phi.iter().map(u32::to_string).collect();
                    writeln!(out, "  phi = [{}]", phi.join(", "))?;
                    writeln!(out, "  g   = {}", w.g.to_hex())?;
                }
            }
            let n = verdicts
                .iter()
                .filter(|(v, _)| v.maiorana_mcfarland)
                .count();
            writeln!(
                out,
                "{n} of {} splits are Maiorana-McFarland",
                verdicts.len()
            )?;
        }
    }
    Ok(())
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

const TABLE_PAIRS: [(u8, u8); 4] = [(0, 1), (2, 3), (0, 3), (1, 2)];

fn table(from: u32, to: u32, fmt: Format, out: &mut dyn Write) -> CmdResult {
    if from < 2 || from > to || to > crate::family::MAX_SUM_VARS {
        return Err(Failure::Usage(format!(
            "need 2 <= from <= to <= {}",
            crate::family::MAX_SUM_VARS
        )));
    }
    let pairs: Vec<ResidueClassPair> = TABLE_PAIRS
        .iter()
        .map(|&(a, b)| ResidueClassPair::new(a, b).expect("valid pair"))
        .collect();
    let mut ok = true;

    // S(j)_m per m, checked against the binomial sum.
    let mut sums = Vec::new();
    for m in from..=to {
        let closed: Vec<u128> = (0..4).map(|j| s_closed(j, m)).collect::<Result<_, _>>()?;
        let direct: Vec<u128> = (0..4).map(|j| s_sum(j, m)).collect::<Result<_, _>>()?;
        let eq = closed == direct;
        ok &= eq;
        sums.push((m, closed, eq));
    }

    // weights of the odd-difference functions for even m >= 4
    let mut weights = Vec::new();
    for m in (from.max(4)..=to).filter(|m| m % 2 == 0) {
        let mut row = Vec::new();
        for &p in &pairs {
            let w = predicted_weight(p, m)?;
            let checked = if m <= TABLE_CHECK_VARS {
                let actual = u128::from(construct_f(p, m)?.weight());
                ok &= actual == w;
                Some(actual == w)
            } else {
                None
            };
            row.push((w, checked));
        }
        weights.push((m, row));
    }

    // f(0) and dual(0), predicted from the weight and confirmed from the spectrum
    let mut zeros = Vec::new();
    for m in (from.max(4)..=to).filter(|m| m % 8 == 2 || m % 8 == 6) {
        let mut row = Vec::new();
        for &p in &pairs {
            let (f0, d0) = predicted_values_at_zero(p, m)?;
            if m <= TABLE_CHECK_VARS {
                let f = construct_f(p, m)?;
                let dual = walsh::dual(&f)?;
                ok &= f.get(0) == f0 && dual.get(0) == d0;
            }
            row.push((f0, d0));
        }
        zeros.push((m, row));
    }

    match fmt {
        Format::Json => {
            let forms: Vec<Vec<String>> = (0..4)
                .map(|j| {
                    (0..8)
                        .map(|r| closed_form(j, 8 + r).map(|c| c.to_string()))
                        .collect::<Result<_, _>>()
                })
                .collect::<Result<_, _>>()?;
            let v = json!({
                "version": 1,
                "closed_forms": forms,
                "sums": sums.iter().map(|(m, s, eq)| json!({
                    "m": m,
                    "B": b_m(*m).to_string(),
                    "S": s.iter().map(u128::to_string).collect::<Vec<_>>(),
                    "matches_binomial_sum": eq,
                })).collect::<Vec<_>>(),
                "weights": weights.iter().map(|(m, row)| json!({
                    "m": m,
                    "pairs": pairs.iter().zip(row).map(|(p, (w, c))| json!({
                        "pair": p.to_string(),
                        "weight": w.to_string(),
                        "form": weight_form(*p, *m).map(|f| f.to_string()).unwrap_or_default(),
                        "matches_truth_table": c,
                    })).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
                "values_at_zero": zeros.iter().map(|(m, row)| json!({
                    "m": m,
                    "pairs": pairs.iter().zip(row).map(|(p, (f0, d0))| json!({
                        "pair": p.to_string(),
                        "f0": u8::from(*f0),
                        "dual0": u8::from(*d0),
                    })).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
                "consistent": ok,
            });
            write!(out, "{}", pretty(&v))?;
        }
        Format::Text => {
            writeln!(out, "S(j)_m closed forms, B = 2^(floor(m/2)-1)")?;
            write!(out, "{:<6}", "")?;
            for r in 0..8 {
                write!(out, "{:>10}", format!("m={r}(8)"))?;
            }
            writeln!(out)?;
            for j in 0..4 {
                write!(out, "{:<6}", format!("S({j})"))?;
                for r in 0..8 {
                    write!(out, "{:>10}", closed_form(j, 8 + r)?.to_string())?;
                }
                writeln!(out)?;
            }
            writeln!(out)?;
            writeln!(
                out,
                "{:>4} {:>8} {:>12} {:>12} {:>12} {:>12}  sum-check",
                "m", "B", "S(0)", "S(1)", "S(2)", "S(3)"
            )?;
            for (m, s, eq) in &sums {
                writeln!(
                    out,
                    "{m:>4} {:>8} {:>12} {:>12} {:>12} {:>12}  {}",
                    b_m(*m),
                    s[0],
                    s[1],
                    s[2],
                    s[3],
                    if *eq { "ok" } else { "MISMATCH" }
                )?;
            }

            writeln!(out)?;
            writeln!(out, "wt(f_{{i1,i2}}) closed forms")?;
            writeln!(out, "{:<8}{:>10}{:>10}", "pair", "m=2(8)", "m=6(8)")?;
            for &p in &pairs {
                writeln!(
                    out,
                    "{:<8}{:>10}{:>10}",
                    format!("({p})"),
                    weight_form(p, 10)?.to_string(),
                    weight_form(p, 14)?.to_string()
                )?;
            }
            if !weights.is_empty() {
                writeln!(out)?;
                write!(out, "{:>4}", "m")?;
                for p in &pairs {
                    write!(out, "{:>14}", format!("({p})"))?;
                }
                writeln!(out)?;
                for (m, row) in &weights {
                    write!(out, "{m:>4}")?;
                    for (w, c) in row {
                        let mark = match c {
                            Some(true) | None => "",
                            Some(false) => "!",
                        };
                        write!(out, "{:>14}", format!("{w}{mark}"))?;
                    }
                    writeln!(out)?;
                }
            }

            writeln!(out)?;
            writeln!(out, "dual(0) and f(0)")?;
            writeln!(
                out,
                "{:<8}{:>10}{:>10}   {:>10}{:>10}",
                "pair", "dual m=2", "dual m=6", "f m=2", "f m=6"
            )?;
            for &p in &pairs {
                let (f2, d2) = predicted_values_at_zero(p, 10)?;
                let (f6, d6) = predicted_values_at_zero(p, 6)?;
                writeln!(
                    out,
                    "{:<8}{:>10}{:>10}   {:>10}{:>10}",
                    format!("({p})"),
                    u8::from(d2),
                    u8::from(d6),
                    u8::from(f2),
                    u8::from(f6)
                )?;
            }
            writeln!(out)?;
            writeln!(out, "consistent: {ok}")?;
        }
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Violation)
    }
}
