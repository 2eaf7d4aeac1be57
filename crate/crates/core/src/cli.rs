//! Command-line front end.
//!
//! Exit codes: 0 on success and all-pass checks, 1 when an identity or
//! cross-check fails (a JSON counterexample goes to stdout), 2 on usage or
//! input errors (message on stderr).

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::catalog::{self, Report, Status};
use crate::error::Error;
use crate::expr;
use crate::flow;
use crate::fps::{Poly, Series};
use crate::operators::{DeltaOp, ShiftOp};
use crate::rat::{parse_rat, to_decimal, Rat};
use crate::sigma::{self, forward_difference, SigmaOp};
use crate::umbral::{self, Route, Triangle};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    Pretty,
}

#[derive(Debug, Parser)]
#[command(name = "umbra", version, about = "Exact umbral calculus on formal power series")]
struct Cli {
    #[command(flatten)]
    config: CliConfig,
    #[command(subcommand)]
    command: Command,
}

/// Options shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct CliConfig {
    /// Truncation order
    #[arg(long, global = true, env = "UMBRA_ORDER", default_value_t = 16,
          value_parser = clap::value_parser!(u16).range(0..=expr::MAX_ORDER as i64))]
    pub order: u16,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Render numbers as decimals with this many digits (lossy, marked `~`)
    #[arg(long, global = true, num_args = 0..=1, default_missing_value = "12", value_name = "DIGITS")]
    pub decimal: Option<usize>,
    /// Seed reserved for randomized commands; every current command is deterministic
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a series expression
    Series { expr: String },
    /// Compositional inverse of an order-1 series
    Inverse { expr: String },
    /// Basic sequence of a delta operator, by one route or all five
    Basic {
        #[arg(long)]
        delta: String,
        #[arg(long, default_value = "all", value_parser = ["transfer", "steffensen", "recurrence", "genfunc", "km", "all"])]
        route: String,
    },
    /// Coefficient triangle of a catalog family
    Triangle(FamilyArgs),
    /// Sheffer triangle of an Appell operator and a delta operator
    Sheffer {
        #[arg(long)]
        appell: String,
        #[arg(long)]
        delta: String,
    },
    /// Fractional iterate f^s, or its k-th power over k!
    Iterate {
        #[arg(long)]
        series: String,
        #[arg(long, value_parser = rat_arg)]
        s: Rat,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Iterative logarithm of a unitary series
    Itlog {
        #[arg(long)]
        series: String,
    },
    /// Triangle of the fractional umbral power φ^s
    Phipow {
        #[arg(long)]
        delta: String,
        #[arg(long, value_parser = rat_arg)]
        s: Rat,
    },
    /// Indefinite sum of a polynomial anchored at `from`, optionally evaluated
    Sum {
        #[arg(long)]
        poly: String,
        #[arg(long, value_parser = rat_arg)]
        from: Rat,
        #[arg(long, value_parser = rat_arg)]
        at: Option<Rat>,
    },
    /// Σ_{k=0}^{x−1} k^n as a polynomial in x
    Faulhaber {
        #[arg(long)]
        n: usize,
    },
    /// Run the identity checks of one family or of every family
    Check {
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        family: Option<String>,
        #[arg(long, value_delimiter = ',', num_args = 1.., value_parser = rat_param, requires = "family")]
        params: Vec<Rat>,
        #[arg(long)]
        all: bool,
    },
}

#[derive(Debug, Args)]
struct FamilyArgs {
    #[arg(long)]
    family: String,
    /// Family parameters, e.g. `--params 3` or `--params a=3`
    #[arg(long, value_delimiter = ',', num_args = 1.., value_parser = rat_param)]
    params: Vec<Rat>,
}

fn rat_arg(s: &str) -> Result<Rat, String> {
    parse_rat(s.trim()).map_err(|e| e.to_string())
}

fn rat_param(s: &str) -> Result<Rat, String> {
    rat_arg(s.split_once('=').map_or(s, |(_, v)| v))
}

enum Failure {
    Input(String),
    Identity(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::IdentityFailure(m) => Failure::Identity(json!({"kind": "failure", "message": m})),
            Error::AtLocation { source, .. } if matches!(*source, Error::IdentityFailure(_)) => Failure::from(*source),
            e => Failure::Input(format!("error: {e}")),
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

enum Output {
    Series(Series),
    Poly(Poly),
    Triangle(Triangle),
    Scalar(Rat),
    Report(Report),
}

fn with_caret(label: &str, text: &str, e: Error) -> Failure {
    let offset = match &e {
        Error::Syntax { offset, .. } | Error::AtLocation { offset, .. } => Some(*offset),
        _ => None,
    };
    let Failure::Input(mut m) = Failure::from(e) else { unreachable!("expression errors are input errors") };
    if let Some(o) = offset {
        let pad = label.len() + 4 + text[..o.min(text.len())].chars().count();
        let _ = write!(m, "\n  {label}: {text}\n{:pad$}^", "");
    }
    Failure::Input(m)
}

fn series_arg(label: &str, text: &str, order: usize) -> Outcome<Series> {
    expr::eval_str(text, order).map_err(|e| with_caret(label, text, e))
}

fn poly_arg(label: &str, text: &str) -> Outcome<Poly> {
    expr::eval_poly_str(text).map_err(|e| with_caret(label, text, e))
}

fn delta_arg(label: &str, text: &str, order: usize) -> Outcome<DeltaOp> {
    Ok(DeltaOp::from_indicator(series_arg(label, text, order)?)?)
}

fn first_mismatch(a: &Triangle, b: &Triangle) -> Option<(usize, usize)> {
    (0..=a.n()).flat_map(|n| (0..=n).map(move |k| (n, k))).find(|&(n, k)| a.get(n, k) != b.get(n, k))
}

fn basic_all(q: &DeltaOp, n: usize) -> Outcome<Triangle> {
    let tris = Route::ALL.iter().map(|&r| Ok((r, umbral::basic(q, n, r)?.into_tri()))).collect::<Outcome<Vec<_>>>()?;
    let (r0, t0) = &tris[0];
    for (r, t) in &tris[1..] {
        if let Some((i, k)) = first_mismatch(t0, t) {
            return Err(Failure::Identity(json!({
                "kind": "failure",
                "message": "basic-sequence routes disagree",
                "counterexample": {
                    "routes": [r0.name(), r.name()],
                    "n": i, "k": k,
                    "values": [t0.get(i, k).to_string(), t.get(i, k).to_string()],
                }
            })));
        }
    }
    Ok(tris.into_iter().next().expect("five routes").1)
}

fn execute(cmd: Command, cfg: &CliConfig) -> Outcome<Output> {
    let n = cfg.order as usize;
    Ok(match cmd {
        Command::Series { expr } => Output::Series(series_arg("expr", &expr, n)?),
        Command::Inverse { expr } => Output::Series(series_arg("expr", &expr, n)?.comp_inv()?),
        Command::Basic { delta, route } => {
            let q = delta_arg("--delta", &delta, n + 1)?;
            match Route::parse(&route) {
                Some(r) => Output::Triangle(umbral::basic(&q, n, r)?.into_tri()),
                None => Output::Triangle(basic_all(&q, n)?),
            }
        }
        Command::Triangle(f) => Output::Triangle(catalog::family(&f.family, &f.params)?.triangle(n)?),
        Command::Sheffer { appell, delta } => {
            let a = ShiftOp::new(series_arg("--appell", &appell, n)?);
            let q = delta_arg("--delta", &delta, n + 1)?;
            let phi = umbral::basic(&q, n, Route::Genfunc)?;
            Output::Triangle(umbral::sheffer(&a, &phi)?.tri().clone())
        }
        Command::Iterate { series, s, k } => {
            let f = series_arg("--series", &series, n)?;
            Output::Series(flow::frac_iterate(&f, &s, k, n)?)
        }
        Command::Itlog { series } => Output::Series(flow::itlog(&series_arg("--series", &series, n)?)?.series),
        Command::Phipow { delta, s } => {
            let q = delta_arg("--delta", &delta, n.max(1))?;
            Output::Triangle(flow::phi_pow(&q, &s, n)?)
        }
        Command::Sum { poly, from, at } => {
            let p = poly_arg("--poly", &poly)?;
            match at {
                Some(x) => Output::Scalar(sigma::frac_sum_eval(&p, &from, &x)?),
                None => {
                    let d = p.deg().unwrap_or(0);
                    let s = SigmaOp::new(&forward_difference(d + 1), from, d)?;
                    Output::Poly(s.apply(&p)?)
                }
            }
        }
        Command::Faulhaber { n: m } => Output::Poly(sigma::faulhaber(m)?),
        Command::Check { family, params, all } => {
            let report = if all {
                catalog::check_all(n)
            } else {
                let name = family.expect("clap enforces --family or --all");
                catalog::identity_check(&name, &params, n)?
            };
            Output::Report(report)
        }
    })
}

struct Render {
    digits: Option<usize>,
}

impl Render {
    fn num(&self, r: &Rat) -> String {
        match self.digits {
            Some(d) => to_decimal(r, d),
            None => r.to_string(),
        }
    }

    fn nums(&self, rs: &[Rat]) -> Vec<String> {
        rs.iter().map(|r| self.num(r)).collect()
    }

    fn mark(&self, mut v: Value) -> Value {
        if let (Some(d), Value::Object(m)) = (self.digits, &mut v) {
            m.insert("lossy".into(), json!({"decimal_digits": d}));
        }
        v
    }

    fn json(&self, out: &Output) -> Value {
        match out {
            Output::Series(s) => {
                self.mark(json!({"kind": "series", "trunc": s.trunc(), "coeffs": self.nums(s.coeffs())}))
            }
            Output::Poly(p) => self.mark(json!({"kind": "poly", "coeffs": self.nums(p.coeffs())})),
            Output::Triangle(t) => self.mark(json!({
                "kind": "triangle",
                "n": t.n(),
                "rows": t.rows().iter().map(|r| self.nums(r)).collect::<Vec<_>>(),
            })),
            Output::Scalar(r) => json!(self.num(r)),
            Output::Report(r) => serde_json::to_value(r).expect("report serializes"),
        }
    }

    fn tsv(&self, out: &Output) -> String {
        let line = |rs: &[Rat]| self.nums(rs).join("\t") + "\n";
        match out {
            Output::Series(s) => line(s.coeffs()),
            Output::Poly(p) => line(p.coeffs()),
            Output::Triangle(t) => t.rows().iter().map(|r| line(r)).collect(),
            Output::Scalar(r) => format!("{}\n", self.num(r)),
            Output::Report(r) => r
                .entries
                .iter()
                .map(|e| {
                    let mut l = format!("{}\t{}\t{}\t{}", e.family, e.params.join(","), e.identity, status(e.status));
                    if let Some(c) = &e.counterexample {
                        let _ = write!(l, "\t{c}");
                    }
                    l + "\n"
                })
                .collect(),
        }
    }

    fn term(&self, c: &Rat, var: &str, k: usize, first: bool) -> String {
        let (sign, a) = if *c < Rat::zero() { ("-", -c) } else { ("+", c.clone()) };
        let mag = match k {
            0 => self.num(&a),
            _ if a.is_one() => String::new(),
            _ => self.num(&a) + " ",
        };
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        match (first, sign) {
            (true, "-") => format!("-{mag}{mono}"),
            (true, _) => format!("{mag}{mono}"),
            _ => format!(" {sign} {mag}{mono}"),
        }
    }

    fn pretty_sum(&self, cs: &[Rat], var: &str, descending: bool) -> String {
        let mut idx: Vec<usize> = (0..cs.len()).filter(|&k| !cs[k].is_zero()).collect();
        if descending {
            idx.reverse();
        }
        let mut s = String::new();
        for (i, &k) in idx.iter().enumerate() {
            s += &self.term(&cs[k], var, k, i == 0);
        }
        s
    }

    fn pretty(&self, out: &Output) -> String {
        let mut s = match out {
            Output::Series(f) => {
                let body = self.pretty_sum(f.coeffs(), "x", false);
                let tail = format!("O(x^{})", f.trunc() + 1);
                if body.is_empty() {
                    tail + "\n"
                } else {
                    format!("{body} + {tail}\n")
                }
            }
            Output::Poly(p) if p.is_zero() => "0\n".into(),
            Output::Poly(p) => self.pretty_sum(p.coeffs(), "x", true) + "\n",
            Output::Triangle(t) => {
                let cells: Vec<Vec<String>> = t.rows().iter().map(|r| self.nums(r)).collect();
                let width = cells.iter().flatten().map(|c| c.chars().count()).max().unwrap_or(1);
                cells
                    .iter()
                    .map(|r| r.iter().map(|c| format!("{c:>width$}")).collect::<Vec<_>>().join("  ") + "\n")
                    .collect()
            }
            Output::Scalar(r) => format!("{}\n", self.num(r)),
            Output::Report(r) => {
                let mut s = String::new();
                for e in &r.entries {
                    let fam = if e.params.is_empty() {
                        e.family.clone()
                    } else {
                        format!("{} {}", e.family, e.params.join(" "))
                    };
                    let _ = writeln!(s, "{:4}  {fam:28}  {}", status(e.status).to_uppercase(), e.identity);
                    if let Some(c) = &e.counterexample {
                        let _ = writeln!(s, "      counterexample: {c}");
                    }
                }
                let fails = r.failures().count();
                let _ = writeln!(s, "{} identities, {} failed", r.entries.len(), fails);
                s
            }
        };
        if let (Some(d), false) = (self.digits, matches!(out, Output::Report(_))) {
            s = format!("# decimal, {d} digits, lossy\n{s}");
        }
        s
    }
}

fn status(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
    }
}

/// Runs the CLI on `argv` (program name first), returning the exit code.
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
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let render = Render { digits: cli.config.decimal };
    let format = cli.config.format;
    match execute(cli.command, &cli.config) {
        Ok(o) => {
            let text = match format {
                Format::Json => serde_json::to_string(&render.json(&o)).expect("json") + "\n",
                Format::Tsv => render.tsv(&o),
                Format::Pretty => render.pretty(&o),
            };
            let _ = out.write_all(text.as_bytes());
            match o {
                Output::Report(r) if !r.all_pass() => 1,
                _ => 0,
            }
        }
        Err(Failure::Input(m)) => {
            let _ = writeln!(err, "{m}");
            2
        }
        Err(Failure::Identity(v)) => {
            let _ = writeln!(out, "{v}");
            1
        }
    }
}
