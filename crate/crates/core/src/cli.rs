//! Command-line front end. All rationals are printed as `num/den`.

use std::ffi::OsString;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cp::{
    c3_membership_bounded, c3_witness, cp_enumerate, cp_membership, cp_value, cp_witness,
    DEFAULT_FACTOR_BOUND,
};
use crate::cyclo::CycInt;
use crate::error::{Error, Result};
use crate::height::{
    cassels_height, find_nonzero_trace_shift, height, mean_trace, min_roots_upper,
};
use crate::limits::{multi_term_limit, two_term_sequence, Side};
use crate::props::run_suite;
use crate::quadforms::{
    a3a1_form, a4_form, check_target, four_squares, represent_diag, universal_poly1,
    universal_poly2, FormId, QuadSolution,
};
use crate::rat::{fmt_rat, parse_rat};
use crate::thue::{height_fragment, label, synthetic_thue, ThueLabel, ThueOracle};

#[derive(Debug, Parser)]
#[command(
    name = "cassels",
    version,
    about = "Exact Cassels heights of cyclotomic integers"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Upper bound for enumerations (a rational, e.g. 9/2).
    #[arg(long, global = true)]
    pub bound: Option<String>,
    /// Number of steps, witnesses or random instances.
    #[arg(long, global = true)]
    pub count: Option<usize>,
    /// Largest number of roots tried by minroots [default: 4].
    #[arg(long, global = true)]
    pub max_terms: Option<u32>,
    /// Seed for the randomized self-check [default: 0].
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum QuadForm {
    Poly1,
    Poly2,
    A4,
    A3a1,
    Foursq,
    Diag,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OracleKind {
    /// Synthetic truncation built from the label grammar.
    Synthetic,
    /// Heights below 9/4 of sums of at most two roots of unity.
    Heights,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cassels height of an expression such as "1 - 2*w5^3 + w5".
    Height {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Mean trace of an expression.
    Mtrace {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Smallest i with nonzero mean trace of w_n^i * x.
    Shift {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Upper bound for the least number of roots of unity summing to x.
    Minroots {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Roots are drawn from this conductor [default: that of x].
        #[arg(long)]
        conductor: Option<u64>,
    },
    /// Height set of Z[w_p] up to --bound.
    CpEnum { p: u64 },
    /// Coefficient vector realizing the (s, r) height of Z[w_p].
    CpWitness { p: u64, s: u64, r: u64 },
    /// Whether a rational is a height of Z[w_p].
    CpMember {
        p: u64,
        #[arg(allow_hyphen_values = true)]
        value: String,
    },
    /// Whether n = a^2 - ab + b^2 has a solution.
    C3 {
        n: u64,
        /// Trial division limit for the factorization.
        #[arg(long, default_value_t = DEFAULT_FACTOR_BOUND)]
        factor_bound: u64,
    },
    /// Solve a quadratic form or polynomial at m.
    Quad {
        #[arg(value_enum)]
        form: QuadForm,
        m: u64,
        /// Diagonal coefficients for `diag`, e.g. 1,3,3.
        #[arg(long)]
        coeffs: Option<String>,
    },
    /// Heights M(g1 + w_l g2) approaching M(g1) + M(g2) from one side.
    Limit2 {
        #[arg(allow_hyphen_values = true)]
        g1: String,
        #[arg(allow_hyphen_values = true)]
        g2: String,
        #[arg(long, default_value = "below")]
        side: String,
    },
    /// Heights of g0 + g1 w_{n_1} + .. approaching the sum of heights.
    /// Put `--` before summands that start with a minus sign.
    Limitn {
        #[arg(required = true)]
        gs: Vec<String>,
    },
    /// Label of a point of a Thue set, or the whole table with --dump.
    Label {
        #[arg(allow_hyphen_values = true)]
        value: Option<String>,
        #[arg(long, value_enum, default_value_t = OracleKind::Synthetic)]
        oracle: OracleKind,
        #[arg(long, default_value_t = 2)]
        max_k: u64,
        #[arg(long, default_value_t = 2)]
        depth: u64,
        #[arg(long, default_value_t = 3)]
        breadth: u64,
        /// Largest m in 2 + 2 mu(m)/phi(m) for the heights oracle.
        #[arg(long, default_value_t = 200)]
        cap: u64,
        #[arg(long)]
        dump: bool,
    },
    /// Random exact checks of the mean trace identities.
    Selfcheck,
}

/// Exit status and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match execute(&cli).and_then(|v| render(&v, cli.format)) {
        Ok(stdout) => Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("plain data serializes")
}

fn cyc(s: &str) -> Result<CycInt> {
    s.parse()
}

fn execute(cli: &Cli) -> Result<Value> {
    match &cli.command {
        Command::Height { expr } => Ok(to_value(&cassels_height(&cyc(expr)?))),
        Command::Mtrace { expr } => Ok(json!({ "value": fmt_rat(&mean_trace(&cyc(expr)?)) })),
        Command::Shift { expr } => {
            let x = cyc(expr)?;
            let i = find_nonzero_trace_shift(&x)?;
            let trace = mean_trace(&x.shift(i));
            Ok(json!({ "conductor": x.conductor(), "shift": i, "trace": fmt_rat(&trace) }))
        }
        Command::Minroots { expr, conductor } => {
            let x = cyc(expr)?;
            let n = conductor.unwrap_or(x.conductor());
            let max_terms = cli.max_terms.unwrap_or(4);
            let bound = min_roots_upper(&x, n, max_terms)?;
            Ok(json!({ "conductor": n, "max_terms": max_terms, "upper_bound": bound }))
        }
        Command::CpEnum { p } => {
            let bound = cli
                .bound
                .as_deref()
                .ok_or_else(|| Error::Input("cp-enum needs --bound".into()))
                .and_then(parse_rat)?;
            Ok(to_value(&cp_enumerate(*p, &bound)?))
        }
        Command::CpWitness { p, s, r } => {
            let w = cp_witness(*p, *s, *r)?;
            let value = cp_value(*p, *s, *r)?;
            if height(&w.to_cycint()) != value {
                return Err(Error::Invariant(format!(
                    "witness {:?} does not verify",
                    w.a
                )));
            }
            Ok(json!({ "a": w.a, "value": fmt_rat(&value) }))
        }
        Command::CpMember { p, value } => {
            let q = parse_rat(value)?;
            match cp_membership(*p, &q)? {
                Some((s, r)) => {
                    let w = cp_witness(*p, s, r)?;
                    if height(&w.to_cycint()) != q {
                        return Err(Error::Invariant(format!(
                            "witness {:?} does not verify",
                            w.a
                        )));
                    }
                    Ok(
                        json!({ "member": true, "r": r, "s": s, "value": fmt_rat(&q), "witness": w.a }),
                    )
                }
                None => Ok(
                    json!({ "member": false, "r": null, "s": null, "value": fmt_rat(&q), "witness": null }),
                ),
            }
        }
        Command::C3 { n, factor_bound } => {
            let member = c3_membership_bounded(*n, *factor_bound)?;
            let witness = if member {
                check_target(*n)?;
                let (a, b) = c3_witness(*n).ok_or_else(|| {
                    Error::Invariant(format!(
                        "{n} passes the criterion but has no representation"
                    ))
                })?;
                if (a * a - a * b + b * b) as u64 != *n {
                    return Err(Error::Invariant(format!(
                        "({a}, {b}) does not represent {n}"
                    )));
                }
                Some([a, b])
            } else {
                None
            };
            Ok(json!({ "member": member, "n": n, "witness": witness }))
        }
        Command::Quad { form, m, coeffs } => quad(*form, *m, coeffs.as_deref()),
        Command::Limit2 { g1, g2, side } => {
            let side: Side = side.parse()?;
            let steps = two_term_sequence(&cyc(g1)?, &cyc(g2)?, side, cli.count.unwrap_or(10))?;
            Ok(to_value(&steps))
        }
        Command::Limitn { gs } => {
            let gs = gs.iter().map(|g| cyc(g)).collect::<Result<Vec<_>>>()?;
            Ok(to_value(&multi_term_limit(&gs, cli.count.unwrap_or(10))?))
        }
        Command::Label {
            value,
            oracle,
            max_k,
            depth,
            breadth,
            cap,
            dump,
        } => label_command(
            value.as_deref(),
            *oracle,
            [*max_k, *depth, *breadth],
            *cap,
            *dump,
        ),
        Command::Selfcheck => {
            let report = run_suite(cli.seed.unwrap_or(0), cli.count.unwrap_or(100));
            if !report.passed() {
                return Err(Error::Invariant(report.failures.join("; ")));
            }
            Ok(to_value(&report))
        }
    }
}

fn quad(form: QuadForm, m: u64, coeffs: Option<&str>) -> Result<Value> {
    let sol = match form {
        QuadForm::Poly1 => universal_poly1(m)?,
        QuadForm::Poly2 => universal_poly2(m)?,
        QuadForm::A4 => a4_form(m)?,
        QuadForm::A3a1 => a3a1_form(m)?,
        QuadForm::Foursq => {
            check_target(m)?;
            let v = four_squares(m).iter().map(|&x| x as i64).collect();
            QuadSolution::checked(FormId::FourSquares, m as i64, v)?
        }
        QuadForm::Diag => {
            let d =
                parse_coeffs(coeffs.ok_or_else(|| Error::Input("diag needs --coeffs".into()))?)?;
            check_target(m)?;
            let v = represent_diag(d, m, |_| true).ok_or_else(|| {
                Error::Domain(format!(
                    "{}x^2 + {}y^2 + {}z^2 does not represent {m}",
                    d[0], d[1], d[2]
                ))
            })?;
            QuadSolution::checked(FormId::Diag(d), m as i64, v.to_vec())?
        }
    };
    if !sol.verify() || sol.target != m as i64 {
        return Err(Error::Invariant(format!(
            "solution {:?} does not verify",
            sol.variables
        )));
    }
    Ok(json!({
        "form": sol.form.name(),
        "m": m,
        "solution": sol.variables,
        "verified": true,
    }))
}

fn parse_coeffs(s: &str) -> Result<[u64; 3]> {
    let parts = s
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad coefficient {p:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let d: [u64; 3] = parts
        .try_into()
        .map_err(|_| Error::Input("diag needs exactly three coefficients".into()))?;
    if d.contains(&0) {
        return Err(Error::Domain(
            "diagonal coefficients must be positive".into(),
        ));
    }
    Ok(d)
}

fn label_command(
    value: Option<&str>,
    kind: OracleKind,
    [max_k, depth, breadth]: [u64; 3],
    cap: u64,
    dump: bool,
) -> Result<Value> {
    if max_k > 4 || depth > 4 || breadth > 12 {
        return Err(Error::Resource(
            "synthetic sets are limited to max_k, depth <= 4 and breadth <= 12".into(),
        ));
    }
    if cap > 100_000 {
        return Err(Error::Resource("cap is limited to 100000".into()));
    }
    let row =
        |v: &crate::rat::Rat, l: &ThueLabel| json!({ "label": l.to_string(), "value": fmt_rat(v) });
    match kind {
        OracleKind::Synthetic => {
            let set = synthetic_thue(max_k, depth, breadth);
            let one = |t: &crate::rat::Rat| -> Result<Value> {
                let l = label(t, set.oracle())?;
                if &set.decode(&l)? != t {
                    return Err(Error::Invariant(format!(
                        "label {l} does not decode to {t}"
                    )));
                }
                Ok(row(t, &l))
            };
            if dump {
                set.points
                    .iter()
                    .map(|(t, _)| one(t))
                    .collect::<Result<Vec<_>>>()
                    .map(Value::Array)
            } else {
                one(&parse_rat(value.ok_or_else(|| {
                    Error::Input("label needs a value or --dump".into())
                })?)?)
            }
        }
        OracleKind::Heights => {
            let oracle = height_fragment(cap);
            let one = |t: &crate::rat::Rat| -> Result<Value> {
                let l = label(t, &oracle)?;
                Ok(row(t, &l))
            };
            if dump {
                oracle
                    .points()
                    .iter()
                    .map(one)
                    .collect::<Result<Vec<_>>>()
                    .map(Value::Array)
            } else {
                let t = parse_rat(
                    value.ok_or_else(|| Error::Input("label needs a value or --dump".into()))?,
                )?;
                if !oracle.contains(0, &t) {
                    return Err(Error::Domain(format!(
                        "{} is not in the height fragment",
                        fmt_rat(&t)
                    )));
                }
                one(&t)
            }
        }
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                flatten(&key(k), x, out);
            }
        }
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            out.push((prefix.to_string(), parts.join(" ")));
        }
        other => out.push((prefix.to_string(), scalar(other))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(_) | Value::Object(_) => v.to_string(),
        other => other.to_string(),
    }
}

fn rows(v: &Value) -> Vec<Vec<(String, String)>> {
    let items: Vec<&Value> = match v {
        Value::Array(items) => items.iter().collect(),
        other => vec![other],
    };
    items
        .into_iter()
        .map(|item| {
            let mut out = Vec::new();
            match item {
                Value::Object(_) => flatten("", item, &mut out),
                other => out.push(("value".to_string(), scalar(other))),
            }
            out
        })
        .collect()
}

pub fn render(v: &Value, format: Format) -> Result<String> {
    match format {
        Format::Json => Ok(format!("{v}\n")),
        Format::Csv => {
            let table = rows(v);
            let mut w = csv::Writer::from_writer(Vec::new());
            if let Some(first) = table.first() {
                w.write_record(first.iter().map(|(k, _)| k))
                    .map_err(|e| Error::Resource(e.to_string()))?;
            }
            for r in &table {
                w.write_record(r.iter().map(|(_, x)| x))
                    .map_err(|e| Error::Resource(e.to_string()))?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Resource(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| Error::Resource(e.to_string()))
        }
        Format::Text => {
            let lines: Vec<String> = rows(v)
                .into_iter()
                .map(|r| {
                    r.into_iter()
                        .map(|(k, x)| format!("{k}={x}"))
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .collect();
            Ok(lines.join("\n") + "\n")
        }
    }
}
