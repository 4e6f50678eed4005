//! Command-line front end. Output is JSON (sorted keys) unless `--pretty` asks
//! for aligned `key  value` text. Exit codes: 0 success, 1 domain error,
//! 2 usage or parse error.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::cuspidal_lines::{CuspidalDatum, Duality, Registry, TwistedCuspidal};
use crate::distinction::{
    discrete_series_distinction, ladder_distinguished, standard_module_distinguished, unitary_distinguished,
    DistinctionVerdict, UnitaryInput,
};
use crate::double_cosets::{contributing_cosets, enumerate_cosets, standard_mbar};
use crate::error::{Error, Result};
use crate::expr::{parse_expr, Expr, Factor};
use crate::ladders::Multisegment;
use crate::lfactor_algebra::formal::{AtomKind, LinearForm};
use crate::lfactor_algebra::unramified::{parse_chars, unramified_asai, unramified_rs, Normalization};
use crate::rat::{self, Rat};
use crate::segments::{jacquet_discrete, Segment};
use crate::spherical_periods::{
    alpha_factor, alpha_pole_order, spherical_period_closed, spherical_period_recursive, PeriodSpec,
};
use crate::symmetric_words::{verify_reduction_lemma, LemmaKind};

#[derive(Parser, Debug)]
#[command(name = "gl-distinction", version, about = "Distinction of representations of GL(m, D) over a quadratic extension")]
struct Cli {
    /// Aligned text instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Registry of cuspidal data (JSON list); a small built-in registry otherwise.
    #[arg(long, global = true)]
    registry: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Norm {
    Inert,
    Split,
}

impl From<Norm> for Normalization {
    fn from(n: Norm) -> Self {
        match n {
            Norm::Inert => Normalization::inert(),
            Norm::Split => Normalization::split(),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Closed,
    Recursive,
    Both,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide distinction of an expression.
    Distinguish {
        #[arg(long)]
        expr: String,
    },
    /// Enumerate the double cosets for a composition m̄.
    Cosets {
        #[arg(long, value_delimiter = ',', required = true)]
        mbar: Vec<u32>,
    },
    /// Contributing cosets of a product of segments.
    Contrib {
        #[arg(long)]
        sigma: String,
    },
    /// Jacquet module of a discrete series along a partition of its degree.
    Jacquet {
        #[arg(long)]
        seg: String,
        #[arg(long, value_delimiter = ',', required = true)]
        partition: Vec<u32>,
    },
    /// Unramified Asai (`+;a,b` or `-;a,b`) or Rankin-Selberg (`a,b;c`) factor.
    Lfactor {
        #[arg(long, conflicts_with = "rs", required_unless_present = "rs")]
        asai: Option<String>,
        #[arg(long)]
        rs: Option<String>,
        #[arg(long, default_value = "s")]
        var: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        shift: String,
        #[arg(long, value_enum, default_value = "inert")]
        norm: Norm,
    },
    /// Spherical value of the open intertwining period.
    Period {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        sigma: String,
        #[arg(long, value_enum, default_value = "both")]
        mode: Mode,
        #[arg(long, value_enum, default_value = "inert")]
        norm: Norm,
    },
    /// The factor alpha for St_{kl}(rho'), optionally its pole order at a point.
    Alpha {
        #[arg(long)]
        rho: String,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        l: u32,
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
        #[arg(long, default_value = "s")]
        var: String,
    },
    /// Check the BB and AB reduced-word lemmas for all 1 <= a, b <= max.
    VerifyLemmas {
        #[arg(long, default_value_t = 4)]
        max: usize,
    },
}

/// `rho` distinguished, `rhoe` eta-distinguished, `rho1`/`rho2` a pair of
/// mutually conjugate-dual non-self-dual lines; all of degree 1 with `l = 1`.
pub fn default_registry() -> Registry {
    let mut r1 = CuspidalDatum::new("rho1", 1, 1, Duality::NotConjSelfDual);
    r1.dual_partner = Some("rho2".into());
    let mut r2 = CuspidalDatum::new("rho2", 1, 1, Duality::NotConjSelfDual);
    r2.dual_partner = Some("rho1".into());
    Registry::new(vec![
        CuspidalDatum::new("rho", 1, 1, Duality::Distinguished),
        CuspidalDatum::new("rhoe", 1, 1, Duality::EtaDistinguished),
        r1,
        r2,
    ])
    .expect("built-in registry is valid")
}

fn load_registry(path: &Option<PathBuf>) -> Result<Registry> {
    match path {
        None => Ok(default_registry()),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Error::Registry(format!("cannot read {}: {e}", p.display())))?;
            Registry::from_json(&text)
        }
    }
}

fn parse_rat(flag: &str, text: &str) -> Result<Rat> {
    rat::parse(text).ok_or_else(|| Error::Parse {
        pos: 0,
        expected: "rational p or p/q".into(),
        message: format!("--{flag} {text:?}"),
    })
}

fn segments_only(e: &Expr) -> Option<Vec<Segment>> {
    e.factors
        .iter()
        .map(|f| match f {
            Factor::Segment(s) => Some(s.clone()),
            _ => None,
        })
        .collect()
}

fn distinguish(reg: &Registry, e: &Expr) -> Result<(String, DistinctionVerdict)> {
    if let [single] = e.factors.as_slice() {
        match single {
            Factor::Segment(s) => return Ok(("discrete series".into(), discrete_series_distinction(reg, s)?)),
            Factor::Ladder(m) => return Ok(("ladder".into(), ladder_distinguished(reg, m)?)),
            _ => {}
        }
    }
    if let Some(segs) = segments_only(e) {
        return Ok(("standard module".into(), standard_module_distinguished(reg, &segs)?));
    }
    let inputs = e
        .factors
        .iter()
        .map(|f| {
            Ok(match f.unitary()? {
                Some(u) => UnitaryInput::Factor(u),
                None => match f {
                    Factor::Ladder(m) => UnitaryInput::Ladder(m.clone()),
                    Factor::Segment(s) => UnitaryInput::Ladder(Multisegment::new(vec![s.clone()])?),
                    _ => unreachable!("Speh and Pair are unitary factors"),
                },
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(("unitary".into(), unitary_distinguished(reg, &inputs)?))
}

fn execute(cli: &Cli) -> Result<Value> {
    match &cli.command {
        Command::Distinguish { expr } => {
            let reg = load_registry(&cli.registry)?;
            let e = parse_expr(expr)?;
            let (rule, v) = distinguish(&reg, &e)?;
            let mut out = serde_json::to_value(&v).map_err(|e| Error::Internal(e.to_string()))?;
            out["expr"] = json!(e.to_string());
            out["rule"] = json!(rule);
            Ok(out)
        }
        Command::Cosets { mbar } => {
            let all = enumerate_cosets(mbar);
            Ok(json!({ "mbar": mbar, "count": all.len(), "matrices": all }))
        }
        Command::Contrib { sigma } => {
            let reg = load_registry(&cli.registry)?;
            let e = parse_expr(sigma)?;
            let segs = segments_only(&e)
                .ok_or_else(|| Error::Argument("contrib needs a product of segments".into()))?;
            let mbar = standard_mbar(&reg, &segs)?;
            let found = contributing_cosets(&reg, &segs, &mbar)?;
            Ok(json!({ "sigma": e.to_string(), "mbar": mbar, "count": found.len(), "contributing": found }))
        }
        Command::Jacquet { seg, partition } => {
            let reg = load_registry(&cli.registry)?;
            let e = parse_expr(seg)?;
            let d = match e.factors.as_slice() {
                [Factor::Segment(d)] => d.clone(),
                _ => return Err(Error::Argument("jacquet needs a single segment".into())),
            };
            let pieces = jacquet_discrete(&reg, &d, partition)?
                .map(|v| v.iter().map(|s| s.to_string()).collect::<Vec<_>>());
            Ok(json!({ "segment": d.to_string(), "partition": partition, "pieces": pieces }))
        }
        Command::Lfactor { asai, rs, var, shift, norm } => {
            let shift = parse_rat("shift", shift)?;
            let form = LinearForm::var(var);
            let norm: Normalization = (*norm).into();
            let (kind, f) = match (asai, rs) {
                (Some(a), _) => {
                    let (sign, chars) = a
                        .split_once(';')
                        .ok_or_else(|| Error::Argument("--asai expects \"+;a,b\" or \"-;a,b\"".into()))?;
                    let kind = match sign.trim() {
                        "+" => AtomKind::AsaiPlus,
                        "-" => AtomKind::AsaiMinus,
                        other => return Err(Error::Argument(format!("unknown Asai sign {other:?}"))),
                    };
                    (kind, unramified_asai(&parse_chars(chars)?, kind, &form, shift, norm)?)
                }
                (None, Some(r)) => {
                    let (x, y) = r
                        .split_once(';')
                        .ok_or_else(|| Error::Argument("--rs expects \"a,b;c\"".into()))?;
                    (AtomKind::RS, unramified_rs(&parse_chars(x)?, &parse_chars(y)?, &form, shift, norm)?)
                }
                (None, None) => return Err(Error::Argument("one of --asai, --rs is required".into())),
            };
            Ok(json!({
                "kind": kind,
                "argument": form.with_shift(&shift),
                "value": f.to_string(),
                "factored": f.factored_string(),
            }))
        }
        Command::Period { r, sigma, mode, norm } => {
            let spec = PeriodSpec::parse(sigma, (*norm).into())?;
            if spec.r() != *r {
                return Err(Error::Argument(format!("--r {r} but --sigma has {} blocks", spec.r())));
            }
            let mut out = BTreeMap::new();
            let closed = match mode {
                Mode::Recursive => None,
                _ => Some(spherical_period_closed(&spec)?),
            };
            let recursive = match mode {
                Mode::Closed => None,
                _ => Some(spherical_period_recursive(&spec)?),
            };
            out.insert("r".to_string(), json!(r));
            if let Some(c) = &closed {
                out.insert("closed".into(), json!(c.to_string()));
            }
            if let Some(c) = &recursive {
                out.insert("recursive".into(), json!(c.to_string()));
            }
            if let (Some(a), Some(b)) = (&closed, &recursive) {
                out.insert("equal".into(), json!(a == b));
            }
            Ok(json!(out))
        }
        Command::Alpha { rho, k, l, at, var } => {
            let reg = load_registry(&cli.registry)?;
            reg.get(rho)?;
            let a = alpha_factor(&TwistedCuspidal::untwisted(rho), *k, *l, var)?;
            let mut out = json!({ "factor": a.to_string(), "atoms": a });
            if let Some(at) = at {
                let point = parse_rat("at", at)?;
                out["at"] = json!(rat::format(&point));
                out["poleOrder"] = json!(alpha_pole_order(&reg, &a, var, point)?);
            }
            Ok(out)
        }
        Command::VerifyLemmas { max } => {
            let mut reports = vec![];
            for kind in [LemmaKind::BB, LemmaKind::AB] {
                for a in 1..=*max {
                    for b in 1..=*max {
                        reports.push(verify_reduction_lemma(kind, a, b)?);
                    }
                }
            }
            let failures: usize = reports.iter().map(|r| r.failures.len()).sum();
            Ok(json!({
                "cases": reports.len(),
                "failures": failures,
                "ok": failures == 0,
                "reports": reports,
            }))
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Aligned `key  value` lines; arrays of scalars are comma-joined, anything
/// nested is printed as compact JSON.
fn render_text(v: &Value) -> String {
    match v {
        Value::Object(map) => {
            let width = map.keys().map(|k| k.len()).max().unwrap_or(0);
            map.iter()
                .map(|(k, x)| {
                    let shown = match x {
                        Value::Array(items) if items.iter().all(|i| !i.is_array() && !i.is_object()) => {
                            items.iter().map(scalar).collect::<Vec<_>>().join(", ")
                        }
                        other => scalar(other),
                    };
                    format!("{k:<width$}  {shown}")
                })
                .collect::<Vec<_>>()
                .join("\n")
        }
        other => scalar(other),
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Registry(_) => "registry",
        Error::Argument(_) => "argument",
        Error::Precondition(_) => "precondition",
        Error::Range(_) => "range",
        Error::Parse { .. } => "parse",
        Error::Internal(_) => "internal",
    }
}

/// Runs one invocation; `args` excludes the program name. Returns the exit
/// code and the text to print.
pub fn run<I, S>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = std::iter::once("gl-distinction".to_string())
        .chain(args.into_iter().map(Into::into))
        .collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    match execute(&cli) {
        Ok(v) => {
            let text = if cli.pretty {
                render_text(&v)
            } else {
                v.to_string()
            };
            (0, text)
        }
        Err(e) => {
            let code = if e.is_parse() { 2 } else { 1 };
            let mut doc = json!({ "error": error_kind(&e), "message": e.to_string() });
            if let Error::Parse { pos, expected, .. } = &e {
                doc["position"] = json!(pos);
                doc["expected"] = json!(expected);
            }
            let text = if cli.pretty {
                render_text(&doc)
            } else {
                doc.to_string()
            };
            (code, text)
        }
    }
}
