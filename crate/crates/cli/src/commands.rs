use std::fmt::Write as _;
use std::fs;

use anyhow::{anyhow, bail, Context, Result};
use hyperappell::appell::{build_family, exp_n_truncated};
use hyperappell::json::{MultivectorJson, ReportJson, SequenceJson, TriMatrixJson};
use hyperappell::matrix::{creation_matrix, derivation_matrix_shifted, pascal_matrix};
use hyperappell::verify::{check_intertwining, verify_sequence, VerifyReport};
use hyperappell::{AppellSequence, Family, Multivector, Paravector, Rational, TriMatrix};
use serde_json::{json, Value};

use crate::args::{EvalArgs, ExpArgs, Format, MatricesArgs, SeqArgs, VerifyArgs};

/// Rendered output and whether every check passed.
pub struct Output {
    pub text: String,
    pub passed: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, passed: true }
    }
}

fn to_json(value: &impl serde::Serialize) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn require<T: Copy>(v: Option<T>, flag: &str) -> Result<T> {
    v.ok_or_else(|| anyhow!("missing required flag --{flag}"))
}

fn family(args: &SeqArgs) -> Result<Family> {
    Ok(Family::parse(args.family.as_str(), args.lambda.clone())?)
}

fn sequence(args: &SeqArgs) -> Result<AppellSequence> {
    let n = require(args.n, "n")?;
    let m = require(args.m, "m")?;
    if n == 0 {
        bail!("--n must be at least 1");
    }
    if args.c0.is_zero() {
        bail!("--c0 must be nonzero");
    }
    Ok(build_family(n, m, &family(args)?, args.c0.clone(), args.shift)?)
}

fn parse_point(text: &str, n: Option<usize>) -> Result<Paravector> {
    let components = text
        .split(',')
        .map(|s| s.parse::<Rational>())
        .collect::<Result<Vec<_>, _>>()
        .with_context(|| format!("malformed --point {text:?}"))?;
    let point = Paravector::from_components(&components)?;
    if let Some(n) = n {
        if point.dim() != n {
            bail!("--point has {} components, expected n + 1 = {}", components.len(), n + 1);
        }
    }
    Ok(point)
}

pub fn gen(args: &SeqArgs) -> Result<Output> {
    let seq = sequence(args)?;
    let text = match args.out.format {
        Format::Json => to_json(&SequenceJson::from(&seq))?,
        Format::Csv => {
            let mut s = String::from("k,i,j,a\n");
            for p in seq.polys() {
                for (i, j, a) in p.terms() {
                    writeln!(s, "{},{i},{j},{a}", p.degree())?;
                }
            }
            s
        }
        Format::Pretty => {
            let mut s = format!("family: {}\nn: {}\ns: {}\n", seq.family(), seq.dim(), seq.shift());
            let coeffs: Vec<String> = seq.coeffs().coeffs().iter().map(Rational::to_string).collect();
            writeln!(s, "coefficients: {}", coeffs.join(", "))?;
            for p in seq.polys() {
                writeln!(s, "phi_{} = {p}", p.degree())?;
            }
            s
        }
    };
    Ok(Output::ok(text))
}

pub fn verify(args: &VerifyArgs) -> Result<Output> {
    let seq = match &args.input {
        Some(path) => {
            let raw = fs::read_to_string(path)
                .with_context(|| format!("cannot read {}", path.display()))?;
            let parsed: SequenceJson = serde_json::from_str(&raw)
                .with_context(|| format!("{} is not a sequence file", path.display()))?;
            AppellSequence::try_from(&parsed)?
        }
        None => sequence(&args.seq)?,
    };
    let report = if seq.shift() > 0 {
        // Without a concrete Q_s only the coefficient identity can be certified.
        VerifyReport {
            n: seq.dim(),
            family: seq.family().to_string(),
            intertwining: Some(check_intertwining(seq.coeffs())),
            results: Vec::new(),
        }
    } else {
        verify_sequence(&seq)
    };
    let text = match args.seq.out.format {
        Format::Json => to_json(&ReportJson::from(&report))?,
        Format::Csv => {
            let mut s = String::from("k,monogenic,ladder\n");
            for r in &report.results {
                writeln!(s, "{},{},{}", r.k, r.monogenic, r.ladder)?;
            }
            s
        }
        Format::Pretty => {
            let mut s = format!("family: {}\nn: {}\n", report.family, report.n);
            if let Some(ok) = report.intertwining {
                writeln!(s, "intertwining: {}", if ok { "pass" } else { "FAIL" })?;
            }
            for r in &report.results {
                let verdict = |b: bool| if b { "pass" } else { "FAIL" };
                write!(s, "k={}: monogenic {}, ladder {}", r.k, verdict(r.monogenic), verdict(r.ladder))?;
                if let Some(w) = &r.witness {
                    write!(s, " (witness {:?}: ({}) {})", w.check, w.coeff, w.monomial)?;
                }
                s.push('\n');
            }
            writeln!(s, "{}", if report.all_passed() { "PASS" } else { "FAIL" })?;
            s
        }
    };
    Ok(Output { text, passed: report.all_passed() })
}

fn float_terms(mv: &Multivector) -> Value {
    Value::Array(
        mv.to_f64_terms()
            .into_iter()
            .map(|(b, v)| json!({ "blade": b.indices(), "value": v }))
            .collect(),
    )
}

fn float_string(mv: &Multivector) -> String {
    if mv.is_zero() {
        return "0".into();
    }
    mv.to_f64_terms()
        .into_iter()
        .map(|(b, v)| if b.grade() == 0 { format!("{v}") } else { format!("{v}*{b}") })
        .collect::<Vec<_>>()
        .join(" + ")
}

pub fn eval(args: &EvalArgs) -> Result<Output> {
    let seq = sequence(&args.seq)?;
    let text = args.point.as_deref().ok_or_else(|| anyhow!("missing required flag --point"))?;
    let point = parse_point(text, Some(seq.dim()))?;
    let values = seq.eval(&point)?;
    let out = match args.seq.out.format {
        Format::Json => {
            let values: Vec<Value> = values
                .iter()
                .enumerate()
                .map(|(k, v)| {
                    let mut entry = json!({ "k": k, "value": MultivectorJson::from(v) });
                    if args.float {
                        entry["float"] = float_terms(v);
                    }
                    entry
                })
                .collect();
            let point_json: Vec<String> =
                std::iter::once(&point.x0).chain(&point.vec).map(Rational::to_string).collect();
            to_json(&json!({
                "family": seq.family().name(),
                "n": seq.dim(),
                "point": point_json,
                "values": values,
            }))?
        }
        Format::Csv => {
            let mut s = String::from(if args.float { "k,blade,coeff,float\n" } else { "k,blade,coeff\n" });
            for (k, v) in values.iter().enumerate() {
                for (b, c) in v.terms() {
                    let blade: Vec<String> = b.indices().iter().map(usize::to_string).collect();
                    write!(s, "{k},{},{c}", blade.join(" "))?;
                    if args.float {
                        write!(s, ",{}", c.to_f64())?;
                    }
                    s.push('\n');
                }
            }
            s
        }
        Format::Pretty => {
            let mut s = String::new();
            for (k, v) in values.iter().enumerate() {
                write!(s, "phi_{k}(x) = {v}")?;
                if args.float {
                    write!(s, "  ~ {}", float_string(v))?;
                }
                s.push('\n');
            }
            s
        }
    };
    Ok(Output::ok(out))
}

pub fn matrices(args: &MatricesArgs) -> Result<Output> {
    let m = require(args.seq.m, "m")?;
    let mut named: Vec<(&str, TriMatrix)> = vec![
        ("creation", creation_matrix(m)),
        ("pascal", pascal_matrix(&args.x0, m)),
        ("transfer", family(&args.seq)?.transfer(m)?),
    ];
    if args.tilde {
        let n = require(args.seq.n, "n")?;
        named.push(("derivation", derivation_matrix_shifted(n, args.seq.shift, m)?));
    }
    named.sort_by_key(|(name, _)| *name);
    let text = match args.seq.out.format {
        Format::Json => {
            let mut obj = serde_json::Map::new();
            for (name, t) in &named {
                obj.insert((*name).to_string(), serde_json::to_value(TriMatrixJson::from(t))?);
            }
            obj.insert("family".into(), json!(args.seq.family.as_str()));
            obj.insert("x0".into(), json!(args.x0.to_string()));
            if let Some(n) = args.seq.n {
                obj.insert("n".into(), json!(n));
            }
            if args.tilde {
                obj.insert("s".into(), json!(args.seq.shift));
            }
            to_json(&Value::Object(obj))?
        }
        Format::Csv => {
            let mut s = String::from("matrix,i,j,value\n");
            for (name, t) in &named {
                for (i, row) in t.rows().enumerate() {
                    for (j, v) in row.iter().enumerate() {
                        writeln!(s, "{name},{i},{j},{v}")?;
                    }
                }
            }
            s
        }
        Format::Pretty => {
            let mut s = String::new();
            for (name, t) in &named {
                writeln!(s, "{name}:\n{t}")?;
            }
            s
        }
    };
    Ok(Output::ok(text))
}

pub fn exp(args: &ExpArgs) -> Result<Output> {
    let text = args.point.as_deref().ok_or_else(|| anyhow!("missing required flag --point"))?;
    let point = parse_point(text, args.n)?;
    if point.dim() == 0 {
        bail!("--point needs at least one vector component (n >= 1)");
    }
    let value = exp_n_truncated(&point, args.order)?;
    let out = match args.out.format {
        Format::Json => {
            let mut obj = json!({
                "n": point.dim(),
                "order": args.order,
                "value": MultivectorJson::from(&value),
            });
            if args.float {
                obj["float"] = float_terms(&value);
            }
            to_json(&obj)?
        }
        Format::Csv => {
            let mut s = String::from(if args.float { "blade,coeff,float\n" } else { "blade,coeff\n" });
            for (b, c) in value.terms() {
                let blade: Vec<String> = b.indices().iter().map(usize::to_string).collect();
                write!(s, "{},{c}", blade.join(" "))?;
                if args.float {
                    write!(s, ",{}", c.to_f64())?;
                }
                s.push('\n');
            }
            s
        }
        Format::Pretty => {
            let mut s = format!("Exp_{}(x) ~ {value}\n", point.dim());
            if args.float {
                writeln!(s, "  ~ {}", float_string(&value))?;
            }
            s
        }
    };
    Ok(Output::ok(out))
}
