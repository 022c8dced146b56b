//! One function per subcommand; each returns both renderings of its report.

use std::fmt::Write as _;
use std::path::Path;

use serde_json::{json, Map, Value};

use reesalg::closure::{diff_close, ClosureOptions, Variant};
use reesalg::coeff::{coefficient_algebra, integral_member_1d, lambda, Recipe};
use reesalg::probe::{equal_closure_probe, main_theorem_check, Certificate, FinitePair, ProbeRecord, ProbeVerdict};
use reesalg::rees::{PieceMode, PieceOracle};
use reesalg::{in_sing, parse_poly, sing_points, sing_presentation, ReesAlgebra, Scalar, VanishingOrder};

use crate::file::{ring_header, AlgebraFile};
use crate::{load, CliError, Command, RecipeArg, VariantArg};

#[derive(Clone, Debug, PartialEq)]
pub struct Output {
    pub json: Value,
    pub text: String,
    /// 0 for true/consistent, 1 for false/refuted.
    pub code: u8,
}

impl Output {
    /// Plain text is derived from the JSON fields, in order.
    fn from_fields(fields: Map<String, Value>, code: u8) -> Self {
        let text = render_fields(&fields);
        Output {
            json: Value::Object(fields),
            text,
            code,
        }
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "none".into(),
        Value::Array(items) => format!("[{}]", items.iter().map(scalar_text).collect::<Vec<_>>().join(", ")),
        Value::Object(m) => m
            .iter()
            .map(|(k, v)| format!("{k}={}", scalar_text(v)))
            .collect::<Vec<_>>()
            .join(" "),
        other => other.to_string(),
    }
}

fn render_fields(fields: &Map<String, Value>) -> String {
    let mut out = String::new();
    for (k, v) in fields {
        match v {
            Value::Array(items) if !items.is_empty() => {
                writeln!(out, "{k}:").unwrap();
                for item in items {
                    writeln!(out, "  {}", scalar_text(item)).unwrap();
                }
            }
            _ => writeln!(out, "{k}: {}", scalar_text(v)).unwrap(),
        }
    }
    out
}

fn algebra_json(a: &ReesAlgebra) -> Value {
    Value::Array(
        a.gens()
            .iter()
            .map(|g| json!({"w": g.weight, "poly": g.poly.to_string()}))
            .collect(),
    )
}

fn ring_json(a: &ReesAlgebra) -> Value {
    let r = a.ring();
    json!({"char": r.field().characteristic(), "vars": r.vars()})
}

/// The algebra as a file plus comment lines, so the text re-parses.
fn algebra_output(file: &AlgebraFile, extra: Map<String, Value>, comments: &[String]) -> Output {
    let mut fields = Map::new();
    fields.insert("ring".into(), ring_json(&file.algebra));
    if let Some(s) = file.split {
        fields.insert("split".into(), json!({"h": s.h}));
    }
    fields.insert("gens".into(), algebra_json(&file.algebra));
    fields.extend(extra);
    let mut text = file.to_string();
    for c in comments {
        writeln!(text, "# {c}").unwrap();
    }
    Output {
        json: Value::Object(fields),
        text,
        code: 0,
    }
}

fn bool_code(b: bool) -> u8 {
    if b {
        0
    } else {
        1
    }
}

pub fn dispatch(cmd: &Command) -> Result<Output, CliError> {
    match cmd {
        Command::Close {
            file,
            variant,
            h,
            log_vars,
            bound,
            prune,
        } => close(file, *variant, *h, log_vars, *bound, *prune),
        Command::Sing { file, point, grid } => sing(file, point.as_deref(), *grid),
        Command::Coeff { file, recipe } => coeff(file, *recipe),
        Command::Lambda { file } => lambda_cmd(file),
        Command::Member { file, elem, weight } => member(file, elem, *weight),
        Command::EqualClosure {
            file_a,
            file_b,
            trials,
            seed,
        } => equal_closure(file_a, file_b, *trials, *seed),
        Command::MainCheck {
            file_a,
            file_b,
            cert,
            trials,
            seed,
            bound,
        } => main_check(file_a, file_b, cert, *trials, *seed, *bound),
    }
}

fn close(
    path: &Path,
    variant: VariantArg,
    h: Option<usize>,
    log_vars: &[String],
    bound: Option<u32>,
    prune: bool,
) -> Result<Output, CliError> {
    let f = load(path)?;
    let ring = f.ring().clone();
    let variant = match variant {
        VariantArg::Absolute => Variant::Absolute,
        VariantArg::Orderfree => Variant::OrderFree,
        VariantArg::Relative => Variant::Relative(
            h.or(f.split.map(|s| s.h))
                .ok_or_else(|| CliError::Usage("relative closure needs --h or a split line".into()))?,
        ),
        VariantArg::Log => {
            let vars = if log_vars.is_empty() {
                (0..ring.dim()).collect()
            } else {
                log_vars
                    .iter()
                    .map(|v| {
                        ring.var_index(v)
                            .ok_or_else(|| CliError::Usage(format!("unknown variable `{v}` in --log-vars")))
                    })
                    .collect::<Result<Vec<_>, _>>()?
            };
            Variant::Logarithmic(vars)
        }
    };
    let opts = ClosureOptions {
        variant,
        simplify: prune,
        prune,
    };
    let closed = diff_close(&f.algebra, &opts)?;
    let mut comments = Vec::new();
    let mut pieces = Vec::new();
    if let Some(n) = bound {
        let mut oracle = PieceOracle::new(&closed);
        for k in 1..=n {
            let basis: Vec<String> = oracle
                .piece(k, PieceMode::Exact)
                .basis()
                .iter()
                .map(|p| p.to_string())
                .collect();
            let shown = if basis.is_empty() {
                "0".to_string()
            } else {
                basis.join(", ")
            };
            comments.push(format!("piece {k}: {shown}"));
            pieces.push(json!({"degree": k, "basis": basis}));
        }
    }
    let mut extra = Map::new();
    if bound.is_some() {
        extra.insert("pieces".into(), Value::Array(pieces));
    }
    Ok(algebra_output(
        &AlgebraFile::from_algebra(closed, f.split),
        extra,
        &comments,
    ))
}

fn point_text(p: &[Scalar]) -> String {
    format!("({})", p.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", "))
}

fn sing(path: &Path, point: Option<&[String]>, grid: bool) -> Result<Output, CliError> {
    let f = load(path)?;
    let ring = f.ring();
    let mut fields = Map::new();
    if let Some(coords) = point {
        let pt = coords
            .iter()
            .map(|c| {
                let p =
                    parse_poly(c.trim(), ring).map_err(|e| CliError::Usage(format!("bad coordinate `{c}`: {e}")))?;
                if !p.is_constant() {
                    return Err(CliError::Usage(format!("coordinate `{c}` is not a constant")));
                }
                Ok(p.constant_term())
            })
            .collect::<Result<Vec<_>, _>>()?;
        let inside = in_sing(&f.algebra, &pt)?;
        fields.insert("point".into(), Value::String(point_text(&pt)));
        fields.insert("in-sing".into(), Value::Bool(inside));
        return Ok(Output::from_fields(fields, bool_code(inside)));
    }
    if grid {
        let pts = sing_points(&f.algebra)?;
        fields.insert("count".into(), json!(pts.len()));
        fields.insert(
            "points".into(),
            Value::Array(pts.iter().map(|p| Value::String(point_text(p))).collect()),
        );
        return Ok(Output::from_fields(fields, 0));
    }
    let pres = sing_presentation(&f.algebra);
    fields.insert(
        "equations".into(),
        Value::Array(pres.polys().iter().map(|p| Value::String(p.to_string())).collect()),
    );
    fields.insert("empty-locus".into(), Value::Bool(pres.is_empty_locus()));
    Ok(Output::from_fields(fields, 0))
}

fn recipe_of(r: RecipeArg) -> (Recipe, &'static str) {
    match r {
        RecipeArg::F1 => (Recipe::F1, "f1"),
        RecipeArg::F1p => (Recipe::F1Prime, "f1p"),
    }
}

fn coeff(path: &Path, recipe: RecipeArg) -> Result<Output, CliError> {
    let f = load(path)?;
    let split = f
        .split
        .ok_or_else(|| CliError::Usage("coefficient algebra needs a split line".into()))?;
    let (recipe, name) = recipe_of(recipe);
    let c = coefficient_algebra(&f.algebra, split, recipe)?;
    let mut extra = Map::new();
    extra.insert("recipe".into(), Value::String(name.into()));
    Ok(algebra_output(
        &AlgebraFile::from_algebra(c.algebra, None),
        extra,
        &[format!("recipe {name}")],
    ))
}

fn lambda_cmd(path: &Path) -> Result<Output, CliError> {
    let f = load(path)?;
    let mut fields = Map::new();
    fields.insert("lambda".into(), Value::String(lambda(&f.algebra)?.to_string()));
    Ok(Output::from_fields(fields, 0))
}

fn member(path: &Path, elem: &str, weight: u32) -> Result<Output, CliError> {
    let f = load(path)?;
    let e = parse_poly(elem, f.ring()).map_err(|err| CliError::Usage(format!("bad element `{elem}`: {err}")))?;
    let lam = lambda(&f.algebra)?;
    let is_member = match e.order() {
        VanishingOrder::Infinite => {
            if weight == 0 {
                return Err(reesalg::Error::ZeroWeight.into());
            }
            true
        }
        VanishingOrder::Finite(n) => integral_member_1d(n, weight, &f.algebra)?,
    };
    let mut fields = Map::new();
    fields.insert("elem".into(), Value::String(e.to_string()));
    fields.insert("weight".into(), json!(weight));
    fields.insert("order".into(), Value::String(e.order().to_string()));
    fields.insert("lambda".into(), Value::String(lam.to_string()));
    fields.insert("member".into(), Value::Bool(is_member));
    Ok(Output::from_fields(fields, bool_code(is_member)))
}

fn record_json(r: &ProbeRecord) -> Value {
    json!({
        "trial": r.trial,
        "a": r.curve.a,
        "b": r.curve.b,
        "coeffs": r.curve.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "lambda1": r.lambda1.to_string(),
        "lambda2": r.lambda2.to_string(),
        "rejected": r.rejected_draws,
        "degenerate": r.degenerate,
        "mismatch": r.mismatch,
    })
}

fn verdict_fields(fields: &mut Map<String, Value>, v: &ProbeVerdict) {
    let verdict = if v.is_consistent() {
        "consistent (not a proof)"
    } else {
        "refuted"
    };
    fields.insert("verdict".into(), Value::String(verdict.into()));
    fields.insert("witness".into(), v.witness().map(record_json).unwrap_or(Value::Null));
    fields.insert(
        "probes".into(),
        Value::Array(v.records.iter().map(record_json).collect()),
    );
}

fn same_ring(a: &AlgebraFile, b: &AlgebraFile) -> Result<(), CliError> {
    if a.ring() != b.ring() {
        return Err(CliError::Usage(format!(
            "files declare different rings: `{}` and `{}`",
            ring_header(a.ring()),
            ring_header(b.ring())
        )));
    }
    Ok(())
}

fn equal_closure(a: &Path, b: &Path, trials: usize, seed: u64) -> Result<Output, CliError> {
    let (fa, fb) = (load(a)?, load(b)?);
    same_ring(&fa, &fb)?;
    let v = equal_closure_probe(&fa.algebra, &fb.algebra, trials, seed)?;
    let mut fields = Map::new();
    fields.insert("trials".into(), json!(trials));
    fields.insert("seed".into(), json!(seed));
    verdict_fields(&mut fields, &v);
    Ok(Output::from_fields(fields, bool_code(v.is_consistent())))
}

fn parse_cert(s: &str) -> Result<Certificate, CliError> {
    match s {
        "sat" => Ok(Certificate::Saturation),
        "witness" => Ok(Certificate::Witness),
        _ => s
            .strip_prefix("veronese:")
            .and_then(|m| m.parse::<u32>().ok())
            .map(Certificate::Veronese)
            .ok_or_else(|| CliError::Usage(format!("unknown certificate `{s}`; use sat, veronese:M or witness"))),
    }
}

fn main_check(a: &Path, b: &Path, cert: &str, trials: usize, seed: u64, bound: u32) -> Result<Output, CliError> {
    let (fa, fb) = (load(a)?, load(b)?);
    same_ring(&fa, &fb)?;
    let certificate = parse_cert(cert)?;
    let pair = FinitePair::new(fa.algebra.clone(), fb.algebra.clone(), certificate.clone())?;
    let rep = main_theorem_check(&pair, trials, seed, bound, fa.split.or(fb.split))?;
    let mut fields = Map::new();
    fields.insert("certificate".into(), Value::String(certificate.to_string()));
    fields.insert("closure1".into(), algebra_json(&rep.closure1));
    fields.insert("closure2".into(), algebra_json(&rep.closure2));
    fields.insert(
        "inclusion".into(),
        rep.inclusion.map(Value::Bool).unwrap_or(Value::Null),
    );
    fields.insert(
        "coeff".into(),
        Value::Array(
            rep.coeff
                .iter()
                .map(|c| {
                    let name = if c.recipe == Recipe::F1 { "f1" } else { "f1p" };
                    json!({"recipe": name, "lambda1": c.lambda1.to_string(), "lambda2": c.lambda2.to_string()})
                })
                .collect(),
        ),
    );
    fields.insert("trials".into(), json!(trials));
    fields.insert("seed".into(), json!(seed));
    verdict_fields(&mut fields, &rep.probe);
    let overall = if rep.is_consistent() { "consistent" } else { "refuted" };
    fields.insert("result".into(), Value::String(overall.into()));
    Ok(Output::from_fields(fields, bool_code(rep.is_consistent())))
}
