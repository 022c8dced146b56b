//! The algebra description format.
//!
//! ```text
//! # comment
//! ring char=0 vars=x,y
//! split h=1
//! gen w=2 x^2 + y^3
//! ```

use std::fmt;

use reesalg::{parse_poly, Error, Field, PolyRing, ReesAlgebra, Ring, Split, WeightedGen};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FileError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for FileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for FileError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraFile {
    pub algebra: ReesAlgebra,
    pub split: Option<Split>,
}

fn err(line: usize, message: impl Into<String>) -> FileError {
    FileError {
        line,
        message: message.into(),
    }
}

/// Splits `key=value` tokens, rejecting unknown or repeated keys.
fn key_values<'a>(line: usize, tokens: &[&'a str], keys: &[&str]) -> Result<Vec<&'a str>, FileError> {
    let mut out: Vec<Option<&str>> = vec![None; keys.len()];
    for tok in tokens {
        let (k, v) = tok
            .split_once('=')
            .ok_or_else(|| err(line, format!("expected key=value, found `{tok}`")))?;
        let i = keys
            .iter()
            .position(|x| *x == k)
            .ok_or_else(|| err(line, format!("unknown key `{k}`")))?;
        if out[i].replace(v).is_some() {
            return Err(err(line, format!("repeated key `{k}`")));
        }
    }
    out.iter()
        .zip(keys)
        .map(|(v, k)| v.ok_or_else(|| err(line, format!("missing key `{k}`"))))
        .collect()
}

fn positive(line: usize, key: &str, v: &str) -> Result<u32, FileError> {
    match v.parse::<u32>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(err(line, format!("`{key}` must be a positive integer, found `{v}`"))),
    }
}

impl AlgebraFile {
    pub fn ring(&self) -> &Ring {
        self.algebra.ring()
    }

    pub fn parse(text: &str) -> Result<Self, FileError> {
        let mut ring: Option<Ring> = None;
        let mut split: Option<(usize, Split)> = None;
        let mut gens: Vec<WeightedGen> = Vec::new();
        let mut last = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            last = line;
            let body = raw.split('#').next().unwrap_or("");
            let trimmed = body.trim();
            if trimmed.is_empty() {
                continue;
            }
            let (head, rest) = trimmed.split_once(char::is_whitespace).unwrap_or((trimmed, ""));
            match head {
                "ring" => {
                    if ring.is_some() {
                        return Err(err(line, "repeated ring line"));
                    }
                    let tokens: Vec<&str> = rest.split_whitespace().collect();
                    let kv = key_values(line, &tokens, &["char", "vars"])?;
                    let char: u64 = kv[0]
                        .parse()
                        .map_err(|_| err(line, format!("bad characteristic `{}`", kv[0])))?;
                    let field = Field::with_characteristic(char).map_err(|e| err(line, e.to_string()))?;
                    let vars: Vec<&str> = kv[1].split(',').collect();
                    ring = Some(PolyRing::new(field, &vars).map_err(|e| err(line, e.to_string()))?);
                }
                "split" => {
                    let r = ring.as_ref().ok_or_else(|| err(line, "split before ring line"))?;
                    if split.is_some() {
                        return Err(err(line, "repeated split line"));
                    }
                    let tokens: Vec<&str> = rest.split_whitespace().collect();
                    let h = positive(line, "h", key_values(line, &tokens, &["h"])?[0])? as usize;
                    let s = Split::new(h);
                    s.validate(r.dim()).map_err(|e| err(line, e.to_string()))?;
                    split = Some((line, s));
                }
                "gen" => {
                    let r = ring.as_ref().ok_or_else(|| err(line, "gen before ring line"))?;
                    let rest = rest.trim_start();
                    let (wtok, poly) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
                    let w = match wtok.strip_prefix("w=") {
                        Some(v) => positive(line, "w", v)?,
                        None => return Err(err(line, "gen line must start with w=<weight>")),
                    };
                    if poly.trim().is_empty() {
                        return Err(err(line, "gen line has no polynomial"));
                    }
                    let p = parse_poly(poly, r).map_err(|e| match e {
                        Error::Parse { offset, message } => {
                            let column = poly.as_ptr() as usize - raw.as_ptr() as usize + offset + 1;
                            err(line, format!("column {column}: {message}"))
                        }
                        other => err(line, other.to_string()),
                    })?;
                    gens.push(WeightedGen::new(p, w));
                }
                other => return Err(err(line, format!("unknown directive `{other}`"))),
            }
        }
        let ring = ring.ok_or_else(|| err(last.max(1), "missing ring line"))?;
        let algebra = ReesAlgebra::new(&ring, gens).map_err(|e| err(last.max(1), e.to_string()))?;
        Ok(AlgebraFile {
            algebra,
            split: split.map(|(_, s)| s),
        })
    }

    pub fn from_algebra(algebra: ReesAlgebra, split: Option<Split>) -> Self {
        AlgebraFile { algebra, split }
    }
}

pub fn ring_header(ring: &Ring) -> String {
    format!(
        "ring char={} vars={}",
        ring.field().characteristic(),
        ring.vars().join(",")
    )
}

impl fmt::Display for AlgebraFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", ring_header(self.ring()))?;
        if let Some(s) = self.split {
            writeln!(f, "split h={}", s.h)?;
        }
        for g in self.algebra.gens() {
            writeln!(f, "gen w={} {}", g.weight, g.poly)?;
        }
        Ok(())
    }
}
