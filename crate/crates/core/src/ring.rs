use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;

/// Shared handle to a polynomial ring. Rings compare by value.
pub type Ring = Arc<PolyRing>;

/// `k[x_1, ..., x_d]` with a fixed variable order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    field: Field,
    vars: Vec<String>,
}

impl PolyRing {
    pub fn new<S: AsRef<str>>(field: Field, vars: &[S]) -> Result<Ring> {
        if vars.is_empty() {
            return Err(Error::InvalidRing("a ring needs at least one variable".into()));
        }
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            if !is_identifier(v) {
                return Err(Error::InvalidRing(format!("`{v}` is not a valid variable name")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidRing(format!("variable `{v}` declared twice")));
            }
        }
        Ok(Arc::new(PolyRing { field, vars }))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// The ring on the variables `x_{h+1}, ..., x_d`.
    pub fn trailing(&self, h: usize) -> Result<Ring> {
        if h >= self.dim() {
            return Err(Error::InvalidSplit { h, dim: self.dim() });
        }
        PolyRing::new(self.field, &self.vars[h..])
    }

    /// This ring with extra variables appended.
    pub fn extended<S: AsRef<str>>(&self, extra: &[S]) -> Result<Ring> {
        let mut vars = self.vars.clone();
        vars.extend(extra.iter().map(|s| s.as_ref().to_string()));
        PolyRing::new(self.field, &vars)
    }

    pub(crate) fn check_dim(&self, len: usize) -> Result<()> {
        if len != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: len,
            });
        }
        Ok(())
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl fmt::Display for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.field, self.vars.join(","))
    }
}

/// Multi-index `(a_1, ..., a_d)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExpVector(pub Vec<u32>);

impl ExpVector {
    pub fn zero(d: usize) -> Self {
        ExpVector(vec![0; d])
    }

    pub fn unit(d: usize, i: usize) -> Self {
        let mut e = vec![0; d];
        e[i] = 1;
        ExpVector(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|a|`, the entry sum.
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &ExpVector) -> ExpVector {
        ExpVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other` when `other <= self` componentwise.
    pub fn checked_sub(&self, other: &ExpVector) -> Option<ExpVector> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(ExpVector)
    }

    pub fn divides(&self, other: &ExpVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &ExpVector) -> ExpVector {
        ExpVector(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &ExpVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Graded reverse lexicographic comparison.
    pub fn grevlex_cmp(&self, other: &ExpVector) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (a, b) in self.0.iter().zip(&other.0).rev() {
            if a != b {
                return b.cmp(a);
            }
        }
        Ordering::Equal
    }

    pub fn lex_cmp(&self, other: &ExpVector) -> Ordering {
        self.0.cmp(&other.0)
    }

    /// All vectors of the given length with entry sum `<= max_degree`, ordered
    /// by degree and then descending lexicographically within a degree.
    pub fn all_up_to(len: usize, max_degree: u32) -> Vec<ExpVector> {
        let mut out = Vec::new();
        for deg in 0..=max_degree {
            out.extend(Self::all_of_degree(len, deg));
        }
        out
    }

    pub fn all_of_degree(len: usize, degree: u32) -> Vec<ExpVector> {
        fn rec(len: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<ExpVector>) {
            if cur.len() + 1 == len {
                cur.push(left);
                out.push(ExpVector(cur.clone()));
                cur.pop();
                return;
            }
            for e in (0..=left).rev() {
                cur.push(e);
                rec(len, left - e, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if len == 0 {
            if degree == 0 {
                out.push(ExpVector(vec![]));
            }
            return out;
        }
        rec(len, degree, &mut Vec::with_capacity(len), &mut out);
        out
    }
}
