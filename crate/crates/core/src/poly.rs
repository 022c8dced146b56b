//! Sparse multivariate polynomials over an exact field.
//!
//! Terms are kept sorted in descending graded-reverse-lexicographic order with
//! no zero coefficients, so structural equality is polynomial equality.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::ring::{ExpVector, Ring};

/// Order of vanishing: a natural number, or infinity for the zero polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VanishingOrder {
    Finite(u32),
    Infinite,
}

impl VanishingOrder {
    pub fn finite(self) -> Option<u32> {
        match self {
            VanishingOrder::Finite(n) => Some(n),
            VanishingOrder::Infinite => None,
        }
    }
}

impl std::ops::Add for VanishingOrder {
    type Output = VanishingOrder;
    fn add(self, rhs: VanishingOrder) -> VanishingOrder {
        match (self, rhs) {
            (VanishingOrder::Finite(a), VanishingOrder::Finite(b)) => VanishingOrder::Finite(a + b),
            _ => VanishingOrder::Infinite,
        }
    }
}

impl fmt::Display for VanishingOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VanishingOrder::Finite(n) => write!(f, "{n}"),
            VanishingOrder::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    ring: Ring,
    terms: Vec<(ExpVector, Scalar)>,
}

impl Poly {
    pub fn zero(ring: &Ring) -> Poly {
        Poly {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Ring, c: Scalar) -> Poly {
        Poly::monomial(ring, ExpVector::zero(ring.dim()), c)
    }

    pub fn one(ring: &Ring) -> Poly {
        Poly::constant(ring, ring.field().one())
    }

    pub fn from_i64(ring: &Ring, n: i64) -> Poly {
        Poly::constant(ring, ring.field().from_i64(n))
    }

    pub fn var(ring: &Ring, i: usize) -> Poly {
        Poly::monomial(ring, ExpVector::unit(ring.dim(), i), ring.field().one())
    }

    pub fn monomial(ring: &Ring, exp: ExpVector, c: Scalar) -> Poly {
        assert_eq!(exp.len(), ring.dim(), "exponent length must match the ring");
        let terms = if c.is_zero() { Vec::new() } else { vec![(exp, c)] };
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a polynomial from arbitrary terms, combining repeated exponents.
    pub fn from_terms<I>(ring: &Ring, terms: I) -> Poly
    where
        I: IntoIterator<Item = (ExpVector, Scalar)>,
    {
        let mut acc: HashMap<ExpVector, Scalar> = HashMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), ring.dim(), "exponent length must match the ring");
            match acc.get_mut(&e) {
                Some(v) => *v = &*v + &c,
                None => {
                    acc.insert(e, c);
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| b.0.grevlex_cmp(&a.0));
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn field(&self) -> Field {
        self.ring.field()
    }

    /// Terms in descending grevlex order.
    pub fn terms(&self) -> &[(ExpVector, Scalar)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(ExpVector, Scalar)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(e, _)| e.is_zero())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of `x^exp`.
    pub fn coeff(&self, exp: &ExpVector) -> Scalar {
        self.terms
            .iter()
            .find(|(e, _)| e == exp)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.field().zero())
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&ExpVector::zero(self.ring.dim()))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.first().map(|(e, _)| e.degree())
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.iter().map(|(e, _)| e.0[var]).max()
    }

    /// Order at the origin: the least total degree in the support.
    pub fn order(&self) -> VanishingOrder {
        self.terms
            .iter()
            .map(|(e, _)| e.degree())
            .min()
            .map_or(VanishingOrder::Infinite, VanishingOrder::Finite)
    }

    pub fn same_ring(&self, other: &Poly) -> Result<()> {
        if std::sync::Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn leading(&self) -> Option<&(ExpVector, Scalar)> {
        self.terms.first()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.combine(other, true)
    }

    fn combine(&self, other: &Poly, negate: bool) -> Poly {
        debug_assert!(self.same_ring(other).is_ok());
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let ord = if i == a.len() {
                Ordering::Less
            } else if j == b.len() {
                Ordering::Greater
            } else {
                a[i].0.grevlex_cmp(&b[j].0)
            };
            match ord {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Poly {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn neg(&self) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    /// Multiplication by `c * x^exp`; grevlex is compatible with it so the
    /// term order survives.
    pub fn mul_term(&self, exp: &ExpVector, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, a)| (e.add(exp), a * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        debug_assert!(self.same_ring(other).is_ok());
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.ring);
        }
        if other.terms.len() == 1 {
            let (e, c) = &other.terms[0];
            return self.mul_term(e, c);
        }
        let mut acc: HashMap<ExpVector, Scalar> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.add(eb);
                let c = ca * cb;
                match acc.get_mut(&e) {
                    Some(v) => *v = &*v + &c,
                    None => {
                        acc.insert(e, c);
                    }
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| b.0.grevlex_cmp(&a.0));
        Poly {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Divides by the leading coefficient. Zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.terms.first() {
            Some((_, c)) if !c.is_one() => self.scale(&c.inv()),
            _ => self.clone(),
        }
    }

    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar> {
        self.ring.check_dim(point.len())?;
        let mut acc = self.field().zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(&e.0) {
                if k > 0 {
                    t = &t * &x.pow(k);
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// `f(x + p)`.
    pub fn shift(&self, point: &[Scalar]) -> Result<Poly> {
        self.ring.check_dim(point.len())?;
        if point.iter().all(Scalar::is_zero) {
            return Ok(self.clone());
        }
        let images: Vec<Poly> = point
            .iter()
            .enumerate()
            .map(|(i, c)| Poly::var(&self.ring, i).add(&Poly::constant(&self.ring, c.clone())))
            .collect();
        self.substitute(&images)
    }

    /// Order of vanishing at `point`: the largest `b` with `f` in `M_p^b`.
    pub fn order_at(&self, point: &[Scalar]) -> Result<VanishingOrder> {
        Ok(self.shift(point)?.order())
    }

    /// Hasse derivative: the coefficient of `U^alpha` in `f(x + U)`.
    pub fn hasse(&self, alpha: &ExpVector) -> Result<Poly> {
        self.ring.check_dim(alpha.len())?;
        let field = self.field();
        let terms = self.terms.iter().filter_map(|(e, c)| {
            let rest = e.checked_sub(alpha)?;
            let mut coeff = c.clone();
            for (&n, &k) in e.0.iter().zip(&alpha.0) {
                if k > 0 {
                    coeff = &coeff * &field.binomial(n, k);
                }
            }
            Some((rest, coeff))
        });
        Ok(Poly::from_terms(&self.ring, terms))
    }

    /// Logarithmic Hasse derivative `x^alpha * hasse(alpha)`: the coefficient
    /// of `U^alpha` under `x_i -> x_i (1 + U_i)`.
    pub fn log_hasse(&self, alpha: &ExpVector) -> Result<Poly> {
        self.ring.check_dim(alpha.len())?;
        let field = self.field();
        let terms = self.terms.iter().map(|(e, c)| {
            let mut coeff = c.clone();
            for (&n, &k) in e.0.iter().zip(&alpha.0) {
                if k > 0 {
                    coeff = &coeff * &field.binomial(n, k);
                }
            }
            (e.clone(), coeff)
        });
        Ok(Poly::from_terms(&self.ring, terms))
    }

    /// Ring homomorphism `x_i -> images[i]`.
    pub fn substitute(&self, images: &[Poly]) -> Result<Poly> {
        if images.len() != self.ring.dim() {
            return Err(Error::ImageCount {
                expected: self.ring.dim(),
                got: images.len(),
            });
        }
        let target = match images.first() {
            Some(p) => p.ring.clone(),
            None => unreachable!("rings have at least one variable"),
        };
        for img in images {
            if img.ring != target {
                return Err(Error::RingMismatch);
            }
        }
        if target.field() != self.field() {
            return Err(Error::RingMismatch);
        }
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(&target), p.clone()]).collect();
        let mut acc = Poly::zero(&target);
        for (e, c) in &self.terms {
            let mut t = Poly::constant(&target, c.clone());
            for (i, &k) in e.0.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                while cache.len() <= k as usize {
                    let next = cache.last().unwrap().mul(&cache[1]);
                    cache.push(next);
                }
                t = t.mul(&cache[k as usize]);
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Sets the first `h` variables to zero and reads the result in the ring
    /// of the trailing variables.
    pub fn restrict_leading(&self, h: usize, target: &Ring) -> Result<Poly> {
        target.check_dim(self.ring.dim() - h.min(self.ring.dim()))?;
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e.0[..h].iter().all(|&k| k == 0))
            .map(|(e, c)| (ExpVector(e.0[h..].to_vec()), c.clone()));
        Ok(Poly::from_terms(target, terms))
    }

    /// Reads the polynomial in a ring whose variable list starts with this
    /// ring's variables.
    pub fn embed(&self, target: &Ring) -> Result<Poly> {
        let d = self.ring.dim();
        if target.dim() < d || target.vars()[..d] != *self.ring.vars() || target.field() != self.field() {
            return Err(Error::RingMismatch);
        }
        let extra = target.dim() - d;
        let terms = self.terms.iter().map(|(e, c)| {
            let mut v = e.0.clone();
            v.extend(std::iter::repeat_n(0, extra));
            (ExpVector(v), c.clone())
        });
        Ok(Poly::from_terms(target, terms))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || e.is_zero() {
                factors.push(abs.to_string());
            }
            for (name, &k) in self.ring.vars().iter().zip(&e.0) {
                match k {
                    0 => {}
                    1 => factors.push(name.clone()),
                    _ => factors.push(format!("{name}^{k}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}
