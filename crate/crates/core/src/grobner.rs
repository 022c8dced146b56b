//! Ideal membership through reduced Gröbner bases, plus an independent
//! degree-bounded linear-algebra membership test used to cross-check it.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};

use crate::error::Result;
use crate::field::Scalar;
use crate::poly::Poly;
use crate::ring::{ExpVector, Ring};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    #[default]
    Grevlex,
    Lex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &ExpVector, b: &ExpVector) -> Ordering {
        match self {
            MonomialOrder::Grevlex => a.grevlex_cmp(b),
            MonomialOrder::Lex => a.lex_cmp(b),
        }
    }
}

type Terms = Vec<(ExpVector, Scalar)>;

/// Reduced Gröbner basis of an ideal. Basis elements are monic and sorted by
/// descending leading monomial, so two bases of the same ideal under the same
/// order compare equal.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Ring,
    order: MonomialOrder,
    basis: Vec<Poly>,
    sorted: Vec<Terms>,
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.order == other.order && self.basis == other.basis
    }
}

impl Eq for GroebnerBasis {}

impl GroebnerBasis {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn basis(&self) -> &[Poly] {
        &self.basis
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant()
    }

    pub fn normal_form(&self, f: &Poly) -> Result<Poly> {
        f.same_ring(&Poly::zero(&self.ring))?;
        let terms = sort_terms(f, self.order);
        let rem = reduce(terms, &self.sorted, self.order);
        Ok(Poly::from_terms(&self.ring, rem))
    }

    pub fn contains(&self, f: &Poly) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Ideal containment `⟨other⟩ ⊆ ⟨self⟩`.
    pub fn contains_ideal(&self, other: &GroebnerBasis) -> Result<bool> {
        for g in &other.basis {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn sort_terms(f: &Poly, order: MonomialOrder) -> Terms {
    let mut t = f.terms().to_vec();
    if order != MonomialOrder::Grevlex {
        t.sort_by(|a, b| order.cmp(&b.0, &a.0));
    }
    t
}

/// `a - c * x^shift * b` for term lists sorted descending in `order`.
fn sub_scaled(
    a: &[(ExpVector, Scalar)],
    b: &[(ExpVector, Scalar)],
    shift: &ExpVector,
    c: &Scalar,
    order: MonomialOrder,
) -> Terms {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    for (eb, kb) in b {
        let e = eb.add(shift);
        let k = kb * c;
        while i < a.len() && order.cmp(&a[i].0, &e) == Ordering::Greater {
            out.push(a[i].clone());
            i += 1;
        }
        if i < a.len() && a[i].0 == e {
            let v = &a[i].1 - &k;
            if !v.is_zero() {
                out.push((e, v));
            }
            i += 1;
        } else {
            out.push((e, -&k));
        }
    }
    out.extend_from_slice(&a[i..]);
    out
}

/// Full reduction of `f` by monic divisors.
fn reduce(mut f: Terms, divisors: &[Terms], order: MonomialOrder) -> Terms {
    let mut rem: Terms = Vec::new();
    while !f.is_empty() {
        let (lead, c) = f[0].clone();
        let hit = divisors.iter().find(|g| g[0].0.divides(&lead));
        match hit {
            Some(g) => {
                let shift = lead.checked_sub(&g[0].0).unwrap();
                f = sub_scaled(&f, g, &shift, &c, order);
            }
            None => {
                rem.push(f.remove(0));
            }
        }
    }
    rem
}

fn make_monic(mut t: Terms) -> Terms {
    if let Some((_, c)) = t.first() {
        if !c.is_one() {
            let inv = c.inv();
            for (_, k) in t.iter_mut() {
                *k = &*k * &inv;
            }
        }
    }
    t
}

fn s_poly(f: &Terms, g: &Terms, order: MonomialOrder) -> Terms {
    let lcm = f[0].0.lcm(&g[0].0);
    let sf = lcm.checked_sub(&f[0].0).unwrap();
    let sg = lcm.checked_sub(&g[0].0).unwrap();
    let one = f[0].1.field().one();
    let zero: Terms = Vec::new();
    let a = sub_scaled(&zero, f, &sf, &one, order);
    // a = -x^sf f, so a + x^sg g = x^sg g - x^sf f
    let neg_one = -&one;
    sub_scaled(&a, g, &sg, &neg_one, order)
}

/// Reduced Gröbner basis of the ideal generated by `gens` (zeros ignored).
///
/// Pairs are processed by the normal strategy: smallest lcm of leading
/// monomials first, ties broken by pair index. Buchberger's coprime and chain
/// criteria discard redundant pairs.
pub fn buchberger(gens: &[Poly], order: MonomialOrder) -> GroebnerBasis {
    let ring = gens
        .first()
        .map(|g| g.ring().clone())
        .expect("buchberger needs at least one generator");
    let mut basis: Vec<Terms> = Vec::new();
    for g in gens {
        debug_assert!(g.same_ring(&gens[0]).is_ok());
        if g.is_zero() {
            continue;
        }
        let t = make_monic(sort_terms(g, order));
        if t[0].0.is_zero() {
            return finish(&ring, order, vec![t]);
        }
        basis.push(t);
    }
    let mut pairs: HashSet<(usize, usize)> = HashSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.insert((i, j));
        }
    }
    while !pairs.is_empty() {
        let &(i, j) = pairs
            .iter()
            .min_by(|a, b| {
                let la = basis[a.0][0].0.lcm(&basis[a.1][0].0);
                let lb = basis[b.0][0].0.lcm(&basis[b.1][0].0);
                order
                    .cmp(&la, &lb)
                    .then_with(|| la.degree().cmp(&lb.degree()))
                    .then_with(|| a.cmp(b))
            })
            .unwrap();
        pairs.remove(&(i, j));
        let (li, lj) = (&basis[i][0].0, &basis[j][0].0);
        if li.is_coprime(lj) {
            continue;
        }
        let lcm = li.lcm(lj);
        let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k][0].0.divides(&lcm)
                && !pairs.contains(&key(i, k))
                && !pairs.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        let s = s_poly(&basis[i], &basis[j], order);
        let r = reduce(s, &basis, order);
        if r.is_empty() {
            continue;
        }
        let r = make_monic(r);
        if r[0].0.is_zero() {
            return finish(&ring, order, vec![r]);
        }
        let n = basis.len();
        basis.push(r);
        for k in 0..n {
            pairs.insert((k, n));
        }
    }
    finish(&ring, order, basis)
}

fn finish(ring: &Ring, order: MonomialOrder, basis: Vec<Terms>) -> GroebnerBasis {
    // minimal basis: drop elements whose leading monomial is divisible by another's
    let mut keep: Vec<Terms> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let redundant = basis
            .iter()
            .enumerate()
            .any(|(k, h)| k != i && h[0].0.divides(&g[0].0) && (h[0].0 != g[0].0 || k < i));
        if !redundant {
            keep.push(g.clone());
        }
    }
    // interreduce tails
    let mut reduced: Vec<Terms> = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<Terms> = keep
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, t)| t.clone())
            .collect();
        let head = keep[i][0].clone();
        let tail = reduce(keep[i][1..].to_vec(), &others, order);
        let mut t = vec![head];
        t.extend(tail);
        reduced.push(t);
    }
    reduced.sort_by(|a, b| order.cmp(&b[0].0, &a[0].0));
    let basis = reduced
        .iter()
        .map(|t| Poly::from_terms(ring, t.iter().cloned()))
        .collect();
    GroebnerBasis {
        ring: ring.clone(),
        order,
        basis,
        sorted: reduced,
    }
}

/// Gröbner basis of the zero ideal in `ring`.
pub fn zero_ideal(ring: &Ring, order: MonomialOrder) -> GroebnerBasis {
    GroebnerBasis {
        ring: ring.clone(),
        order,
        basis: Vec::new(),
        sorted: Vec::new(),
    }
}

pub fn ideal_member(f: &Poly, gb: &GroebnerBasis) -> Result<bool> {
    gb.contains(f)
}

/// Decides whether `f = Σ h_i g_i` with `deg h_i <= bound` by exact linear
/// algebra over the field. Sound for membership; complete only up to the bound.
pub fn member_bounded(f: &Poly, gens: &[Poly], bound: u32) -> bool {
    if f.is_zero() {
        return true;
    }
    let ring = f.ring();
    let mut pivots: HashMap<ExpVector, Poly> = HashMap::new();
    let monomials = ExpVector::all_up_to(ring.dim(), bound);
    for g in gens.iter().filter(|g| !g.is_zero()) {
        for m in &monomials {
            let mut v = g.mul_term(m, &ring.field().one());
            while let Some((lead, c)) = v.leading().cloned() {
                match pivots.get(&lead) {
                    Some(p) => v = v.sub(&p.scale(&c)),
                    None => {
                        pivots.insert(lead, v.monic());
                        break;
                    }
                }
            }
        }
    }
    let mut v = f.clone();
    while let Some((lead, c)) = v.leading().cloned() {
        match pivots.get(&lead) {
            Some(p) => v = v.sub(&p.scale(&c)),
            None => return false,
        }
    }
    true
}
