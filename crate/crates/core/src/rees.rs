//! Rees algebras `⊕ I_k W^k ⊂ B[W]` presented by weighted generators.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::grobner::{buchberger, GroebnerBasis, MonomialOrder};
use crate::poly::Poly;
use crate::ring::Ring;

/// Default cap on the number of factors in a graded-piece product.
pub const DEFAULT_FACTOR_CAP: u32 = 12;

/// A generator `g W^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightedGen {
    pub poly: Poly,
    pub weight: u32,
}

impl WeightedGen {
    pub fn new(poly: Poly, weight: u32) -> Self {
        WeightedGen { poly, weight }
    }
}

impl fmt::Display for WeightedGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})*W^{}", self.poly, self.weight)
    }
}

/// The `B`-subalgebra of `B[W]` generated by finitely many `g_i W^{n_i}`.
///
/// Zero generators and repeated `(g, n)` pairs are dropped on construction;
/// the remaining generators keep their input order. Two different
/// presentations may define the same algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReesAlgebra {
    ring: Ring,
    gens: Vec<WeightedGen>,
}

impl ReesAlgebra {
    pub fn new(ring: &Ring, gens: impl IntoIterator<Item = WeightedGen>) -> Result<Self> {
        let mut kept: Vec<WeightedGen> = Vec::new();
        for g in gens {
            if g.weight == 0 {
                return Err(Error::ZeroWeight);
            }
            if **g.poly.ring() != **ring {
                return Err(Error::RingMismatch);
            }
            if g.poly.is_zero() || kept.contains(&g) {
                continue;
            }
            kept.push(g);
        }
        Ok(ReesAlgebra {
            ring: ring.clone(),
            gens: kept,
        })
    }

    /// Shorthand for tests and examples: `(poly, weight)` pairs.
    pub fn from_pairs(ring: &Ring, pairs: impl IntoIterator<Item = (Poly, u32)>) -> Result<Self> {
        Self::new(ring, pairs.into_iter().map(|(p, w)| WeightedGen::new(p, w)))
    }

    pub fn zero(ring: &Ring) -> Self {
        ReesAlgebra {
            ring: ring.clone(),
            gens: Vec::new(),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[WeightedGen] {
        &self.gens
    }

    /// True when every `I_k`, `k >= 1`, is zero.
    pub fn is_zero_algebra(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn max_weight(&self) -> u32 {
        self.gens.iter().map(|g| g.weight).max().unwrap_or(0)
    }

    /// This presentation with additional generators appended.
    pub fn adjoin(&self, extra: impl IntoIterator<Item = WeightedGen>) -> Result<Self> {
        Self::new(&self.ring, self.gens.iter().cloned().chain(extra))
    }
}

impl fmt::Display for ReesAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// `{g_i W^{n'} : 1 <= n' <= n_i}`, a presentation of `⊕ I'_k W^k` with
/// `I'_k = Σ_{r >= k} I_r`.
pub fn saturate_weights(g: &ReesAlgebra) -> ReesAlgebra {
    let gens = g
        .gens
        .iter()
        .flat_map(|wg| (1..=wg.weight).map(move |w| WeightedGen::new(wg.poly.clone(), w)));
    ReesAlgebra::new(&g.ring, gens).expect("weights stay positive")
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum PieceMode {
    /// `I_N`: products of total weight exactly `N`.
    #[default]
    Exact,
    /// `I'_N = Σ_{r >= N} I_r`.
    Saturated,
}

/// Generators of one graded piece.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPiece {
    pub degree: u32,
    pub mode: PieceMode,
    pub gens: Vec<Poly>,
}

pub fn graded_piece(g: &ReesAlgebra, n: u32, mode: PieceMode) -> Result<GradedPiece> {
    graded_piece_with_cap(g, n, mode, DEFAULT_FACTOR_CAP)
}

/// Enumerates the products `Π g_i^{a_i}` whose weight `Σ a_i n_i` is `N`
/// (exact mode) or lies in `[N, N + max n_i - 1]` (saturated mode).
///
/// Products are deduplicated and any product divisible by an earlier
/// surviving one is dropped; the generated ideal is unchanged.
pub fn graded_piece_with_cap(g: &ReesAlgebra, n: u32, mode: PieceMode, cap: u32) -> Result<GradedPiece> {
    if n == 0 {
        return Err(Error::ZeroWeight);
    }
    let hi = match mode {
        PieceMode::Exact => n,
        PieceMode::Saturated => n + g.max_weight().max(1) - 1,
    };
    let weights: Vec<u32> = g.gens.iter().map(|w| w.weight).collect();
    let mut exps: Vec<Vec<u32>> = Vec::new();
    let mut cur = vec![0u32; weights.len()];
    compositions(&weights, 0, 0, n, hi, &mut cur, &mut exps);
    let mut products: Vec<Poly> = Vec::new();
    for a in &exps {
        let factors: u32 = a.iter().sum();
        if factors > cap {
            return Err(Error::FactorCap { degree: n, cap });
        }
        let mut p = Poly::one(&g.ring);
        for (wg, &k) in g.gens.iter().zip(a) {
            if k > 0 {
                p = p.mul(&wg.poly.pow(k));
            }
        }
        if !p.is_zero() {
            products.push(p);
        }
    }
    Ok(GradedPiece {
        degree: n,
        mode,
        gens: prune_multiples(products),
    })
}

fn compositions(weights: &[u32], i: usize, acc: u32, lo: u32, hi: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if i == weights.len() {
        if acc >= lo && acc <= hi {
            out.push(cur.clone());
        }
        return;
    }
    let max = (hi - acc) / weights[i];
    for k in (0..=max).rev() {
        cur[i] = k;
        compositions(weights, i + 1, acc + k * weights[i], lo, hi, cur, out);
    }
    cur[i] = 0;
}

fn prune_multiples(products: Vec<Poly>) -> Vec<Poly> {
    let mut kept: Vec<Poly> = Vec::new();
    for p in products {
        // surviving products that are multiples of `p` are replaced by it
        let divides_p = kept.iter().any(|q| divides(q, &p));
        if divides_p {
            continue;
        }
        kept.retain(|q| !divides(&p, q));
        kept.push(p);
    }
    kept
}

/// `d | f` in the polynomial ring; a single polynomial is a Gröbner basis of
/// the principal ideal it generates.
fn divides(d: &Poly, f: &Poly) -> bool {
    match (d.leading(), f.leading()) {
        (_, None) => true,
        (None, Some(_)) => false,
        (Some((ld, _)), Some((lf, _))) => {
            if !ld.divides(lf) {
                return false;
            }
            buchberger(std::slice::from_ref(d), MonomialOrder::Grevlex)
                .contains(f)
                .expect("same ring")
        }
    }
}

/// Caches reduced Gröbner bases of the graded pieces of one algebra.
///
/// `I_N` is built as `Σ_i g_i · I_{N - n_i}` with `I_0 = B`, which generates
/// the same ideal as the product enumeration without listing every product.
#[derive(Clone, Debug)]
pub struct PieceOracle {
    algebra: ReesAlgebra,
    exact: HashMap<u32, GroebnerBasis>,
    saturated: HashMap<u32, GroebnerBasis>,
}

impl PieceOracle {
    pub fn new(algebra: &ReesAlgebra) -> Self {
        PieceOracle {
            algebra: algebra.clone(),
            exact: HashMap::new(),
            saturated: HashMap::new(),
        }
    }

    pub fn algebra(&self) -> &ReesAlgebra {
        &self.algebra
    }

    pub fn piece(&mut self, n: u32, mode: PieceMode) -> &GroebnerBasis {
        match mode {
            PieceMode::Exact => self.exact_piece(n),
            PieceMode::Saturated => {
                if !self.saturated.contains_key(&n) {
                    let hi = n + self.algebra.max_weight().max(1) - 1;
                    let mut gens: Vec<Poly> = Vec::new();
                    for r in n..=hi {
                        gens.extend(self.exact_piece(r).basis().iter().cloned());
                    }
                    let gb = basis_of(&self.algebra.ring, &gens);
                    self.saturated.insert(n, gb);
                }
                &self.saturated[&n]
            }
        }
    }

    fn exact_piece(&mut self, n: u32) -> &GroebnerBasis {
        if !self.exact.contains_key(&n) {
            let ring = self.algebra.ring.clone();
            let gb = if n == 0 {
                basis_of(&ring, &[Poly::one(&ring)])
            } else {
                let mut gens: Vec<Poly> = Vec::new();
                let algebra = self.algebra.clone();
                for wg in &algebra.gens {
                    if wg.weight > n {
                        continue;
                    }
                    let lower = self.exact_piece(n - wg.weight).basis().to_vec();
                    gens.extend(lower.iter().map(|b| b.mul(&wg.poly)));
                }
                basis_of(&ring, &gens)
            };
            self.exact.insert(n, gb);
        }
        &self.exact[&n]
    }

    pub fn contains(&mut self, f: &Poly, n: u32, mode: PieceMode) -> Result<bool> {
        if n == 0 {
            return Err(Error::ZeroWeight);
        }
        f.same_ring(&Poly::zero(&self.algebra.ring))?;
        self.piece(n, mode).contains(f)
    }
}

fn basis_of(ring: &Ring, gens: &[Poly]) -> GroebnerBasis {
    if gens.is_empty() {
        return crate::grobner::zero_ideal(ring, MonomialOrder::Grevlex);
    }
    buchberger(gens, MonomialOrder::Grevlex)
}

/// Reduced Gröbner basis of a graded piece.
pub fn piece_ideal(g: &ReesAlgebra, n: u32, mode: PieceMode) -> Result<GroebnerBasis> {
    if n == 0 {
        return Err(Error::ZeroWeight);
    }
    Ok(PieceOracle::new(g).piece(n, mode).clone())
}

/// Whether `f ∈ I_N` (or `I'_N` in saturated mode).
pub fn piece_member(f: &Poly, g: &ReesAlgebra, n: u32, mode: PieceMode) -> Result<bool> {
    PieceOracle::new(g).contains(f, n, mode)
}

/// Bounded equality: equal reduced bases of the graded pieces `1..=bound`.
pub fn pieces_equal(a: &ReesAlgebra, b: &ReesAlgebra, bound: u32, mode: PieceMode) -> Result<bool> {
    if a.ring != b.ring {
        return Err(Error::RingMismatch);
    }
    let (mut oa, mut ob) = (PieceOracle::new(a), PieceOracle::new(b));
    for n in 1..=bound {
        if oa.piece(n, mode) != ob.piece(n, mode) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The Rees ring of `I_M`: generators of the exact piece `M`, all of weight `M`.
pub fn veronese(g: &ReesAlgebra, m: u32) -> Result<ReesAlgebra> {
    if m == 0 || g.gens.iter().any(|wg| !m.is_multiple_of(wg.weight)) {
        return Err(Error::NotCommonMultiple(m));
    }
    let piece = graded_piece(g, m, PieceMode::Exact)?;
    ReesAlgebra::new(&g.ring, piece.gens.into_iter().map(|p| WeightedGen::new(p, m)))
}

/// The element `g W^{k-1}` together with its monic relation
/// `Z^k - g^k W^{k(k-1)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralWitness {
    pub element: WeightedGen,
    pub degree: u32,
    /// Constant coefficient `g^k` of the relation, sitting in weight `k(k-1)`.
    pub tail: WeightedGen,
}

impl IntegralWitness {
    /// Checks `element^k = tail` in `B[W]`.
    pub fn holds(&self) -> bool {
        self.element.poly.pow(self.degree) == self.tail.poly && self.element.weight * self.degree == self.tail.weight
    }
}

impl fmt::Display for IntegralWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "element ({})*W^{}; relation Z^{}",
            self.element.poly, self.element.weight, self.degree
        )?;
        if !self.tail.poly.is_zero() {
            write!(f, " - ({})*W^{}", self.tail.poly, self.tail.weight)?;
        }
        Ok(())
    }
}

pub fn integral_witness(g: &Poly, k: u32) -> Result<IntegralWitness> {
    if k < 2 {
        return Err(Error::WitnessDegree(k));
    }
    Ok(IntegralWitness {
        element: WeightedGen::new(g.clone(), k - 1),
        degree: k,
        tail: WeightedGen::new(g.pow(k), k * (k - 1)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::parse::parse_poly;
    use crate::ring::PolyRing;

    fn ring(char: u64, vars: &[&str]) -> Ring {
        PolyRing::new(Field::with_characteristic(char).unwrap(), vars).unwrap()
    }

    fn alg(r: &Ring, gens: &[(&str, u32)]) -> ReesAlgebra {
        ReesAlgebra::from_pairs(r, gens.iter().map(|(s, w)| (parse_poly(s, r).unwrap(), *w))).unwrap()
    }

    fn p(r: &Ring, s: &str) -> Poly {
        parse_poly(s, r).unwrap()
    }

    #[test]
    fn construction_drops_zero_and_duplicates() {
        let r = ring(0, &["x"]);
        let g = alg(&r, &[("x", 1), ("0", 2), ("x", 1), ("x", 2)]);
        assert_eq!(g.gens().len(), 2);
        assert!(ReesAlgebra::from_pairs(&r, [(p(&r, "x"), 0)]).is_err());
        let other = ring(0, &["y"]);
        assert_eq!(
            ReesAlgebra::from_pairs(&r, [(p(&other, "y"), 1)]),
            Err(Error::RingMismatch)
        );
    }

    #[test]
    fn saturation_examples() {
        let r = ring(0, &["x"]);
        assert_eq!(
            saturate_weights(&alg(&r, &[("x^2", 2)])),
            alg(&r, &[("x^2", 1), ("x^2", 2)])
        );
        assert_eq!(saturate_weights(&alg(&r, &[("x", 1)])), alg(&r, &[("x", 1)]));
        assert_eq!(
            saturate_weights(&alg(&r, &[("x^3", 3)])),
            alg(&r, &[("x^3", 1), ("x^3", 2), ("x^3", 3)])
        );
    }

    #[test]
    fn graded_piece_examples() {
        let r = ring(0, &["x"]);
        let g = alg(&r, &[("x^2", 2)]);
        assert_eq!(graded_piece(&g, 4, PieceMode::Exact).unwrap().gens, vec![p(&r, "x^4")]);
        assert!(graded_piece(&g, 3, PieceMode::Exact).unwrap().gens.is_empty());
        let s = saturate_weights(&g);
        assert_eq!(graded_piece(&s, 3, PieceMode::Exact).unwrap().gens, vec![p(&r, "x^4")]);
        assert!(graded_piece(&g, 0, PieceMode::Exact).is_err());
    }

    #[test]
    fn factor_cap_is_loud() {
        let r = ring(0, &["x"]);
        let g = alg(&r, &[("x", 1)]);
        assert!(graded_piece(&g, 12, PieceMode::Exact).is_ok());
        assert_eq!(
            graded_piece(&g, 13, PieceMode::Exact),
            Err(Error::FactorCap { degree: 13, cap: 12 })
        );
    }

    #[test]
    fn piece_member_examples() {
        let r = ring(0, &["x"]);
        let g = alg(&r, &[("x^2", 2)]);
        assert!(piece_member(&p(&r, "x^5"), &g, 4, PieceMode::Exact).unwrap());
        assert!(!piece_member(&p(&r, "x^3"), &g, 4, PieceMode::Exact).unwrap());
        let f2 = ring(2, &["x"]);
        let g2 = alg(&f2, &[("x^2", 2)]);
        assert!(piece_member(&p(&f2, "2*x"), &g2, 3, PieceMode::Exact).unwrap());
        let other = ring(0, &["y"]);
        assert!(piece_member(&p(&other, "y"), &g, 1, PieceMode::Exact).is_err());
    }

    #[test]
    fn oracle_matches_enumeration() {
        let r = ring(0, &["x", "y"]);
        let g = alg(&r, &[("x^2 + y", 2), ("x*y", 1), ("y^2 - x", 3)]);
        for n in 1..=6 {
            for mode in [PieceMode::Exact, PieceMode::Saturated] {
                let enumerated = graded_piece(&g, n, mode).unwrap();
                let from_products = if enumerated.gens.is_empty() {
                    crate::grobner::zero_ideal(&r, MonomialOrder::Grevlex)
                } else {
                    buchberger(&enumerated.gens, MonomialOrder::Grevlex)
                };
                assert_eq!(from_products, piece_ideal(&g, n, mode).unwrap(), "piece {n} {mode:?}");
            }
        }
    }

    #[test]
    fn saturated_window_matches_wider_window() {
        let r = ring(0, &["x", "y"]);
        let g = alg(&r, &[("x^2 + y", 3), ("x*y", 1)]);
        for n in 1..=5 {
            let narrow = piece_ideal(&g, n, PieceMode::Saturated).unwrap();
            let mut wide: Vec<Poly> = Vec::new();
            for k in n..n + 8 {
                wide.extend(graded_piece(&g, k, PieceMode::Exact).unwrap().gens);
            }
            assert_eq!(narrow, buchberger(&wide, MonomialOrder::Grevlex));
        }
    }

    #[test]
    fn veronese_examples() {
        let r = ring(0, &["x", "y"]);
        assert_eq!(veronese(&alg(&r, &[("x", 1)]), 2).unwrap(), alg(&r, &[("x^2", 2)]));
        assert_eq!(veronese(&alg(&r, &[("x^2", 2)]), 2).unwrap(), alg(&r, &[("x^2", 2)]));
        assert_eq!(
            veronese(&alg(&r, &[("x", 1), ("y", 2)]), 2).unwrap(),
            alg(&r, &[("x^2", 2), ("y", 2)])
        );
        assert_eq!(veronese(&alg(&r, &[("x", 2)]), 3), Err(Error::NotCommonMultiple(3)));
    }

    #[test]
    fn integral_witness_examples() {
        let r = ring(0, &["x", "y"]);
        let w = integral_witness(&p(&r, "x^2"), 2).unwrap();
        assert_eq!(w.element, WeightedGen::new(p(&r, "x^2"), 1));
        assert_eq!(w.tail, WeightedGen::new(p(&r, "x^4"), 2));
        assert!(w.holds());
        assert_eq!(w.to_string(), "element (x^2)*W^1; relation Z^2 - (x^4)*W^2");
        let w = integral_witness(&p(&r, "y^3"), 3).unwrap();
        assert_eq!(w.element.weight, 2);
        assert_eq!(w.tail, WeightedGen::new(p(&r, "y^9"), 6));
        let w = integral_witness(&Poly::zero(&r), 2).unwrap();
        assert_eq!(w.to_string(), "element (0)*W^1; relation Z^2");
        assert_eq!(integral_witness(&p(&r, "x"), 1), Err(Error::WitnessDegree(1)));
    }
}
