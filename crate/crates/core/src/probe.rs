//! Monomial-curve probes. Pulling two algebras back along the curves
//! `x_i -> λ_i t^a`, `x_d -> t^b` and comparing `λ` of the pullbacks refutes
//! equality of integral closures; agreement on every probe is evidence only.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::closure::{diff_close, ClosureOptions};
use crate::coeff::{coefficient_algebra, lambda, LambdaValue, Recipe, Split};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::poly::{Poly, VanishingOrder};
use crate::rees::{integral_witness, saturate_weights, veronese, PieceMode, PieceOracle, ReesAlgebra, WeightedGen};
use crate::ring::{ExpVector, PolyRing, Ring};
use crate::transform::{total_transform, MapKind, RingMap};

/// Draws per trial before a probe is recorded as degenerate.
pub const MAX_DRAWS: u32 = 8;
/// Curves use coprime `(a, b)` with `a + b` at most this.
pub const SCHEDULE_SPAN: u32 = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialCurve {
    pub a: u32,
    pub b: u32,
    /// `λ_1, ..., λ_{d-1}`.
    pub coeffs: Vec<Scalar>,
}

impl MonomialCurve {
    pub fn new(a: u32, b: u32, coeffs: Vec<Scalar>) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::InvalidCurve("weights a and b must be positive".into()));
        }
        if coeffs.iter().any(|c| c.is_zero()) {
            return Err(Error::InvalidCurve("curve coefficients must be nonzero".into()));
        }
        Ok(MonomialCurve { a, b, coeffs })
    }

    /// `l(y) = a(y_1 + ... + y_{d-1}) + b y_d`.
    pub fn weight_of(&self, exp: &ExpVector) -> u32 {
        let d = exp.len();
        exp.0[..d - 1].iter().sum::<u32>() * self.a + exp.0[d - 1] * self.b
    }

    pub fn ring_map(&self, source: &Ring) -> Result<RingMap> {
        if self.coeffs.len() + 1 != source.dim() {
            return Err(Error::DimensionMismatch {
                expected: source.dim() - 1,
                got: self.coeffs.len(),
            });
        }
        if self.coeffs.iter().any(|c| c.field() != source.field()) {
            return Err(Error::RingMismatch);
        }
        let target = PolyRing::new(source.field(), &["t"])?;
        let t = |e: u32, c: Scalar| Poly::monomial(&target, ExpVector(vec![e]), c);
        let mut images: Vec<Poly> = self.coeffs.iter().map(|c| t(self.a, c.clone())).collect();
        images.push(t(self.b, source.field().one()));
        RingMap::with_kind(source, &target, images, MapKind::MonomialCurve)
    }
}

impl fmt::Display for MonomialCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "a={} b={} lambda=[{}]", self.a, self.b, cs.join(","))
    }
}

/// Total transform along the curve; a one-variable algebra in `t`.
pub fn curve_pullback(g: &ReesAlgebra, c: &MonomialCurve) -> Result<ReesAlgebra> {
    total_transform(g, &c.ring_map(g.ring())?)
}

/// Exponents with nonzero coefficient, in descending lexicographic order.
pub fn newton_support(g: &Poly) -> Vec<ExpVector> {
    let mut s: Vec<ExpVector> = g.terms().iter().map(|(e, _)| e.clone()).collect();
    s.sort_by(|x, y| y.lex_cmp(x));
    s
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfspaceReport {
    pub weight: u32,
    /// `min l` over the support.
    pub min_l: u32,
    /// `a * n_i`.
    pub bound: u32,
    pub inside: bool,
    /// Support points on `l = a * n_i`.
    pub boundary: Vec<ExpVector>,
}

impl HalfspaceReport {
    pub fn touches(&self) -> bool {
        !self.boundary.is_empty()
    }
}

/// Support of each generator against the half space `l >= a * n_i`.
pub fn halfspace_check(g: &ReesAlgebra, a: u32, b: u32) -> Result<Vec<HalfspaceReport>> {
    let dim = g.ring().dim();
    if dim < 2 {
        return Err(Error::NeedsDimension { expected: 2, got: dim });
    }
    let curve = MonomialCurve::new(a, b, Vec::new())?;
    Ok(g.gens()
        .iter()
        .map(|wg| {
            let support = newton_support(&wg.poly);
            let bound = a * wg.weight;
            let min_l = support.iter().map(|e| curve.weight_of(e)).min().unwrap_or(0);
            HalfspaceReport {
                weight: wg.weight,
                min_l,
                bound,
                inside: min_l >= bound,
                boundary: support.into_iter().filter(|e| curve.weight_of(e) == bound).collect(),
            }
        })
        .collect())
}

/// Coprime `(a, b)` with `a + b <= span`, by `a + b` and then `a`.
pub fn curve_schedule(span: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for s in 2..=span {
        for a in 1..s {
            let b = s - a;
            if num_integer::gcd(a, b) == 1 {
                out.push((a, b));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeRecord {
    pub trial: usize,
    pub curve: MonomialCurve,
    pub lambda1: LambdaValue,
    pub lambda2: LambdaValue,
    /// Draws rejected because some pullback order exceeded its Newton bound.
    pub rejected_draws: u32,
    /// Every draw was degenerate; the record cannot refute.
    pub degenerate: bool,
    pub mismatch: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Consistent,
    Refuted(MonomialCurve),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeVerdict {
    pub records: Vec<ProbeRecord>,
    pub outcome: Outcome,
}

impl ProbeVerdict {
    pub fn is_consistent(&self) -> bool {
        self.outcome == Outcome::Consistent
    }

    pub fn witness(&self) -> Option<&ProbeRecord> {
        self.records.iter().find(|r| r.mismatch)
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Consistent => write!(f, "consistent (not a proof)"),
            Outcome::Refuted(c) => write!(f, "refuted by curve {c}"),
        }
    }
}

/// `λ` of both pullbacks along one curve.
pub fn probe_curve(g1: &ReesAlgebra, g2: &ReesAlgebra, c: &MonomialCurve) -> Result<(LambdaValue, LambdaValue)> {
    Ok((lambda(&curve_pullback(g1, c)?)?, lambda(&curve_pullback(g2, c)?)?))
}

fn is_degenerate(g: &ReesAlgebra, map: &RingMap, c: &MonomialCurve) -> Result<bool> {
    for wg in g.gens() {
        let bound = newton_support(&wg.poly)
            .iter()
            .map(|e| c.weight_of(e))
            .min()
            .unwrap_or(0);
        if map.apply(&wg.poly)?.order() != VanishingOrder::Finite(bound) {
            return Ok(true);
        }
    }
    Ok(false)
}

fn draw_coeff(field: Field, rng: &mut ChaCha8Rng) -> Scalar {
    match field {
        Field::Rational => {
            let v: i64 = rng.gen_range(1..=9);
            field.from_i64(if rng.gen_bool(0.5) { -v } else { v })
        }
        Field::Prime(p) => field.from_i64(rng.gen_range(1..p as i64)),
    }
}

/// Compares `λ` of the two pullbacks along `trials` seeded monomial curves,
/// stopping at the first mismatch.
pub fn equal_closure_probe(g1: &ReesAlgebra, g2: &ReesAlgebra, trials: usize, seed: u64) -> Result<ProbeVerdict> {
    if g1.ring() != g2.ring() {
        return Err(Error::RingMismatch);
    }
    if trials == 0 {
        return Err(Error::InvalidOptions("at least one trial is required".into()));
    }
    let ring = g1.ring();
    let field = ring.field();
    let schedule = curve_schedule(SCHEDULE_SPAN);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut records = Vec::with_capacity(trials);
    for trial in 0..trials {
        let (a, b) = schedule[trial % schedule.len()];
        let mut rejected = 0;
        let record = loop {
            let coeffs = (1..ring.dim()).map(|_| draw_coeff(field, &mut rng)).collect();
            let curve = MonomialCurve::new(a, b, coeffs)?;
            let map = curve.ring_map(ring)?;
            let degenerate = is_degenerate(g1, &map, &curve)? || is_degenerate(g2, &map, &curve)?;
            if degenerate && rejected + 1 < MAX_DRAWS {
                rejected += 1;
                continue;
            }
            let lambda1 = lambda(&total_transform(g1, &map)?)?;
            let lambda2 = lambda(&total_transform(g2, &map)?)?;
            let mismatch = !degenerate && lambda1 != lambda2;
            break ProbeRecord {
                trial,
                curve,
                lambda1,
                lambda2,
                rejected_draws: rejected + u32::from(degenerate),
                degenerate,
                mismatch,
            };
        };
        let refuted = record.mismatch.then(|| record.curve.clone());
        records.push(record);
        if let Some(curve) = refuted {
            return Ok(ProbeVerdict {
                records,
                outcome: Outcome::Refuted(curve),
            });
        }
    }
    Ok(ProbeVerdict {
        records,
        outcome: Outcome::Consistent,
    })
}

/// How `lower ⊂ upper` is known to be finite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// `upper` is the weight saturation of `lower`.
    Saturation,
    /// `lower` is the Veronese algebra of `upper` in degree `M`.
    Veronese(u32),
    /// Each generator `f W^m` of `upper` missing from `lower` has
    /// `f W^{m+1}` in `lower`, whence `(f W^m)^{m+1} = f^{m+1} W^{m(m+1)}`
    /// lies in `lower`.
    Witness,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::Saturation => write!(f, "sat"),
            Certificate::Veronese(m) => write!(f, "veronese:{m}"),
            Certificate::Witness => write!(f, "witness"),
        }
    }
}

/// An inclusion `lower ⊂ upper` carrying a finiteness certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePair {
    pub lower: ReesAlgebra,
    pub upper: ReesAlgebra,
    pub certificate: Certificate,
}

fn same_generators(a: &ReesAlgebra, b: &ReesAlgebra) -> bool {
    a.ring() == b.ring()
        && a.gens().iter().all(|g| b.gens().contains(g))
        && b.gens().iter().all(|g| a.gens().contains(g))
}

impl FinitePair {
    pub fn saturation(g: &ReesAlgebra) -> Self {
        FinitePair {
            lower: g.clone(),
            upper: saturate_weights(g),
            certificate: Certificate::Saturation,
        }
    }

    pub fn veronese(g: &ReesAlgebra, m: u32) -> Result<Self> {
        Ok(FinitePair {
            lower: veronese(g, m)?,
            upper: g.clone(),
            certificate: Certificate::Veronese(m),
        })
    }

    /// Adjoins `g W^{n-1}` for every generator `g W^n` with `n >= 2`.
    pub fn witness(g: &ReesAlgebra) -> Result<Self> {
        let mut extra = Vec::new();
        for wg in g.gens() {
            if wg.weight >= 2 {
                let w = integral_witness(&wg.poly, wg.weight)?;
                debug_assert!(w.holds());
                extra.push(w.element);
            }
        }
        Ok(FinitePair {
            lower: g.clone(),
            upper: g.adjoin(extra)?,
            certificate: Certificate::Witness,
        })
    }

    /// Checks that the certificate matches the two presentations.
    pub fn new(lower: ReesAlgebra, upper: ReesAlgebra, certificate: Certificate) -> Result<Self> {
        if lower.ring() != upper.ring() {
            return Err(Error::RingMismatch);
        }
        let ok = match &certificate {
            Certificate::Saturation => same_generators(&saturate_weights(&lower), &upper),
            Certificate::Veronese(m) => match veronese(&upper, *m) {
                Ok(v) => same_generators(&v, &lower),
                Err(_) => false,
            },
            Certificate::Witness => {
                lower.gens().iter().all(|g| upper.gens().contains(g))
                    && upper.gens().iter().all(|g| {
                        lower.gens().contains(g)
                            || lower.gens().contains(&WeightedGen::new(g.poly.clone(), g.weight + 1))
                    })
            }
        };
        if !ok {
            return Err(Error::Certificate(format!(
                "the pair does not match the {certificate} certificate"
            )));
        }
        Ok(FinitePair {
            lower,
            upper,
            certificate,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffComparison {
    pub recipe: Recipe,
    pub lambda1: LambdaValue,
    pub lambda2: LambdaValue,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MainCheckReport {
    pub closure1: ReesAlgebra,
    pub closure2: ReesAlgebra,
    /// `G(lower)_N ⊂ G(upper)_N` on generators of weight `N <= bound`;
    /// `None` when `bound` is zero.
    pub inclusion: Option<bool>,
    pub probe: ProbeVerdict,
    pub coeff: Vec<CoeffComparison>,
}

impl MainCheckReport {
    pub fn is_consistent(&self) -> bool {
        self.inclusion != Some(false) && self.probe.is_consistent() && self.coeff.iter().all(|c| c.lambda1 == c.lambda2)
    }
}

/// Closes both members of a certified finite pair, probes the closures for
/// equal integral closure, and for splits leaving one variable compares `λ`
/// of the coefficient algebras of the pair under both recipes.
pub fn main_theorem_check(
    pair: &FinitePair,
    trials: usize,
    seed: u64,
    bound: u32,
    split: Option<Split>,
) -> Result<MainCheckReport> {
    let checked = FinitePair::new(pair.lower.clone(), pair.upper.clone(), pair.certificate.clone())?;
    let opts = ClosureOptions {
        simplify: true,
        ..Default::default()
    };
    let closure1 = diff_close(&checked.lower, &opts)?;
    let closure2 = diff_close(&checked.upper, &opts)?;
    let inclusion = if bound == 0 {
        None
    } else {
        let mut oracle = PieceOracle::new(&closure2);
        let mut all = true;
        for wg in closure1.gens().iter().filter(|wg| wg.weight <= bound) {
            if !oracle.contains(&wg.poly, wg.weight, PieceMode::Exact)? {
                all = false;
                break;
            }
        }
        Some(all)
    };
    let probe = equal_closure_probe(&closure1, &closure2, trials, seed)?;
    let mut coeff = Vec::new();
    if let Some(split) = split {
        split.validate(checked.lower.ring().dim())?;
        if checked.lower.ring().dim() - split.h == 1 {
            for recipe in [Recipe::F1Prime, Recipe::F1] {
                coeff.push(CoeffComparison {
                    recipe,
                    lambda1: lambda(&coefficient_algebra(&checked.lower, split, recipe)?.algebra)?,
                    lambda2: lambda(&coefficient_algebra(&checked.upper, split, recipe)?.algebra)?,
                });
            }
        }
    }
    Ok(MainCheckReport {
        closure1,
        closure2,
        inclusion,
        probe,
        coeff,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn ring(char: u64, vars: &[&str]) -> Ring {
        PolyRing::new(Field::with_characteristic(char).unwrap(), vars).unwrap()
    }

    fn alg(r: &Ring, gens: &[(&str, u32)]) -> ReesAlgebra {
        ReesAlgebra::from_pairs(r, gens.iter().map(|(s, w)| (parse_poly(s, r).unwrap(), *w))).unwrap()
    }

    #[test]
    fn pullback_examples() {
        let r = ring(0, &["x", "y"]);
        let t = ring(0, &["t"]);
        let g = alg(&r, &[("x^2 + y^3", 2)]);
        let c = MonomialCurve::new(3, 2, vec![r.field().one()]).unwrap();
        let p = curve_pullback(&g, &c).unwrap();
        assert_eq!(p, alg(&t, &[("2*t^6", 2)]));
        assert_eq!(lambda(&p).unwrap(), LambdaValue::ratio(3, 1));

        let f5 = ring(5, &["x", "y"]);
        let g5 = alg(&f5, &[("x^2 + y^3", 2)]);
        let c5 = MonomialCurve::new(3, 2, vec![f5.field().from_i64(2)]).unwrap();
        let p5 = curve_pullback(&g5, &c5).unwrap();
        assert!(p5.is_zero_algebra());
        assert_eq!(lambda(&p5).unwrap(), LambdaValue::Infinite);

        let x = alg(&r, &[("x", 1)]);
        let c11 = MonomialCurve::new(1, 1, vec![r.field().one()]).unwrap();
        assert_eq!(curve_pullback(&x, &c11).unwrap(), alg(&t, &[("t", 1)]));

        assert!(MonomialCurve::new(0, 1, vec![]).is_err());
        assert!(MonomialCurve::new(1, 1, vec![r.field().zero()]).is_err());
        assert!(curve_pullback(&x, &MonomialCurve::new(1, 1, vec![]).unwrap()).is_err());
    }

    #[test]
    fn support_examples() {
        let r = ring(0, &["x", "y"]);
        assert_eq!(
            newton_support(&parse_poly("x^2 + y^3", &r).unwrap()),
            vec![ExpVector(vec![2, 0]), ExpVector(vec![0, 3])]
        );
        assert!(newton_support(&Poly::zero(&r)).is_empty());
        let f2 = ring(2, &["x", "y"]);
        assert_eq!(
            newton_support(&parse_poly("(x + y)^2", &f2).unwrap()),
            vec![ExpVector(vec![2, 0]), ExpVector(vec![0, 2])]
        );
    }

    #[test]
    fn halfspace_examples() {
        let r = ring(0, &["x", "y"]);
        let rep = halfspace_check(&alg(&r, &[("x^2 + y^3", 2)]), 3, 2).unwrap();
        assert!(rep[0].inside);
        assert_eq!(rep[0].boundary, vec![ExpVector(vec![2, 0]), ExpVector(vec![0, 3])]);
        let rep = halfspace_check(&alg(&r, &[("x", 1)]), 1, 1).unwrap();
        assert!(rep[0].inside && rep[0].touches());
        let rep = halfspace_check(&alg(&r, &[("y", 2)]), 2, 1).unwrap();
        assert!(!rep[0].inside);
        assert_eq!((rep[0].min_l, rep[0].bound), (1, 4));
        assert!(halfspace_check(&alg(&ring(0, &["x"]), &[("x", 1)]), 1, 1).is_err());
    }

    #[test]
    fn schedule_is_coprime() {
        let s = curve_schedule(12);
        assert_eq!(&s[..4], &[(1, 1), (1, 2), (2, 1), (1, 3)]);
        assert!(s.iter().all(|&(a, b)| num_integer::gcd(a, b) == 1 && a + b <= 12));
        assert!(!s.contains(&(2, 2)));
    }

    #[test]
    fn probe_examples() {
        let t = ring(0, &["t"]);
        let v = equal_closure_probe(&alg(&t, &[("t^2", 1)]), &alg(&t, &[("t", 1)]), 5, 0).unwrap();
        let w = v.witness().unwrap();
        assert_eq!(v.outcome, Outcome::Refuted(w.curve.clone()));
        assert_eq!(w.lambda1, LambdaValue::ratio(2 * w.curve.b, 1));
        assert_eq!(w.lambda2, LambdaValue::ratio(w.curve.b, 1));

        let r = ring(0, &["x", "y"]);
        let g = alg(&r, &[("x^2 - y^3", 2), ("x*y", 1)]);
        let v = equal_closure_probe(&g, &g, 20, 7).unwrap();
        assert!(v.is_consistent());
        assert_eq!(v.records.len(), 20);
        let v2 = equal_closure_probe(&g, &saturate_weights(&g), 20, 7).unwrap();
        assert!(v2.is_consistent());
        assert_eq!(v2, equal_closure_probe(&g, &saturate_weights(&g), 20, 7).unwrap());
    }

    #[test]
    fn degenerate_draws_are_retried() {
        // x - y vanishes identically on a=b=1 curves with λ = 1 only
        let f3 = ring(3, &["x", "y"]);
        let g = alg(&f3, &[("x - y", 1)]);
        let v = equal_closure_probe(&g, &g, 12, 3).unwrap();
        assert!(v.is_consistent());
        for r in &v.records {
            assert_eq!(
                r.degenerate,
                r.lambda1 != LambdaValue::ratio(r.curve.a.min(r.curve.b), 1)
            );
        }
    }

    #[test]
    fn certificates() {
        let r = ring(0, &["x", "y"]);
        let g = alg(&r, &[("x", 1), ("y", 2)]);
        let sat = FinitePair::saturation(&g);
        assert!(FinitePair::new(sat.lower.clone(), sat.upper.clone(), Certificate::Saturation).is_ok());
        let ver = FinitePair::veronese(&g, 2).unwrap();
        assert!(FinitePair::new(ver.lower.clone(), ver.upper.clone(), Certificate::Veronese(2)).is_ok());
        let wit = FinitePair::witness(&g).unwrap();
        assert!(FinitePair::new(wit.lower.clone(), wit.upper.clone(), Certificate::Witness).is_ok());
        let bad = alg(&r, &[("x", 2)]);
        assert!(matches!(
            FinitePair::new(alg(&r, &[("x^2", 1)]), bad, Certificate::Saturation),
            Err(Error::Certificate(_))
        ));
    }

    #[test]
    fn main_check_examples() {
        let r = ring(0, &["x", "y"]);
        let rep = main_theorem_check(
            &FinitePair::saturation(&alg(&r, &[("x^2", 2)])),
            20,
            0,
            2,
            Some(Split::new(1)),
        )
        .unwrap();
        assert!(rep.is_consistent());
        assert_eq!(rep.inclusion, Some(true));
        assert_eq!(rep.coeff.len(), 2);

        let g = alg(&r, &[("x", 1), ("y", 2)]);
        let rep = main_theorem_check(&FinitePair::veronese(&g, 2).unwrap(), 20, 1, 2, None).unwrap();
        assert!(rep.is_consistent());

        let f2 = ring(2, &["x"]);
        let rep = main_theorem_check(&FinitePair::saturation(&alg(&f2, &[("x^2", 2)])), 20, 0, 0, None).unwrap();
        assert!(rep.is_consistent());
        assert_eq!(rep.closure1, alg(&f2, &[("x^2", 1), ("x^2", 2)]));
    }
}
