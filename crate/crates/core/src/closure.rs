//! Diff-closures: the smallest extension of a Rees algebra that is stable
//! under the coordinate Hasse operators (absolute, relative, logarithmic and
//! order-free flavours).

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rees::{PieceMode, PieceOracle, ReesAlgebra, WeightedGen};
use crate::ring::ExpVector;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Operators in every variable; order-`j` operators lower the weight by `j`.
    #[default]
    Absolute,
    /// Operators in the first `h` variables only (relative to the projection
    /// that forgets them).
    Relative(usize),
    /// `x^α Δ^α` for `α` supported on the listed variables; weights unchanged.
    Logarithmic(Vec<usize>),
    /// Every `Δ^α`, weights unchanged.
    OrderFree,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ClosureOptions {
    pub variant: Variant,
    /// Drop generators that are constant multiples of an earlier generator of
    /// the same weight.
    pub simplify: bool,
    /// Drop generators already in the corresponding graded piece of the
    /// algebra spanned by the generators kept so far (Gröbner cost).
    pub prune: bool,
}

impl ClosureOptions {
    pub fn new(variant: Variant) -> Self {
        ClosureOptions {
            variant,
            ..Default::default()
        }
    }

    fn validate(&self, dim: usize) -> Result<()> {
        match &self.variant {
            Variant::Relative(h) if *h == 0 || *h > dim => {
                Err(Error::InvalidOptions(format!("relative h={h} must lie in 1..={dim}")))
            }
            Variant::Logarithmic(vars) => {
                if vars.is_empty() {
                    return Err(Error::InvalidOptions("logarithmic variable set is empty".into()));
                }
                for (i, v) in vars.iter().enumerate() {
                    if *v >= dim || vars[..i].contains(v) {
                        return Err(Error::InvalidOptions(format!("bad logarithmic variable index {v}")));
                    }
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }
}

/// One operator application used by the closure: which multi-index, and
/// whether it lowers the weight.
fn operators(g: &WeightedGen, variant: &Variant, dim: usize) -> Vec<ExpVector> {
    match variant {
        Variant::Absolute => ExpVector::all_up_to(dim, g.weight - 1),
        Variant::Relative(h) => ExpVector::all_up_to(dim, g.weight - 1)
            .into_iter()
            .filter(|a| a.0[*h..].iter().all(|&k| k == 0))
            .collect(),
        Variant::Logarithmic(vars) => {
            let deg = g.poly.total_degree().unwrap_or(0);
            ExpVector::all_up_to(dim, deg)
                .into_iter()
                .filter(|a| {
                    a.0.iter()
                        .enumerate()
                        .all(|(i, &k)| k == 0 || (vars.contains(&i) && k <= g.poly.degree_in(i).unwrap_or(0)))
                })
                .collect()
        }
        Variant::OrderFree => {
            let deg = g.poly.total_degree().unwrap_or(0);
            ExpVector::all_up_to(dim, deg)
                .into_iter()
                .filter(|a| {
                    a.0.iter()
                        .enumerate()
                        .all(|(i, &k)| k <= g.poly.degree_in(i).unwrap_or(0))
                })
                .collect()
        }
    }
}

fn apply(f: &Poly, alpha: &ExpVector, variant: &Variant) -> Result<Poly> {
    match variant {
        Variant::Logarithmic(_) => f.log_hasse(alpha),
        _ => f.hasse(alpha),
    }
}

fn lowers_weight(variant: &Variant) -> bool {
    matches!(variant, Variant::Absolute | Variant::Relative(_))
}

/// The Diff-closure of `g`.
///
/// For the absolute variant the generators are
/// `Δ^α(g_i) W^{n'}` for `|α| < n_i` and `1 <= n' <= n_i - |α|`; the relative
/// variant restricts `α` to the first `h` variables. The logarithmic and
/// order-free variants list `x^α Δ^α(g_i)` (resp. `Δ^α(g_i)`) for every
/// nonvanishing `α`, at every weight `1..=n_i`.
///
/// Generators come out per input generator, by operator (degree, then
/// descending lexicographic) and then by weight.
pub fn diff_close(g: &ReesAlgebra, opts: &ClosureOptions) -> Result<ReesAlgebra> {
    let dim = g.ring().dim();
    opts.validate(dim)?;
    let mut out: Vec<WeightedGen> = Vec::new();
    for wg in g.gens() {
        for alpha in operators(wg, &opts.variant, dim) {
            let d = apply(&wg.poly, &alpha, &opts.variant)?;
            if d.is_zero() {
                continue;
            }
            let top = if lowers_weight(&opts.variant) {
                wg.weight - alpha.degree()
            } else {
                wg.weight
            };
            for w in 1..=top {
                out.push(WeightedGen::new(d.clone(), w));
            }
        }
    }
    if opts.simplify || opts.prune {
        out = drop_constant_multiples(out);
    }
    let closed = ReesAlgebra::new(g.ring(), out)?;
    if opts.prune {
        return prune(&closed);
    }
    Ok(closed)
}

fn drop_constant_multiples(gens: Vec<WeightedGen>) -> Vec<WeightedGen> {
    let mut kept: Vec<WeightedGen> = Vec::new();
    for g in gens {
        let monic = g.poly.monic();
        if !kept.iter().any(|k| k.weight == g.weight && k.poly.monic() == monic) {
            kept.push(g);
        }
    }
    kept
}

/// Greedily drops generators lying in the matching graded piece of the
/// algebra spanned by the generators kept so far. Heavier generators are
/// examined first since they are the likeliest to be redundant.
fn prune(g: &ReesAlgebra) -> Result<ReesAlgebra> {
    let mut order: Vec<usize> = (0..g.gens().len()).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(g.gens()[i].weight), i));
    let mut keep = vec![true; g.gens().len()];
    for i in order {
        keep[i] = false;
        let rest = ReesAlgebra::new(
            g.ring(),
            g.gens().iter().zip(&keep).filter(|(_, k)| **k).map(|(w, _)| w.clone()),
        )?;
        let wg = &g.gens()[i];
        if !PieceOracle::new(&rest).contains(&wg.poly, wg.weight, PieceMode::Exact)? {
            keep[i] = true;
        }
    }
    ReesAlgebra::new(
        g.ring(),
        g.gens().iter().zip(&keep).filter(|(_, k)| **k).map(|(w, _)| w.clone()),
    )
}

/// Whether `g` is closed for the chosen variant: the pieces are nested on
/// generators (`g_i ∈ I_{n'}` for `n' < n_i`) and every operator image of a
/// generator lands in the required piece. Checking generators suffices by
/// the Leibniz rule.
pub fn is_diff_closed(g: &ReesAlgebra, opts: &ClosureOptions) -> Result<bool> {
    let dim = g.ring().dim();
    opts.validate(dim)?;
    let mut oracle = PieceOracle::new(g);
    for wg in g.gens() {
        for lower in 1..wg.weight {
            if !oracle.contains(&wg.poly, lower, PieceMode::Exact)? {
                return Ok(false);
            }
        }
        for alpha in operators(wg, &opts.variant, dim) {
            if alpha.is_zero() {
                continue;
            }
            let d = apply(&wg.poly, &alpha, &opts.variant)?;
            if d.is_zero() {
                continue;
            }
            let target = if lowers_weight(&opts.variant) {
                wg.weight - alpha.degree()
            } else {
                wg.weight
            };
            if !oracle.contains(&d, target, PieceMode::Exact)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::parse::parse_poly;
    use crate::rees::{pieces_equal, saturate_weights};
    use crate::ring::{PolyRing, Ring};

    fn ring(char: u64, vars: &[&str]) -> Ring {
        PolyRing::new(Field::with_characteristic(char).unwrap(), vars).unwrap()
    }

    fn alg(r: &Ring, gens: &[(&str, u32)]) -> ReesAlgebra {
        ReesAlgebra::from_pairs(r, gens.iter().map(|(s, w)| (parse_poly(s, r).unwrap(), *w))).unwrap()
    }

    fn abs() -> ClosureOptions {
        ClosureOptions::default()
    }

    #[test]
    fn closure_examples() {
        let q = ring(0, &["x"]);
        let c = diff_close(&alg(&q, &[("x^2", 2)]), &abs()).unwrap();
        assert_eq!(c, alg(&q, &[("x^2", 1), ("x^2", 2), ("2*x", 1)]));
        assert!(pieces_equal(&c, &alg(&q, &[("x", 1)]), 4, PieceMode::Exact).unwrap());

        let f2 = ring(2, &["x"]);
        let c2 = diff_close(&alg(&f2, &[("x^2", 2)]), &abs()).unwrap();
        assert_eq!(c2, alg(&f2, &[("x^2", 1), ("x^2", 2)]));
        assert_eq!(
            crate::rees::piece_ideal(&c2, 1, PieceMode::Exact).unwrap().basis(),
            &[parse_poly("x^2", &f2).unwrap()]
        );

        let g = alg(&q, &[("x", 1)]);
        assert_eq!(diff_close(&g, &abs()).unwrap(), g);
    }

    #[test]
    fn closedness_examples() {
        let r = ring(0, &["x", "y"]);
        let rees_ring = saturate_weights(&alg(&r, &[("x", 1), ("y", 1), ("x^2", 2), ("x*y", 2), ("y^2", 2)]));
        assert!(is_diff_closed(&rees_ring, &abs()).unwrap());
        let q = ring(0, &["x"]);
        assert!(!is_diff_closed(&alg(&q, &[("x^2", 2)]), &abs()).unwrap());
        let f2 = ring(2, &["x"]);
        let c2 = diff_close(&alg(&f2, &[("x^2", 2)]), &abs()).unwrap();
        assert!(is_diff_closed(&c2, &abs()).unwrap());
    }

    #[test]
    fn variants() {
        let r = ring(0, &["x", "y"]);
        let g = alg(&r, &[("x^2*y + y^3", 3)]);
        let rel = diff_close(&g, &ClosureOptions::new(Variant::Relative(1))).unwrap();
        // only x-derivatives: f, 2xy, y
        assert_eq!(
            rel,
            alg(
                &r,
                &[
                    ("x^2*y + y^3", 1),
                    ("x^2*y + y^3", 2),
                    ("x^2*y + y^3", 3),
                    ("2*x*y", 1),
                    ("2*x*y", 2),
                    ("y", 1)
                ]
            )
        );
        for variant in [
            Variant::Absolute,
            Variant::Relative(1),
            Variant::Logarithmic(vec![0]),
            Variant::OrderFree,
        ] {
            let opts = ClosureOptions::new(variant.clone());
            let c = diff_close(&g, &opts).unwrap();
            assert!(is_diff_closed(&c, &opts).unwrap(), "{variant:?}");
        }

        let q = ring(0, &["x"]);
        let log = diff_close(
            &alg(&q, &[("x^3", 2)]),
            &ClosureOptions::new(Variant::Logarithmic(vec![0])),
        )
        .unwrap();
        assert!(log
            .gens()
            .contains(&WeightedGen::new(parse_poly("3*x^3", &q).unwrap(), 1)));

        let of = diff_close(&alg(&q, &[("x^2 + 1", 1)]), &ClosureOptions::new(Variant::OrderFree)).unwrap();
        assert_eq!(of, alg(&q, &[("x^2 + 1", 1), ("2*x", 1), ("1", 1)]));
    }

    #[test]
    fn invalid_options() {
        let r = ring(0, &["x", "y"]);
        let g = alg(&r, &[("x", 1)]);
        assert!(diff_close(&g, &ClosureOptions::new(Variant::Relative(0))).is_err());
        assert!(diff_close(&g, &ClosureOptions::new(Variant::Relative(3))).is_err());
        assert!(diff_close(&g, &ClosureOptions::new(Variant::Logarithmic(vec![]))).is_err());
        assert!(is_diff_closed(&g, &ClosureOptions::new(Variant::Logarithmic(vec![2]))).is_err());
    }

    #[test]
    fn simplify_and_prune() {
        let q = ring(0, &["x"]);
        let g = alg(&q, &[("x^3", 2)]);
        let log = ClosureOptions::new(Variant::Logarithmic(vec![0]));
        let plain = diff_close(&g, &log).unwrap();
        let simple = diff_close(
            &g,
            &ClosureOptions {
                simplify: true,
                ..log.clone()
            },
        )
        .unwrap();
        assert_eq!(simple, alg(&q, &[("x^3", 1), ("x^3", 2)]));
        assert!(pieces_equal(&plain, &simple, 4, PieceMode::Exact).unwrap());

        let pruned = diff_close(&g, &ClosureOptions { prune: true, ..abs() }).unwrap();
        let full = diff_close(&g, &abs()).unwrap();
        assert!(pruned.gens().len() < full.gens().len());
        assert!(pieces_equal(&pruned, &full, 5, PieceMode::Exact).unwrap());
    }
}
