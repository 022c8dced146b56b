//! Singular loci: points where every generator `g_i W^{n_i}` vanishes to
//! order at least `n_i`.

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::poly::{Poly, VanishingOrder};
use crate::rees::ReesAlgebra;
use crate::ring::{ExpVector, Ring};

/// Default cap on the number of grid points `p^d` enumerated by [`sing_points`].
pub const DEFAULT_GRID_CAP: u128 = 1_000_000;

/// For each generator, its Hasse derivatives of order `<= n_i - 1`; their
/// common zero set is the singular locus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingPresentation {
    pub per_generator: Vec<Vec<Poly>>,
}

impl SingPresentation {
    /// All listed polynomials, without repeats.
    pub fn polys(&self) -> Vec<Poly> {
        let mut out: Vec<Poly> = Vec::new();
        for p in self.per_generator.iter().flatten() {
            if !out.contains(p) {
                out.push(p.clone());
            }
        }
        out
    }

    /// True when some listed polynomial is a nonzero constant.
    pub fn is_empty_locus(&self) -> bool {
        self.per_generator
            .iter()
            .flatten()
            .any(|p| !p.is_zero() && p.is_constant())
    }
}

pub fn sing_presentation(g: &ReesAlgebra) -> SingPresentation {
    let dim = g.ring().dim();
    let per_generator = g
        .gens()
        .iter()
        .map(|wg| {
            ExpVector::all_up_to(dim, wg.weight - 1)
                .iter()
                .map(|a| wg.poly.hasse(a).expect("dimension matches"))
                .filter(|p| !p.is_zero())
                .collect()
        })
        .collect();
    SingPresentation { per_generator }
}

/// Whether `point` lies in `Sing(g)`.
pub fn in_sing(g: &ReesAlgebra, point: &[Scalar]) -> Result<bool> {
    g.ring().check_dim(point.len())?;
    for wg in g.gens() {
        if wg.poly.order_at(point)? < VanishingOrder::Finite(wg.weight) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn sing_points(g: &ReesAlgebra) -> Result<Vec<Vec<Scalar>>> {
    sing_points_with_cap(g, DEFAULT_GRID_CAP)
}

/// All `F_p`-points of `Sing(g)` in lexicographic order.
pub fn sing_points_with_cap(g: &ReesAlgebra, cap: u128) -> Result<Vec<Vec<Scalar>>> {
    let pres = sing_presentation(g);
    grid_zeros_with_cap(g.ring(), &pres.polys(), cap)
}

pub fn grid_zeros(ring: &Ring, polys: &[Poly]) -> Result<Vec<Vec<Scalar>>> {
    grid_zeros_with_cap(ring, polys, DEFAULT_GRID_CAP)
}

/// Common zeros of `polys` over the full grid `F_p^d`, lexicographically.
pub fn grid_zeros_with_cap(ring: &Ring, polys: &[Poly], cap: u128) -> Result<Vec<Vec<Scalar>>> {
    let elems = ring.field().elements().ok_or(Error::NeedsPositiveCharacteristic)?;
    let points = (elems.len() as u128)
        .checked_pow(ring.dim() as u32)
        .unwrap_or(u128::MAX);
    if points > cap {
        return Err(Error::GridCap { points, cap });
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; ring.dim()];
    loop {
        let pt: Vec<Scalar> = idx.iter().map(|&i| elems[i].clone()).collect();
        let mut all = true;
        for p in polys {
            if !p.eval(&pt)?.is_zero() {
                all = false;
                break;
            }
        }
        if all {
            out.push(pt);
        }
        // odometer, last coordinate fastest
        let mut k = ring.dim();
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < elems.len() {
                break;
            }
            idx[k] = 0;
        }
    }
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

    fn pt(r: &Ring, c: &[i64]) -> Vec<Scalar> {
        c.iter().map(|&v| r.field().from_i64(v)).collect()
    }

    #[test]
    fn presentation_examples() {
        let r = ring(0, &["x", "y"]);
        let pres = sing_presentation(&alg(&r, &[("x^2 + y^3", 2)]));
        let expect: Vec<Poly> = ["x^2 + y^3", "2*x", "3*y^2"]
            .iter()
            .map(|s| parse_poly(s, &r).unwrap())
            .collect();
        assert_eq!(pres.polys(), expect);
        assert!(!pres.is_empty_locus());
        let pres = sing_presentation(&alg(&r, &[("x", 1)]));
        assert_eq!(pres.polys(), vec![parse_poly("x", &r).unwrap()]);
        let pres = sing_presentation(&alg(&r, &[("1", 1)]));
        assert!(pres.is_empty_locus());
    }

    #[test]
    fn in_sing_examples() {
        let r = ring(0, &["x", "y"]);
        let g = alg(&r, &[("x^2 + y^3", 2)]);
        assert!(in_sing(&g, &pt(&r, &[0, 0])).unwrap());
        assert!(!in_sing(&alg(&r, &[("x", 2)]), &pt(&r, &[0, 0])).unwrap());
        assert!(!in_sing(&g, &pt(&r, &[1, 1])).unwrap());
        assert!(in_sing(&g, &pt(&r, &[0])).is_err());
    }

    #[test]
    fn grid_examples() {
        let f5 = ring(5, &["x", "y"]);
        assert_eq!(
            sing_points(&alg(&f5, &[("x^2 + y^3", 2)])).unwrap(),
            vec![pt(&f5, &[0, 0])]
        );
        let f3 = ring(3, &["x"]);
        assert_eq!(sing_points(&alg(&f3, &[("x", 1)])).unwrap(), vec![pt(&f3, &[0])]);
        let f3xy = ring(3, &["x", "y"]);
        assert_eq!(
            sing_points(&alg(&f3xy, &[("x", 1)])).unwrap(),
            vec![pt(&f3xy, &[0, 0]), pt(&f3xy, &[0, 1]), pt(&f3xy, &[0, 2])]
        );
        let f2 = ring(2, &["x"]);
        assert!(sing_points(&alg(&f2, &[("1", 1)])).unwrap().is_empty());
        let q = ring(0, &["x"]);
        assert_eq!(
            sing_points(&alg(&q, &[("x", 1)])),
            Err(Error::NeedsPositiveCharacteristic)
        );
        let big = ring(101, &["x", "y", "z", "w"]);
        assert!(matches!(
            sing_points(&alg(&big, &[("x", 1)])),
            Err(Error::GridCap { .. })
        ));
    }

    #[test]
    fn order_and_presentation_agree_on_grid() {
        let f3 = ring(3, &["x", "y"]);
        let g = alg(&f3, &[("x^3 - y^2", 2), ("x*y + y", 1)]);
        let grid = grid_zeros(&f3, &[]).unwrap();
        let pres = sing_presentation(&g).polys();
        for p in grid {
            let by_pres = pres.iter().all(|q| q.eval(&p).unwrap().is_zero());
            assert_eq!(in_sing(&g, &p).unwrap(), by_pres);
        }
    }
}
